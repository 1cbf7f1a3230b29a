"""One-variable valuation formulas and their recursive-descent parser.

Atoms compare valuations of factored polynomials:

    v( POLY ) CMP v( POLY ) [('+'|'-') GAMMA]
    v( POLY ) CMP GAMMA
    x = LIT

with CMP one of ``>=``, ``>``, ``=``.  POLY is a product of factors
``(x - LIT)^INT``, bare ``x`` (meaning x - 0), and constant factors; sums
inside a constant factor need their own parentheses, e.g. ``v((1+t)*x) > 0``.
Connectives are ``!``, ``&``, ``|`` and parentheses; ``&`` binds tighter
than ``|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .gamma import INF, GammaValue, gamma
from .laurent import (
    FieldContext,
    LaurentElement,
    _parse_expr,
    _parse_power,
    _parse_term,
    _Scanner,
)


@dataclass(frozen=True)
class FactoredPoly:
    """unit * prod (x - root_i)^{m_i}, so v(P(x)) is explicit in the roots."""

    unit: LaurentElement
    factors: tuple  # of (root: LaurentElement, mult: int)

    def __post_init__(self):
        if self.unit.is_exact_zero:
            raise ValueError("factored polynomial unit must be nonzero")

    def valuation_at(self, x: LaurentElement) -> GammaValue:
        v = self.unit.valuation()
        for root, mult in self.factors:
            v = v + (x - root).valuation() * mult  # INF * mult = INF
        return v

    def roots(self):
        return [root for root, _ in self.factors]

    def render(self) -> str:
        parts = []
        if not self.factors or not self.unit.same(self.unit.ctx.one()):
            parts.append(f"({self.unit.render()})")
        for root, mult in self.factors:
            if root.is_exact_zero:
                fac = "x"
            else:
                fac = f"(x - ({root.render()}))"
            parts.append(fac if mult == 1 else f"{fac}^{mult}")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Atom:
    """v(lhs) cmp v(rhs) + shift, with cmp one of '>=', '>', '='."""

    cmp: str
    lhs: FactoredPoly
    rhs: FactoredPoly
    shift: Fraction

    def evaluate(self, x: LaurentElement) -> bool:
        lv = self.lhs.valuation_at(x)
        rv = self.rhs.valuation_at(x) + self.shift
        if self.cmp == ">=":
            return lv >= rv
        if self.cmp == ">":
            return lv > rv
        return lv == rv

    def render(self) -> str:
        g = ""
        if self.shift > 0:
            g = f" + {self.shift}"
        elif self.shift < 0:
            g = f" - {-self.shift}"
        return f"v({self.lhs.render()}) {self.cmp} v({self.rhs.render()}){g}"


@dataclass(frozen=True)
class EqAtom:
    """x = a."""

    value: LaurentElement

    def evaluate(self, x: LaurentElement) -> bool:
        d = x - self.value
        if d.definitely_nonzero():
            return False
        if d.is_exact:
            return True
        from .errors import PrecisionLoss

        raise PrecisionLoss("equality with a undecided at stored precision")

    def render(self) -> str:
        return f"x = {self.value.render()}"


@dataclass(frozen=True)
class Not:
    inner: object

    def evaluate(self, x):
        return not self.inner.evaluate(x)

    def render(self):
        return f"!({self.inner.render()})"


@dataclass(frozen=True)
class And:
    left: object
    right: object

    def evaluate(self, x):
        return self.left.evaluate(x) and self.right.evaluate(x)

    def render(self):
        return f"({self.left.render()} & {self.right.render()})"


@dataclass(frozen=True)
class Or:
    left: object
    right: object

    def evaluate(self, x):
        return self.left.evaluate(x) or self.right.evaluate(x)

    def render(self):
        return f"({self.left.render()} | {self.right.render()})"


def formula_atoms(f):
    """Iterate over the Atom/EqAtom leaves of a formula tree."""
    if isinstance(f, (Atom, EqAtom)):
        yield f
    elif isinstance(f, Not):
        yield from formula_atoms(f.inner)
    elif isinstance(f, (And, Or)):
        yield from formula_atoms(f.left)
        yield from formula_atoms(f.right)
    else:
        raise TypeError(f"not a formula node: {f!r}")


def parse_formula(ctx: FieldContext, text: str):
    sc = _Scanner(text)
    f = _parse_or(ctx, sc)
    if not sc.at_end():
        raise ParseError("trailing input", sc.pos)
    return f


def _parse_or(ctx, sc):
    f = _parse_and(ctx, sc)
    while sc.peek() == "|":
        sc.pos += 1
        f = Or(f, _parse_and(ctx, sc))
    return f


def _parse_and(ctx, sc):
    f = _parse_not(ctx, sc)
    while sc.peek() == "&":
        sc.pos += 1
        f = And(f, _parse_not(ctx, sc))
    return f


def _parse_not(ctx, sc):
    ch = sc.peek()
    if ch == "!":
        sc.pos += 1
        return Not(_parse_not(ctx, sc))
    if ch == "(":
        sc.pos += 1
        f = _parse_or(ctx, sc)
        sc.expect(")")
        return f
    return _parse_atom_formula(ctx, sc)


def _parse_atom_formula(ctx, sc):
    ch = sc.peek()
    if ch == "v":
        sc.pos += 1
        sc.expect("(")
        lhs = _parse_poly(ctx, sc)
        sc.expect(")")
        cmp = _parse_cmp(sc)
        return _parse_rhs(ctx, sc, cmp, lhs)
    if ch == "x":
        sc.pos += 1
        if sc.peek() != "=":
            raise ParseError("expected '=' after x", sc.pos if not sc.at_end() else len(sc.text))
        sc.pos += 1
        value = _parse_expr(ctx, sc)
        return EqAtom(value)
    raise ParseError(
        "expected an atom ('v(...)' or 'x = ...')", sc.pos if not sc.at_end() else len(sc.text)
    )


def _parse_cmp(sc) -> str:
    ch = sc.peek()
    if ch == ">":
        sc.pos += 1
        if sc.peek() == "=":
            sc.pos += 1
            return ">="
        return ">"
    if ch == "=":
        sc.pos += 1
        return "="
    raise ParseError("expected a comparison ('>=', '>' or '=')", sc.pos if not sc.at_end() else len(sc.text))


def _parse_rhs(ctx, sc, cmp, lhs):
    one = FactoredPoly(ctx.one(), ())
    ch = sc.peek()
    if ch == "v":
        sc.pos += 1
        sc.expect("(")
        rhs = _parse_poly(ctx, sc)
        sc.expect(")")
        shift = Fraction(0)
        if sc.peek() in ("+", "-"):
            sign = -1 if sc.peek() == "-" else 1
            sc.pos += 1
            shift = sign * sc.try_rational_after_caret()
        return Atom(cmp, lhs, rhs, shift)
    # bare gamma constant
    shift = sc.try_rational_after_caret()
    return Atom(cmp, lhs, one, shift)


def _parse_poly(ctx, sc) -> FactoredPoly:
    unit = ctx.one()
    factors = []
    first = True
    while True:
        ch = sc.peek()
        if ch == "x":
            sc.pos += 1
            if first and sc.peek() in ("+", "-"):
                # sugar: a whole linear polynomial  x - LIT  without parens
                factors.append((_parse_root_tail(ctx, sc), 1))
                return FactoredPoly(unit, tuple(factors))
            factors.append((ctx.zero(), _parse_mult(sc)))
        elif ch == "(" and _lookahead_is_xfactor(sc):
            sc.pos += 1
            sc.expect("x")
            if sc.peek() == ")":
                sc.pos += 1
                factors.append((ctx.zero(), _parse_mult(sc)))
            else:
                if sc.peek() not in ("+", "-"):
                    raise ParseError("expected '-' or '+' after x", sc.pos)
                root = _parse_root_tail(ctx, sc)
                sc.expect(")")
                factors.append((root, _parse_mult(sc)))
        else:
            unit = unit * _parse_power(ctx, sc)
        first = False
        if sc.peek() == "*":
            sc.pos += 1
            continue
        break
    if unit.is_exact_zero:
        raise ParseError("zero constant factor in a polynomial", sc.pos)
    return FactoredPoly(unit, tuple(factors))


def _parse_root_tail(ctx, sc):
    """Parse ((+|-) TERM)+ after a bare ``x`` and return the root of x - root."""
    val = ctx.zero()
    while sc.peek() in ("+", "-"):
        op = sc.peek()
        sc.pos += 1
        term = _parse_term(ctx, sc)
        val = val + term if op == "+" else val - term
    return -val


def _parse_mult(sc) -> int:
    if sc.peek() == "^":
        sc.pos += 1
        m = sc.try_rational_after_caret()
        if m.denominator != 1 or m <= 0:
            raise ParseError("multiplicity must be a positive integer", sc.pos)
        return int(m)
    return 1


def _lookahead_is_xfactor(sc) -> bool:
    save = sc.pos
    sc.pos += 1  # past '('
    ans = sc.peek() == "x"
    sc.pos = save
    return ans
