"""Exact truncated Laurent/Puiseux arithmetic over Q((t^(1/e))) and F_p((t^(1/e))).

An element is a finite sum of terms c * t^g (exponents g rational with
denominator dividing the ramification index e) together with an absolute
t-adic precision: ``prec = INF`` means the element is the exact finite sum,
``prec = g0`` means the terms below g0 are exact and nothing is known from
g0 on.  Precision propagates ultrametrically:

* x + y   ->  min(prec x, prec y)
* x * y   ->  min(prec x + v(y), prec y + v(x))
* 1 / x   ->  prec x - 2 v(x)   (exact non-monomials truncate at the
  context's working precision first, so 1/(t^2+t^3) at working precision
  4 comes out as t^-2 - t^-1 + 1 - t + O(t^2))

Elements are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, ParseError, PrecisionLoss, Unsupported, ZeroArgument
from .gamma import INF, GammaValue, gamma, gmin
from .residues import PrimeField, Rationals


class FieldContext:
    """A field K = k((t^(1/e))) with a working precision for truncations.

    ``base`` is Rationals() or PrimeField(p); ``e`` the ramification index;
    ``prec`` the absolute working precision used when an operation (inverse
    of a non-monomial, series evaluation) must truncate an exact input.
    """

    __slots__ = ("base", "e", "prec")

    def __init__(self, base=None, e: int = 1, prec=40):
        self.base = base if base is not None else Rationals()
        if e < 1:
            raise ValueError("ramification index must be positive")
        self.e = int(e)
        self.prec = Fraction(prec)

    def __repr__(self):
        return f"FieldContext({self.base!r}, e={self.e}, prec={self.prec})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldContext)
            and other.base == self.base
            and other.e == self.e
            and other.prec == self.prec
        )

    def __hash__(self):
        return hash((self.base, self.e, self.prec))

    def with_prec(self, prec) -> "FieldContext":
        return FieldContext(self.base, self.e, Fraction(prec))

    def with_e(self, e: int) -> "FieldContext":
        return FieldContext(self.base, e, self.prec)

    # --- constructors ---

    def make(self, terms, prec=INF) -> "LaurentElement":
        return LaurentElement(self, terms, prec)

    def zero(self) -> "LaurentElement":
        return LaurentElement(self, {}, INF)

    def one(self) -> "LaurentElement":
        return self.const(1)

    def const(self, c) -> "LaurentElement":
        return LaurentElement(self, {Fraction(0): self.base.coerce(c)}, INF)

    def monomial(self, c, g) -> "LaurentElement":
        return LaurentElement(self, {Fraction(g): self.base.coerce(c)}, INF)

    def t_power(self, g=1) -> "LaurentElement":
        return self.monomial(1, g)

    def oh(self, g) -> "LaurentElement":
        """The element 0 + O(t^g): nothing known from exponent g on."""
        return LaurentElement(self, {}, gamma(g))

    def parse(self, text: str) -> "LaurentElement":
        return parse_laurent(self, text)


def common_context(a: "LaurentElement", b: "LaurentElement"):
    """Embed two elements into one context (lcm of ramification indices)."""
    ca, cb = a.ctx, b.ctx
    if ca is cb or ca == cb:
        return ca, a, b
    if ca.base != cb.base:
        raise Unsupported(f"incompatible base fields {ca.base!r} and {cb.base!r}")
    e = _lcm(ca.e, cb.e)
    ctx = FieldContext(ca.base, e, min(ca.prec, cb.prec))
    return ctx, a._rebase(ctx), b._rebase(ctx)


def _lcm(a, b):
    from math import gcd

    return a * b // gcd(a, b)


class LaurentElement:
    """One element of K: finite term map plus absolute precision."""

    __slots__ = ("ctx", "terms", "prec")

    def __init__(self, ctx: FieldContext, terms, prec=INF):
        prec = gamma(prec) if not isinstance(prec, GammaValue) else prec
        clean = {}
        base = ctx.base
        for g, c in dict(terms).items():
            g = Fraction(g)
            if (g * ctx.e).denominator != 1:
                raise ValueError(f"exponent {g} not in (1/{ctx.e})Z")
            c = base.coerce(c)
            if base.is_zero(c):
                continue
            if prec.is_finite and g >= prec.value:
                continue
            clean[g] = c
        self.ctx = ctx
        self.terms = clean
        self.prec = prec

    def _rebase(self, ctx: FieldContext) -> "LaurentElement":
        return LaurentElement(ctx, self.terms, self.prec)

    # --- structure queries ---

    @property
    def is_exact(self) -> bool:
        return self.prec.is_infinite

    @property
    def is_exact_zero(self) -> bool:
        return self.is_exact and not self.terms

    def definitely_nonzero(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return self.is_exact and len(self.terms) == 1

    def valuation(self) -> GammaValue:
        """Least stored exponent; INF for exact zero; PrecisionLoss otherwise."""
        if self.terms:
            return gamma(min(self.terms))
        if self.is_exact:
            return INF
        raise PrecisionLoss(
            f"valuation undetermined: element is O(t^{self.prec}) with no visible term"
        )

    def val_lower(self) -> GammaValue:
        """A certified lower bound for the valuation (never raises)."""
        if self.terms:
            return gamma(min(self.terms))
        return INF if self.is_exact else self.prec

    def leading_coeff(self):
        if not self.terms:
            raise ZeroArgument("no leading coefficient: no visible term")
        return self.terms[min(self.terms)]

    def coeff(self, g):
        """Coefficient at exponent g; requires g below the precision."""
        g = Fraction(g)
        if self.prec.is_finite and g >= self.prec.value:
            raise PrecisionLoss(f"coefficient at t^{g} beyond O(t^{self.prec})")
        return self.terms.get(g, self.ctx.base.zero())

    # --- arithmetic ---

    def __add__(self, other):
        other = self._coerce(other)
        ctx, x, y = common_context(self, other)
        prec = gmin(x.prec, y.prec)
        terms = dict(x.terms)
        for g, c in y.terms.items():
            s = ctx.base.add(terms.get(g, ctx.base.zero()), c)
            if ctx.base.is_zero(s):
                terms.pop(g, None)
            else:
                terms[g] = s
        return LaurentElement(ctx, terms, prec)

    __radd__ = __add__

    def __neg__(self):
        base = self.ctx.base
        return LaurentElement(
            self.ctx, {g: base.neg(c) for g, c in self.terms.items()}, self.prec
        )

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ctx, x, y = common_context(self, other)
        prec = gmin(x.prec + y.val_lower(), y.prec + x.val_lower())
        base = ctx.base
        terms = {}
        for g1, c1 in x.terms.items():
            for g2, c2 in y.terms.items():
                g = g1 + g2
                if prec.is_finite and g >= prec.value:
                    continue
                s = base.add(terms.get(g, base.zero()), base.mul(c1, c2))
                if base.is_zero(s):
                    terms.pop(g, None)
                else:
                    terms[g] = s
        return LaurentElement(ctx, terms, prec)

    __rmul__ = __mul__

    def inverse(self) -> "LaurentElement":
        """Multiplicative inverse, truncating per the module rules."""
        if self.is_exact_zero:
            raise DivisionByZero("inverse of exact 0")
        m = self.valuation().finite()  # PrecisionLoss if no visible term
        base = self.ctx.base
        if self.is_monomial():
            ((g, c),) = self.terms.items()
            return self.ctx.monomial(base.inv(c), -g)
        # unit-part inversion: x = c0 t^m (1 + w), v(w) > 0
        unit_prec = (self.prec - m) if self.prec.is_finite else gamma(self.ctx.prec)
        if unit_prec <= gamma(0):
            raise PrecisionLoss("no precision left to invert at")
        c0 = self.terms[Fraction(m)]
        c0inv = base.inv(c0)
        w_terms = {
            g - m: base.mul(c0inv, c) for g, c in self.terms.items() if g != m
        }
        w = LaurentElement(self.ctx, w_terms, self.prec - m if self.prec.is_finite else INF)
        q = unit_prec.finite()
        acc = self.ctx.one().truncate(q)
        pw = self.ctx.one()
        k = 0
        step = w.val_lower()
        while step.is_finite and step.value * (k + 1) < q:
            k += 1
            pw = (pw * (-w)).truncate(q)
            acc = acc + pw
            if not pw.terms:
                break
        acc = acc.truncate(q)
        inv_terms = {g - m: base.mul(c0inv, c) for g, c in acc.terms.items()}
        return LaurentElement(self.ctx, inv_terms, unit_prec - m)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("integer exponent required; use pow_rational")
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        b = self
        while n:
            if n & 1:
                result = result * b
            b = b * b if n > 1 else b
            n >>= 1
        return result

    def pow_rational(self, r) -> "LaurentElement":
        """Monomial powers with rational exponent (used by t^(n/e) literals)."""
        r = Fraction(r)
        if r.denominator == 1:
            return self ** int(r)
        if not self.is_monomial():
            raise Unsupported("rational exponent on a non-monomial")
        ((g, c),) = self.terms.items()
        root = self.ctx.base.nth_root(c, r.denominator)
        if root is None:
            raise Unsupported(f"coefficient {c} has no {r.denominator}th root")
        return self.ctx.monomial(root, g / r.denominator) ** r.numerator

    def truncate(self, g) -> "LaurentElement":
        """Forget everything from exponent g on: result has prec <= g."""
        g = gamma(g)
        return LaurentElement(self.ctx, self.terms, gmin(self.prec, g))

    def shift(self, g) -> "LaurentElement":
        """Multiply by t^g exactly."""
        g = Fraction(g)
        return LaurentElement(
            self.ctx,
            {h + g: c for h, c in self.terms.items()},
            self.prec + g if self.prec.is_finite else INF,
        )

    def _coerce(self, other):
        if isinstance(other, LaurentElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        raise TypeError(f"cannot coerce {other!r} into {self.ctx!r}")

    # --- residue-sort maps ---

    def residue(self):
        """Image in k = O/M; requires certified integrality."""
        from .errors import NotIntegral

        if self.terms and min(self.terms) < 0:
            raise NotIntegral(f"valuation {min(self.terms)} < 0")
        if self.prec.is_finite and self.prec <= gamma(0):
            raise PrecisionLoss("constant term beyond stored precision")
        return self.terms.get(Fraction(0), self.ctx.base.zero())

    def rv(self) -> "RVElement":
        """Class in RV = K^x/(1+M), encoded as (valuation, leading coefficient)."""
        if self.is_exact_zero:
            raise ZeroArgument("rv of 0")
        v = self.valuation()  # PrecisionLoss when no term is visible
        return RVElement(self.ctx, v, self.terms[min(self.terms)])

    # --- comparisons ---

    def agrees(self, other) -> bool:
        """True when self - other has no visible term (equal to joint precision)."""
        d = self - self._coerce(other)
        return not d.terms

    def same(self, other) -> bool:
        """Identical stored data (terms and precision)."""
        other = self._coerce(other)
        return self.terms == other.terms and self.prec == other.prec

    def __eq__(self, other):
        if not isinstance(other, (LaurentElement, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        d = self - other
        if d.terms:
            return False
        return d.is_exact

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.prec))

    def sort_key(self):
        """Deterministic total order key used for canonical renderings."""
        base = self.ctx.base
        term_key = tuple(
            (g, base.sort_key(c)) for g, c in sorted(self.terms.items())
        )
        prec_key = (1,) if self.prec.is_infinite else (0, self.prec.value)
        return (term_key, prec_key)

    # --- rendering ---

    def render(self) -> str:
        base = self.ctx.base
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            neg = isinstance(base, Rationals) and c < 0
            mag = -c if neg else c
            body = _term_str(base.render(mag), g)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        if self.prec.is_finite:
            oh = f"O({_term_str('1', self.prec.value)})"
            parts.append(oh if not parts else "+ " + oh)
        if not parts:
            return "0"
        return " ".join(parts)

    def __repr__(self):
        return f"<{self.render()}>"

    def __str__(self):
        return self.render()


def _term_str(coeff_str: str, g: Fraction) -> str:
    if g == 0:
        return coeff_str
    t = "t" if g == 1 else f"t^{g}"
    return t if coeff_str == "1" else f"{coeff_str}*{t}"


class RVElement:
    """A class in RV: the pair (v(x), leading coefficient of x)."""

    __slots__ = ("ctx", "gamma", "lead")

    def __init__(self, ctx: FieldContext, g: GammaValue, lead):
        if ctx.base.is_zero(lead):
            raise ZeroArgument("rv lead must be nonzero")
        self.ctx = ctx
        self.gamma = gamma(g)
        self.lead = ctx.base.coerce(lead)

    def __mul__(self, other):
        if not isinstance(other, RVElement):
            return NotImplemented
        return RVElement(
            self.ctx, self.gamma + other.gamma, self.ctx.base.mul(self.lead, other.lead)
        )

    def inverse(self):
        return RVElement(self.ctx, -self.gamma, self.ctx.base.inv(self.lead))

    def __eq__(self, other):
        return (
            isinstance(other, RVElement)
            and other.gamma == self.gamma
            and other.lead == self.lead
        )

    def __hash__(self):
        return hash((self.gamma, self.lead))

    def __repr__(self):
        return f"rv({self.gamma}, {self.ctx.base.render(self.lead)})"


def rv_section(ctx: FieldContext, g) -> RVElement:
    """The splitting Gamma -> RV sending g to rv(t^g)."""
    return RVElement(ctx, gamma(g), 1)


# --- the literal / expression grammar -------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := unary (('*'|'/') unary)*
#   unary  := '-' unary | power
#   power  := atom ['^' SRAT]        (rational exponents only on monomials)
#   atom   := RAT | 't' | 'O' '(' expr ')' | '(' expr ')'
#
# Plain Laurent literals like  3*t^-2 + 1/4*t + t^3 + O(t^10)  are the
# subset without parentheses; exponents are read greedily as rationals, so
# t^1/2 means t^(1/2).


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def eat_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])

    def try_rational_after_caret(self) -> Fraction:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        num = self.eat_int()
        save = self.pos
        if self.peek() == "/":
            self.pos += 1
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos].isdigit():
                den = self.eat_int()
                return Fraction(sign * num, den)
            self.pos = save
        return Fraction(sign * num)

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)


def parse_laurent(ctx: FieldContext, text: str) -> LaurentElement:
    sc = _Scanner(text)
    value = _parse_expr(ctx, sc)
    if not sc.at_end():
        raise ParseError("trailing input", sc.pos)
    return value


def _parse_expr(ctx, sc):
    value = _parse_term(ctx, sc)
    while sc.peek() in ("+", "-"):
        op = sc.peek()
        sc.pos += 1
        rhs = _parse_term(ctx, sc)
        value = value + rhs if op == "+" else value - rhs
    return value


def _parse_term(ctx, sc):
    value = _parse_unary(ctx, sc)
    while sc.peek() in ("*", "/"):
        op = sc.peek()
        sc.pos += 1
        rhs = _parse_unary(ctx, sc)
        value = value * rhs if op == "*" else value / rhs
    return value


def _parse_unary(ctx, sc):
    if sc.peek() == "-":
        sc.pos += 1
        return -_parse_unary(ctx, sc)
    return _parse_power(ctx, sc)


def _parse_power(ctx, sc):
    value = _parse_atom(ctx, sc)
    if sc.peek() == "^":
        sc.pos += 1
        exp = sc.try_rational_after_caret()
        value = value.pow_rational(exp)
    return value


def _parse_atom(ctx, sc):
    ch = sc.peek()
    if ch == "":
        raise ParseError("unexpected end of input", sc.pos)
    if ch == "(":
        sc.pos += 1
        value = _parse_expr(ctx, sc)
        sc.expect(")")
        return value
    if ch == "O":
        sc.pos += 1
        sc.expect("(")
        inner = _parse_expr(ctx, sc)
        sc.expect(")")
        if inner.is_exact_zero:
            raise ParseError("O(0) is meaningless", sc.pos)
        return ctx.oh(inner.valuation())
    if ch == "t":
        sc.pos += 1
        return ctx.t_power(1)
    if ch.isdigit():
        num = sc.eat_int()
        return ctx.const(num)
    raise ParseError(f"unexpected character {ch!r}", sc.pos)
