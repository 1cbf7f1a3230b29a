"""Dense exact polynomials over Q and rational functions in one variable.

Small utility kernel used for two independent checks: the formal
verification of the uniformization series (coefficients live in Q(u)) and
rational root extraction for division polynomials on residue curves.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import Unsupported


class QPoly:
    """A polynomial with Fraction coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "QPoly":
        return QPoly([Fraction(c)])

    @staticmethod
    def x() -> "QPoly":
        return QPoly([0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def __add__(self, other):
        other = other if isinstance(other, QPoly) else QPoly.const(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self):
        return QPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, QPoly) else QPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return QPoly.const(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        acc = QPoly.const(1)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            n >>= 1
            if n:
                base = base * base
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        return isinstance(other, QPoly) and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "QPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        den = other.coeffs
        q = [Fraction(0)] * max(0, len(rem) - len(den) + 1)
        inv_lead = 1 / den[-1]
        for i in range(len(rem) - len(den), -1, -1):
            f = rem[i + len(den) - 1] * inv_lead
            q[i] = f
            if f:
                for j, d in enumerate(den):
                    rem[i + j] -= f * d
        return QPoly(q), QPoly(rem)

    def gcd(self, other: "QPoly") -> "QPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.leading())

    def derivative(self) -> "QPoly":
        return QPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def render(self, var="x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*{var}" if c != 1 else var)
            else:
                parts.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"QPoly({self.render()})"


def _divisors(n: int, bound=10**15):
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of 0")
    if n > bound:
        raise Unsupported("coefficients too large for exact rational root search")
    out = [1]
    d = 2
    m = n
    factors = {}
    while d * d <= m:
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    for p, k in factors.items():
        out = [a * p**i for a in out for i in range(k + 1)]
    return sorted(set(out))


def rational_roots(poly: QPoly):
    """All rational roots of the polynomial, exactly."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has every root")
    coeffs = list(poly.coeffs)
    roots = []
    # factor out powers of x
    k = 0
    while coeffs[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        coeffs = coeffs[k:]
    if len(coeffs) == 1:
        return sorted(set(roots))
    from math import lcm

    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if poly.evaluate(cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


class RatFunc:
    """A reduced fraction of QPolys with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, QPoly) else QPoly.const(num)
        den = QPoly.const(1) if den is None else (den if isinstance(den, QPoly) else QPoly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = QPoly(), QPoly.const(1)
            return
        g = num.gcd(den)
        if g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num, self.den = num, den

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(QPoly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc.const(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.const(other) - self

    def __mul__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc.const(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc.const(other)
        return self * other.inverse()

    def __eq__(self, other):
        other = other if isinstance(other, RatFunc) else RatFunc.const(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def render(self, var="u") -> str:
        if self.den == QPoly.const(1):
            return self.num.render(var)
        return f"({self.num.render(var)}) / ({self.den.render(var)})"

    def __repr__(self):
        return f"RatFunc({self.render()})"
