"""Value-group elements: rationals together with a maximal element INF.

The realized value group is always Gamma = (1/e)Z for a fixed ramification
index e, sitting inside Q.  A GammaValue is either a finite rational or the
distinguished infinity that the valuation assigns to zero.
"""

from __future__ import annotations

import functools
from fractions import Fraction


@functools.total_ordering
class GammaValue:
    """A rational value-group element, or infinity (``value is None``)."""

    __slots__ = ("value",)

    def __init__(self, value):
        if value is None:
            self.value = None
        elif isinstance(value, GammaValue):
            self.value = value.value
        else:
            self.value = Fraction(value)

    @property
    def is_infinite(self):
        return self.value is None

    @property
    def is_finite(self):
        return self.value is not None

    def finite(self):
        """Return the underlying Fraction, refusing infinity."""
        if self.value is None:
            raise ValueError("expected a finite value-group element")
        return self.value

    def __eq__(self, other):
        other = GammaValue(other) if not isinstance(other, GammaValue) else other
        return self.value == other.value

    def __lt__(self, other):
        other = GammaValue(other) if not isinstance(other, GammaValue) else other
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __hash__(self):
        return hash(("GammaValue", self.value))

    def __add__(self, other):
        other = GammaValue(other) if not isinstance(other, GammaValue) else other
        if self.value is None or other.value is None:
            return INF
        return GammaValue(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = GammaValue(other) if not isinstance(other, GammaValue) else other
        if other.value is None:
            raise ValueError("cannot subtract infinity")
        if self.value is None:
            return INF
        return GammaValue(self.value - other.value)

    def __neg__(self):
        if self.value is None:
            raise ValueError("cannot negate infinity")
        return GammaValue(-self.value)

    def __mul__(self, n):
        # scaling by a nonnegative rational; n * INF = INF for n > 0
        n = Fraction(n)
        if self.value is None:
            if n <= 0:
                raise ValueError("cannot scale infinity by a nonpositive factor")
            return INF
        return GammaValue(self.value * n)

    __rmul__ = __mul__

    def __abs__(self):
        if self.value is None:
            return INF
        return GammaValue(abs(self.value))

    def __repr__(self):
        return f"GammaValue({self.value})" if self.value is not None else "GammaValue(INF)"

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INF = GammaValue(None)


def gamma(x) -> GammaValue:
    """Coerce ``x`` (rational, string, or GammaValue) to a GammaValue."""
    if isinstance(x, GammaValue):
        return x
    if isinstance(x, str) and x.strip() in {"inf", "oo", "infinity"}:
        return INF
    return GammaValue(Fraction(x))


def gmin(*values) -> GammaValue:
    return min((gamma(v) for v in values), default=INF)


def gmax(*values) -> GammaValue:
    vals = [gamma(v) for v in values]
    if not vals:
        raise ValueError("gmax of no values")
    return max(vals)


def lattice_ceil(x: Fraction, e: int) -> Fraction:
    """Smallest element of (1/e)Z that is >= x."""
    n = x * e
    return Fraction(-((-n.numerator) // n.denominator), e)


def lattice_floor(x: Fraction, e: int) -> Fraction:
    """Largest element of (1/e)Z that is <= x."""
    n = x * e
    return Fraction(n.numerator // n.denominator, e)


def lattice_ceil_strict(x: Fraction, e: int) -> Fraction:
    """Smallest element of (1/e)Z that is > x."""
    c = lattice_ceil(x, e)
    return c if c > x else c + Fraction(1, e)


def in_lattice(x: Fraction, e: int) -> bool:
    return (x * e).denominator == 1
