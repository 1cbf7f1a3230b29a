"""Coefficient arithmetic for the two realized residue fields.

``Rationals`` models a characteristic-0 residue field exactly (elements are
``fractions.Fraction``).  ``PrimeField`` models F_p for a prime p, with
elements stored as ints in ``range(p)``.  Primes 2 and 3 are refused by
default because the elliptic-curve theory implemented downstream needs
residue characteristic at least 5.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, Unsupported


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def integer_nth_root(n: int, k: int):
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return n
    lo, hi = 1, 1 << ((n.bit_length() + k - 1) // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


class Rationals:
    """The residue field Q (stand-in for any characteristic-0 residue)."""

    char = 0

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")

    def coerce(self, c) -> Fraction:
        return Fraction(c)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def render(self, a) -> str:
        return str(a)

    def sort_key(self, a):
        return (a.numerator, a.denominator)

    def nth_root(self, a, n: int):
        """Exact n-th root in Q, or None when a is not an n-th power."""
        a = Fraction(a)
        if a == 0:
            return Fraction(0)
        if a < 0:
            if n % 2 == 0:
                return None
            r = self.nth_root(-a, n)
            return None if r is None else -r
        num = integer_nth_root(a.numerator, n)
        den = integer_nth_root(a.denominator, n)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def is_nth_power(self, a, n: int) -> bool:
        return self.nth_root(a, n) is not None


class PrimeField:
    """The residue field F_p, p prime; p in {2, 3} only with consent."""

    def __init__(self, p: int, allow_char_23: bool = False):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p in (2, 3) and not allow_char_23:
            raise Unsupported("residue characteristic 2 and 3 are excluded by default")
        self.p = p

    @property
    def char(self):
        return self.p

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def coerce(self, c) -> int:
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise DivisionByZero(f"denominator divisible by {self.p}")
            return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
        return int(c) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in F{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def render(self, a) -> str:
        return str(a % self.p)

    def sort_key(self, a):
        return (a % self.p, 1)

    def nth_root(self, a, n: int):
        """Some n-th root of a in F_p, or None; brute force (p is small)."""
        a %= self.p
        if a == 0:
            return 0
        for c in range(1, self.p):
            if pow(c, n, self.p) == a:
                return c
        return None

    def is_nth_power(self, a, n: int) -> bool:
        return self.nth_root(a, n) is not None
