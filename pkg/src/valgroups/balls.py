"""Valuation balls in K and the archimedean o(a)/O(a) membership tests.

A ball is Closed(c, r) = {v(x-c) >= r}, Open(c, r) = {v(x-c) > r}, a single
Point(c), or the whole field AllK.  Because the realized value group is the
discrete lattice (1/e)Z, an open ball of radius r is the same set as the
closed ball of radius r + 1/e; all set-level decisions (containment,
comparison, equality) go through that closed normal form, so the lattice
trichotomy — equal, nested, or disjoint — is exact.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .errors import PrecisionLoss
from .gamma import INF, GammaValue, gamma
from .laurent import FieldContext, LaurentElement


class BallKind(enum.Enum):
    CLOSED = "closed"
    OPEN = "open"
    POINT = "point"
    ALLK = "allK"


class Ball:
    """A closed/open valuation ball, a point, or all of K."""

    __slots__ = ("kind", "center", "radius")

    def __init__(self, kind: BallKind, center=None, radius=None):
        self.kind = kind
        if kind is BallKind.ALLK:
            self.center = None
            self.radius = None
            return
        if center is None:
            raise ValueError("ball needs a center")
        self.center = center
        if kind is BallKind.POINT:
            self.radius = INF
        else:
            self.radius = gamma(radius)
            if self.radius.is_infinite:
                raise ValueError("closed/open balls need a finite radius")

    # --- constructors ---

    @staticmethod
    def closed(center: LaurentElement, r) -> "Ball":
        return Ball(BallKind.CLOSED, center, gamma(r))

    @staticmethod
    def open(center: LaurentElement, r) -> "Ball":
        return Ball(BallKind.OPEN, center, gamma(r))

    @staticmethod
    def point(center: LaurentElement) -> "Ball":
        return Ball(BallKind.POINT, center)

    @staticmethod
    def all(ctx_unused=None) -> "Ball":
        return Ball(BallKind.ALLK)

    # --- closed normal form on the lattice (1/e)Z ---

    def effective_radius(self) -> GammaValue:
        """Radius of the same set written as a closed ball."""
        if self.kind is BallKind.ALLK:
            raise ValueError("AllK has no radius")
        if self.kind is BallKind.OPEN:
            return self.radius + Fraction(1, self.center.ctx.e)
        return self.radius

    def as_closed(self) -> "Ball":
        """Rewrite as Closed/Point/AllK; open balls become closed ones."""
        if self.kind is BallKind.OPEN:
            return Ball.closed(self.center, self.effective_radius())
        return self

    # --- membership and comparison ---

    def contains(self, x: LaurentElement) -> bool:
        """Exact membership; PrecisionLoss when v(x - c) is not decided."""
        if self.kind is BallKind.ALLK:
            return True
        d = x - self.center
        if self.kind is BallKind.POINT:
            if d.definitely_nonzero():
                return False
            if d.is_exact:
                return True
            raise PrecisionLoss("point membership undecided at stored precision")
        r = self.effective_radius()
        lo = d.val_lower()
        if lo >= r:
            if d.terms or d.is_exact or d.prec >= r:
                return True
            raise PrecisionLoss("ball membership undecided")
        if d.terms:
            return False
        raise PrecisionLoss("ball membership undecided at stored precision")

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return compare(self, other) is BallRelation.EQUAL

    def __hash__(self):
        if self.kind is BallKind.ALLK:
            return hash("AllK")
        b = self.as_closed()
        return hash((b.radius, canonical_center(b).sort_key()))

    def __repr__(self):
        if self.kind is BallKind.ALLK:
            return "Ball(AllK)"
        if self.kind is BallKind.POINT:
            return f"Point({self.center.render()})"
        sym = ">=" if self.kind is BallKind.CLOSED else ">"
        return f"Ball(v(x - ({self.center.render()})) {sym} {self.radius})"


class BallRelation(enum.Enum):
    EQUAL = "equal"
    FIRST_INSIDE_SECOND = "first_inside_second"
    SECOND_INSIDE_FIRST = "second_inside_first"
    DISJOINT = "disjoint"


def _center_distance(a: Ball, b: Ball) -> GammaValue:
    d = a.center - b.center
    try:
        return d.valuation()
    except PrecisionLoss:
        # no visible term: the centers agree to the stored precision
        if d.prec >= a.effective_radius() and d.prec >= b.effective_radius():
            return INF
        raise


def compare(a: Ball, b: Ball) -> BallRelation:
    """The lattice relation of two balls (as sets)."""
    if a.kind is BallKind.ALLK and b.kind is BallKind.ALLK:
        return BallRelation.EQUAL
    if a.kind is BallKind.ALLK:
        return BallRelation.SECOND_INSIDE_FIRST
    if b.kind is BallKind.ALLK:
        return BallRelation.FIRST_INSIDE_SECOND
    ra, rb = a.effective_radius(), b.effective_radius()
    d = _center_distance(a, b)
    a_in_b = d >= rb and ra >= rb
    b_in_a = d >= ra and rb >= ra
    if a_in_b and b_in_a:
        return BallRelation.EQUAL
    if a_in_b:
        return BallRelation.FIRST_INSIDE_SECOND
    if b_in_a:
        return BallRelation.SECOND_INSIDE_FIRST
    return BallRelation.DISJOINT


def canonical_center(ball: Ball) -> LaurentElement:
    """The minimal-support representative of a ball's center.

    For a closed ball of radius r the center matters modulo B_r, so the
    canonical representative keeps exactly the terms of exponent < r.
    Requires the stored center precision to reach r.
    """
    if ball.kind is BallKind.ALLK:
        raise ValueError("AllK has no center")
    c = ball.center
    if ball.kind is BallKind.POINT:
        return c
    r = ball.as_closed().radius
    if c.prec < r:
        raise PrecisionLoss(f"center known to O(t^{c.prec}) but radius is {r}")
    terms = {g: cf for g, cf in c.terms.items() if g < r.finite()}
    return LaurentElement(c.ctx, terms, INF)


def o_O_membership(x: LaurentElement, a: LaurentElement):
    """Membership of x in o(a) and O(a) for the archimedean value group.

    With Gamma of rank one the convex subgroups degenerate: for v(a) > 0,
    o(a) = {0} and O(a) = K; both are empty when v(a) <= 0.  Returns the
    pair (in_o, in_O).
    """
    if a.is_exact_zero:
        raise ZeroDivisionError("o(a)/O(a) need a nonzero a")
    va = a.valuation()
    if not (va > gamma(0)):
        return False, False
    vx = x.val_lower() if not x.terms else x.valuation()
    if not x.terms and not x.is_exact:
        raise PrecisionLoss("v(x) undetermined")
    return (vx.is_infinite, True)
