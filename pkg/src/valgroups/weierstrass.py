"""Weierstrass curves over K: invariants, the chord-tangent group law,
and changes of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t.

The discriminant is the standard integer polynomial in the coefficients;
for curves of the shape y^2 + xy = x^3 + a4 x + a6 it reduces to
-a6 + a4^2 + 72 a4 a6 - 64 a4^3 - 432 a6^2, which the Tate module uses as
a cross-check.
"""

from __future__ import annotations

from .errors import NotElliptic, PrecisionLoss
from .gamma import INF, GammaValue, gamma
from .laurent import FieldContext, LaurentElement


class CurvePoint:
    """A point of E(K): the point at infinity or an affine pair."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @staticmethod
    def infinity() -> "CurvePoint":
        return CurvePoint()

    def render(self) -> str:
        if self.is_infinity:
            return "inf"
        return f"({self.x.render()}, {self.y.render()})"

    def __repr__(self):
        return f"CurvePoint[{self.render()}]"

    def agrees(self, other: "CurvePoint") -> bool:
        """Coordinate agreement to the joint stored precision."""
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x.agrees(other.x) and self.y.agrees(other.y)


class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with nonzero discriminant."""

    __slots__ = ("ctx", "a1", "a2", "a3", "a4", "a6", "_cache")

    def __init__(self, a1, a2, a3, a4, a6, check=True):
        self.ctx = a1.ctx
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        self._cache = {}
        if check:
            d = self.disc()
            if d.is_exact_zero:
                raise NotElliptic("discriminant is zero")
            if not d.definitely_nonzero():
                raise PrecisionLoss("discriminant not visibly nonzero; raise the precision")

    @staticmethod
    def short(ctx: FieldContext, A, B) -> "WeierstrassCurve":
        z = ctx.zero()
        A = A if isinstance(A, LaurentElement) else ctx.const(A)
        B = B if isinstance(B, LaurentElement) else ctx.const(B)
        return WeierstrassCurve(z, z, z, A, B)

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # --- invariants ---

    def _memo(self, name, fn):
        if name not in self._cache:
            self._cache[name] = fn()
        return self._cache[name]

    def b2(self):
        return self._memo("b2", lambda: self.a1 * self.a1 + 4 * self.a2)

    def b4(self):
        return self._memo("b4", lambda: 2 * self.a4 + self.a1 * self.a3)

    def b6(self):
        return self._memo("b6", lambda: self.a3 * self.a3 + 4 * self.a6)

    def b8(self):
        def make():
            return (
                self.a1 * self.a1 * self.a6
                + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4
                + self.a2 * self.a3 * self.a3
                - self.a4 * self.a4
            )

        return self._memo("b8", make)

    def c4(self):
        return self._memo("c4", lambda: self.b2() * self.b2() - 24 * self.b4())

    def c6(self):
        def make():
            b2 = self.b2()
            return -(b2 * b2 * b2) + 36 * b2 * self.b4() - 216 * self.b6()

        return self._memo("c6", make)

    def disc(self):
        def make():
            b2, b4, b6, b8 = self.b2(), self.b4(), self.b6(), self.b8()
            return -(b2 * b2) * b8 - 8 * (b4**3) - 27 * (b6 * b6) + 9 * b2 * b4 * b6

        return self._memo("disc", make)

    def j_invariant(self):
        return self._memo("j", lambda: (self.c4() ** 3) / self.disc())

    def v_disc(self) -> GammaValue:
        return self.disc().valuation()

    def is_integral(self) -> bool:
        return all(c.val_lower() >= gamma(0) for c in self.coefficients())

    # --- the curve equation ---

    def equation_residual(self, x, y) -> LaurentElement:
        """y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 at (x, y)."""
        return (
            y * y
            + self.a1 * x * y
            + self.a3 * y
            - x**3
            - self.a2 * x * x
            - self.a4 * x
            - self.a6
        )

    def point(self, x, y, check=True) -> CurvePoint:
        x = x if isinstance(x, LaurentElement) else self.ctx.const(x)
        y = y if isinstance(y, LaurentElement) else self.ctx.const(y)
        if check:
            r = self.equation_residual(x, y)
            if r.definitely_nonzero():
                raise ValueError(f"({x.render()}, {y.render()}) is not on the curve: {r.render()}")
        return CurvePoint(x, y)

    def on_curve(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        return not self.equation_residual(P.x, P.y).definitely_nonzero()

    # --- group law (chord and tangent) ---

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return P
        return CurvePoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1 = P.x, P.y
        x2, y2 = Q.x, Q.y
        dx = x2 - x1
        if dx.definitely_nonzero():
            lam = (y2 - y1) / dx
            nu = (y1 * x2 - y2 * x1) / dx
        elif dx.is_exact:
            dy = y2 - y1
            if dy.definitely_nonzero():
                return CurvePoint.infinity()  # Q = -P
            if not dy.is_exact:
                raise PrecisionLoss("cannot separate P + Q from infinity")
            den = 2 * y1 + self.a1 * x1 + self.a3
            if den.is_exact_zero:
                return CurvePoint.infinity()  # 2-torsion
            if not den.definitely_nonzero():
                raise PrecisionLoss("tangent slope undetermined")
            lam = (3 * x1 * x1 + 2 * self.a2 * x1 + self.a4 - self.a1 * y1) / den
            nu = (-(x1**3) + self.a4 * x1 + 2 * self.a6 - self.a3 * y1) / den
        else:
            raise PrecisionLoss("cannot decide whether the x-coordinates match")
        x3 = lam * lam + self.a1 * lam - self.a2 - x1 - x2
        y3 = -(lam + self.a1) * x3 - nu - self.a3
        return CurvePoint(x3, y3)

    def sub(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        return self.add(P, self.neg(Q))

    def mul(self, P: CurvePoint, n: int) -> CurvePoint:
        if n < 0:
            return self.mul(self.neg(P), -n)
        acc = CurvePoint.infinity()
        base = P
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    def render(self) -> str:
        return (
            f"y^2 + ({self.a1.render()})xy + ({self.a3.render()})y = "
            f"x^3 + ({self.a2.render()})x^2 + ({self.a4.render()})x + ({self.a6.render()})"
        )

    def __repr__(self):
        return f"WeierstrassCurve[{self.render()}]"


class TransformData:
    """The change of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""

    __slots__ = ("u", "r", "s", "t")

    def __init__(self, u, r, s, t):
        if u.is_exact_zero:
            raise ValueError("u must be nonzero")
        self.u, self.r, self.s, self.t = u, r, s, t

    @staticmethod
    def identity(ctx: FieldContext) -> "TransformData":
        return TransformData(ctx.one(), ctx.zero(), ctx.zero(), ctx.zero())

    @staticmethod
    def scaling(ctx: FieldContext, u) -> "TransformData":
        return TransformData(u, ctx.zero(), ctx.zero(), ctx.zero())

    def compose(self, other: "TransformData") -> "TransformData":
        """First apply self, then other (in primed coordinates)."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return TransformData(
            u1 * u2,
            u1 * u1 * r2 + r1,
            u1 * s2 + s1,
            u1**3 * t2 + u1 * u1 * s1 * r2 + t1,
        )

    def is_admissible(self) -> bool:
        """u a unit and r, s, t integral: preserves minimal integral models."""
        zero = gamma(0)
        return (
            self.u.valuation() == zero
            and self.r.val_lower() >= zero
            and self.s.val_lower() >= zero
            and self.t.val_lower() >= zero
        )

    def push_point(self, P: CurvePoint) -> CurvePoint:
        """Map a point of the transformed curve E' back to E."""
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        x = u * u * P.x + r
        y = u**3 * P.y + u * u * s * P.x + t
        return CurvePoint(x, y)

    def pull_point(self, P: CurvePoint) -> CurvePoint:
        """Map a point of E to the transformed curve E'."""
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        xs = (P.x - r) / (u * u)
        ys = (P.y - s * (P.x - r) - t) / (u**3)
        return CurvePoint(xs, ys)

    def render(self) -> str:
        return (
            f"u={self.u.render()}, r={self.r.render()}, "
            f"s={self.s.render()}, t={self.t.render()}"
        )

    def __repr__(self):
        return f"TransformData[{self.render()}]"


def transform(C: WeierstrassCurve, T: TransformData) -> WeierstrassCurve:
    """The transformed curve E', with u^12 disc(E') = disc(E) verified."""
    u, r, s, t = T.u, T.r, T.s, T.t
    a1, a2, a3, a4, a6 = C.coefficients()
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / (u * u)
    na3 = (a3 + r * a1 + 2 * t) / (u**3)
    na4 = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / (u**4)
    na6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / (u**6)
    out = WeierstrassCurve(na1, na2, na3, na4, na6)
    if not (u**12 * out.disc() - C.disc()).agrees(C.ctx.zero()):
        raise AssertionError("u^12 disc' != disc: transform table misapplied")
    return out
