"""Reduction theory for Weierstrass curves over K (residue char not 2, 3).

Minimal integral models via the short form y^2 = x^3 + Ax + B (on the
lattice (1/e)Z the model is minimal iff v(A) < 4/e or v(B) < 6/e; when 6
divides e the stronger divisible-value-group certificate v(A) = 0 or
v(B) = 0 may hold), reduction types, the reduction map and its Hensel
section, the filtration E_0 > E_0^- > E_r > E_r^- by v(-x/y), n-division
through the reduction, and the component map w for Tate-shaped curves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CharNotSupported,
    NotDivisible,
    NotInE0,
    NotSmooth,
    PrecisionLoss,
    Unsupported,
    WrongShape,
)
from .gamma import INF, GammaValue, gamma, lattice_floor
from .hensel import hensel_root
from .laurent import FieldContext, LaurentElement
from .ratfunc import QPoly, rational_roots
from .residues import PrimeField, Rationals
from .weierstrass import CurvePoint, TransformData, WeierstrassCurve, transform


def _require_char(ctx: FieldContext):
    if isinstance(ctx.base, PrimeField) and ctx.base.p in (2, 3):
        raise CharNotSupported("residue characteristic 2 and 3 are not supported")


def _require_integral(C: WeierstrassCurve):
    if not C.is_integral():
        raise ValueError("an integral model is required here")


# --- minimal models ---------------------------------------------------------


@dataclass
class MinimalModel:
    """Short minimal integral model with the transform that produced it."""

    curve: WeierstrassCurve
    T: TransformData  # curve == transform(original, T)
    v_disc: GammaValue
    A: LaurentElement
    B: LaurentElement
    zgroup_minimal: bool  # v(A) < 4/e or v(B) < 6/e
    divisible_minimal: bool  # v(A) = 0 or v(B) = 0

    def to_jsonable(self):
        return {
            "A": self.A.render(),
            "B": self.B.render(),
            "u": self.T.u.render(),
            "v_disc": str(self.v_disc),
            "zgroup_minimal": self.zgroup_minimal,
            "divisible_minimal": self.divisible_minimal,
        }


def minimal_model(C: WeierstrassCurve) -> MinimalModel:
    """Complete the square and cube, then rescale to the minimal short model."""
    _require_char(C.ctx)
    ctx = C.ctx
    half = ctx.const(Fraction(1, 2)) if isinstance(ctx.base, Rationals) else ctx.const(
        ctx.base.inv(ctx.base.coerce(2))
    )
    third = ctx.const(Fraction(1, 3)) if isinstance(ctx.base, Rationals) else ctx.const(
        ctx.base.inv(ctx.base.coerce(3))
    )
    T1 = TransformData(ctx.one(), ctx.zero(), -C.a1 * half, -C.a3 * half)
    C1 = transform(C, T1)
    T2 = TransformData(ctx.one(), -C1.a2 * third, ctx.zero(), ctx.zero())
    C2 = transform(C1, T2)
    A, B = C2.a4, C2.a6
    # largest lattice gamma with 4*gamma <= v(A) and 6*gamma <= v(B)
    if A.is_exact_zero:
        g = lattice_floor(B.valuation().finite() / 6, ctx.e)
    elif B.is_exact_zero:
        g = lattice_floor(A.valuation().finite() / 4, ctx.e)
    else:
        g = lattice_floor(
            min(A.valuation().finite() / 4, B.valuation().finite() / 6), ctx.e
        )
    T3 = TransformData.scaling(ctx, ctx.t_power(g))
    Cmin = transform(C2, T3)
    T = T1.compose(T2).compose(T3)
    A2, B2 = Cmin.a4, Cmin.a6
    step = Fraction(1, ctx.e)
    vA = A2.valuation() if not A2.is_exact_zero else INF
    vB = B2.valuation() if not B2.is_exact_zero else INF
    zg = vA < gamma(4 * step) or vB < gamma(6 * step)
    dv = vA == gamma(0) or vB == gamma(0)
    return MinimalModel(Cmin, T, Cmin.v_disc(), A2, B2, zg, dv)


# --- reduction types --------------------------------------------------------


@dataclass(frozen=True)
class ReductionType:
    kind: str  # "good" | "additive" | "split_multiplicative" | "nonsplit_multiplicative"
    d: object = None  # square class of the node tangents, when nonsplit

    def render(self) -> str:
        if self.kind == "nonsplit_multiplicative":
            return f"nonsplit_multiplicative(d={self.d})"
        return self.kind


def _square_class_rational(d: Fraction) -> int:
    """The squarefree integer representing d modulo rational squares."""
    n = d.numerator * d.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    p = 2
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k % 2:
            out *= p
        p += 1
    return sign * out * n


def reduction_type(C: WeierstrassCurve) -> ReductionType:
    """Classify the reduction of the minimal model of C."""
    mm = minimal_model(C)
    return reduction_type_of_minimal(mm)


def reduction_type_of_minimal(mm: MinimalModel) -> ReductionType:
    ctx = mm.curve.ctx
    if mm.v_disc == gamma(0):
        return ReductionType("good")
    Abar = mm.A.residue()
    Bbar = mm.B.residue()
    base = ctx.base
    if base.is_zero(Abar) and base.is_zero(Bbar):
        return ReductionType("additive")  # cusp y^2 = x^3
    # node at the double root x0 of x^3 + Abar x + Bbar; tangents split
    # over k(sqrt(3 x0))
    x0 = base.mul(base.mul(base.coerce(-3), Bbar), base.inv(base.mul(base.coerce(2), Abar)))
    d = base.mul(base.coerce(3), x0)
    if base.is_nth_power(d, 2):
        return ReductionType("split_multiplicative")
    if isinstance(base, Rationals):
        return ReductionType("nonsplit_multiplicative", _square_class_rational(d))
    # F_p: report the least positive nonsquare as the class representative
    rep = next(c for c in range(2, base.p) if not base.is_nth_power(c, 2))
    return ReductionType("nonsplit_multiplicative", rep)


# --- the reduction map and its section --------------------------------------


def residue_curve(C: WeierstrassCurve) -> WeierstrassCurve:
    """The reduced curve over k, embedded as a constant curve (disc may vanish)."""
    _require_integral(C)
    ctx = C.ctx
    return WeierstrassCurve(
        *(ctx.const(a.residue()) for a in C.coefficients()), check=False
    )


def reduce_point(C: WeierstrassCurve, P: CurvePoint) -> CurvePoint:
    """The image of P under E(K) -> E~(k), as a constant-coordinate point."""
    _require_integral(C)
    if P.is_infinity:
        return CurvePoint.infinity()
    if P.x.terms and P.x.valuation() < gamma(0):
        return CurvePoint.infinity()  # v(x) < 0, equivalently v(y) < 0
    ctx = C.ctx
    return CurvePoint(ctx.const(P.x.residue()), ctx.const(P.y.residue()))


def is_singular_residue_point(C: WeierstrassCurve, Pbar: CurvePoint) -> bool:
    """Whether the reduced point is the singular point of the residue curve."""
    if Pbar.is_infinity:
        return False  # the point at infinity is always smooth
    red = residue_curve(C)
    x, y = Pbar.x, Pbar.y
    fx = red.a1 * y - 3 * x * x - 2 * red.a2 * x - red.a4
    fy = 2 * y + red.a1 * x + red.a3
    return (not fx.definitely_nonzero()) and (not fy.definitely_nonzero())


def lift_point(C: WeierstrassCurve, Pbar: CurvePoint, anchor: LaurentElement) -> CurvePoint:
    """Hensel-lift a smooth residue point to E(O), pinned by the anchor.

    For an affine residue point the anchor fixes the coordinate along which
    the implicit function theorem applies (the x-coordinate when the
    y-partial is a residue unit, else the y-coordinate).  For the residue
    point at infinity the anchor is the filtration parameter -x/y in M.
    """
    _require_integral(C)
    ctx = C.ctx
    target = gamma(ctx.prec)
    if Pbar.is_infinity:
        lam = anchor
        if not (lam.valuation() > gamma(0)):
            raise ValueError("the infinity anchor must lie in M")
        z = -lam  # z = x/y, so the filtration parameter -x/y equals anchor
        # w^2 + a1 z w^2 + a3 z^3 w = w^3 + a2 z^2 w^2 + a4 z^4 w + a6 z^6
        c0 = -C.a6 * z**6
        c1 = C.a3 * z**3 - C.a4 * z**4
        c2 = ctx.one() + C.a1 * z - C.a2 * z * z
        c3 = -ctx.one()
        w = hensel_root([c0, c1, c2, c3], ctx.one(), target)
        x = w / (z * z)
        y = w / (z**3)
        return CurvePoint(x, y)
    if is_singular_residue_point(C, Pbar):
        raise NotSmooth("cannot lift through the singular residue point")
    red = residue_curve(C)
    fy = 2 * Pbar.y + red.a1 * Pbar.x + red.a3
    if fy.definitely_nonzero():
        x = anchor
        if (x - Pbar.x).residue() != ctx.base.zero():
            raise ValueError("anchor does not reduce to the residue x-coordinate")
        c0 = -(x**3) - C.a2 * x * x - C.a4 * x - C.a6
        c1 = C.a1 * x + C.a3
        c2 = ctx.one()
        y0 = ctx.const(Pbar.y.residue())
        y = hensel_root([c0, c1, c2], y0, target)
        return CurvePoint(x, y)
    fx = red.a1 * Pbar.y - 3 * Pbar.x * Pbar.x - 2 * red.a2 * Pbar.x - red.a4
    if fx.definitely_nonzero():
        y = anchor
        if not (y - Pbar.y).residue() == ctx.base.zero():
            raise ValueError("anchor does not reduce to the residue y-coordinate")
        c0 = C.a6 - y * y - C.a3 * y
        c1 = C.a4 - C.a1 * y
        c2 = C.a2
        c3 = ctx.one()
        x0 = ctx.const(Pbar.x.residue())
        x = hensel_root([c0, c1, c2, c3], x0, target)
        return CurvePoint(x, y)
    raise NotSmooth("both partials vanish at the residue point")


# --- the filtration by v(-x/y) ----------------------------------------------


@dataclass
class FiltrationData:
    level: GammaValue  # INF for the point at infinity
    param: LaurentElement  # -x/y, or 0 for infinity


def filtration(C: WeierstrassCurve, P: CurvePoint) -> FiltrationData:
    """Level and parameter of P in E_0 > E_0^- > E_r; P must lie in E_0."""
    _require_integral(C)
    red = reduce_point(C, P)
    if is_singular_residue_point(C, red):
        raise NotInE0("the point reduces to the singular point")
    ctx = C.ctx
    if P.is_infinity:
        return FiltrationData(INF, ctx.zero())
    param = -(P.x / P.y)
    if red.is_infinity:
        level = param.valuation()
        if not level > gamma(0):
            raise PrecisionLoss("kernel parameter valuation not positive at precision")
        return FiltrationData(level, param)
    return FiltrationData(gamma(0), param)


def in_filtration_level(C, P, r, strict=False) -> bool:
    """Membership of P in E_r (or E_r^- when strict), for r > 0."""
    fd = filtration(C, P)
    return fd.level > gamma(r) if strict else fd.level >= gamma(r)


def quotient_class(C, P, r):
    """The class of P in E_r / E_r^- = B_r/B_r^-, i.e. res(param / t^r)."""
    fd = filtration(C, P)
    if fd.level < gamma(r):
        raise NotInE0(f"point is not in E_{r}")
    return fd.param.shift(-Fraction(r)).residue()


# --- division through the reduction -----------------------------------------


def _division_x_poly(red: WeierstrassCurve, n: int, x_target: Fraction) -> QPoly:
    """phi_n(X) - x_target * psi_n(X)^2 as an exact Q-polynomial (n = 2, 3)."""
    b2 = red.b2().residue()
    b4 = red.b4().residue()
    b6 = red.b6().residue()
    b8 = red.b8().residue()
    psi2_sq = QPoly([b6, 2 * b4, b2, 4])
    if n == 2:
        phi2 = QPoly([-b8, -2 * b6, -b4, 0, 1])
        return phi2 - QPoly.const(x_target) * psi2_sq
    if n == 3:
        psi3 = QPoly([b8, 3 * b6, 3 * b4, b2, 3])
        omega4 = QPoly(
            [
                b4 * b8 - b6 * b6,
                b2 * b8 - b4 * b6,
                10 * b8,
                10 * b6,
                5 * b4,
                b2,
                2,
            ]
        )
        phi3 = QPoly.x() * psi3 * psi3 - psi2_sq * omega4
        return phi3 - QPoly.const(x_target) * psi3 * psi3
    raise Unsupported(f"residue division implemented for n with prime factors 2, 3 only (got {n})")


def _torsion_x_poly(red: WeierstrassCurve, n: int) -> QPoly:
    """x-coordinates of the nontrivial n-torsion (n = 2, 3)."""
    b2 = red.b2().residue()
    b4 = red.b4().residue()
    b6 = red.b6().residue()
    b8 = red.b8().residue()
    if n == 2:
        return QPoly([b6, 2 * b4, b2, 4])
    return QPoly([b8, 3 * b6, 3 * b4, b2, 3])


def _points_with_x(red: WeierstrassCurve, xi: Fraction):
    """Rational points of the residue curve with the given x-coordinate."""
    base = red.ctx.base
    a1 = red.a1.residue()
    a3 = red.a3.residue()
    a2 = red.a2.residue()
    a4 = red.a4.residue()
    a6 = red.a6.residue()
    bq = a1 * xi + a3
    cq = -(xi**3 + a2 * xi * xi + a4 * xi + a6)
    disc = bq * bq - 4 * cq
    s = Rationals().nth_root(disc, 2)
    if s is None:
        return []
    out = []
    for sign in (1, -1):
        eta = Fraction(-bq + sign * s, 2)
        out.append(red.point(red.ctx.const(xi), red.ctx.const(eta), check=False))
        if s == 0:
            break
    return out


def residue_divide(red: WeierstrassCurve, R: CurvePoint, n: int):
    """All rational points S of the residue curve with n*S = R (k = Q only).

    This is the exact arithmetic the division of K-points is pinned to; n
    must factor into primes 2 and 3.
    """
    if not isinstance(red.ctx.base, Rationals):
        raise Unsupported("residue division is implemented over Q")
    factors = []
    m = n
    for p in (2, 3):
        while m % p == 0:
            factors.append(p)
            m //= p
    if m != 1:
        raise Unsupported(f"residue division implemented for n with prime factors 2, 3 only (got {n})")
    current = [R]
    for p in factors:
        nxt = []
        for Q in current:
            nxt.extend(_residue_divide_prime(red, Q, p))
        # dedupe by rendered coordinates
        seen = {}
        for S in nxt:
            seen[S.render()] = S
        current = list(seen.values())
    current.sort(key=lambda S: ("", "") if S.is_infinity else (str(S.x.residue()), str(S.y.residue())))
    return current


def _residue_divide_prime(red: WeierstrassCurve, R: CurvePoint, p: int):
    out = []
    if R.is_infinity:
        out.append(CurvePoint.infinity())
        for xi in rational_roots(_torsion_x_poly(red, p)):
            for S in _points_with_x(red, xi):
                if red.mul(S, p).is_infinity:
                    out.append(S)
        return out
    x_target = R.x.residue()
    for xi in rational_roots(_division_x_poly(red, p, x_target)):
        for S in _points_with_x(red, xi):
            if red.mul(S, p).agrees(R):
                out.append(S)
    return out


def divide_point(C: WeierstrassCurve, Q: CurvePoint, n: int, target: CurvePoint = None) -> CurvePoint:
    """A point P in E_0 with n*P = Q whose reduction is the given target.

    When the target residue point is omitted it is computed by exact
    rational arithmetic on the residue curve; NotDivisible is raised when
    the reduction of Q is not n-divisible there (the content of
    n E_0(K) = pi^{-1}(n E~_0(k)) for henselian K with residue char 0).
    """
    _require_integral(C)
    if not isinstance(C.ctx.base, Rationals):
        raise Unsupported("divide_point needs residue characteristic 0")
    if Q.is_infinity:
        return CurvePoint.infinity()
    red = residue_curve(C)
    qbar = reduce_point(C, Q)
    if is_singular_residue_point(C, qbar):
        raise NotInE0("Q is not in E_0")
    if target is None:
        candidates = residue_divide(red, qbar, n)
        candidates = [
            S for S in candidates if not is_singular_residue_point(C, S)
        ]
        if not candidates:
            raise NotDivisible(f"the reduction of Q is not divisible by {n} in E~_0(k)")
        target = candidates[0]
    else:
        if not red.mul(target, n).agrees(qbar):
            raise NotDivisible("the supplied target does not reduce-divide Q")
    # lift the target and refine through the formal group
    if target.is_infinity:
        P = CurvePoint.infinity()
    else:
        anchor = C.ctx.const(target.x.residue())
        fybar = 2 * target.y + red.a1 * target.x + red.a3
        if fybar.definitely_nonzero():
            P = lift_point(C, target, anchor)
        else:
            P = lift_point(C, target, C.ctx.const(target.y.residue()))
    ninv = Fraction(1, n)
    for _ in range(200):
        D = C.sub(Q, C.mul(P, n))
        if D.is_infinity:
            return P
        fd = filtration(C, D)
        if not fd.param.terms:
            return P  # agreement to the available precision
        corr = lift_point(C, CurvePoint.infinity(), fd.param * ninv)
        P = C.add(P, corr)
    raise NotDivisible("division refinement failed to converge")


# --- the component map w ------------------------------------------------------


def component_w(C: WeierstrassCurve, P: CurvePoint) -> GammaValue:
    """The definable map E(K) -> (-l/2, l/2] realizing E(K)/E_0(K).

    Requires the split-multiplicative normal shape y^2 + xy = x^3 + a4 x + a6
    with v(a4) = v(disc) = l > 0 and v(a6 - a4) >= l; the Tate curves have
    exactly this shape.  w(P) = 0 on E_0; on the coset regions it is l/2
    when v(y) = v(x+y), v(x) when 0 < v(y) < v(x+y), and -v(x) when
    0 < v(x+y) < v(y).
    """
    ctx = C.ctx
    one = ctx.one()
    if not (C.a1.same(one) and C.a2.is_exact_zero and C.a3.is_exact_zero):
        raise WrongShape("need the shape y^2 + xy = x^3 + a4 x + a6")
    ell = C.v_disc()
    if not (ell.is_finite and ell > gamma(0)):
        raise WrongShape("need v(disc) > 0")
    if C.a4.valuation() != ell:
        raise WrongShape("need v(a4) = v(disc)")
    if (C.a6 - C.a4).val_lower() < ell:
        raise WrongShape("need v(a6 - a4) >= v(a4)")
    if P.is_infinity:
        return gamma(0)
    red = reduce_point(C, P)
    if not is_singular_residue_point(C, red):
        return gamma(0)
    vy = P.y.valuation()
    vxy = (P.x + P.y).valuation()
    if vy == vxy:
        if vy * 2 != ell:
            raise WrongShape("equal-valuation case off the half-discriminant line")
        return ell * Fraction(1, 2)
    vx = P.x.valuation()
    if vy < vxy:
        return vx
    return -vx
