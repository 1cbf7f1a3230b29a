"""Tate curves E_q : y^2 + xy = x^3 + a4(q) x + a6(q) and the uniformization
t : K^x -> E_q(K) with kernel q^Z.

The q-expansions are the classical divisor-power sums

    a4(q) = -5 * sum sigma_3(n) q^n
    a6(q) = -(1/12) * sum (5 sigma_3(n) + 7 sigma_5(n)) q^n

and are treated as untrusted imports until ``verify_formal`` (the identity
Y^2 + XY = X^3 + a4 X + a6 in Q(u)[[q]]) and the discriminant product
check disc = q prod (1-q^n)^24 both pass; the test suite runs both.

The map itself is evaluated through

    X(u, q) = L1(u) + L2(uq, q) + L3(u^-1 q, q)
    L1(u) = u/(1-u)^2
    L2(v, q) = sum_{k,m >= 1} m v^m q^{m(k-1)}
    L3(v, q) = sum_{k,m >= 1} (m v^m q^{m(k-1)} - 2 q^{mk})

and the displayed series for Y; all tails are cut once every remaining
term is provably below the working precision (term valuations are bounded
by multiples of v(uq), v(u^-1 q) > 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameter, PrecisionLoss
from .gamma import INF, GammaValue, gamma
from .laurent import FieldContext, LaurentElement
from .ratfunc import QPoly, RatFunc
from .weierstrass import CurvePoint, WeierstrassCurve
from .reduction import is_singular_residue_point, reduce_point


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def coeff_series(order: int):
    """(a4, a6) q-expansions as integer coefficient lists, index = q-power.

    Entry 0 is zero; entries run up to order-1 (absolute q-adic order).
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a4 = [0] * order
    a6 = [0] * order
    for n in range(1, order):
        s3 = sigma(3, n)
        s5 = sigma(5, n)
        a4[n] = -5 * s3
        num = 5 * s3 + 7 * s5
        if num % 12:
            raise AssertionError("5 sigma_3 + 7 sigma_5 not divisible by 12")
        a6[n] = -num // 12
    return a4, a6


def delta_product_series(order: int):
    """q * prod_{n < order} (1 - q^n)^24 modulo q^order, as integers."""
    coeffs = [0] * order
    if order > 1:
        coeffs[1] = 1
    poly = QPoly(coeffs)
    for n in range(1, order):
        factor = [0] * order
        factor[0] = 1
        if n < order:
            factor[n] = -1
        f = QPoly(factor)
        for _ in range(24):
            poly = _trunc(poly * f, order)
    return [int(c) for c in poly.coeffs] + [0] * (order - len(poly.coeffs))


def _trunc(p: QPoly, order: int) -> QPoly:
    return QPoly(p.coeffs[:order])


def disc_of_xy_shape(a4: QPoly, a6: QPoly, order: int) -> QPoly:
    """-a6 + a4^2 + 72 a4 a6 - 64 a4^3 - 432 a6^2, truncated at q^order."""
    a4sq = _trunc(a4 * a4, order)
    a4cu = _trunc(a4sq * a4, order)
    a6sq = _trunc(a6 * a6, order)
    a46 = _trunc(a4 * a6, order)
    return _trunc(-a6 + a4sq + 72 * a46 - 64 * a4cu - 432 * a6sq, order)


@dataclass
class TateCurve:
    ctx: FieldContext
    q: LaurentElement
    ell: GammaValue  # v(q) = v(disc)
    curve: WeierstrassCurve
    q_order: int  # q-adic order of the evaluated coefficient series


def tate_curve(q: LaurentElement, working_prec=None) -> TateCurve:
    """The Tate curve of parameter q, certified to v(disc) = v(q)."""
    ctx = q.ctx
    if q.is_exact_zero:
        raise BadParameter("q must be nonzero")
    ell = q.valuation()
    if not (ell.is_finite and ell > gamma(0)):
        raise BadParameter(f"need 0 < v(q) < inf, got v(q) = {ell}")
    prec = Fraction(working_prec) if working_prec is not None else ctx.prec
    order = int(prec / ell.finite()) + 2
    a4c, a6c = coeff_series(order)
    a4 = _eval_int_series(a4c, q, prec)
    a6 = _eval_int_series(a6c, q, prec)
    curve = WeierstrassCurve(ctx.one(), ctx.zero(), ctx.zero(), a4, a6)
    if curve.v_disc() != ell:
        raise PrecisionLoss("v(disc) != v(q) at the working precision")
    return TateCurve(ctx, q, ell, curve, order)


def _eval_int_series(coeffs, q: LaurentElement, prec) -> LaurentElement:
    ctx = q.ctx
    acc = ctx.zero()
    power = ctx.one()
    for n in range(1, len(coeffs)):
        power = (power * q).truncate(prec)
        if coeffs[n]:
            acc = acc + coeffs[n] * power
    return acc + ctx.oh(prec)


def domain_reduce(T: TateCurve, u: LaurentElement) -> LaurentElement:
    """u q^m with the unique m giving 0 <= v(u q^m) < v(q)."""
    if u.is_exact_zero:
        raise BadParameter("u must be nonzero")
    vu = u.valuation().finite()
    ell = T.ell.finite()
    m = -int(vu // ell)  # Fraction floor division
    return u * T.q**m


def tate_map(T: TateCurve, u: LaurentElement) -> CurvePoint:
    """The uniformization K^x -> E_q(K); kernel q^Z maps to infinity."""
    ctx = T.ctx
    u = domain_reduce(T, u)
    w = u - ctx.one()
    if w.is_exact_zero:
        return CurvePoint.infinity()
    if not w.terms:
        raise PrecisionLoss("u = 1 to stored precision; kernel membership undecided")
    prec = gamma(ctx.prec)
    q = T.q
    x = _L1(u) + _L2(u * q, q, prec) + _L2(u.inverse() * q, q, prec) - 2 * _tau_sum(q, prec)
    y = _Y_series(u, q, prec)
    P = CurvePoint(x, y)
    resid = T.curve.equation_residual(x, y)
    if resid.definitely_nonzero():
        raise AssertionError("uniformization left the curve: series bug")
    return P


def _L1(u: LaurentElement) -> LaurentElement:
    one = u.ctx.one()
    d = one - u
    return u / (d * d)


def _L2(v: LaurentElement, q: LaurentElement, prec: GammaValue) -> LaurentElement:
    """sum_{k,m >= 1} m v^m q^{m(k-1)}, cut below the working precision."""
    ctx = v.ctx
    vv = v.valuation().finite()
    lq = q.valuation().finite()
    if vv <= 0:
        raise BadParameter("L2 needs v(arg) > 0")
    acc = ctx.zero()
    m = 1
    vm = v.truncate(prec)
    while vv * m < prec.finite():
        k = 1
        qpow = ctx.one()
        while vv * m + lq * m * (k - 1) < prec.finite():
            acc = acc + m * (vm * qpow).truncate(prec)
            qpow = (qpow * q**m).truncate(prec)
            k += 1
        m += 1
        vm = (vm * v).truncate(prec)
    return acc + ctx.oh(prec)


def _tau_sum(q: LaurentElement, prec: GammaValue) -> LaurentElement:
    """sum_{m,k >= 1} q^{mk} = sum_d tau(d) q^d below the working precision."""
    ctx = q.ctx
    lq = q.valuation().finite()
    dmax = int(prec.finite() / lq) + 1
    acc = ctx.zero()
    qpow = ctx.one()
    for d in range(1, dmax + 1):
        qpow = (qpow * q).truncate(prec)
        tau = sum(1 for m in range(1, d + 1) if d % m == 0)
        acc = acc + tau * qpow
    return acc + ctx.oh(prec)


def _Y_series(u: LaurentElement, q: LaurentElement, prec: GammaValue) -> LaurentElement:
    """u^2/(1-u)^3 + sum_d q^d sum_{m|d} ((m-1)m/2 u^m - m(m+1)/2 u^-m + m)."""
    ctx = u.ctx
    one = ctx.one()
    d1 = one - u
    acc = u * u / (d1**3)
    vu = abs(u.valuation().finite())
    lq = q.valuation().finite()
    gap = lq - vu
    if gap <= 0:
        raise BadParameter("need |v(u)| < v(q) after domain reduction")
    dmax = int(prec.finite() / gap) + 1
    uinv = u.inverse()
    upos = [one]
    uneg = [one]
    for _ in range(dmax):
        upos.append((upos[-1] * u).truncate(prec))
        uneg.append((uneg[-1] * uinv).truncate(prec))
    qpow = ctx.one()
    for d in range(1, dmax + 1):
        qpow = (qpow * q).truncate(prec)
        coeff = ctx.zero()
        for m in range(1, d + 1):
            if d % m:
                continue
            c1 = Fraction((m - 1) * m, 2)
            c2 = Fraction(m * (m + 1), 2)
            coeff = coeff + c1 * upos[m] - c2 * uneg[m] + ctx.const(m)
        acc = acc + (coeff * qpow).truncate(prec)
    return acc + ctx.oh(prec)


# --- coset regions -----------------------------------------------------------


@dataclass(frozen=True)
class Region:
    kind: str  # "E0" | "U" | "V" | "W"
    r: object = None  # GammaValue for U/V; l/2 for W

    def render(self) -> str:
        if self.kind in ("U", "V"):
            return f"{self.kind}({self.r})"
        return self.kind


def region_classify(T: TateCurve, P: CurvePoint) -> Region:
    """Locate P in E_0 or in the coset regions U_r, V_r, W."""
    C = T.curve
    if P.is_infinity:
        return Region("E0")
    red = reduce_point(C, P)
    if not is_singular_residue_point(C, red):
        return Region("E0")
    vy = P.y.valuation()
    vxy = (P.x + P.y).valuation()
    half = T.ell * Fraction(1, 2)
    if vy == vxy:
        if vy != half:
            raise PrecisionLoss("W region off the half-discriminant line")
        return Region("W", half)
    if vy > vxy:
        return Region("U", vxy)
    return Region("V", vy)


# --- formal self-verification -------------------------------------------------


@dataclass
class FormalReport:
    order: int
    residual_orders: tuple  # q-powers with nonzero residual
    passed: bool

    def render(self) -> str:
        if self.passed:
            return f"formal identity PASS to order q^{self.order}"
        return (
            f"formal identity FAIL at q-powers {list(self.residual_orders)} "
            f"(order q^{self.order})"
        )


def formal_residual(order: int, a4_coeffs=None, a6_coeffs=None):
    """Coefficients of Y^2 + XY - X^3 - a4 X - a6 in Q(u)[[q]] mod q^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if a4_coeffs is None or a6_coeffs is None:
        c4, c6 = coeff_series(order)
        a4_coeffs = a4_coeffs if a4_coeffs is not None else c4
        a6_coeffs = a6_coeffs if a6_coeffs is not None else c6
    one_minus_u = QPoly([1, -1])
    u = QPoly.x()
    X = [RatFunc(QPoly()) for _ in range(order)]
    Y = [RatFunc(QPoly()) for _ in range(order)]
    X[0] = RatFunc(u, one_minus_u**2)
    Y[0] = RatFunc(u * u, one_minus_u**3)
    for d in range(1, order):
        xnum = {}
        ynum = {}
        for m in range(1, d + 1):
            if d % m:
                continue
            # X: m (u^m + u^-m - 2); Y: (m-1)m/2 u^m - m(m+1)/2 u^-m + m
            xnum[d + m] = xnum.get(d + m, Fraction(0)) + m
            xnum[d - m] = xnum.get(d - m, Fraction(0)) + m
            xnum[d] = xnum.get(d, Fraction(0)) - 2 * m
            ynum[d + m] = ynum.get(d + m, Fraction(0)) + Fraction((m - 1) * m, 2)
            ynum[d - m] = ynum.get(d - m, Fraction(0)) - Fraction(m * (m + 1), 2)
            ynum[d] = ynum.get(d, Fraction(0)) + m
        den = QPoly([0] * d + [1])  # u^d
        X[d] = RatFunc(_dict_poly(xnum), den)
        Y[d] = RatFunc(_dict_poly(ynum), den)
    A4 = [RatFunc.const(c) for c in a4_coeffs[:order]]
    A6 = [RatFunc.const(c) for c in a6_coeffs[:order]]
    XY = _series_mul(X, Y, order)
    Y2 = _series_mul(Y, Y, order)
    X2 = _series_mul(X, X, order)
    X3 = _series_mul(X2, X, order)
    A4X = _series_mul(A4, X, order)
    res = []
    for d in range(order):
        r = Y2[d] + XY[d] - X3[d] - A4X[d] - A6[d]
        res.append(r)
    return res


def _dict_poly(d: dict) -> QPoly:
    if not d:
        return QPoly()
    top = max(d)
    return QPoly([d.get(i, Fraction(0)) for i in range(top + 1)])


def _series_mul(A, B, order):
    out = [RatFunc(QPoly()) for _ in range(order)]
    for i in range(order):
        if A[i].is_zero():
            continue
        for j in range(order - i):
            if B[j].is_zero():
                continue
            out[i + j] = out[i + j] + A[i] * B[j]
    return out


def verify_formal(order: int) -> FormalReport:
    """PASS iff the uniformization series satisfy the curve equation mod q^order."""
    res = formal_residual(order)
    bad = tuple(d for d, r in enumerate(res) if not r.is_zero())
    return FormalReport(order, bad, not bad)
