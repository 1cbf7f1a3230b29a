"""Hensel/Newton root lifting and n-th power tests in K = k((t^(1/e))).

A polynomial over K is a plain list of LaurentElement coefficients,
constant term first.  ``hensel_root`` runs the Newton iteration
x <- x - f(x)/f'(x) under the usual criterion v(f(x0)) > 2 v(f'(x0)) and
certifies the residual to a requested absolute precision.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NoConvergence, Unsupported, ZeroArgument
from .gamma import INF, gamma
from .laurent import FieldContext, LaurentElement
from .residues import PrimeField


def poly_eval(coeffs, x: LaurentElement) -> LaurentElement:
    """Evaluate sum(coeffs[i] * x^i) by Horner's rule."""
    acc = x.ctx.zero()
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs):
    return [c * i for i, c in enumerate(coeffs)][1:]


def hensel_root(coeffs, x0: LaurentElement, target_prec) -> LaurentElement:
    """Newton-lift x0 to a root of f modulo t^target_prec.

    Requires v(f(x0)) > 2 v(f'(x0)).  The result x satisfies
    v(f(x)) >= target_prec and v(x - x0) > v(f'(x0)); its stored precision
    is target_prec - v(f'(x0)), the amount to which the root is determined.
    """
    target = gamma(target_prec)
    if target.is_infinite:
        raise ValueError("target precision must be finite")
    ctx = x0.ctx
    dcoeffs = poly_derivative(coeffs)
    fx = poly_eval(coeffs, x0)
    if fx.is_exact_zero:
        return x0
    dfx = poly_eval(dcoeffs, x0)
    if dfx.is_exact_zero:
        raise NoConvergence("f'(x0) = 0")
    a = fx.val_lower()
    b = dfx.valuation()
    if b.is_infinite or not (a > b * 2):
        raise NoConvergence(f"Newton criterion fails: v(f(x0))={a}, v(f'(x0))={b}")
    bq = b.finite()
    keep = target - bq  # the root is determined modulo t^(target - b)
    x = x0.truncate(keep) if not x0.is_exact else x0
    for _ in range(512):
        fx = poly_eval(coeffs, x)
        if fx.is_exact_zero:
            return x
        if fx.val_lower() >= target:
            return x.truncate(keep)
        dfx = poly_eval(dcoeffs, x)
        x = (x - fx / dfx).truncate(keep)
    raise NoConvergence("Newton iteration failed to reach the target precision")


def nth_power_tools(x: LaurentElement, n: int):
    """Decide x in (K^x)^n; return (True, root) or (False, None).

    Works by the valuation-lattice test, an exact n-th power test on the
    leading residue coefficient, and a Hensel lift of the unit part.  In
    F_p mode the lift needs p not dividing n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if x.is_exact_zero:
        raise ZeroArgument("0 is excluded from the power test")
    ctx = x.ctx
    if isinstance(ctx.base, PrimeField) and n % ctx.base.p == 0:
        raise Unsupported(f"Hensel lifting inapplicable: {ctx.base.p} divides {n}")
    v = x.valuation().finite()
    k = v * ctx.e  # integer
    if k % n != 0:
        return False, None
    lead = x.leading_coeff()
    root0 = ctx.base.nth_root(lead, n)
    if root0 is None:
        return False, None
    if x.is_monomial():
        return True, ctx.monomial(root0, Fraction(v, n))
    # unit part u = x * t^-v, root of y^n - u near root0
    u = x.shift(-v)
    target = (u.prec if u.prec.is_finite else gamma(ctx.prec)).finite()
    coeffs = [-u] + [ctx.zero()] * (n - 1) + [ctx.one()]
    y = hensel_root(coeffs, ctx.const(root0), target)
    return True, y.shift(Fraction(v, n))
