"""Rational parametrization of the nodal cubic in the coordinate t = e^u.

Everything transcendental about the parametrization (the 2*pi*i period,
the lattice) is absorbed by the coordinate change: the parametrizing
functions become honest rational functions of t,

    wp  = ((1+t)/(1-t))^2,      xi = 2 (1+t)/(1-t),

u-differentiation becomes t * d/dt, periodicity is single-valuedness in t
(structural, nothing to compute), and the remaining claims are exact
rational-function identities checked by normal-form equality:

  * the functional equations tying wp, wp', wp'' and xi together,
  * transfer of addition through (wp, wp') in three branches,
  * the derivative identity for the flow integrals G,
  * the uniformization identity for the scalar-multiple family, where the
    flow reduces to u -> n*u and e^mu to a sign on t^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._scalars import Q, as_int, is_integer
from .algebra import (
    MPoly,
    RatFunc,
    T_VAR,
    Z_VAR,
    differentiate,
    poly_gcd,
    substitute,
)
from .curve import CurvePoint, add_points, multiply_point, plain_nodal_curve, tilde_pair
from .orders import alpha_at_singular, compute_A
from .series import RepTriple, expand_at, represent

_T = (T_VAR,)


class UniformizationError(AssertionError):
    """No sign choice satisfies both coordinate identities; must never fire."""


def _t() -> RatFunc:
    return RatFunc.var(T_VAR)


def wp() -> RatFunc:
    """((1+t)/(1-t))^2."""
    one_plus = MPoly.from_dict(_T, {(0,): 1, (1,): 1})
    one_minus = MPoly.from_dict(_T, {(0,): 1, (1,): -1})
    return RatFunc(one_plus * one_plus, one_minus * one_minus)


def xi() -> RatFunc:
    """2 (1+t)/(1-t)."""
    one_plus = MPoly.from_dict(_T, {(0,): 2, (1,): 2})
    one_minus = MPoly.from_dict(_T, {(0,): 1, (1,): -1})
    return RatFunc(one_plus, one_minus)


def u_derivative(f: RatFunc) -> RatFunc:
    """d/du through t = e^u: multiply the t-derivative by t."""
    return _t() * differentiate(f, T_VAR)


def wp_prime() -> RatFunc:
    return u_derivative(wp())


def f_tilde_of(x: RatFunc) -> RatFunc:
    """z(z-1)^2 composed with x."""
    return x * (x - 1) ** 2


def f_tilde_z_of(x: RatFunc) -> RatFunc:
    """(3z-1)(z-1) composed with x."""
    return (3 * x - 1) * (x - 1)


def check_functional_equations() -> dict:
    """The five defining identities; every residual must be the zero function."""
    p = wp()
    pp = wp_prime()
    x = xi()
    return {
        "square": pp * pp - f_tilde_of(p),
        "second-derivative": u_derivative(pp) - Q(1, 2) * f_tilde_z_of(p),
        "xi-prime": u_derivative(x) - (p - 1),
        "quarter-square": p - Q(1, 4) * x * x,
        "half-product": pp - Q(1, 2) * (p - 1) * x,
    }


def check_oddness() -> dict:
    """wp is even, wp' and xi odd, under u -> -u i.e. t -> 1/t."""
    p, pp, x = wp(), wp_prime(), xi()
    inv_t = 1 / _t()
    return {
        "wp-even": substitute(p, T_VAR, inv_t) - p,
        "wp-prime-odd": substitute(pp, T_VAR, inv_t) + pp,
        "xi-odd": substitute(x, T_VAR, inv_t) + x,
    }


def _wp_pair_at(expr: RatFunc, variables) -> CurvePoint:
    """The checked curve point (wp, wp') evaluated along t = expr."""
    curve = plain_nodal_curve(variables)
    x = substitute(wp(), T_VAR, expr)
    y = substitute(wp_prime(), T_VAR, expr)
    return CurvePoint.affine(curve, x, y)


def check_group_transfer() -> dict:
    """Addition transfers through (wp, wp') in all three branches.

    Residual pairs for the generic chord (t1, t2 independent) and the
    tangent branch, and an exact neutral-element check for the inverse.
    """
    tt = ("t1", "t2")
    t1 = RatFunc.var("t1", tt)
    t2 = RatFunc.var("t2", tt)
    p1 = _wp_pair_at(t1, tt)
    p2 = _wp_pair_at(t2, tt)
    generic = add_points(p1, p2)
    target = _wp_pair_at(t1 * t2, tt)
    out = {
        "generic-x": generic.x - target.x,
        "generic-y": generic.y - target.y,
    }
    t = _t()
    pt = _wp_pair_at(t, _T)
    doubled = add_points(pt, pt)
    dtarget = _wp_pair_at(t * t, _T)
    out["doubling-x"] = doubled.x - dtarget.x
    out["doubling-y"] = doubled.y - dtarget.y
    mirrored = _wp_pair_at(1 / t, _T)
    out["inverse-is-neutral"] = add_points(pt, mirrored).is_infinity
    return out


# ---------------------------------------------------------------------------
# the flow derivative identity


def h_series_to_poly(rep: RepTriple) -> MPoly:
    return rep.h.to_poly((Z_VAR,))


def G_prime(rep: RepTriple) -> RatFunc:
    """u-derivative of beta*u + gamma*xi + wp' * h(wp), as a function of t.

    Only the derivative is rational (the beta*u term is not), and it equals
    beta + gamma(wp-1) + (f~ o wp)(h' o wp) + (f~' o wp)(h o wp)/2.
    """
    h = h_series_to_poly(rep)
    hz = h.derivative(Z_VAR)
    p = wp()
    h_at = substitute(RatFunc.from_mpoly(h), Z_VAR, p) if not h.is_const else RatFunc.const(_T, h.const_value())
    hz_at = (
        substitute(RatFunc.from_mpoly(hz), Z_VAR, p)
        if not hz.is_const
        else RatFunc.const(_T, hz.const_value())
    )
    return (
        RatFunc.const(_T, rep.beta)
        + rep.gamma * (p - 1)
        + f_tilde_of(p) * hz_at
        + Q(1, 2) * f_tilde_z_of(p) * h_at
    )


def H_poly(rep: RepTriple) -> MPoly:
    """beta + gamma(z-1) + f~ h' + f~' h / 2 as an exact polynomial in z."""
    h = h_series_to_poly(rep)
    hz = h.derivative(Z_VAR)
    zz = MPoly.variable(Z_VAR)
    f_t = zz * (zz - 1) ** 2
    f_tz = (3 * zz - 1) * (zz - 1)
    return (
        MPoly.const((Z_VAR,), rep.beta)
        + (zz - 1) * rep.gamma
        + f_t * hz
        + f_tz * h * Q(1, 2)
    )


def check_lemG(rep: RepTriple) -> RatFunc:
    """G'(t) - H(wp(t)): the flow derivative identity, identically zero."""
    hp = H_poly(rep)
    rhs = (
        substitute(RatFunc.from_mpoly(hp), Z_VAR, wp())
        if not hp.is_const
        else RatFunc.const(_T, hp.const_value())
    )
    return G_prime(rep) - rhs


# ---------------------------------------------------------------------------
# uniformization of the scalar-multiple family


@dataclass
class UniformizationResult:
    n: int
    sigma: int
    x_identity_ok: bool
    y_identity_ok: bool


def check_uniformization_endo(n: int) -> UniformizationResult:
    """Find the sign sigma with x~_n(wp(t)) = wp(sigma t^n) and the wp'-twin.

    For the n-th multiple the flow is u -> n*u, so e^(G+mu) is sigma * t^n
    with sigma = e^mu in {+1, -1}; both candidates are tried and the winner
    reported.  Restricted to odd n (even multiples hit the 2-torsion shift).
    """
    if n % 2 == 0 or n == 0:
        raise ValueError("restricted to odd nonzero n")
    x_t, y_t = tilde_pair(n)
    p = wp()
    pp = wp_prime()
    lhs_x = substitute(x_t, Z_VAR, p)
    lhs_y = pp * substitute(y_t, Z_VAR, p)
    t = _t()
    for sigma in (1, -1):
        arg = t**abs(n) * sigma
        if n < 0:
            arg = 1 / arg
        tx = substitute(p, T_VAR, arg)
        if lhs_x == tx:
            ty = substitute(pp, T_VAR, arg)
            if lhs_y == ty:
                return UniformizationResult(n, sigma, True, True)
    raise UniformizationError(f"no sign works for n={n}")


class NonIntegerFlowError(AssertionError):
    """The flow constant failed to be an integer; must never fire."""


def integrality_witness(n: int, trunc: int = 32):
    """Extract beta for the n-th multiple and tie it back to alpha.

    beta comes out of the series decomposition of A~ = x~' / y~; it must be
    the integer n and must agree with alpha at the singular point through
    the order-1 relation.
    """
    if n % 2 == 0 or n == 0:
        raise ValueError("restricted to odd nonzero n")
    x_t, y_t = tilde_pair(n)
    a_tilde = compute_A(x_t, y_t)
    series = expand_at(a_tilde, Z_VAR, 0, trunc)
    rep = represent(series)
    beta = rep.beta
    if not is_integer(beta):
        raise NonIntegerFlowError(f"beta = {beta} is not an integer for n={n}")
    pair = multiply_point(n)
    alpha = alpha_at_singular(pair.x_n, pair.y_n)
    if alpha != beta:
        raise NonIntegerFlowError(
            f"flow constant {beta} disagrees with the singular alpha {alpha}"
        )
    return beta


# ---------------------------------------------------------------------------
# injectivity of the parametrization


def check_injectivity() -> bool:
    """(wp, wp') separates points: equal pairs force t1 = t2.

    The common zero locus of wp(t1)-wp(t2) and wp'(t1)-wp'(t2) is computed
    by gcd plus a one-variable residue analysis of the cofactor along the
    mirror line t2 = 1/t1; everything off the diagonal dies at the
    parametrization's excluded values t in {0, +-1}.
    """
    tt = ("t1", "t2")
    t1 = RatFunc.var("t1", tt)
    t2 = RatFunc.var("t2", tt)
    d_wp = substitute(wp(), T_VAR, t1) - substitute(wp(), T_VAR, t2)
    d_pp = substitute(wp_prime(), T_VAR, t1) - substitute(wp_prime(), T_VAR, t2)
    n1, n2 = d_wp.num, d_pp.num
    g = poly_gcd(n1, n2)
    diag = MPoly.from_dict(tt, {(1, 0): 1, (0, 1): -1})
    if g != diag:
        return False
    c2 = n2.divexact(diag)
    if c2 is None:
        return False
    # mirror line: substitute t2 = 1/t1 and clear denominators
    mirror = substitute(RatFunc.from_mpoly(c2), "t2", 1 / RatFunc.var("t1"))
    q = mirror.num
    for root_poly in (
        MPoly.from_dict(("t1",), {(1,): 1}),
        MPoly.from_dict(("t1",), {(1,): 1, (0,): -1}),
        MPoly.from_dict(("t1",), {(1,): 1, (0,): 1}),
    ):
        while True:
            nxt = q.divexact(root_poly)
            if nxt is None:
                break
            q = nxt
    return q.is_const and not q.is_zero
