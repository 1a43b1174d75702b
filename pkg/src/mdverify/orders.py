"""Orders of vanishing at polynomial places, and the two marker functions.

A place is an irreducible polynomial; the order of a rational function at a
place is the multiplicity of that irreducible in the numerator minus its
multiplicity in the denominator, computed by repeated exact division.  The
zero function gets order +infinity so the derivative rules stay assertable
when a derivative collapses to zero.

The module also houses the two quantities attached to a curve solution
(x, y):

    A(x, y)     = x_z / y
    alpha(x, y) = (x - 1) / ((z - 1) y)

and their exact evaluation at z = 1 first, then delta = -2 (the order
matters; the reversed order is exposed separately as a diagnostic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ._scalars import Q, UNDEFINED
from .algebra import (
    DELTA_VAR,
    MPoly,
    RatFunc,
    Z_VAR,
    differentiate,
    evaluate_partial,
)
from .curve import check_md

INFINITE_ORDER = math.inf


class PlaceError(ValueError):
    pass


class Place:
    """An irreducible polynomial cut out as an evaluation locus.

    Irreducibility is decided for total degree <= 2 (and for polynomials
    linear in some variable); anything bigger is accepted on the caller's
    word and flagged.
    """

    __slots__ = ("poly", "flagged")

    def __init__(self, poly: MPoly):
        c, pp = _primitive_mpoly(poly)
        if pp.is_const:
            raise PlaceError("units and zero cannot be places")
        self.poly = pp
        self.flagged = False
        verdict = _irreducible_over_q(pp)
        if verdict is False:
            raise PlaceError(f"reducible polynomial cannot be a place: {pp}")
        if verdict is None:
            self.flagged = True

    @classmethod
    def from_name(cls, name: str) -> "Place":
        return cls(_NAMED_PLACES[name]())

    def __eq__(self, other):
        return isinstance(other, Place) and self.poly == other.poly

    __hash__ = None

    def __repr__(self):
        return f"Place({self.poly})"


def _primitive_mpoly(p: MPoly):
    c = p.content
    return c, MPoly(p.vars, Q(1), dict(p.terms), _normalized=True)


def _irreducible_over_q(p: MPoly):
    """True / False / None (= not decided, flag it)."""
    d = p.total_degree()
    if d == 1:
        return True
    live = [v for v in p.vars if p.degree(v) > 0]
    # linear in some variable and primitive there: irreducible iff the
    # coefficients share no factor
    for v in live:
        if p.degree(v) == 1:
            parts = p.coefficients_in(v)
            a = parts.get(1)
            b = parts.get(0)
            if b is None or b.is_zero:
                # a(z,..)*v: irreducible only when a is constant (v itself)
                return a.is_const
            from .algebra import poly_gcd

            g = poly_gcd(a.with_vars(b.vars) if set(a.vars) != set(b.vars) else a, b)
            return g.is_const
    if d == 2 and len(live) == 1:
        v = live[0]
        parts = {k: m.const_value() for k, m in p.coefficients_in(v).items()}
        a = parts.get(2, Q(0))
        b = parts.get(1, Q(0))
        c = parts.get(0, Q(0))
        if c == 0:
            return False  # v divides it
        disc = b * b - 4 * a * c
        return not _is_rational_square(disc)
    if d <= 2:
        return None
    return None


def _is_rational_square(q) -> bool:
    if q < 0:
        return False
    n, d = int(q.numerator), int(q.denominator)
    rn = math.isqrt(n)
    rd = math.isqrt(d)
    return rn * rn == n and rd * rd == d


def _named(vars, mapping):
    def build():
        return MPoly.from_dict(vars, mapping)

    return build


_NAMED_PLACES = {
    "z": _named((Z_VAR,), {(1,): 1}),
    "z-1": _named((Z_VAR,), {(1,): 1, (0,): -1}),
    "delta+2": _named((DELTA_VAR,), {(1,): 1, (0,): 2}),
    "z^2+delta*z+1": _named((DELTA_VAR, Z_VAR), {(0, 2): 1, (1, 1): 1, (0, 0): 1}),
}


# ---------------------------------------------------------------------------


def _multiplicity(p: MPoly, place: Place) -> int:
    if p.is_zero:
        return INFINITE_ORDER
    count = 0
    divisor = place.poly
    cur = p
    while True:
        q = cur.divexact(divisor)
        if q is None:
            return count
        count += 1
        cur = q


def ord_at(f: RatFunc, place: Place):
    """Multiplicity of the place in num minus den; +inf for the zero function."""
    if f.is_zero:
        return INFINITE_ORDER
    missing = set(place.poly.vars) - set(f.vars)
    if missing:
        num = f.num.with_vars(tuple(sorted(set(f.vars) | set(place.poly.vars))))
        den = f.den.with_vars(num.vars)
    else:
        num, den = f.num, f.den
    up = _multiplicity(num, place)
    down = _multiplicity(den, place)
    return up - down


class OrderRule(Enum):
    DECREMENT = "decrement"
    NON_DECREASE = "non-decrease"
    NON_NEGATIVE = "non-negative"


@dataclass
class OrderReport:
    place: Place
    ord_g: object
    ord_gz: object
    rule_verified: OrderRule


class OrderRuleViolation(AssertionError):
    """A z-derivative broke the order bookkeeping; must never fire."""


def derivative_order_check(g: RatFunc, place: Place) -> OrderReport:
    """Classify how ord at the place moves under d/dz and assert the rule.

    Case split on the place polynomial rho:
      * ord(g) != 0 and rho does not divide rho_z: exact decrement;
      * ord(g) != 0 and rho divides rho_z (e.g. z-free places): no decrease;
      * ord(g) == 0: the derivative's order stays non-negative.
    """
    og = ord_at(g, place)
    gz = differentiate(g, Z_VAR)
    ogz = ord_at(gz, place)
    rho = place.poly
    rho_z = rho.derivative(Z_VAR)
    rho_divides_rho_z = rho_z.is_zero or rho_z.divexact(rho) is not None
    if og != 0 and not rho_divides_rho_z:
        rule = OrderRule.DECREMENT
        ok = ogz == og - 1
    elif og != 0:
        rule = OrderRule.NON_DECREASE
        ok = ogz >= og
    else:
        rule = OrderRule.NON_NEGATIVE
        ok = ogz >= 0
    if not ok:
        raise OrderRuleViolation(
            f"ord rule {rule.value} failed at {place!r}: ord(g)={og}, ord(g_z)={ogz}"
        )
    return OrderReport(place, og, ogz, rule)


# ---------------------------------------------------------------------------
# the two markers


class ZeroOrdinateError(ZeroDivisionError):
    pass


def compute_A(x: RatFunc, y: RatFunc) -> RatFunc:
    """x_z / y, normalized."""
    if y.is_zero:
        raise ZeroOrdinateError("y must be nonzero")
    return differentiate(x, Z_VAR) / y


def compute_alpha(x: RatFunc, y: RatFunc) -> RatFunc:
    """(x - 1) / ((z - 1) y), normalized."""
    if y.is_zero:
        raise ZeroOrdinateError("y must be nonzero")
    zm1 = RatFunc.from_mpoly(MPoly.from_dict((Z_VAR,), {(1,): 1, (0,): -1}))
    return (x - 1) / (zm1 * y)


def _eval_singular(f: RatFunc):
    """Evaluate at z=1 first, then delta=-2; UNDEFINED propagates."""
    v = evaluate_partial(f, Z_VAR, 1)
    if v is UNDEFINED:
        return UNDEFINED
    if DELTA_VAR in v.vars:
        v = evaluate_partial(v, DELTA_VAR, -2)
        if v is UNDEFINED:
            return UNDEFINED
    if not v.is_const:
        raise ValueError(f"specialization left live variables: {v}")
    return v.const_value()


def alpha_at_singular(x: RatFunc, y: RatFunc):
    """alpha evaluated at z=1 then delta=-2, exact; UNDEFINED on poles."""
    return _eval_singular(compute_alpha(x, y))


def a_at_singular(x: RatFunc, y: RatFunc):
    """A evaluated the same way (it is analytic, so this always lands)."""
    return _eval_singular(compute_A(x, y))


def alpha_at_singular_reversed(x: RatFunc, y: RatFunc):
    """Diagnostic only: delta=-2 first, then z=1 (may differ or undefine)."""
    f = compute_alpha(x, y)
    v = evaluate_partial(f, DELTA_VAR, -2) if DELTA_VAR in f.vars else f
    if v is UNDEFINED:
        return UNDEFINED
    v = evaluate_partial(v, Z_VAR, 1)
    if v is UNDEFINED:
        return UNDEFINED
    return v.const_value()


class AlphaAStatus(Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    VACUOUS = "UNDEFINED"


@dataclass
class AlphaAVerdict:
    status: AlphaAStatus
    ord_x_minus_1: object
    alpha_value: object
    a_value: object


def check_alphaA_relation(x: RatFunc, y: RatFunc) -> AlphaAVerdict:
    """alpha| * ord_{z-1}(x-1) = A| whenever alpha| is defined.

    Refuses pairs that do not solve the curve equation (the relation is
    only claimed for solutions).  When the order lies outside [-2, 1] both
    sides must vanish.  A FAIL verdict would refute the relation.
    """
    if not check_md(x, y).is_zero:
        raise ValueError("check_alphaA_relation requires a solution of the curve equation")
    alpha_v = alpha_at_singular(x, y)
    ordv = ord_at(x - 1, Place.from_name("z-1"))
    a_v = a_at_singular(x, y)
    if alpha_v is UNDEFINED:
        return AlphaAVerdict(AlphaAStatus.VACUOUS, ordv, UNDEFINED, a_v)
    ok = ordv != 0 and alpha_v * ordv == a_v
    if ok and (ordv < -2 or ordv > 1):
        ok = alpha_v == 0 and a_v == 0
    return AlphaAVerdict(
        AlphaAStatus.PASS if ok else AlphaAStatus.FAIL, ordv, alpha_v, a_v
    )
