"""Exact scalar arithmetic shared by every module.

All coefficients in this package are exact rationals.  When gmpy2 is
installed its mpq/mpz types are used (they are GMP-backed and much faster
on the big integers that show up in curve multiples); otherwise the stdlib
Fraction/int pair is used.  Both choices satisfy the same contract:
auto-reduced fractions, positive denominators, arbitrary precision.

Set MDVERIFY_NO_GMPY=1 to force the stdlib types even when gmpy2 is
importable (used by the benchmark to compare backends).
"""

from __future__ import annotations

import os
from fractions import Fraction

_force_stdlib = os.environ.get("MDVERIFY_NO_GMPY", "") == "1"

try:
    if _force_stdlib:
        raise ImportError
    from gmpy2 import mpq as Q, mpz as Z

    HAVE_GMPY = True
except ImportError:
    Q = Fraction
    Z = int
    HAVE_GMPY = False


def rational(value, den=None):
    """Build an exact rational from ints, Fractions, strings or another Q."""
    if den is None:
        return Q(value)
    return Q(value, den)


def as_int(q):
    """Return q as a plain int; raise if q is not integral."""
    if q.denominator != 1:
        raise ValueError(f"not an integer: {q}")
    return int(q.numerator)


def is_integer(q) -> bool:
    return q.denominator == 1


class _Undefined:
    """Singleton returned by partial evaluation at a pole.

    It is a value, not an error: callers are expected to branch on it.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()
