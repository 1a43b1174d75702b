"""Polynomial/rational-function layer: normal forms, gcd, calculus."""

import random

import pytest

from mdverify._scalars import Q, UNDEFINED
from mdverify.algebra import (
    MPoly,
    RatFunc,
    ZeroDenominatorError,
    differentiate,
    evaluate_partial,
    poly_gcd,
    ratfunc_make,
    substitute,
)

VARS_Z = ("z",)
VARS_DZ = ("delta", "z")


def zpoly(*coeffs):
    """Dense univariate helper: zpoly(c0, c1, ...) = sum c_k z^k."""
    return MPoly.from_dict(VARS_Z, {(k,): c for k, c in enumerate(coeffs)})


def dz(mapping):
    """Bivariate helper over (delta, z): {(e_delta, e_z): coeff}."""
    return MPoly.from_dict(VARS_DZ, mapping)


def f_md():
    """z^3 + delta*z^2 + z."""
    return dz({(0, 3): 1, (1, 2): 1, (0, 1): 1})


def x2():
    """The doubling abscissa (z^2-1)^2 / (4 z^3 + 4 delta z^2 + 4 z)."""
    num = dz({(0, 4): 1, (0, 2): -2, (0, 0): 1})
    den = dz({(0, 3): 4, (1, 2): 4, (0, 1): 4})
    return ratfunc_make(num, den)


class TestMPoly:
    def test_zero_and_const(self):
        z = MPoly.zero(VARS_Z)
        assert z.is_zero and str(z) == "0"
        c = MPoly.const(VARS_Z, Q(3, 2))
        assert c.const_value() == Q(3, 2)
        assert str(c) == "3/2"

    def test_string_form(self):
        p = zpoly(1, -2, 1)
        assert str(p) == "z^2 - 2*z + 1"
        assert str(dz({(1, 2): 4, (0, 3): 4, (0, 1): 4})) == "4*delta*z^2 + 4*z^3 + 4*z"

    def test_arith_ring_axioms(self):
        rng = random.Random(3)

        def rand():
            return dz(
                {
                    (rng.randrange(3), rng.randrange(4)): Q(
                        rng.randrange(-6, 7), rng.randrange(1, 4)
                    )
                    for _ in range(5)
                }
            )

        for _ in range(20):
            a, b, c = rand(), rand(), rand()
            assert (a + b) * c == a * c + b * c
            assert a * b == b * a
            assert a - a == MPoly.zero(VARS_DZ)

    def test_pow(self):
        p = zpoly(-1, 1)
        assert p**5 == p * p * p * p * p
        assert p**0 == MPoly.const(VARS_Z, 1)

    def test_derivative(self):
        assert f_md().derivative("z") == dz({(0, 2): 3, (1, 1): 2, (0, 0): 1})
        assert f_md().derivative("delta") == dz({(0, 2): 1})

    def test_evaluate_and_shift(self):
        p = f_md()
        v = p.evaluate("z", 1)
        # f(delta, 1) = 2 + delta
        assert v == MPoly.from_dict(("delta",), {(0,): 2, (1,): 1})
        sh = zpoly(0, 0, 1).shifted("z", 1)  # (z+1)^2
        assert sh == zpoly(1, 2, 1)

    def test_substitute_poly(self):
        p = zpoly(0, 0, 1)  # z^2
        q = p.substitute_poly("z", zpoly(1, 1))  # (z+1)^2
        assert q == zpoly(1, 2, 1)


class TestPolyGcd:
    def test_linear_common_factor(self):
        a = zpoly(-1, 0, 1)  # z^2 - 1
        b = zpoly(-1, 1)  # z - 1
        assert poly_gcd(a, b) == b

    def test_square_vs_product(self):
        a = zpoly(-1, 1) ** 2
        b = zpoly(0, 1) * zpoly(-1, 1)
        assert poly_gcd(a, b) == zpoly(-1, 1)

    def test_gcd_zero(self):
        b = zpoly(0, 2)
        assert poly_gcd(MPoly.zero(VARS_Z), b) == zpoly(0, 1)

    def test_monic_output(self):
        a = zpoly(0, 0, 2)
        b = zpoly(0, 4)
        g = poly_gcd(a, b)
        assert g == zpoly(0, 1)

    def test_x2_minus_1_in_lowest_terms(self):
        # trial division by the only available irreducible factors of the
        # denominator shows the reduced pair shares nothing
        w = x2() - 1
        den_factors = [dz({(0, 1): 1}), dz({(0, 2): 1, (1, 1): 1, (0, 0): 1})]
        for p in den_factors:
            assert w.den.divexact(p) is not None  # they do divide the den
            assert w.num.divexact(p) is None  # and never the num
        g = poly_gcd(w.num, w.den)
        assert g == MPoly.const(VARS_DZ, 1)


class TestRatFunc:
    def test_cancellation(self):
        r = ratfunc_make(zpoly(-1, 0, 1), zpoly(-1, 1))
        assert r == RatFunc.from_mpoly(zpoly(1, 1))

    def test_integer_pair_convention(self):
        r = ratfunc_make(zpoly(0, 2), MPoly.const(VARS_Z, 4))
        assert str(r.num) == "z"
        assert str(r.den) == "2"

    def test_x2_shape(self):
        r = x2()
        assert str(r.num) == "z^4 - 2*z^2 + 1"
        assert str(r.den) == "4*delta*z^2 + 4*z^3 + 4*z"

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDenominatorError):
            ratfunc_make(zpoly(1), MPoly.zero(VARS_Z))

    def test_field_axioms_randomized(self):
        rng = random.Random(17)

        def rand():
            num = dz(
                {
                    (rng.randrange(2), rng.randrange(3)): rng.randrange(-5, 6)
                    for _ in range(4)
                }
            )
            den = dz(
                {
                    (rng.randrange(2), rng.randrange(3)): rng.randrange(-5, 6)
                    for _ in range(3)
                }
            )
            if den.is_zero:
                den = MPoly.const(VARS_DZ, 1)
            if num.is_zero:
                num = MPoly.const(VARS_DZ, 1)
            return ratfunc_make(num, den)

        for _ in range(25):
            f, g = rand(), rand()
            assert (f + g) - g == f
            assert (f * g) / g == f
            assert f * g == g * f
            assert (f + g) * g == f * g + g * g

    def test_normal_form_uniqueness(self):
        # two construction paths, bit-identical results
        a = x2()
        num = dz({(0, 4): 3, (0, 2): -6, (0, 0): 3})
        den = dz({(0, 3): 12, (1, 2): 12, (0, 1): 12})
        b = ratfunc_make(num, den)
        assert a.num.terms == b.num.terms and a.den.terms == b.den.terms
        assert a.num.content == b.num.content and a.den.content == b.den.content

    def test_pow_negative(self):
        f = ratfunc_make(zpoly(0, 1), zpoly(-1, 1))
        assert f**-2 == (1 / f) * (1 / f)


class TestDifferentiate:
    def test_f_md_partial(self):
        f = RatFunc.from_mpoly(f_md())
        assert differentiate(f, "z") == RatFunc.from_mpoly(
            dz({(0, 2): 3, (1, 1): 2, (0, 0): 1})
        )

    def test_constant(self):
        c = RatFunc.const(VARS_Z, Q(7, 3))
        assert differentiate(c, "z").is_zero

    def test_quotient_rule_simple_pole(self):
        f = ratfunc_make(MPoly.const(VARS_Z, 1), zpoly(-1, 1))
        expect = ratfunc_make(MPoly.const(VARS_Z, -1), zpoly(-1, 1) ** 2)
        assert differentiate(f, "z") == expect

    def test_leibniz_randomized(self):
        rng = random.Random(23)

        def rand():
            num = zpoly(*[rng.randrange(-4, 5) for _ in range(4)])
            den = zpoly(*[rng.randrange(-4, 5) for _ in range(3)])
            if den.is_zero:
                den = MPoly.const(VARS_Z, 1)
            if num.is_zero:
                num = MPoly.const(VARS_Z, 1)
            return ratfunc_make(num, den)

        for _ in range(20):
            f, g = rand(), rand()
            lhs = differentiate(f * g, "z")
            rhs = differentiate(f, "z") * g + f * differentiate(g, "z")
            assert lhs == rhs


class TestSubstitute:
    def test_identity(self):
        f = RatFunc.from_mpoly(zpoly(0, 1, 0, 1))
        assert substitute(f, "z", RatFunc.var("z")) == f

    def test_missing_var(self):
        f = RatFunc.from_mpoly(zpoly(1, 1))
        assert substitute(f, "delta", RatFunc.const(VARS_Z, 5)) == f

    def test_x2_at_delta_minus2(self):
        # the nodal specialization (z+1)^2/(4z)
        r = substitute(x2(), "delta", RatFunc.const((), -2))
        expect = ratfunc_make(zpoly(1, 2, 1), zpoly(0, 4))
        assert r == expect

    def test_rational_into_rational(self):
        # 1/z with z -> (z+1)/(z-1) gives (z-1)/(z+1)
        f = ratfunc_make(MPoly.const(VARS_Z, 1), zpoly(0, 1))
        g = ratfunc_make(zpoly(1, 1), zpoly(-1, 1))
        assert substitute(f, "z", g) == ratfunc_make(zpoly(-1, 1), zpoly(1, 1))

    def test_denominator_collapse(self):
        # 1/(z^2-1) with z -> 1 as a rational function: denominator vanishes
        f = ratfunc_make(MPoly.const(VARS_Z, 1), zpoly(-1, 0, 1))
        with pytest.raises(ZeroDenominatorError):
            substitute(f, "z", RatFunc.const(VARS_Z, 1))


class TestEvaluatePartial:
    def test_x2_at_z1(self):
        v = evaluate_partial(x2(), "z", 1)
        assert v == RatFunc.const(("delta",), 0)

    def test_simple_pole_undefined(self):
        f = ratfunc_make(zpoly(0, 1), zpoly(-1, 1))
        assert evaluate_partial(f, "z", 1) is UNDEFINED

    def test_removable_after_normalization(self):
        f = ratfunc_make(zpoly(-1, 1) ** 2, zpoly(-1, 1))
        assert evaluate_partial(f, "z", 1) == RatFunc.const((), 0)

    def test_commutes_with_arithmetic(self):
        rng = random.Random(5)
        for _ in range(15):
            f = ratfunc_make(
                dz({(rng.randrange(2), rng.randrange(3)): rng.randrange(-4, 5) for _ in range(4)}),
                dz({(0, 0): 1, (1, 1): rng.randrange(-2, 3)}),
            )
            g = ratfunc_make(
                dz({(rng.randrange(2), rng.randrange(2)): rng.randrange(-4, 5) for _ in range(3)}),
                MPoly.const(VARS_DZ, rng.randrange(1, 4)),
            )
            for c in (0, 1, -2):
                lhs = evaluate_partial(f * g, "z", c)
                fa = evaluate_partial(f, "z", c)
                gb = evaluate_partial(g, "z", c)
                if lhs is UNDEFINED or fa is UNDEFINED or gb is UNDEFINED:
                    continue
                assert lhs == fa * gb
