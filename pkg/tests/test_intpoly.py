"""Engine-level checks for the integer polynomial core.

The gcd and product routines are compared against sympy on randomized
inputs; sympy is only a test oracle, the package itself never imports it.
"""

import random

import pytest
import sympy as sp

from mdverify import intpoly


def _to_sympy(terms, syms):
    expr = sp.Integer(0)
    for e, c in terms.items():
        mono = sp.Integer(int(c))
        for s, k in zip(syms, e):
            mono *= s**k
        expr += mono
    return expr


def _from_sympy(expr, syms):
    poly = sp.Poly(expr, *syms, domain="ZZ")
    return {tuple(m): int(c) for m, c in zip(poly.monoms(), poly.coeffs())}


def _rand_poly(rng, nv, deg, nterms, cmax=9):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randrange(deg + 1) for _ in range(nv))
        c = rng.randrange(-cmax, cmax + 1)
        if c:
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


@pytest.mark.parametrize("nv", [1, 2, 3])
def test_mul_matches_sympy(nv):
    rng = random.Random(7 + nv)
    syms = sp.symbols(f"x0:{nv}")
    for _ in range(25):
        a = _rand_poly(rng, nv, 6, 8)
        b = _rand_poly(rng, nv, 6, 8)
        got = intpoly.mul_int(a, b, nv)
        want = sp.expand(_to_sympy(a, syms) * _to_sympy(b, syms))
        assert _to_sympy(got, syms).equals(want)


def test_kronecker_path_matches_sparse():
    rng = random.Random(11)
    for nv in (1, 2):
        a = _rand_poly(rng, nv, 40, 300, cmax=10**6)
        b = _rand_poly(rng, nv, 40, 300, cmax=10**6)
        assert intpoly._mul_kronecker(a, b, nv) == intpoly._mul_sparse(a, b)


@pytest.mark.parametrize("nv", [1, 2, 3])
def test_gcd_cofactors_randomized(nv):
    rng = random.Random(100 + nv)
    syms = sp.symbols(f"y0:{nv}")
    for trial in range(20):
        g = _rand_poly(rng, nv, 3, 4)
        a0 = _rand_poly(rng, nv, 3, 4)
        b0 = _rand_poly(rng, nv, 3, 4)
        if not g or not a0 or not b0:
            continue
        a = intpoly.mul_int(g, a0, nv)
        b = intpoly.mul_int(g, b0, nv)
        gg, qa, qb = intpoly.gcd_cofactors(a, b, nv)
        # certified factorization
        assert intpoly.mul_int(gg, qa, nv) == a
        assert intpoly.mul_int(gg, qb, nv) == b
        # matches sympy's gcd up to sign
        want = sp.gcd(_to_sympy(a, syms), _to_sympy(b, syms))
        got = _to_sympy(gg, syms)
        assert got.equals(want) or got.equals(-want)


def test_gcd_zero_cases():
    b = {(2, 0): -3, (0, 1): 6}
    g, qa, qb = intpoly.gcd_cofactors({}, b, 2)
    # sign-normalized: graded-lex leading coefficient positive
    assert g == {(2, 0): 3, (0, 1): -6}
    assert qa == {}
    assert intpoly.mul_int(g, qb, 2) == b
    g, _, _ = intpoly.gcd_cofactors({}, {}, 2)
    assert g == {}


def test_gcd_large_cancellation():
    # large common factor in two variables, the shape the curve chain hits
    rng = random.Random(5)
    g = _rand_poly(rng, 2, 12, 60, cmax=10**8)
    a0 = _rand_poly(rng, 2, 10, 40, cmax=10**8)
    b0 = _rand_poly(rng, 2, 10, 40, cmax=10**8)
    a = intpoly.mul_int(g, a0, 2)
    b = intpoly.mul_int(g, b0, 2)
    gg, qa, qb = intpoly.gcd_cofactors(a, b, 2)
    assert intpoly.mul_int(gg, qa, 2) == a
    assert intpoly.mul_int(gg, qb, 2) == b
    # gg must be a multiple of g (if a0, b0 share factors it can be larger)
    assert intpoly.divexact_int(gg, intpoly.primitive(g)[1], 2) is not None


def test_divexact():
    rng = random.Random(42)
    for nv in (1, 2, 3):
        for _ in range(10):
            b = _rand_poly(rng, nv, 4, 5)
            q = _rand_poly(rng, nv, 4, 5)
            if not b or not q:
                continue
            a = intpoly.mul_int(b, q, nv)
            assert intpoly.divexact_int(a, b, nv) == q
            bumped = dict(a)
            key = (1,) * nv
            bumped[key] = bumped.get(key, 0) + 1
            prod_check = intpoly.divexact_int(bumped, b, nv)
            if prod_check is not None:
                assert intpoly.mul_int(prod_check, b, nv) == bumped


def test_primitive_and_content():
    a = {(1, 0): 6, (0, 1): -9}
    c, pp = intpoly.primitive(a)
    assert c == 3 and pp == {(1, 0): 2, (0, 1): -3}
    a = {(0, 1): -4, (0, 0): -2}
    c, pp = intpoly.primitive(a)
    assert c == -2 and pp == {(0, 1): 2, (0, 0): 1}
