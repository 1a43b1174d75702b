"""Internal integer-polynomial engine.

Sparse multivariate polynomials over the integers, represented as dicts
mapping exponent tuples to nonzero integer coefficients.  This module is
deliberately free of any rational arithmetic: the public MPoly type keeps a
single rational content factor and delegates the heavy lifting (products,
exact division, gcd with cofactors) to these routines.

Algorithms:

* products dispatch between a sparse schoolbook loop and Kronecker
  substitution (packing coefficients into one huge integer so GMP does the
  convolution) once the term-pair count gets large;
* gcds in one and two variables run a small-prime homomorphic scheme:
  monic images over F_p (plus evaluation/interpolation in the second
  variable), CRT-combined until stable, then *verified* by exact
  multiplication, so a wrong stabilization can never escape;
* three or more variables fall back to a primitive PRS, which is plenty for
  the small formulas that ever reach it.

Every gcd result is certified: g, a/g, b/g are returned together and
g*(a/g) == a, g*(b/g) == b are checked exactly before returning.
"""

from __future__ import annotations

from array import array
from math import gcd as _igcd

from . import kernel
from ._scalars import HAVE_GMPY

if HAVE_GMPY:
    from gmpy2 import mpz as _mpz
else:
    _mpz = int

# term dict: exponent tuple -> nonzero int
Terms = dict

_KRONECKER_CUTOFF = 40_000  # term-pair count above which packing wins
_STABLE_RUN = 2  # consecutive confirming samples before a candidate is tried
_MAX_PRIMES = 400


# ---------------------------------------------------------------------------
# primes


_PRIME_CACHE: list[int] = []


def _is_probable_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3e24
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def nth_prime(i: int) -> int:
    """i-th 62-bit prime (0-based), cached."""
    while len(_PRIME_CACHE) <= i:
        n = (_PRIME_CACHE[-1] if _PRIME_CACHE else (1 << 61)) + 1
        if n % 2 == 0:
            n += 1
        while not _is_probable_prime(n):
            n += 2
        _PRIME_CACHE.append(n)
    return _PRIME_CACHE[i]


# ---------------------------------------------------------------------------
# basic term-dict helpers


def degrees(a: Terms, nv: int) -> tuple[int, ...]:
    """Per-variable max exponent; zeros for the zero polynomial."""
    degs = [0] * nv
    for e in a:
        for i, ei in enumerate(e):
            if ei > degs[i]:
                degs[i] = ei
    return tuple(degs)


def min_exponents(a: Terms, nv: int) -> tuple[int, ...]:
    mins = None
    for e in a:
        if mins is None:
            mins = list(e)
        else:
            for i, ei in enumerate(e):
                if ei < mins[i]:
                    mins[i] = ei
    return tuple(mins) if mins is not None else (0,) * nv


def glex_key(e: tuple) -> tuple:
    return (sum(e), e)


def leading_term(a: Terms):
    """(exponent, coeff) of the graded-lex leading term; a nonzero."""
    e = max(a, key=glex_key)
    return e, a[e]


def content_int(a: Terms) -> int:
    """Positive gcd of all coefficients; 0 for the zero polynomial."""
    g = 0
    for c in a.values():
        g = _igcd(g, int(c) if c < 0 else int(c))
        if g == 1:
            return 1
    return g


def primitive(a: Terms) -> tuple[int, Terms]:
    """Split a = c * pp with pp integer-primitive and glex-lc(pp) > 0.

    The returned content c carries the sign; (0, {}) for the zero poly.
    """
    if not a:
        return 0, {}
    c = content_int(a)
    _, lc = leading_term(a)
    if lc < 0:
        c = -c
    if c == 1:
        return 1, dict(a)
    return c, {e: v // c for e, v in a.items()}


def add_int(a: Terms, b: Terms) -> Terms:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def neg_int(a: Terms) -> Terms:
    return {e: -c for e, c in a.items()}


def scale_int(a: Terms, k) -> Terms:
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def shift_exponents(a: Terms, shift: tuple) -> Terms:
    if not any(shift):
        return dict(a)
    return {tuple(ei + si for ei, si in zip(e, shift)): c for e, c in a.items()}


def _mul_sparse(a: Terms, b: Terms) -> Terms:
    out: Terms = {}
    if len(a) > len(b):
        a, b = b, a
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _max_bits(a: Terms) -> int:
    m = 0
    for c in a.values():
        bl = int(c if c > 0 else -c).bit_length()
        if bl > m:
            m = bl
    return m


def _pack(a: Terms, strides: tuple, kbytes: int, size: int) -> int:
    pos = bytearray(size)
    neg = bytearray(size)
    for e, c in a.items():
        slot = 0
        for ei, st in zip(e, strides):
            slot += ei * st
        off = slot * kbytes
        if c > 0:
            pos[off : off + kbytes] = int(c).to_bytes(kbytes, "little")
        else:
            neg[off : off + kbytes] = int(-c).to_bytes(kbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Terms, b: Terms, nv: int) -> Terms:
    da = degrees(a, nv)
    db = degrees(b, nv)
    dres = tuple(x + y for x, y in zip(da, db))
    # strides for mixed-radix slot layout, last variable minor
    strides = [0] * nv
    acc = 1
    for i in range(nv - 1, -1, -1):
        strides[i] = acc
        acc *= dres[i] + 1
    nslots = acc
    kbits = _max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 2
    kbytes = (kbits + 7) // 8
    kbits = kbytes * 8
    size = nslots * kbytes + 8
    va = _mpz(_pack(a, tuple(strides), kbytes, size))
    vb = _mpz(_pack(b, tuple(strides), kbytes, size))
    m = va * vb
    negate = m < 0
    if negate:
        m = -m
    raw = int(m).to_bytes(nslots * kbytes + 2 * kbytes, "little")
    half = 1 << (kbits - 1)
    full = 1 << kbits
    out: Terms = {}
    carry = 0
    for slot in range(nslots):
        d = int.from_bytes(raw[slot * kbytes : (slot + 1) * kbytes], "little") + carry
        if d >= half:
            c = d - full
            carry = 1
        else:
            c = d
            carry = 0
        if c:
            rem = slot
            e = [0] * nv
            for i in range(nv):
                e[i], rem = divmod(rem, strides[i])
            out[tuple(e)] = _mpz(-c if negate else c)
    return out


def mul_int(a: Terms, b: Terms, nv: int) -> Terms:
    """Exact product, dispatching to Kronecker packing when it pays off."""
    if not a or not b:
        return {}
    if len(a) == 1:
        (e, c), = a.items()
        return {tuple(x + y for x, y in zip(e, eb)): c * cb for eb, cb in b.items()}
    if len(b) == 1:
        return mul_int(b, a, nv)
    if len(a) * len(b) >= _KRONECKER_CUTOFF and nv <= 3:
        return _mul_kronecker(a, b, nv)
    return _mul_sparse(a, b)


def mul_many(polys, nv: int) -> Terms:
    out = {(0,) * nv: 1}
    for q in polys:
        out = mul_int(out, q, nv)
        if not out:
            return out
    return out


def equal_int(a: Terms, b: Terms) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# sparse exact division (any number of variables)


def divexact_sparse(a: Terms, b: Terms, nv: int):
    """Quotient a/b over ZZ or None when b does not divide a exactly."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    eb, cb = leading_term(b)
    rest = [(e, c) for e, c in b.items() if e != eb]
    r = dict(a)
    q: Terms = {}
    while r:
        er, cr = leading_term(r)
        de = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in de):
            return None
        if cr % cb:
            return None
        cq = cr // cb
        q[de] = cq
        del r[er]
        for e, c in rest:
            key = tuple(x + y for x, y in zip(e, de))
            s = r.get(key, 0) - cq * c
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return q


# ---------------------------------------------------------------------------
# dense conversions (one and two variables)


def _dense1(a: Terms) -> list:
    d = degrees(a, 1)[0]
    out = [0] * (d + 1)
    for (e,), c in a.items():
        out[e] = int(c)
    return out


def _from_dense1(v) -> Terms:
    return {(i,): _mpz(c) for i, c in enumerate(v) if c}


def _zero_flat(n: int):
    """Flat machine-word buffer both kernel backends accept."""
    return array("Q", bytes(8 * n))


def _flatten2_mod(a: Terms, main: int, p: int):
    """Flatten a 2-var poly mod p into rows over the secondary variable."""
    sec = 1 - main
    dz = 0
    dd = 0
    for e in a:
        if e[main] > dz:
            dz = e[main]
        if e[sec] > dd:
            dd = e[sec]
    nz, nd = dz + 1, dd + 1
    flat = _zero_flat(nz * nd)
    for e, c in a.items():
        flat[e[main] * nd + e[sec]] = int(c) % p
    return flat, nz, nd


def _lc_main(a: Terms, main: int) -> Terms:
    """Leading coefficient of a in the main variable, as a 1-var dict."""
    d = degrees(a, 2)[main]
    sec = 1 - main
    return {(e[sec],): c for e, c in a.items() if e[main] == d}


def _coeff_slices(a: Terms, main: int):
    """Map secondary-degree -> is anything there; delta content helper."""
    sec = 1 - main
    slices: dict[int, Terms] = {}
    for e, c in a.items():
        slices.setdefault(e[main], {})[(e[sec],)] = c
    return slices


# ---------------------------------------------------------------------------
# CRT accumulation helper


class _CrtState:
    """Incremental CRT over term dicts with symmetric-lift stabilization."""

    def __init__(self):
        self.modulus = 1
        self.residues: Terms = {}
        self.prev_lift = None
        self.stable = False

    def add(self, p: int, image: Terms):
        m = self.modulus
        if m == 1:
            self.residues = {e: int(c) % p for e, c in image.items()}
            self.modulus = p
        else:
            inv = pow(m % p, p - 2, p)
            new: Terms = {}
            keys = set(self.residues) | set(image)
            mm = m * p
            for e in keys:
                r_old = self.residues.get(e, 0)
                r_new = int(image.get(e, 0)) % p
                t = (r_new - r_old) % p * inv % p
                v = (r_old + m * t) % mm
                if v:
                    new[e] = v
            self.residues = new
            self.modulus = mm
        lift = self.lift()
        self.stable = self.prev_lift is not None and lift == self.prev_lift
        self.prev_lift = lift

    def lift(self) -> Terms:
        half = self.modulus // 2
        m = self.modulus
        return {e: (c - m if c > half else c) for e, c in self.residues.items() if c}


# ---------------------------------------------------------------------------
# univariate modular gcd


def _gcd_cofactors_1var(a: Terms, b: Terms):
    av = _dense1(a)
    bv = _dense1(b)
    ga = int(av[-1])
    gb = int(bv[-1])
    gamma = _igcd(ga, gb)
    state = _CrtState()
    min_deg = None
    pi = 0
    while pi < _MAX_PRIMES:
        p = nth_prime(pi)
        pi += 1
        if ga % p == 0 or gb % p == 0:
            continue
        ap = [c % p for c in av]
        bp = [c % p for c in bv]
        g = kernel.gcd_mod(ap, bp, p)
        dg = len(g) - 1
        if dg == 0:
            one = {(0,): _mpz(1)}
            return one, dict(a), dict(b)
        if min_deg is None or dg < min_deg:
            min_deg = dg
            state = _CrtState()
        elif dg > min_deg:
            continue
        s = gamma % p
        state.add(p, _from_dense1([c * s % p for c in g]))
        if state.stable:
            cand = state.lift()
            _, cand = primitive(cand)
            qa = divexact_sparse(a, cand, 1)
            if qa is not None:
                qb = divexact_sparse(b, cand, 1)
                if qb is not None:
                    return cand, qa, qb
    raise RuntimeError("univariate gcd reconstruction did not converge")


# ---------------------------------------------------------------------------
# bivariate modular gcd


def _delta_content_free(a: Terms, main: int):
    """Split off the gcd of the main-variable coefficients (a 1-var poly)."""
    slices = _coeff_slices(a, main)
    cont = None
    for sl in slices.values():
        if cont is None:
            cont = sl
        else:
            cont, _, _ = gcd_cofactors(cont, sl, 1)
        if len(cont) == 1 and cont.get((0,)) in (1, -1):
            return {(0,): 1}, dict(a)
    sec = 1 - main
    if len(cont) == 1 and (0,) in cont:
        k = cont[(0,)]
        return cont, {e: c // k for e, c in a.items()}
    out: Terms = {}
    for dm, sl in slices.items():
        q = divexact_sparse(sl, cont, 1)
        for (es,), c in q.items():
            e = [0, 0]
            e[main] = dm
            e[sec] = es
            out[tuple(e)] = c
    return cont, out


def _embed1_to2(a1: Terms, var: int) -> Terms:
    out: Terms = {}
    for (e,), c in a1.items():
        key = [0, 0]
        key[var] = e
        out[tuple(key)] = c
    return out


def _quotient_2var(a: Terms, g: Terms, main: int):
    """Exact quotient a/g for 2-var polynomials via modular interpolation.

    Returns None when g clearly does not divide a.  The caller must verify
    the product; stabilization here is heuristic.
    """
    sec = 1 - main
    da = degrees(a, 2)
    dg = degrees(g, 2)
    dq_main = da[main] - dg[main]
    dq_sec = da[sec] - dg[sec]
    if dq_main < 0 or dq_sec < 0:
        return None
    lga = _dense1(_lc_main(a, main))
    lgg = _dense1(_lc_main(g, main))
    state = _CrtState()
    pi = 0
    tried = 0
    while pi < _MAX_PRIMES:
        p = nth_prime(pi)
        pi += 1
        if int(lgg[-1]) % p == 0 or int(lga[-1]) % p == 0:
            continue
        tried += 1
        aflat, _, nda = _flatten2_mod(a, main, p)
        gflat, _, ndg = _flatten2_mod(g, main, p)
        nza = da[main] + 1
        nzg = dg[main] + 1
        nq = dq_main + 1
        ndq = dq_sec + _STABLE_RUN + 3
        qflat = _zero_flat(nq * ndq)
        basis = [1]
        used = 0
        run = 0
        e = 0
        while used <= dq_sec + _STABLE_RUN and e < p:
            x = e
            e += 1
            if kernel.eval_mod(lgg, x, p) == 0:
                continue
            avx = kernel.bivar_eval_mod(aflat, nza, nda, x, p)
            gvx = kernel.bivar_eval_mod(gflat, nzg, ndg, x, p)
            q = kernel.divexact_mod(avx, gvx, p)
            if q is None:
                return None
            q = q + [0] * (nq - len(q))
            pred = kernel.bivar_eval_mod(qflat, nq, ndq, x, p)
            pred = pred + [0] * (nq - len(pred))
            err = [(qc - pc) % p for qc, pc in zip(q, pred)]
            if any(err):
                run = 0
                c = pow(kernel.eval_mod(basis, x, p), p - 2, p)
                kernel.bivar_update_mod(qflat, nq, ndq, err, c, basis, p)
            else:
                run += 1
            basis = kernel.mul_mod(basis, [(-x) % p, 1], p)
            used += 1
            if run >= _STABLE_RUN and used > 2:
                break
        img: Terms = {}
        for i in range(nq):
            for j in range(ndq):
                c = qflat[i * ndq + j]
                if c:
                    key = [0, 0]
                    key[main] = i
                    key[sec] = j
                    img[tuple(key)] = c
        state.add(p, img)
        if state.stable:
            return state.lift()
        if tried > 80:
            return None
    return None


def _gcd_cofactors_2var(a: Terms, b: Terms):
    main = 0
    da = degrees(a, 2)
    db = degrees(b, 2)
    if da[0] + db[0] < da[1] + db[1]:
        main = 1
    sec = 1 - main

    ca, a1 = _delta_content_free(a, main)
    cb, b1 = _delta_content_free(b, main)
    cg, cqa, cqb = gcd_cofactors(ca, cb, 1)

    lca = _dense1(_lc_main(a1, main))
    lcb = _dense1(_lc_main(b1, main))
    la1 = {(i,): c for i, c in enumerate(lca) if c}
    lb1 = {(i,): c for i, c in enumerate(lcb) if c}
    gamma, _, _ = gcd_cofactors(la1, lb1, 1)
    gamma_d = _dense1(gamma) if gamma else [1]

    d1a = degrees(a1, 2)
    d1b = degrees(b1, 2)
    dd_bound = min(d1a[sec], d1b[sec]) + len(gamma_d) - 1

    state = _CrtState()
    min_deg = None
    pi = 0
    while pi < _MAX_PRIMES:
        p = nth_prime(pi)
        pi += 1
        if int(lca[-1]) % p == 0 or int(lcb[-1]) % p == 0:
            continue
        gam_p = [int(c) % p for c in gamma_d]
        aflat, nza, nda = _flatten2_mod(a1, main, p)
        bflat, nzb, ndb = _flatten2_mod(b1, main, p)
        gflat = None
        ndg = dd_bound + _STABLE_RUN + 4
        basis = [1]
        used = 0
        run = 0
        x = 0
        prime_deg = None
        while x < p:
            e = x
            x += 1
            if kernel.eval_mod(lca, e, p) == 0 or kernel.eval_mod(lcb, e, p) == 0:
                continue
            av = kernel.bivar_eval_mod(aflat, nza, nda, e, p)
            bv = kernel.bivar_eval_mod(bflat, nzb, ndb, e, p)
            g = kernel.gcd_mod(av, bv, p)
            dg = len(g) - 1
            if dg == 0:
                # gcd of the content-free parts is 1; full gcd is the
                # secondary-variable content gcd
                if len(cg) == 1 and cg.get((0,)) == 1:
                    return {(0, 0): _mpz(1)}, dict(a), dict(b)
                qa = mul_int(a1, _embed1_to2(cqa, sec), 2)
                qb = mul_int(b1, _embed1_to2(cqb, sec), 2)
                return _embed1_to2(cg, sec), qa, qb
            if prime_deg is None or dg < prime_deg:
                prime_deg = dg
                gflat = _zero_flat((dg + 1) * ndg)
                basis = [1]
                used = 0
                run = 0
            elif dg > prime_deg:
                continue
            s = kernel.eval_mod(gam_p, e, p)
            g = [c * s % p for c in g]
            nzg = prime_deg + 1
            pred = kernel.bivar_eval_mod(gflat, nzg, ndg, e, p)
            pred = pred + [0] * (nzg - len(pred))
            g = g + [0] * (nzg - len(g))
            err = [(gc - pc) % p for gc, pc in zip(g, pred)]
            if any(err):
                run = 0
                c = pow(kernel.eval_mod(basis, e, p), p - 2, p)
                kernel.bivar_update_mod(gflat, nzg, ndg, err, c, basis, p)
            else:
                run += 1
            basis = kernel.mul_mod(basis, [(-e) % p, 1], p)
            used += 1
            if (run >= _STABLE_RUN and used > 2) or used > dd_bound + _STABLE_RUN + 1:
                break
        if gflat is None:
            continue
        if min_deg is None or prime_deg < min_deg:
            min_deg = prime_deg
            state = _CrtState()
        elif prime_deg > min_deg:
            continue
        img: Terms = {}
        nzg = prime_deg + 1
        for i in range(nzg):
            for j in range(ndg):
                c = gflat[i * ndg + j]
                if c:
                    key = [0, 0]
                    key[main] = i
                    key[sec] = j
                    img[tuple(key)] = c
        state.add(p, img)
        if not state.stable:
            continue
        cand = state.lift()
        _, cand = primitive(cand)
        _, cand = _delta_content_free(cand, main)
        _, cand = primitive(cand)
        qa = _try_quotient_2var(a1, cand, main)
        if qa is None:
            continue
        qb = _try_quotient_2var(b1, cand, main)
        if qb is None:
            continue
        g_full = mul_int(cand, _embed1_to2(cg, sec), 2)
        qa_full = mul_int(qa, _embed1_to2(cqa, sec), 2)
        qb_full = mul_int(qb, _embed1_to2(cqb, sec), 2)
        return g_full, qa_full, qb_full
    raise RuntimeError("bivariate gcd reconstruction did not converge")


def _try_quotient_2var(a: Terms, g: Terms, main: int):
    """Verified exact quotient a/g, or None."""
    if len(g) == 1 and g.get((0, 0)) == 1:
        return dict(a)
    small = len(a) * len(g) < 4000
    q = divexact_sparse(a, g, 2) if small else _quotient_2var(a, g, main)
    if q is None:
        return None
    if not small and mul_int(q, g, 2) != a:
        return None
    return q


# ---------------------------------------------------------------------------
# primitive PRS fallback (three or more variables)


def _coeffs_in_main(a: Terms, main: int, nv: int):
    slices: dict[int, Terms] = {}
    for e, c in a.items():
        rest = e[:main] + e[main + 1 :]
        slices.setdefault(e[main], {})[rest] = c
    return slices


def _from_slices(slices, main: int, nv: int) -> Terms:
    out: Terms = {}
    for dm, sl in slices.items():
        for rest, c in sl.items():
            e = rest[:main] + (dm,) + rest[main:]
            out[e] = c
    return out


def _content_in_main(a: Terms, main: int, nv: int) -> Terms:
    cont = None
    for sl in _coeffs_in_main(a, main, nv).values():
        if cont is None:
            cont = sl
        else:
            cont, _, _ = gcd_cofactors(cont, sl, nv - 1)
        if len(cont) == 1:
            e, c = next(iter(cont.items()))
            if not any(e) and c in (1, -1):
                break
    return cont


def _pseudo_rem(a: Terms, b: Terms, main: int, nv: int):
    da = degrees(a, nv)[main]
    db = degrees(b, nv)[main]
    bs = _coeffs_in_main(b, main, nv)
    lb = bs[db]
    lb_full = _from_slices({0: lb}, main, nv)
    r = dict(a)
    while r:
        dr = degrees(r, nv)[main]
        if dr < db:
            break
        rs = _coeffs_in_main(r, main, nv)
        lr_full = _from_slices({0: rs[dr]}, main, nv)
        shift = [0] * nv
        shift[main] = dr - db
        r = add_int(
            mul_int(r, lb_full, nv),
            neg_int(mul_int(shift_exponents(b, tuple(shift)), lr_full, nv)),
        )
    return r


def _gcd_prs(a: Terms, b: Terms, nv: int):
    da = degrees(a, nv)
    db = degrees(b, nv)
    best = None
    for v in range(nv):
        if da[v] + db[v] > 0:
            score = da[v] + db[v]
            if best is None or score < best[0]:
                best = (score, v)
    main = best[1]
    ca = _content_in_main(a, main, nv)
    cb = _content_in_main(b, main, nv)
    cg, _, _ = gcd_cofactors(ca, cb, nv - 1)
    pa = divexact_sparse(a, _from_slices({0: ca}, main, nv), nv)
    pb = divexact_sparse(b, _from_slices({0: cb}, main, nv), nv)
    if degrees(pa, nv)[main] < degrees(pb, nv)[main]:
        pa, pb = pb, pa
    while True:
        r = _pseudo_rem(pa, pb, main, nv)
        if not r:
            break
        if degrees(r, nv)[main] == 0:
            pb = {(0,) * nv: 1}
            break
        cr = _content_in_main(r, main, nv)
        r = divexact_sparse(r, _from_slices({0: cr}, main, nv), nv)
        pa, pb = pb, r
    _, pb = primitive(pb)
    g = mul_int(_from_slices({0: cg}, main, nv), pb, nv)
    _, g = primitive(g)
    qa = divexact_sparse(a, g, nv)
    qb = divexact_sparse(b, g, nv)
    if qa is None or qb is None:
        raise RuntimeError("PRS gcd verification failed")
    return g, qa, qb


# ---------------------------------------------------------------------------
# public entry


def gcd_cofactors(a: Terms, b: Terms, nv: int):
    """(g, a/g, b/g) with g the positive primitive gcd times content gcd.

    Inputs are arbitrary integer term dicts over nv variables.  The gcd of
    the zero polynomial and b is the sign-normalized b.
    """
    if not a and not b:
        return {}, {}, {}
    if not a:
        cb, pb = primitive(b)
        g = scale_int(pb, abs(cb))
        return g, {}, {(0,) * nv: 1 if cb > 0 else -1}
    if not b:
        ca, pa = primitive(a)
        g = scale_int(pa, abs(ca))
        return g, {(0,) * nv: 1 if ca > 0 else -1}, {}
    ca, pa = primitive(a)
    cb, pb = primitive(b)
    ci = _igcd(abs(ca), abs(cb))

    # strip common monomial factors cheaply
    ma = min_exponents(pa, nv)
    mb = min_exponents(pb, nv)
    mg = tuple(min(x, y) for x, y in zip(ma, mb))
    if any(mg):
        pa = shift_exponents(pa, tuple(-x for x in mg))
        pb = shift_exponents(pb, tuple(-x for x in mg))
    else:
        pa = dict(pa)
        pb = dict(pb)

    if len(pa) == 1 or len(pb) == 1:
        g0: Terms = {(0,) * nv: 1}
        qa0, qb0 = pa, pb
    elif pa == pb:
        g0, qa0, qb0 = dict(pa), {(0,) * nv: 1}, {(0,) * nv: 1}
    elif nv == 1:
        g0, qa0, qb0 = _gcd_cofactors_1var(pa, pb)
    elif nv == 2:
        g0, qa0, qb0 = _gcd_cofactors_2var(pa, pb)
    else:
        g0, qa0, qb0 = _gcd_prs(pa, pb, nv)

    # a = ci*x^mg*g0 * (ca/ci)*qa0: the stripped monomial goes back into g,
    # the cofactors already carry their residual exponents
    g = shift_exponents(g0, mg)
    if ci != 1:
        g = scale_int(g, ci)
    qa = scale_int(qa0, ca // ci)
    qb = scale_int(qb0, cb // ci)
    return g, qa, qb


def divexact_int(a: Terms, b: Terms, nv: int):
    """Exact quotient a/b over ZZ, or None; dispatches on size."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    if nv == 2 and len(a) * len(b) >= 4000:
        da = degrees(a, 2)
        db = degrees(b, 2)
        main = 0 if da[0] >= da[1] else 1
        if da[main] < db[main]:
            return None
        q = _quotient_2var(a, b, main)
        if q is None or mul_int(q, b, 2) != a:
            return None
        return q
    return divexact_sparse(a, b, nv)
