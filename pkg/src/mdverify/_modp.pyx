# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled dense polynomial kernels over a prime field.

Same API as _modp_py; mdverify.kernel prefers this module when the build
produced it.  Coefficients are machine words below 2^62, products go
through 128-bit intermediates.
"""

from libc.stdlib cimport malloc, free
from cpython.list cimport PyList_New, PyList_SET_ITEM
from cpython.ref cimport Py_INCREF

ctypedef unsigned long long u64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

BACKEND = "compiled"


cdef inline u64 mulmod(u64 a, u64 b, u64 p) nogil:
    return <u64>((<u128>a * b) % p)


cdef inline u64 powmod(u64 a, u64 e, u64 p) nogil:
    cdef u64 r = 1
    a %= p
    while e:
        if e & 1:
            r = mulmod(r, a, p)
        a = mulmod(a, a, p)
        e >>= 1
    return r


cdef u64* _to_buf(object seq, Py_ssize_t* n_out, u64 p) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef u64* buf = <u64*>malloc((n if n else 1) * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <u64>(seq[i] % p)
    while n and buf[n - 1] == 0:
        n -= 1
    n_out[0] = n
    return buf


cdef list _to_list(u64* buf, Py_ssize_t n):
    cdef list out = PyList_New(n)
    cdef Py_ssize_t i
    cdef object v
    for i in range(n):
        v = buf[i]
        Py_INCREF(v)
        PyList_SET_ITEM(out, i, v)
    return out


def trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def mul_mod(a, b, u64 p):
    cdef Py_ssize_t na, nb, i, j
    cdef u64* pa = _to_buf(a, &na, p)
    cdef u64* pb = _to_buf(b, &nb, p)
    if na == 0 or nb == 0:
        free(pa); free(pb)
        return []
    cdef Py_ssize_t nr = na + nb - 1
    cdef u64* pr = <u64*>malloc(nr * sizeof(u64))
    if pr == NULL:
        free(pa); free(pb)
        raise MemoryError()
    cdef u64 ai
    with nogil:
        for i in range(nr):
            pr[i] = 0
        for i in range(na):
            ai = pa[i]
            if ai:
                for j in range(nb):
                    if pb[j]:
                        pr[i + j] = (pr[i + j] + mulmod(ai, pb[j], p)) % p
    out = _to_list(pr, nr)
    free(pa); free(pb); free(pr)
    return out


cdef Py_ssize_t _rem_inplace(u64* r, Py_ssize_t nr, u64* b, Py_ssize_t nb, u64 p) nogil:
    cdef Py_ssize_t db = nb - 1
    cdef u64 inv_lb = powmod(b[db], p - 2, p)
    cdef u64 c
    cdef Py_ssize_t off, j
    while nr - 1 >= db:
        if r[nr - 1]:
            c = mulmod(r[nr - 1], inv_lb, p)
            off = nr - 1 - db
            for j in range(db):
                if b[j]:
                    r[off + j] = (r[off + j] + p - mulmod(c, b[j], p)) % p
        nr -= 1
        while nr and r[nr - 1] == 0:
            nr -= 1
    return nr


def rem_mod(a, b, u64 p):
    cdef Py_ssize_t na, nb
    cdef u64* pb = _to_buf(b, &nb, p)
    if nb == 0:
        free(pb)
        raise ZeroDivisionError("polynomial remainder by zero")
    cdef u64* pa = _to_buf(a, &na, p)
    if na < nb:
        out = _to_list(pa, na)
        free(pa); free(pb)
        return out
    with nogil:
        na = _rem_inplace(pa, na, pb, nb, p)
    out = _to_list(pa, na)
    free(pa); free(pb)
    return out


def gcd_mod(a, b, u64 p):
    cdef Py_ssize_t na, nb, tmp_n
    cdef u64* pa = _to_buf(a, &na, p)
    cdef u64* pb = _to_buf(b, &nb, p)
    cdef u64* t
    cdef u64 inv
    cdef Py_ssize_t i
    with nogil:
        while nb:
            na = _rem_inplace(pa, na, pb, nb, p)
            t = pa; pa = pb; pb = t
            tmp_n = na; na = nb; nb = tmp_n
        if na:
            inv = powmod(pa[na - 1], p - 2, p)
            for i in range(na):
                pa[i] = mulmod(pa[i], inv, p)
    out = _to_list(pa, na)
    free(pa); free(pb)
    return out


def divexact_mod(a, b, u64 p):
    cdef Py_ssize_t na, nb, i, j, k
    cdef u64* pb = _to_buf(b, &nb, p)
    if nb == 0:
        free(pb)
        raise ZeroDivisionError("polynomial division by zero")
    cdef u64* pa = _to_buf(a, &na, p)
    if na == 0:
        free(pa); free(pb)
        return []
    if na < nb:
        free(pa); free(pb)
        return None
    cdef Py_ssize_t da = na - 1, db = nb - 1
    cdef Py_ssize_t nq = da - db + 1
    cdef u64* pq = <u64*>malloc(nq * sizeof(u64))
    if pq == NULL:
        free(pa); free(pb)
        raise MemoryError()
    cdef u64 inv_lb, c
    cdef bint exact = True
    with nogil:
        inv_lb = powmod(pb[db], p - 2, p)
        for k in range(nq - 1, -1, -1):
            c = mulmod(pa[k + db], inv_lb, p)
            pq[k] = c
            if c:
                for j in range(nb):
                    if pb[j]:
                        pa[k + j] = (pa[k + j] + p - mulmod(c, pb[j], p)) % p
        for j in range(db):
            if pa[j]:
                exact = False
                break
    if not exact:
        free(pa); free(pb); free(pq)
        return None
    out = _to_list(pq, nq)
    free(pa); free(pb); free(pq)
    return out


def eval_mod(a, u64 x, u64 p):
    cdef Py_ssize_t n = len(a), i
    cdef u64 acc = 0
    for i in range(n - 1, -1, -1):
        acc = (mulmod(acc, x, p) + <u64>(a[i] % p)) % p
    return acc


def bivar_eval_mod(object flat, Py_ssize_t nz, Py_ssize_t nd, u64 x, u64 p):
    cdef const u64[::1] v = flat
    cdef u64* out = <u64*>malloc((nz if nz else 1) * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, base, n = nz
    cdef u64 acc
    with nogil:
        for i in range(nz):
            acc = 0
            base = i * nd
            for j in range(nd - 1, -1, -1):
                acc = (mulmod(acc, x, p) + v[base + j]) % p
            out[i] = acc
        while n and out[n - 1] == 0:
            n -= 1
    res = _to_list(out, n)
    free(out)
    return res


def bivar_update_mod(object flat, Py_ssize_t nz, Py_ssize_t nd, err, u64 c, basis, u64 p):
    cdef u64[::1] v = flat
    cdef Py_ssize_t nb = len(basis), ne = len(err)
    cdef u64* bs = <u64*>malloc((nb if nb else 1) * sizeof(u64))
    cdef u64* er = <u64*>malloc((ne if ne else 1) * sizeof(u64))
    if bs == NULL or er == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, base
    for i in range(nb):
        bs[i] = <u64>(basis[i] % p)
    for i in range(ne):
        er[i] = <u64>(err[i] % p)
    cdef u64 s
    with nogil:
        for i in range(ne):
            if er[i]:
                s = mulmod(er[i], c, p)
                base = i * nd
                for j in range(nb):
                    if bs[j]:
                        v[base + j] = (v[base + j] + mulmod(s, bs[j], p)) % p
    free(bs); free(er)
