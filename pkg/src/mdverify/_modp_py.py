"""Pure-Python dense polynomial kernels over a prime field.

Polynomials are dense coefficient lists, lowest degree first, with entries
reduced into [0, p).  The same API is exported by the compiled extension
(_modp.pyx); mdverify.kernel picks whichever is available.  These loops are
the runtime hot spot of the whole package (they sit under the modular GCD
that normalizes every rational-function operation), so they are written
with flat lists and localized names rather than prettier abstractions.
"""

from __future__ import annotations

BACKEND = "python"


def trim(a):
    """Drop trailing zero coefficients (in place semantics not guaranteed)."""
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def mul_mod(a, b, p):
    """Schoolbook product a*b mod p."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def _rem_inplace(r, b, p):
    """Reduce r modulo b in place; b trimmed and nonzero. Returns new length."""
    db = len(b) - 1
    inv_lb = pow(b[db], p - 2, p)
    nr = len(r)
    while nr - 1 >= db:
        lead = r[nr - 1]
        if lead:
            c = lead * inv_lb % p
            off = nr - 1 - db
            for j in range(db):
                bj = b[j]
                if bj:
                    r[off + j] = (r[off + j] - c * bj) % p
        nr -= 1
        while nr and r[nr - 1] == 0:
            nr -= 1
    return nr


def rem_mod(a, b, p):
    """Remainder of a modulo b (b nonzero)."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial remainder by zero")
    r = [c % p for c in a]
    r = trim(r)
    if len(r) < len(b):
        return r
    nr = _rem_inplace(r, b, p)
    return r[:nr]


def gcd_mod(a, b, p):
    """Monic gcd of a and b over F_p."""
    a = trim([c % p for c in a])
    b = trim([c % p for c in b])
    while b:
        nr = _rem_inplace(a, b, p)
        a, b = b, a[:nr]
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def divexact_mod(a, b, p):
    """Exact quotient a // b over F_p, or None when b does not divide a."""
    a = trim([c % p for c in a])
    b = trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return None
    q = [0] * (da - db + 1)
    r = list(a)
    inv_lb = pow(b[db], p - 2, p)
    for k in range(da - db, -1, -1):
        c = r[k + db] * inv_lb % p
        q[k] = c
        if c:
            for j in range(db + 1):
                bj = b[j]
                if bj:
                    r[k + j] = (r[k + j] - c * bj) % p
    if any(r[:db]):
        return None
    return q


def eval_mod(a, x, p):
    """Horner evaluation of a at x mod p."""
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def bivar_eval_mod(flat, nz, nd, x, p):
    """Evaluate a flat bivariate (nz rows of nd secondary coefficients) at x.

    Row i holds the secondary-variable coefficients of the i-th main-variable
    coefficient.  Returns the dense main-variable coefficient list.
    """
    out = [0] * nz
    for i in range(nz):
        acc = 0
        base = i * nd
        for j in range(nd - 1, -1, -1):
            acc = (acc * x + flat[base + j]) % p
        out[i] = acc
    return trim(out)


def bivar_update_mod(flat, nz, nd, err, c, basis, p):
    """In-place Newton interpolation update: row_i += err_i * c * basis.

    basis is the dense secondary-variable polynomial prod(x - x_k) built so
    far; err is the dense main-variable error vector at the new point.
    """
    nb = len(basis)
    for i, ei in enumerate(err):
        if ei == 0:
            continue
        s = ei * c % p
        base = i * nd
        for j in range(nb):
            bj = basis[j]
            if bj:
                flat[base + j] = (flat[base + j] + s * bj) % p
