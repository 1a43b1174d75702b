"""Truncated Laurent/power series and the linear ODE solvers.

A TruncSeries is an exact window of a series: expansion variable, center,
valuation (lowest exponent, possibly negative) and the coefficient list up
to an exclusive truncation order.  Coefficients are exact rationals for all
the solver work; rational functions of the remaining variables are allowed
as coefficients so expansions in (delta+2) with symbolic z work too.

The two solvers invert

    z g' + g/2 = b           (coefficient rule: g_n = b_n / (n + 1/2))
    z(z-1) g' + (3z-1) g/2 = b - gamma

and `represent` decomposes a series H as

    H = beta + gamma (z-1) + w h' + w' h / 2,     w = z (z-1)^2,

the unique decomposition the roundtrip tests pin down.  All arithmetic is
exact; truncation orders shrink by one per division by (z-1) and that
bookkeeping is preserved rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._scalars import Q
from .algebra import MPoly, RatFunc, VarId, Z_VAR


def _qz(c) -> bool:
    """Zero test across the coefficient domains (Q or RatFunc)."""
    if isinstance(c, RatFunc):
        return c.is_zero
    return c == 0


class TruncSeries:
    """Exact truncated series sum_{k=val}^{trunc-1} coeffs[k-val] (v-c)^k."""

    __slots__ = ("var", "center", "valuation", "coeffs", "trunc")

    def __init__(self, var: VarId, center, valuation: int, coeffs, trunc: int):
        self.var = var
        self.center = Q(center)
        coeffs = list(coeffs)
        # strip leading zeros: valuation points at a nonzero coefficient
        while coeffs and _qz(coeffs[0]):
            coeffs.pop(0)
            valuation += 1
        if not coeffs:
            valuation = trunc
        if len(coeffs) != trunc - valuation:
            raise ValueError(
                f"coefficient window [{valuation}, {trunc}) needs "
                f"{trunc - valuation} entries, got {len(coeffs)}"
            )
        self.valuation = valuation
        self.coeffs = coeffs
        self.trunc = trunc

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, var: VarId, trunc: int, center=0):
        return cls(var, center, trunc, [], trunc)

    @classmethod
    def constant(cls, var: VarId, value, trunc: int, center=0):
        if _qz(value):
            return cls.zero(var, trunc, center)
        return cls(var, center, 0, [value] + [Q(0)] * (trunc - 1), trunc)

    @classmethod
    def from_coeffs(cls, var: VarId, coeffs, trunc: int, center=0, valuation=0):
        coeffs = list(coeffs) + [Q(0)] * (trunc - valuation - len(coeffs))
        return cls(var, center, valuation, coeffs[: trunc - valuation], trunc)

    # -- inspection -------------------------------------------------------------

    def coeff(self, k: int):
        """Coefficient of (v - center)^k inside the window."""
        if k < self.valuation or k >= self.trunc:
            return Q(0)
        return self.coeffs[k - self.valuation]

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if (self.var, self.center) != (other.var, other.center):
            return False
        lo = min(self.valuation, other.valuation)
        hi = min(self.trunc, other.trunc)
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, hi))

    __hash__ = None

    def __str__(self):
        if self.is_zero:
            return f"O({self.var}^{self.trunc})"
        w = self.var if self.center == 0 else f"({self.var}-{self.center})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if _qz(c):
                continue
            k = self.valuation + i
            cs = str(c)
            if "+" in cs or "-" in cs[1:] or "/" in cs:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append(f"{cs}*{w}")
            else:
                parts.append(f"{cs}*{w}^{k}")
        parts.append(f"O({w}^{self.trunc})")
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncSeries({self})"

    # -- arithmetic ----------------------------------------------------------------

    def _check_compat(self, other: "TruncSeries"):
        if self.var != other.var or self.center != other.center:
            raise ValueError("series have different expansion points")

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.var, other, self.trunc, self.center)
        self._check_compat(other)
        trunc = min(self.trunc, other.trunc)
        val = min(self.valuation, other.valuation, trunc)
        coeffs = [self.coeff(k) + other.coeff(k) for k in range(val, trunc)]
        return TruncSeries(self.var, self.center, val, coeffs, trunc)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return TruncSeries(
            self.var, self.center, self.valuation, [-c for c in self.coeffs], self.trunc
        )

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.constant(self.var, other, self.trunc, self.center)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def scale(self, k):
        if _qz(k):
            return TruncSeries.zero(self.var, self.trunc, self.center)
        return TruncSeries(
            self.var, self.center, self.valuation, [c * k for c in self.coeffs], self.trunc
        )

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        self._check_compat(other)
        if self.is_zero or other.is_zero:
            return TruncSeries.zero(
                self.var, min(self.trunc, other.trunc), self.center
            )
        val = self.valuation + other.valuation
        trunc = min(
            self.trunc + other.valuation, other.trunc + self.valuation
        )
        n = trunc - val
        out = [Q(0)] * n
        for i, a in enumerate(self.coeffs):
            if _qz(a):
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if not _qz(b):
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(self.var, self.center, val, out, trunc)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.trunc:
            return self
        n = max(order - self.valuation, 0)
        return TruncSeries(self.var, self.center, self.valuation, self.coeffs[:n], order)

    def derivative(self) -> "TruncSeries":
        """d/dv, exact on the window; truncation drops by one."""
        out = {}
        for i, c in enumerate(self.coeffs):
            k = self.valuation + i
            if k != 0 and not _qz(c):
                out[k - 1] = c * k
        if not out:
            return TruncSeries.zero(self.var, self.trunc - 1, self.center)
        val = min(out)
        coeffs = [out.get(k, Q(0)) for k in range(val, self.trunc - 1)]
        return TruncSeries(self.var, self.center, val, coeffs, self.trunc - 1)

    def value_at(self, point):
        """Evaluate the truncated window as a polynomial (valuation >= 0)."""
        if self.valuation < 0:
            raise ValueError("cannot evaluate a series with a pole")
        x = Q(point) - self.center
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Q(0)
        for _ in range(self.valuation):
            acc = acc * x
        return acc

    def to_poly(self, vars=None) -> MPoly:
        """The window as an exact polynomial (Q coefficients, center 0)."""
        if self.valuation < 0:
            raise ValueError("Laurent window is not a polynomial")
        if self.center != 0:
            raise ValueError("only center-0 windows convert to polynomials")
        vars = vars or (self.var,)
        i = vars.index(self.var)
        mapping = {}
        for j, c in enumerate(self.coeffs):
            if not _qz(c):
                e = [0] * len(vars)
                e[i] = self.valuation + j
                mapping[tuple(e)] = c
        return MPoly.from_dict(vars, mapping)


@dataclass
class RepTriple:
    """The unique decomposition data: two constants and a power series."""

    beta: object
    gamma: object
    h: TruncSeries


# ---------------------------------------------------------------------------
# expansion of rational functions


def expand_at(f: RatFunc, v: VarId, center, order: int) -> TruncSeries:
    """Laurent expansion of f in (v - center) up to exclusive order.

    The valuation equals the order of f at the place v - center; pole orders
    come out negative.  Coefficients are exact rationals when v is the only
    variable and reduced rational functions of the others otherwise.
    """
    center = Q(center)
    num = f.num.shifted(v, center)
    den = f.den.shifted(v, center)
    rest = tuple(x for x in f.vars if x != v)

    def split(p: MPoly):
        if v in p.vars:
            parts = p.coefficients_in(v)
        else:
            parts = {0: p}
        if rest:
            return {k: RatFunc.from_mpoly(m) for k, m in parts.items()}
        return {k: m.const_value() for k, m in parts.items()}

    nparts = split(num)
    dparts = split(den)
    a = min(nparts)
    b = min(dparts)
    val = a - b
    length = order - val
    if length <= 0:
        return TruncSeries.zero(v, order, center)
    d0 = dparts[b]
    out = []
    for i in range(length):
        acc = nparts.get(a + i, Q(0))
        for j in range(1, i + 1):
            dj = dparts.get(b + j, Q(0))
            if not _qz(dj) and not _qz(out[i - j]):
                acc = acc - dj * out[i - j]
        out.append(acc / d0)
    return TruncSeries(v, center, val, out, order)


def series_of_poly(p: MPoly, v: VarId, trunc: int) -> TruncSeries:
    """Center-0 series window of a polynomial."""
    return expand_at(RatFunc.from_mpoly(p), v, 0, trunc)


# ---------------------------------------------------------------------------
# the two solvers


def solve_diff1(b: TruncSeries) -> TruncSeries:
    """Unique series g with z g' + g/2 = b, coefficientwise g_n = b_n/(n+1/2)."""
    if b.valuation < 0:
        raise ValueError("input must be a power series (valuation >= 0)")
    coeffs = [
        c * Q(2, 2 * (b.valuation + i) + 1) for i, c in enumerate(b.coeffs)
    ]
    return TruncSeries(b.var, b.center, b.valuation, coeffs, b.trunc)


def _divide_z_minus_1(s: TruncSeries):
    """Exact synthetic division by (z-1) of a center-0 polynomial window.

    Returns (quotient, remainder); remainder is the window value at 1.
    Truncation drops by one.
    """
    if s.valuation < 0:
        raise ValueError("cannot divide a Laurent window")
    n = s.trunc
    dense = [s.coeff(k) for k in range(n)]
    out = [Q(0)] * (n - 1)
    carry = Q(0)
    for k in range(n - 1, 0, -1):
        carry = dense[k] + carry
        out[k - 1] = carry
    rem = dense[0] + carry
    return TruncSeries(s.var, s.center, 0, out, n - 1), rem


def solve_diff2(b: TruncSeries):
    """Unique (g, gamma) with z(z-1) g' + (3z-1) g / 2 = b - gamma.

    Built from solve_diff1: the helper h solves z h' + h/2 = b, then
    gamma = h(1)/2 and g = (h - 2 gamma)/(z - 1).  For polynomial inputs of
    degree < trunc this is exact; otherwise the residual is still zero to
    one order less than the input window.
    """
    h = solve_diff1(b)
    gamma = h.value_at(1) * Q(1, 2)
    g, rem = _divide_z_minus_1(h - 2 * gamma)
    if not _qz(rem):
        raise AssertionError("division by (z-1) left a remainder")
    return g, gamma


# ---------------------------------------------------------------------------
# the representation decomposition


def _w_tilde_series(trunc: int) -> TruncSeries:
    # z(z-1)^2 = z - 2 z^2 + z^3
    return TruncSeries.from_coeffs(Z_VAR, [Q(0), Q(1), Q(-2), Q(1)], trunc)


def represent(H: TruncSeries) -> RepTriple:
    """Decompose H = beta + gamma(z-1) + w h' + w' h/2, w = z(z-1)^2.

    beta and gamma are evaluated on the truncated window, exact whenever H
    is a polynomial of degree below the truncation order.
    """
    beta = H.value_at(1)
    u, rem = _divide_z_minus_1(H - beta)
    if not _qz(rem):
        raise AssertionError("window does not vanish at 1 after removing beta")
    h, gamma = solve_diff2(u)
    return RepTriple(beta, gamma, h)


def reconstruct(rep: RepTriple, trunc: int | None = None) -> TruncSeries:
    """beta + gamma(z-1) + w h_z + w' h/2 as a series window."""
    h = rep.h
    if trunc is not None:
        h = h.truncate(trunc)
    t = h.trunc
    w = _w_tilde_series(t + 1)
    wp = w.derivative()  # 1 - 4z + 3z^2
    hz = h.derivative()
    base = TruncSeries.from_coeffs(h.var, [rep.beta - rep.gamma, rep.gamma], t)
    return base + w * hz + wp * h.scale(Q(1, 2))


def series_residual(H: TruncSeries, rep: RepTriple) -> TruncSeries:
    """H minus its reconstruction, truncated to the comparable window."""
    r = reconstruct(rep)
    return H.truncate(r.trunc) - r
