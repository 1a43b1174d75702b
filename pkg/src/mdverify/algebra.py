"""Exact multivariate polynomials and rational functions over Q.

MPoly stores a sparse integer-primitive term dict together with a single
rational content factor, so every coefficient is content * terms[exp].
This keeps the heavy arithmetic (delegated to mdverify.intpoly) entirely
over the integers while the public coefficient view stays rational.

RatFunc is a reduced pair of integer-coefficient MPoly's:

  * no common polynomial factor between numerator and denominator,
  * coprime integer contents,
  * graded-lex leading coefficient of the denominator positive.

Two construction paths for the same function therefore produce equal
objects, and identity checks are plain equality checks.  The (2z)/4
fraction normalizes to z/2 =  num z, den 2; the doubling formula x2 keeps
its textbook shape (z^2-1)^2 over 4(z^3+delta*z^2+z).
"""

from __future__ import annotations

from ._scalars import Q, UNDEFINED, rational
from . import intpoly

# variable names are plain strings; the fixed alphabet used by the curve
# machinery plus encoder-generated names
VarId = str

Z_VAR: VarId = "z"
DELTA_VAR: VarId = "delta"
T_VAR: VarId = "t"


class ZeroDenominatorError(ZeroDivisionError):
    pass


def _coerce_q(x):
    return Q(x)


class MPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("vars", "content", "terms")

    def __init__(self, vars: tuple, content, terms: dict, _normalized=False):
        if _normalized:
            self.vars = vars
            self.content = content
            self.terms = terms
            return
        self.vars = tuple(vars)
        if not terms or content == 0:
            self.content = Q(0)
            self.terms = {}
            return
        c, pp = intpoly.primitive(terms)
        self.content = _coerce_q(content) * c
        if self.content == 0:
            self.terms = {}
        else:
            self.terms = pp

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dict(cls, vars, mapping):
        """Build from {exponent tuple: rational coefficient}; vars get sorted."""
        vars = tuple(vars)
        order = tuple(sorted(vars))
        if order != vars:
            perm = [vars.index(v) for v in order]
            mapping = {tuple(e[i] for i in perm): c for e, c in mapping.items()}
            vars = order
        denom = 1
        for c in mapping.values():
            q = _coerce_q(c)
            d = int(q.denominator)
            denom = denom * d // _gcd_int(denom, d)
        terms = {}
        for e, c in mapping.items():
            q = _coerce_q(c)
            v = int(q.numerator) * (denom // int(q.denominator))
            if v:
                terms[tuple(e)] = terms.get(tuple(e), 0) + v
        terms = {e: c for e, c in terms.items() if c}
        return cls(vars, Q(1, denom), terms)

    @classmethod
    def zero(cls, vars=()):
        return cls(tuple(vars), Q(0), {}, _normalized=True)

    @classmethod
    def const(cls, vars, value):
        q = _coerce_q(value)
        if q == 0:
            return cls.zero(vars)
        return cls(tuple(vars), q, {(0,) * len(vars): 1}, _normalized=True)

    @classmethod
    def variable(cls, name: VarId, vars=None):
        if vars is None:
            vars = (name,)
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if name not in vars:
            raise ValueError(f"{name!r} not among variables {vars}")
        return cls(vars, Q(1), {e: 1}, _normalized=True)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return not self.terms or all(not any(e) for e in self.terms)

    def const_value(self):
        """The value of a constant polynomial as an exact rational."""
        if not self.terms:
            return Q(0)
        if not self.is_const:
            raise ValueError(f"not a constant polynomial: {self}")
        return self.content * next(iter(self.terms.values()))

    def coeff(self, exponents):
        return self.content * self.terms.get(tuple(exponents), 0)

    def degree(self, var: VarId) -> int:
        if var not in self.vars or not self.terms:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def glex_leading(self):
        """(exponent, rational coefficient) of the graded-lex leading term."""
        if not self.terms:
            return (0,) * len(self.vars), Q(0)
        e, c = intpoly.leading_term(self.terms)
        return e, self.content * c

    # -- variable bookkeeping ----------------------------------------------

    def with_vars(self, vars) -> "MPoly":
        """Re-embed into a (super)set of variables, sorted order preserved."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for v in self.vars:
            if v not in vars:
                if self.degree(v) > 0:
                    raise ValueError(f"cannot drop live variable {v!r}")
                pos.append(None)
            else:
                pos.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for p, ei in zip(pos, e):
                if p is not None:
                    ne[p] = ei
            terms[tuple(ne)] = c
        return MPoly(vars, self.content, terms, _normalized=True)

    @staticmethod
    def align(a: "MPoly", b: "MPoly"):
        if a.vars == b.vars:
            return a, b
        union = tuple(sorted(set(a.vars) | set(b.vars)))
        return a.with_vars(union), b.with_vars(union)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        a, b = MPoly.align(self, other)
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        ca, cb = a.content, b.content
        p1, q1 = int(ca.numerator), int(ca.denominator)
        p2, q2 = int(cb.numerator), int(cb.denominator)
        terms = intpoly.add_int(
            intpoly.scale_int(a.terms, p1 * q2), intpoly.scale_int(b.terms, p2 * q1)
        )
        return MPoly(a.vars, Q(1, q1 * q2), terms)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return MPoly(self.vars, -self.content, self.terms, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            q = _coerce_q(other)
            if q == 0 or self.is_zero:
                return MPoly.zero(self.vars)
            return MPoly(self.vars, self.content * q, self.terms, _normalized=True)
        a, b = MPoly.align(self, other)
        if a.is_zero or b.is_zero:
            return MPoly.zero(a.vars)
        terms = intpoly.mul_int(a.terms, b.terms, len(a.vars))
        return MPoly(a.vars, a.content * b.content, terms, _normalized=True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            if self.is_const:
                return self.const_value() == _coerce_q(other)
            return False
        if self.vars != other.vars:
            a, b = MPoly.align(self, other)
            return a == b
        return self.content == other.content and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return not self.is_zero

    # -- calculus and evaluation --------------------------------------------

    def derivative(self, var: VarId) -> "MPoly":
        if var not in self.vars:
            return MPoly.zero(self.vars)
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                terms[ne] = terms.get(ne, 0) + c * k
        return MPoly(self.vars, self.content, terms)

    def evaluate(self, var: VarId, value) -> "MPoly":
        """Specialize one variable to a rational; drops it from the var set."""
        if var not in self.vars:
            return self
        q = _coerce_q(value)
        i = self.vars.index(var)
        new_vars = self.vars[:i] + self.vars[i + 1 :]
        acc: dict = {}
        powers = {0: Q(1)}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = q**k
            ne = e[:i] + e[i + 1 :]
            acc[ne] = acc.get(ne, Q(0)) + powers[k] * c
        acc = {e: c for e, c in acc.items() if c != 0}
        out = MPoly.from_dict(new_vars, acc)
        return out * self.content

    def shifted(self, var: VarId, c) -> "MPoly":
        """Taylor shift: substitute var -> var + c."""
        if var not in self.vars:
            return self
        q = _coerce_q(c)
        if q == 0:
            return self
        i = self.vars.index(var)
        acc: dict = {}
        # binomial expansion per term
        for e, coeff in self.terms.items():
            k = e[i]
            binom = 1
            power = Q(1)
            for j in range(k, -1, -1):
                ne = e[:i] + (j,) + e[i + 1 :]
                acc[ne] = acc.get(ne, Q(0)) + coeff * binom * power
                binom = binom * j // (k - j + 1)
                power *= q
        acc = {e: v for e, v in acc.items() if v != 0}
        return MPoly.from_dict(self.vars, acc) * self.content

    def coefficients_in(self, var: VarId) -> dict:
        """{power of var: MPoly over the remaining variables}."""
        i = self.vars.index(var)
        new_vars = self.vars[:i] + self.vars[i + 1 :]
        slices: dict = {}
        for e, c in self.terms.items():
            slices.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {
            k: MPoly(new_vars, self.content, sl) for k, sl in sorted(slices.items())
        }

    def substitute_poly(self, var: VarId, g: "MPoly") -> "MPoly":
        """Polynomial composition: replace var by the polynomial g."""
        if var not in self.vars or self.degree(var) == 0:
            if var in self.vars:
                return self.with_vars(tuple(v for v in self.vars if v != var))
            return self
        parts = self.coefficients_in(var)
        ks = sorted(parts, reverse=True)
        out = parts[ks[0]]
        for k_prev, k_next in zip(ks, ks[1:]):
            out = out * g ** (k_prev - k_next) + parts[k_next]
        out = out * g ** ks[-1]
        return out

    # -- divisibility --------------------------------------------------------

    def divides(self, other: "MPoly") -> bool:
        return other.divexact(self) is not None

    def divexact(self, divisor: "MPoly"):
        """self / divisor as an MPoly, or None when not exactly divisible."""
        if divisor.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero:
            return MPoly.zero(self.vars)
        a, b = MPoly.align(self, divisor)
        q = intpoly.divexact_int(a.terms, b.terms, len(a.vars))
        if q is None:
            return None
        return MPoly(a.vars, a.content / b.content, q, _normalized=True)

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: intpoly.glex_key(t[0]), reverse=True)
        parts = []
        for e, c in items:
            q = self.content * c
            sign = "-" if q < 0 else "+"
            q = abs(q)
            factors = []
            num, den = int(q.numerator), int(q.denominator)
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            if not mono:
                factors.append(str(num) if den == 1 else f"{num}/{den}")
            else:
                if num != 1 or den != 1:
                    factors.append(str(num) if den == 1 else f"{num}/{den}")
                factors.append(mono)
            parts.append((sign, "*".join(factors)))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, txt in parts[1:]:
            out += f" {sign} {txt}"
        return out

    def __repr__(self):
        return f"MPoly({', '.join(self.vars)}: {self})"


def _gcd_int(a: int, b: int) -> int:
    from math import gcd

    return gcd(a, b)


# ---------------------------------------------------------------------------


def _full_int(p: MPoly) -> dict:
    """Terms with the (integral) content multiplied back in."""
    c = p.content
    ci = int(c.numerator)
    if c.denominator != 1:
        raise AssertionError("non-integral content on a reduced fraction part")
    return intpoly.scale_int(p.terms, ci) if ci != 1 else p.terms


def _reduced_from_dicts(vars: tuple, num_d: dict, den_d: dict) -> "RatFunc":
    """Build a RatFunc from integer dicts known to share no polynomial factor."""
    if not den_d:
        raise ZeroDenominatorError("zero denominator")
    r = RatFunc.__new__(RatFunc)
    if not num_d:
        r.num = MPoly.zero(vars)
        r.den = MPoly.const(vars, 1)
        return r
    cn, ppn = intpoly.primitive(num_d)
    cd, ppd = intpoly.primitive(den_d)
    g = _gcd_int(abs(int(cn)), abs(int(cd)))
    if g != 1:
        cn //= g
        cd //= g
    if cd < 0:
        cn, cd = -cn, -cd
    r.num = MPoly(vars, Q(int(cn)), ppn, _normalized=True)
    r.den = MPoly(vars, Q(int(cd)), ppd, _normalized=True)
    return r


class RatFunc:
    """Reduced rational function: integer-pair normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly, _reduced=False):
        if _reduced:
            self.num = num
            self.den = den
            return
        if den.is_zero:
            raise ZeroDenominatorError("zero denominator")
        num, den = MPoly.align(num, den)
        if num.is_zero:
            self.num = MPoly.zero(num.vars)
            self.den = MPoly.const(num.vars, 1)
            return
        nv = len(num.vars)
        g, qn, qd = intpoly.gcd_cofactors(num.terms, den.terms, nv)
        # rational content ratio folded back into an integer pair
        c = num.content / den.content
        p, q = int(c.numerator), int(c.denominator)
        built = _reduced_from_dicts(
            num.vars, intpoly.scale_int(qn, p), intpoly.scale_int(qd, q)
        )
        self.num = built.num
        self.den = built.den

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_mpoly(cls, p: MPoly):
        c = p.content
        num = MPoly(p.vars, Q(int(c.numerator)), p.terms, _normalized=True)
        den = MPoly.const(p.vars, int(c.denominator))
        r = cls.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def const(cls, vars, value):
        return cls.from_mpoly(MPoly.const(tuple(vars), value))

    @classmethod
    def var(cls, name: VarId, vars=None):
        return cls.from_mpoly(MPoly.variable(name, vars))

    # -- inspection ------------------------------------------------------------

    @property
    def vars(self):
        return self.num.vars

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_const(self) -> bool:
        return self.num.is_const and self.den.is_const

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            if self.is_const:
                try:
                    return self.const_value() == _coerce_q(other)
                except TypeError:
                    return NotImplemented
            return False
        a, b = self, other
        if a.vars != b.vars:
            an, bn = MPoly.align(a.num, b.num)
            ad, bd = MPoly.align(a.den, b.den)
            return an == bn and ad == bd
        return a.num == b.num and a.den == b.den

    __hash__ = None

    # -- arithmetic -------------------------------------------------------------

    @staticmethod
    def _lift(x, vars):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MPoly):
            return RatFunc.from_mpoly(x)
        return RatFunc.const(vars, x)

    @staticmethod
    def _aligned_parts(f: "RatFunc", g: "RatFunc"):
        """Common-variable integer dicts (a, b, c, d) for f=a/b, g=c/d."""
        if f.vars == g.vars:
            vars = f.vars
            return (
                vars,
                _full_int(f.num),
                _full_int(f.den),
                _full_int(g.num),
                _full_int(g.den),
            )
        a, c = MPoly.align(f.num, g.num)
        b, d = MPoly.align(f.den, g.den)
        return a.vars, _full_int(a), _full_int(b), _full_int(c), _full_int(d)

    def __add__(self, other):
        other = RatFunc._lift(other, self.vars)
        vars, a, b, c, d = RatFunc._aligned_parts(self, other)
        nv = len(vars)
        # b = g0*b1, d = g0*d1 with gcd(b1, d1) = 1:
        #   a/b + c/d = (a*d1 + c*b1) / (b*d1); only g0 can still cancel
        g0, b1, d1 = intpoly.gcd_cofactors(b, d, nv)
        t = intpoly.add_int(intpoly.mul_int(a, d1, nv), intpoly.mul_int(c, b1, nv))
        if not t:
            return RatFunc.const(vars, 0)
        g1, t1, g01 = intpoly.gcd_cofactors(t, g0, nv)
        den = intpoly.mul_int(intpoly.mul_int(b1, d1, nv), g01, nv)
        return _reduced_from_dicts(vars, t1, den)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self.__add__(RatFunc._lift(other, self.vars).__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = RatFunc._lift(other, self.vars)
        if self.is_zero or other.is_zero:
            vars = tuple(sorted(set(self.vars) | set(other.vars)))
            return RatFunc.const(vars, 0)
        vars, a, b, c, d = RatFunc._aligned_parts(self, other)
        nv = len(vars)
        # cross-cancel first: gcd(a,b) = gcd(c,d) = 1 already
        g1, a1, d1 = intpoly.gcd_cofactors(a, d, nv)
        g2, c1, b1 = intpoly.gcd_cofactors(c, b, nv)
        num = intpoly.mul_int(a1, c1, nv)
        den = intpoly.mul_int(b1, d1, nv)
        return _reduced_from_dicts(vars, num, den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def _inverse(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDenominatorError("inverse of the zero function")
        return _reduced_from_dicts(self.vars, _full_int(self.den), _full_int(self.num))

    def __truediv__(self, other):
        other = RatFunc._lift(other, self.vars)
        return self.__mul__(other._inverse())

    def __rtruediv__(self, other):
        return RatFunc._lift(other, self.vars).__mul__(self._inverse())

    def __pow__(self, k: int):
        if k == 0:
            return RatFunc.const(self.vars, 1)
        if k < 0:
            if self.is_zero:
                raise ZeroDenominatorError("negative power of zero")
            inv = RatFunc(self.den, self.num)
            return inv.__pow__(-k)
        # components coprime: powers stay reduced
        num = self.num**k
        den = self.den**k
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = num, den
        return r

    def __str__(self):
        if self.den == MPoly.const(self.den.vars, 1):
            return str(self.num)
        ns, ds = str(self.num), str(self.den)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if len(self.den.terms) > 1:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# contract operations


def poly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Greatest common divisor, graded-lex monic over Q.

    gcd(0, b) is b normalized the same way.
    """
    a, b = MPoly.align(a, b)
    if a.is_zero and b.is_zero:
        return MPoly.zero(a.vars)
    g, _, _ = intpoly.gcd_cofactors(a.terms, b.terms, len(a.vars))
    gp = MPoly(a.vars, Q(1), g)
    _, lc = gp.glex_leading()
    return gp * (1 / lc)


def ratfunc_make(num: MPoly, den: MPoly) -> RatFunc:
    """Normalized fraction; raises ZeroDenominatorError on a zero denominator."""
    return RatFunc(num, den)


def differentiate(f: RatFunc, v: VarId) -> RatFunc:
    """Exact partial derivative, normalized."""
    if v not in f.vars:
        return RatFunc.const(f.vars, 0)
    a, b = f.num, f.den
    n = a.derivative(v) * b - a * b.derivative(v)
    if n.is_zero:
        return RatFunc.const(f.vars, 0)
    nv = len(f.vars)
    nd = _full_int(n)
    bd = _full_int(b)
    # gcd(n, b^2) = g1*g2 with g1 = gcd(n, b), g2 = gcd(n/g1, b),
    # so den = b^2/(g1*g2) = (b/g1)*(b/g2)
    g1, n1, b1 = intpoly.gcd_cofactors(nd, bd, nv)
    g2, n2, b2 = intpoly.gcd_cofactors(n1, bd, nv)
    return _reduced_from_dicts(f.vars, n2, intpoly.mul_int(b1, b2, nv))


def substitute(f: RatFunc, v: VarId, g: RatFunc) -> RatFunc:
    """Exact composition f(..., v=g, ...), normalized.

    Raises ZeroDenominatorError when the substituted denominator collapses
    to the zero function.
    """
    if v not in f.vars:
        return f
    if isinstance(g, MPoly):
        g = RatFunc.from_mpoly(g)
    gn, gd = g.num, g.den
    out_vars = tuple(sorted((set(f.vars) - {v}) | set(g.vars)))

    def compose_poly(p: MPoly) -> MPoly:
        # p = sum_k coeff_k(other) * v^k  ->  sum coeff_k * gn^k * gd^(d-k),
        # a single fraction with denominator gd^d
        if v not in p.vars or p.degree(v) == 0:
            keep = tuple(sorted(set(p.vars) - {v}))
            return p.with_vars(keep) if v in p.vars else p
        parts = p.coefficients_in(v)
        d = max(parts)
        acc = MPoly.zero(out_vars)
        gn_pow = {0: MPoly.const(out_vars, 1)}
        gd_pow = {0: MPoly.const(out_vars, 1)}
        cur = MPoly.const(out_vars, 1)
        for k in range(1, d + 1):
            cur = cur * gn
            gn_pow[k] = cur
        cur = MPoly.const(out_vars, 1)
        for k in range(1, d + 1):
            cur = cur * gd
            gd_pow[k] = cur
        for k, coeff in parts.items():
            acc = acc + coeff * gn_pow[k] * gd_pow[d - k]
        return acc

    dn = f.num.degree(v)
    dd = f.den.degree(v)
    top = compose_poly(f.num)
    bot = compose_poly(f.den)
    if bot.is_zero:
        raise ZeroDenominatorError("substitution makes the denominator vanish")
    # rebalance the gd powers cleared inside each part
    if dn > dd:
        bot = bot * gd ** (dn - dd)
    elif dd > dn:
        top = top * gd ** (dd - dn)
    return RatFunc(top, bot)


def evaluate_partial(f: RatFunc, v: VarId, c):
    """Specialize one variable; UNDEFINED on a pole along v = c.

    Common (v-c)-powers never survive in a reduced fraction, so the pole
    test is simply whether the denominator dies at v = c.
    """
    if v not in f.vars:
        return f
    den = f.den.evaluate(v, c)
    if den.is_zero:
        return UNDEFINED
    num = f.num.evaluate(v, c)
    return RatFunc(num, den)
