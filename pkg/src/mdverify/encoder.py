"""Integer Diophantine systems to positive-existential formulas.

The output language has ring operations, the two coordinate constants z1
and z2 (the curve coordinates shifted to put the distinguished point at the
origin: z1 = z - 1, z2 = delta + 2), an evaluation predicate, a constant
predicate and a nonzero predicate.  Formulas are existential variable lists
over and/or trees of atoms; negation does not exist anywhere in the AST, so
the positive-existential shape is structural.

An integer is encoded as: some shift n - k (k in 0..3) lies in the value
set carved out by the curve relation

    exists a b x y v:  f(delta, z) b^2 = f(delta, a)  and  y != 0
        and (x, y) = 2(a, b) + (z, 1)      [chord-tangent relations]
        and 2(x - 1) = (z - 1) y v  and  eval(v - (n - k))

conjoined with a per-dialect constant test on n.  Three dialects:

  meromorphic: eval atoms, C predicate, u != 0 becomes exists v: u v = 1;
  analytic:    every function variable splits into a (numerator,
               denominator) pair with nonzero-denominator guards, eval
               becomes the pair predicate eval0;
  entire-cm:   the constant test becomes exists c: c^2 = n^5 - 1, and
               u != 0 expands through constants and divisibility
               (tau | 1 and z1 - rho | u - tau), constants re-tested the
               same way, so neither the C predicate nor bare != survives.

Everything is deterministic: fresh names follow <block>_<role>_<counter>,
terms render in graded-lex order, and re-encoding byte-reproduces output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._scalars import Q
from .algebra import MPoly

Z1 = "z1"
Z2 = "z2"

DIALECTS = ("meromorphic", "analytic", "entire-cm")


class EncodeError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# terms


def tvar(name: str) -> MPoly:
    return MPoly.variable(name)


def tconst(c: int) -> MPoly:
    return MPoly.const((), c)


def _assert_integer_poly(p: MPoly):
    if p.content != 0 and p.content.denominator != 1:
        raise EncodeError(f"non-integer coefficients in emitted term: {p}")


def render_term(p: MPoly) -> str:
    _assert_integer_poly(p)
    return str(p)


# ---------------------------------------------------------------------------
# atoms and formula tree


@dataclass(frozen=True)
class PolyEq:
    lhs: MPoly
    rhs: MPoly
    block: str = field(default="", compare=False)

    kind = "poly_eq"

    def args(self):
        return [self.lhs, self.rhs]

    def replace_args(self, args, block=None):
        return PolyEq(args[0], args[1], self.block if block is None else block)


@dataclass(frozen=True)
class Eval:
    term: MPoly
    block: str = field(default="", compare=False)

    kind = "eval"

    def args(self):
        return [self.term]

    def replace_args(self, args, block=None):
        return Eval(args[0], self.block if block is None else block)


@dataclass(frozen=True)
class EvalPair:
    num: MPoly
    den: MPoly
    block: str = field(default="", compare=False)

    kind = "eval_pair"

    def args(self):
        return [self.num, self.den]

    def replace_args(self, args, block=None):
        return EvalPair(args[0], args[1], self.block if block is None else block)


@dataclass(frozen=True)
class Neq:
    term: MPoly
    block: str = field(default="", compare=False)

    kind = "neq"

    def args(self):
        return [self.term]

    def replace_args(self, args, block=None):
        return Neq(args[0], self.block if block is None else block)


@dataclass(frozen=True)
class InC:
    term: MPoly
    block: str = field(default="", compare=False)

    kind = "in_c"

    def args(self):
        return [self.term]

    def replace_args(self, args, block=None):
        return InC(args[0], self.block if block is None else block)


@dataclass(frozen=True)
class CurveRel:
    """Internal pre-expansion relation: (x, y) = P1 + P2 on the curve.

    Operands are coordinate pairs of terms or None for the neutral element.
    expand_curve_ops rewrites these into chord-tangent polynomial atoms; no
    emitted formula ever contains one.
    """

    x: MPoly
    y: MPoly
    p1: tuple | None
    p2: tuple | None
    block: str = field(default="", compare=False)

    kind = "curve_rel"

    def args(self):
        out = [self.x, self.y]
        for p in (self.p1, self.p2):
            if p is not None:
                out.extend(p)
        return out

    def replace_args(self, args, block=None):
        raise EncodeError("curve relations are rewritten, never mapped")


ATOM_KINDS = {"poly_eq": PolyEq, "eval": Eval, "eval_pair": EvalPair, "neq": Neq, "in_c": InC}


@dataclass(frozen=True)
class And:
    parts: tuple

    op = "and"


@dataclass(frozen=True)
class Or:
    parts: tuple

    op = "or"


def _is_atom(node) -> bool:
    return hasattr(node, "kind")


@dataclass(frozen=True)
class Formula:
    """Existential block over an and/or tree of atoms."""

    vars: tuple
    matrix: object

    def atoms(self):
        yield from _walk_atoms(self.matrix)

    def map_atoms(self, fn) -> "Formula":
        return Formula(self.vars, _map_matrix(self.matrix, fn))


def _walk_atoms(node):
    if _is_atom(node):
        yield node
        return
    for part in node.parts:
        yield from _walk_atoms(part)


def _map_matrix(node, fn):
    if _is_atom(node):
        out = fn(node)
        return out
    mapped = tuple(_map_matrix(p, fn) for p in node.parts)
    return type(node)(mapped)


def _flatten_map(node, fn):
    """Like _map_matrix but fn may return a list of atoms to splice in."""
    if _is_atom(node):
        out = fn(node)
        if isinstance(out, list):
            return And(tuple(out)) if len(out) != 1 else out[0]
        return out
    mapped = []
    for p in node.parts:
        q = _flatten_map(p, fn)
        if isinstance(node, And) and isinstance(q, And):
            mapped.extend(q.parts)
        else:
            mapped.append(q)
    return type(node)(tuple(mapped))


# ---------------------------------------------------------------------------
# Diophantine input


@dataclass
class DioSystem:
    unknowns: list
    equations: list  # MPoly, all terms moved left


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens = []
        self._scan()

    def _error(self, msg):
        raise ParseError(msg, self.line, self.col)

    def _scan(self):
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "\n":
                self.tokens.append(("SEP", "\n", self.line, self.col))
                self.pos += 1
                self.line += 1
                self.col = 1
                continue
            if ch in " \t\r":
                self.pos += 1
                self.col += 1
                continue
            if ch == "#":
                while self.pos < len(text) and text[self.pos] != "\n":
                    self.pos += 1
                continue
            start_col = self.col
            if ch.isdigit():
                j = self.pos
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("INT", text[self.pos : j], self.line, start_col))
                self.col += j - self.pos
                self.pos = j
                continue
            if ch.isalpha() or ch == "_":
                j = self.pos
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("IDENT", text[self.pos : j], self.line, start_col))
                self.col += j - self.pos
                self.pos = j
                continue
            if ch in "+-*^=;":
                kind = "SEP" if ch == ";" else ch
                self.tokens.append((kind, ch, self.line, start_col))
                self.pos += 1
                self.col += 1
                continue
            self._error(f"unexpected character {ch!r}")
        self.tokens.append(("EOF", "", self.line, self.col))


class _Parser:
    def __init__(self, text: str, reserved=(Z1, Z2)):
        self.toks = _Tokenizer(text).tokens
        self.i = 0
        self.reserved = set(reserved)
        self.names: list = []

    def _peek(self):
        return self.toks[self.i]

    def _next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def _error(self, msg, tok=None):
        tok = tok or self._peek()
        raise ParseError(msg, tok[2], tok[3])

    def _register(self, name):
        if name in self.reserved:
            self._error(f"{name!r} is a reserved constant, not an unknown")
        if name not in self.names:
            self.names.append(name)

    def parse_system(self) -> DioSystem:
        equations = []
        while True:
            while self._peek()[0] == "SEP":
                self._next()
            if self._peek()[0] == "EOF":
                break
            equations.append(self._equation())
            kind = self._peek()[0]
            if kind not in ("SEP", "EOF"):
                self._error("expected ';' or end of line after an equation")
        if not equations:
            self._error("empty input")
        vars = tuple(sorted(self.names))
        eqs = [p.with_vars(vars) if p.vars != vars else p for p in equations]
        return DioSystem(list(self.names), eqs)

    def _equation(self) -> MPoly:
        lhs = self._expr()
        if self._peek()[0] != "=":
            self._error("expected '=' in equation")
        self._next()
        rhs = self._expr()
        out = lhs - rhs
        _assert_integer_poly(out)
        return out

    def parse_term_only(self) -> MPoly:
        out = self._expr()
        if self._peek()[0] != "EOF":
            self._error("trailing input after term")
        return out

    def _expr(self) -> MPoly:
        neg = False
        if self._peek()[0] == "-":
            self._next()
            neg = True
        acc = self._term()
        if neg:
            acc = -acc
        while self._peek()[0] in ("+", "-"):
            op = self._next()[0]
            t = self._term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def _term(self) -> MPoly:
        acc = self._factor()
        while True:
            kind = self._peek()[0]
            if kind == "*":
                self._next()
                acc = acc * self._factor()
            elif kind == "IDENT":
                # juxtaposition: 3x, 2 z1
                acc = acc * self._factor()
            else:
                return acc

    def _factor(self) -> MPoly:
        tok = self._next()
        if tok[0] == "INT":
            base = MPoly.const((), int(tok[1]))
        elif tok[0] == "IDENT":
            name = tok[1]
            if name not in self.reserved:
                self._register(name)
            base = tvar(name)
        else:
            self._error(f"expected a number or identifier, got {tok[1]!r}", tok)
        if self._peek()[0] == "^":
            self._next()
            e = self._next()
            if e[0] != "INT":
                self._error("expected a non-negative integer exponent", e)
            base = base ** int(e[1])
        return base


def parse_diophantine(text: str) -> DioSystem:
    """Parse the equation mini-language into a normalized system.

    Equations are separated by ';' or newlines; each must contain exactly
    one '='; all terms are moved to the left-hand side.
    """
    return _Parser(text).parse_system()


def parse_term(text: str) -> MPoly:
    p = _Parser(text, reserved=())
    return p.parse_term_only()


# ---------------------------------------------------------------------------
# the curve-relation expansion


def _fresh(block: str, role: str, used: set) -> str:
    i = 0
    while f"{block}_{role}_{i}" in used:
        i += 1
    name = f"{block}_{role}_{i}"
    used.add(name)
    return name


def _delta_term() -> MPoly:
    return tvar(Z2) - 2


def expand_curve_ops(f: Formula) -> Formula:
    """Rewrite every curve relation into chord-tangent polynomial atoms.

    Each (x, y) = P1 + P2 becomes, with a fresh slope variable m,

        m (a2 - a1) = b2 - b1        (or  2 b1 m = 3 a1^2 + 2 delta a1 + 1
                                      when the operands coincide)
        x a1 a2 = (b1 - a1 m)^2
        y = -b1 - m (x - a1)

    plus a nonzero guard on the slope's denominator.  A neutral operand
    short-circuits: the result variables are substituted away, no atoms.
    """
    used = set(f.vars)
    new_vars = list(f.vars)
    substitutions: dict = {}

    def rewrite(atom):
        if not isinstance(atom, CurveRel):
            return atom
        if atom.p1 is None and atom.p2 is None:
            raise EncodeError("sum of two neutral elements has no affine result")
        if atom.p1 is None or atom.p2 is None:
            a1, b1 = atom.p1 if atom.p1 is not None else atom.p2
            substitutions[_only_var(atom.x)] = a1
            substitutions[_only_var(atom.y)] = b1
            return []
        a1, b1 = atom.p1
        a2, b2 = atom.p2
        m = tvar(_fresh(atom.block, "m", used))
        new_vars.append(_only_var(m))
        doubling = a1 == a2 and b1 == b2
        if doubling:
            slope_eq = PolyEq(
                2 * b1 * m, 3 * a1 * a1 + 2 * _delta_term() * a1 + 1, atom.block
            )
            guard = Neq(2 * b1, atom.block)
        else:
            slope_eq = PolyEq(m * (a2 - a1), b2 - b1, atom.block)
            guard = Neq(a2 - a1, atom.block)
        t = b1 - a1 * m
        atoms = [
            slope_eq,
            PolyEq(atom.x * a1 * a2, t * t, atom.block),
            PolyEq(atom.y, -b1 - m * (atom.x - a1), atom.block),
            guard,
        ]
        return atoms

    matrix = _flatten_map(f.matrix, rewrite)
    out = Formula(tuple(new_vars), matrix)
    if substitutions:
        dropped = set(substitutions)

        def subst(atom):
            def fix(p: MPoly) -> MPoly:
                for name, repl in substitutions.items():
                    if name in p.vars and p.degree(name) > 0:
                        p = _poly_subst(p, name, repl)
                return p

            return atom.replace_args([fix(a) for a in atom.args()])

        out = Formula(
            tuple(v for v in out.vars if v not in dropped),
            _map_matrix(out.matrix, subst),
        )
    return out


def _only_var(p: MPoly) -> str:
    live = [v for v in p.vars if p.degree(v) > 0]
    if len(live) != 1 or p != tvar(live[0]).with_vars(p.vars):
        raise EncodeError(f"expected a bare variable, got {p}")
    return live[0]


def _poly_subst(p: MPoly, name: str, repl: MPoly) -> MPoly:
    return p.substitute_poly(name, repl)


# ---------------------------------------------------------------------------
# dialect passes


def expand_neq(f: Formula, dialect: str) -> Formula:
    """Per-dialect elimination of nonzero guards.

    meromorphic: u != 0  ->  exists w: u w = 1  (fields invert);
    analytic:    kept as-is (the pair predicate carries the convention);
    entire-cm:   u != 0  ->  exists rho tau w1 w2 in constants:
                 tau w1 = 1 and u - tau = (z1 - rho) w2,
                 with the constant memberships left as InC atoms for the
                 later constant-test pass.
    """
    _check_dialect(dialect)
    if dialect == "analytic":
        return f
    used = set(f.vars)
    new_vars = list(f.vars)

    def rewrite(atom):
        if not isinstance(atom, Neq):
            return atom
        u = atom.term
        if dialect == "meromorphic":
            w = tvar(_fresh(atom.block, "w", used))
            new_vars.append(_only_var(w))
            return [PolyEq(u * w, tconst(1), atom.block)]
        rho = tvar(_fresh(atom.block, "rho", used))
        tau = tvar(_fresh(atom.block, "tau", used))
        w1 = tvar(_fresh(atom.block, "u", used))
        w2 = tvar(_fresh(atom.block, "u", used))
        for v in (rho, tau, w1, w2):
            new_vars.append(_only_var(v))
        return [
            PolyEq(tau * w1, tconst(1), atom.block),
            PolyEq(u - tau, (tvar(Z1) - rho) * w2, atom.block),
            InC(rho, atom.block),
            InC(tau, atom.block),
        ]

    matrix = _flatten_map(f.matrix, rewrite)
    return Formula(tuple(new_vars), matrix)


def _expand_constant_tests(f: Formula) -> Formula:
    """entire-cm only: InC(u) -> exists c: c^2 = u^5 - 1."""
    used = set(f.vars)
    new_vars = list(f.vars)

    def rewrite(atom):
        if not isinstance(atom, InC):
            return atom
        c = tvar(_fresh(atom.block, "c", used))
        new_vars.append(_only_var(c))
        u = atom.term
        return [PolyEq(c * c, u**5 - 1, atom.block)]

    matrix = _flatten_map(f.matrix, rewrite)
    return Formula(tuple(new_vars), matrix)


def _double_analytic(f: Formula, free: tuple) -> tuple:
    """Split every function variable into a numerator/denominator pair.

    Polynomial atoms are cleared of denominators, eval becomes the pair
    predicate, nonzero guards apply to numerators, and each denominator
    gets its own nonzero guard.  Free variables double too; the caller
    receives the new free list.
    """
    mapping = {v: (v + "_num", v + "_den") for v in list(free) + list(f.vars)}
    new_free = tuple(x for v in free for x in mapping[v])
    new_vars = []
    guards = []
    seen_guard = set()
    for v in f.vars:
        new_vars.extend(mapping[v])
    for v in list(free) + list(f.vars):
        den = mapping[v][1]
        if den not in seen_guard:
            seen_guard.add(den)
            guards.append(Neq(tvar(den), v))

    used = set(new_vars) | set(new_free)
    extra_vars: list = []

    def as_pair(p: MPoly):
        """Rewrite a term over doubled variables as (numerator, denominator)."""
        live = [v for v in p.vars if p.degree(v) > 0 and v in mapping]
        num = p
        den = tconst(1)
        for v in live:
            n_v, d_v = mapping[v]
            d = num.degree(v)
            parts = num.coefficients_in(v)
            acc = None
            nv = tvar(n_v)
            dv = tvar(d_v)
            for k in range(d + 1):
                coeff = parts.get(k)
                piece = None
                if coeff is not None and not coeff.is_zero:
                    piece = coeff * nv**k * dv ** (d - k)
                if piece is not None:
                    acc = piece if acc is None else acc + piece
            num = acc if acc is not None else MPoly.zero(())
            den = den * dv**d
        return num, den

    def rewrite(atom):
        if isinstance(atom, PolyEq):
            ln, ld = as_pair(atom.lhs)
            rn, rd = as_pair(atom.rhs)
            return [PolyEq(ln * rd, rn * ld, atom.block)]
        if isinstance(atom, Eval):
            n, d = as_pair(atom.term)
            return [EvalPair(n, d, atom.block)]
        if isinstance(atom, Neq):
            n, _ = as_pair(atom.term)
            return [Neq(n, atom.block)]
        if isinstance(atom, InC):
            c = tvar(_fresh(atom.block or "k", "c", used))
            extra_vars.append(_only_var(c))
            n, d = as_pair(atom.term)
            return [InC(c, atom.block), PolyEq(n, c * d, atom.block)]
        raise EncodeError(f"unexpected atom in analytic doubling: {atom.kind}")

    matrix = _flatten_map(f.matrix, rewrite)
    matrix = And(tuple(guards) + (matrix,)) if guards else matrix
    return Formula(tuple(new_vars) + tuple(extra_vars), matrix), new_free


def _check_dialect(dialect: str):
    if dialect not in DIALECTS:
        raise EncodeError(f"unknown dialect {dialect!r}; expected one of {DIALECTS}")


# ---------------------------------------------------------------------------
# the integer predicate and system encoder


def _integer_predicate_raw(var: str) -> Formula:
    """The pre-dialect four-shift disjunction with symbolic curve relations.

    Each branch carries the curve system for one shift of var plus the
    constant test on var (as an InC atom; the entire-cm pass turns those
    into square conditions later), so the top level is a pure disjunction.
    """
    branches = []
    allvars = []
    n = tvar(var)
    z = tvar(Z1) + 1
    delta = _delta_term()
    for k in range(4):
        block = f"{var}_s{k}"
        used = set()
        a = tvar(_fresh(block, "a", used))
        b = tvar(_fresh(block, "b", used))
        x = tvar(_fresh(block, "x", used))
        y = tvar(_fresh(block, "y", used))
        v = tvar(_fresh(block, "v", used))
        p = tvar(_fresh(block, "p", used))
        q = tvar(_fresh(block, "q", used))
        f_at_z = z**3 + delta * z**2 + z
        f_at_a = a**3 + delta * a * a + a
        atoms = [
            PolyEq(f_at_z * b * b, f_at_a, block),
            Neq(y, block),
            CurveRel(p, q, (a, b), (a, b), block),
            CurveRel(x, y, (p, q), (z, tconst(1)), block),
            PolyEq(2 * x - 2, tvar(Z1) * y * v, block),
            Eval(v - n + k, block),
            InC(tvar(var), block),
        ]
        branches.append(And(tuple(atoms)))
        allvars.extend(_only_var(t) for t in (a, b, x, y, v, p, q))
    return Formula(tuple(allvars), Or(tuple(branches)))


def _run_pipeline(f: Formula, free: tuple, dialect: str) -> tuple:
    f = expand_curve_ops(f)
    if dialect == "analytic":
        f, free = _double_analytic(f, free)
    f = expand_neq(f, dialect)
    if dialect == "entire-cm":
        f = _expand_constant_tests(f)
    return f, free


def encode_integer_predicate(var: str, dialect: str) -> Formula:
    """The formula pinning var to a rational integer, var left free.

    Output shape: a four-branch disjunction (one per shift of var), each
    branch carrying exactly one evaluation atom plus the dialect's constant
    test on var.
    """
    _check_dialect(dialect)
    raw = _integer_predicate_raw(var)
    f, _ = _run_pipeline(raw, (var,), dialect)
    return f


def encode_system(sys: DioSystem, dialect: str) -> Formula:
    """One closed positive-existential formula for the whole system.

    Each unknown gets the integer-predicate block; the system's equations
    ride along as polynomial atoms among the (constant-valued) unknowns.
    """
    _check_dialect(dialect)
    pieces = []
    allvars = list(sys.unknowns)
    for u in sys.unknowns:
        raw = _integer_predicate_raw(u)
        allvars.extend(raw.vars)
        pieces.append(raw.matrix)
    for eq in sys.equations:
        pieces.append(PolyEq(eq, tconst(0), "sys"))
    f = Formula(tuple(allvars), And(tuple(pieces)))
    f, _ = _run_pipeline(f, (), dialect)
    return f


# ---------------------------------------------------------------------------
# structural validation


def assert_positive_existential(f: Formula, free=()):
    """Structural scan: and/or tree over known atoms, every variable declared.

    Negation and universal quantification are unrepresentable in this AST;
    the scan makes that an explicit checked property rather than folklore.
    """
    declared = set(f.vars) | set(free) | {Z1, Z2}

    def walk(node):
        if _is_atom(node):
            if node.kind not in ATOM_KINDS:
                raise EncodeError(f"non-surface atom {node.kind} left in formula")
            for t in node.args():
                for v in t.vars:
                    if t.degree(v) > 0 and v not in declared:
                        raise EncodeError(f"undeclared variable {v} in atom")
            return
        if not isinstance(node, (And, Or)):
            raise EncodeError(f"non-positive node {node!r}")
        for p in node.parts:
            walk(p)

    walk(f.matrix)
    unused = used_variables(f)
    dead = [v for v in f.vars if v not in unused]
    if dead:
        raise EncodeError(f"dead existential variables: {dead}")


def used_variables(f: Formula) -> set:
    out = set()
    for atom in f.atoms():
        for t in atom.args():
            for v in t.vars:
                if t.degree(v) > 0:
                    out.add(v)
    return out


def dialect_invariants(f: Formula, dialect: str):
    """The per-dialect atom vocabulary restrictions, as hard checks."""
    kinds = {a.kind for a in f.atoms()}
    if dialect == "meromorphic" and "eval_pair" in kinds:
        raise EncodeError("meromorphic output must not contain pair evaluations")
    if dialect == "analytic" and "eval" in kinds:
        raise EncodeError("analytic output must use pair evaluations only")
    if dialect == "entire-cm" and ("in_c" in kinds or "neq" in kinds):
        raise EncodeError("entire-cm output must expand constants and nonzeros away")


# ---------------------------------------------------------------------------
# rendering and parsing back


def _atom_to_json(atom) -> dict:
    return {"kind": atom.kind, "args": [render_term(t) for t in atom.args()]}


def _matrix_to_json(node):
    if _is_atom(node):
        return _atom_to_json(node)
    return {"op": node.op, "args": [_matrix_to_json(p) for p in node.parts]}


def _atom_to_text(atom) -> str:
    if isinstance(atom, PolyEq):
        return f"{render_term(atom.lhs)} = {render_term(atom.rhs)}"
    if isinstance(atom, Eval):
        return f"eval({render_term(atom.term)})"
    if isinstance(atom, EvalPair):
        return f"eval0({render_term(atom.num)}, {render_term(atom.den)})"
    if isinstance(atom, Neq):
        return f"{render_term(atom.term)} != 0"
    if isinstance(atom, InC):
        return f"C({render_term(atom.term)})"
    raise EncodeError(f"cannot render internal atom {atom.kind}")


def _matrix_to_text(node, indent=0) -> str:
    pad = "  " * indent
    if _is_atom(node):
        return pad + _atom_to_text(node)
    joiner = " and\n" if isinstance(node, And) else " or\n"
    inner = joiner.join(_matrix_to_text(p, indent + 1) for p in node.parts)
    return f"{pad}(\n{inner}\n{pad})"


def render_formula(f: Formula, format: str = "text") -> str:
    """Deterministic rendering; the json form parses back to an equal AST."""
    if format == "json":
        obj = {
            "vars": list(f.vars),
            "matrix": _matrix_to_json(f.matrix),
        }
        return json.dumps(obj, indent=2) + "\n"
    if format == "text":
        head = f"exists {', '.join(f.vars)}:" if f.vars else "closed:"
        return head + "\n" + _matrix_to_text(f.matrix, 1) + "\n"
    raise EncodeError(f"unknown format {format!r}; expected 'text' or 'json'")


def _atom_from_json(obj) -> object:
    kind = obj["kind"]
    if kind not in ATOM_KINDS:
        raise EncodeError(f"unknown atom kind {kind!r}")
    args = [parse_term(s) for s in obj["args"]]
    cls = ATOM_KINDS[kind]
    return cls(*args)


def _matrix_from_json(obj):
    if "kind" in obj:
        return _atom_from_json(obj)
    op = obj.get("op")
    parts = tuple(_matrix_from_json(p) for p in obj.get("args", []))
    if op == "and":
        return And(parts)
    if op == "or":
        return Or(parts)
    raise EncodeError(f"unknown connective {op!r}")


def parse_formula(text: str) -> Formula:
    """Inverse of render_formula(..., 'json')."""
    obj = json.loads(text)
    return Formula(tuple(obj["vars"]), _matrix_from_json(obj["matrix"]))
