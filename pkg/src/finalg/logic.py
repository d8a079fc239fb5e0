"""First-order formulas over a signature: parsing, finite satisfaction,
definability checks, the congruence-axiom set, and chain-certificate formulas.

Grammar (quantifiers bind lowest, implication is non-associative):

    formula := quant | impl
    quant   := ("forall" | "exists") var+ "." formula
    impl    := disj ("->" disj)?
    disj    := conj ("|" conj)*
    conj    := atom ("&" atom)*
    atom    := "!" atom | "(" formula ")" | term "=" term

Terms use prefix syntax ``name(arg,...)`` with bare names for variables and
0-ary operations.  Reserved variable families: x, y, z1..zk, u1..uk, w1..wm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .algebra import FiniteAlgebra, Signature, eval_term, pair_index, product
from .center import are_complementary_centrals
from .congruence import DEFAULT_SIZE_CAP, MaltsevCertificate, SLOT
from .errors import FormulaShapeError, ParseError
from .terms import App, Term, Var, format_term, substitute
from .terms import free_vars as term_free_vars


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Forall:
    variables: tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    variables: tuple[str, ...]
    body: "Formula"


Formula = Union[Eq, Not, And, Or, Implies, Forall, Exists]


def conjunction(parts: Sequence[Formula]) -> Formula:
    parts = tuple(parts)
    if len(parts) == 1:
        return parts[0]
    return And(parts)


# ---------------------------------------------------------------------------
# tokenizer / parser

_PUNCT = {"(": "LPAREN", ")": "RPAREN", ",": "COMMA", "=": "EQ", "&": "AMP",
          "|": "BAR", "!": "BANG", ".": "DOT"}
_OPCHARS = set("+*-/%^~<>")


@dataclass(frozen=True)
class _Token:
    kind: str
    value: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("ARROW", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch in _OPCHARS:
            tokens.append(_Token("NAME", ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isalpha() or ch == "_" or ch.isdigit():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KW" if word in ("forall", "exists") else "NAME"
            tokens.append(_Token(kind, word, line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, signature: Signature):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.signature = signature

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.value!r}", tok.line, tok.column)
        return tok

    def formula(self) -> Formula:
        if self.peek().kind == "KW":
            tok = self.next()
            variables = []
            while self.peek().kind == "NAME":
                variables.append(self.next().value)
            if not variables:
                bad = self.peek()
                raise ParseError("quantifier needs at least one variable", bad.line, bad.column)
            self.expect("DOT")
            body = self.formula()
            return (Forall if tok.value == "forall" else Exists)(tuple(variables), body)
        return self.impl()

    def impl(self) -> Formula:
        left = self.disj()
        if self.peek().kind == "ARROW":
            self.next()
            return Implies(left, self.disj())
        return left

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek().kind == "BAR":
            self.next()
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self) -> Formula:
        parts = [self.atom()]
        while self.peek().kind == "AMP":
            self.next()
            parts.append(self.atom())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "BANG":
            self.next()
            return Not(self.atom())
        if tok.kind == "LPAREN":
            self.next()
            inner = self.formula()
            self.expect("RPAREN")
            return inner
        lhs = self.term()
        self.expect("EQ")
        rhs = self.term()
        return Eq(lhs, rhs)

    def term(self) -> Term:
        tok = self.expect("NAME")
        if self.peek().kind == "LPAREN":
            self.next()
            args = []
            if self.peek().kind != "RPAREN":
                args.append(self.term())
                while self.peek().kind == "COMMA":
                    self.next()
                    args.append(self.term())
            self.expect("RPAREN")
            if not self.signature.has_op(tok.value):
                raise ParseError(f"unknown operation {tok.value!r}", tok.line, tok.column)
            if self.signature.arity(tok.value) != len(args):
                raise ParseError(
                    f"operation {tok.value!r} expects {self.signature.arity(tok.value)} "
                    f"arguments, got {len(args)}",
                    tok.line,
                    tok.column,
                )
            return App(tok.value, tuple(args))
        if self.signature.has_op(tok.value):
            if self.signature.arity(tok.value) != 0:
                raise ParseError(
                    f"operation {tok.value!r} needs arguments", tok.line, tok.column
                )
            return App(tok.value, ())
        return Var(tok.value)


def parse_formula(text: str, signature: Signature) -> Formula:
    parser = _Parser(text, signature)
    out = parser.formula()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.column)
    return out


def parse_term(text: str, signature: Signature) -> Term:
    parser = _Parser(text, signature)
    out = parser.term()
    tok = parser.peek()
    if tok.kind != "EOF":
        raise ParseError(f"trailing input {tok.value!r}", tok.line, tok.column)
    return out


# ---------------------------------------------------------------------------
# printing, free variables, substitution


def format_formula(phi: Formula) -> str:
    return _format(phi, top=True)


def _format(phi: Formula, top: bool = False) -> str:
    if isinstance(phi, Eq):
        return f"{format_term(phi.lhs)} = {format_term(phi.rhs)}"
    if isinstance(phi, Not):
        return f"!{_format_atomic(phi.body)}"
    if isinstance(phi, And):
        return " & ".join(_format_atomic(p) for p in phi.parts)
    if isinstance(phi, Or):
        return " | ".join(
            _format_atomic(p) if not isinstance(p, And) else _format(p) for p in phi.parts
        )
    if isinstance(phi, Implies):
        return f"{_format_inside(phi.lhs)} -> {_format_inside(phi.rhs)}"
    if isinstance(phi, (Forall, Exists)):
        kw = "forall" if isinstance(phi, Forall) else "exists"
        return f"{kw} {' '.join(phi.variables)} . {_format(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")


def _format_atomic(phi: Formula) -> str:
    if isinstance(phi, (Eq, Not)):
        return _format(phi)
    return f"({_format(phi)})"


def _format_inside(phi: Formula) -> str:
    if isinstance(phi, (Implies, Forall, Exists)):
        return f"({_format(phi)})"
    return _format(phi)


def formula_free_vars(phi: Formula) -> frozenset[str]:
    if isinstance(phi, Eq):
        return term_free_vars(phi.lhs) | term_free_vars(phi.rhs)
    if isinstance(phi, Not):
        return formula_free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        out: frozenset[str] = frozenset()
        for p in phi.parts:
            out |= formula_free_vars(p)
        return out
    if isinstance(phi, Implies):
        return formula_free_vars(phi.lhs) | formula_free_vars(phi.rhs)
    if isinstance(phi, (Forall, Exists)):
        return formula_free_vars(phi.body) - frozenset(phi.variables)
    raise TypeError(f"not a formula: {phi!r}")


def substitute_formula(phi: Formula, mapping: dict[str, Term]) -> Formula:
    """Capture-avoiding substitution of terms for free variables."""
    if isinstance(phi, Eq):
        return Eq(substitute(phi.lhs, mapping), substitute(phi.rhs, mapping))
    if isinstance(phi, Not):
        return Not(substitute_formula(phi.body, mapping))
    if isinstance(phi, And):
        return And(tuple(substitute_formula(p, mapping) for p in phi.parts))
    if isinstance(phi, Or):
        return Or(tuple(substitute_formula(p, mapping) for p in phi.parts))
    if isinstance(phi, Implies):
        return Implies(
            substitute_formula(phi.lhs, mapping), substitute_formula(phi.rhs, mapping)
        )
    if isinstance(phi, (Forall, Exists)):
        live = {v: t for v, t in mapping.items() if v not in phi.variables}
        if not live:
            return phi
        incoming = frozenset().union(*(term_free_vars(t) for t in live.values()))
        rename: dict[str, Term] = {}
        fresh_vars = []
        for v in phi.variables:
            if v in incoming:
                fresh = _fresh_name(v, incoming | formula_free_vars(phi.body) | set(live))
                rename[v] = Var(fresh)
                fresh_vars.append(fresh)
            else:
                fresh_vars.append(v)
        body = substitute_formula(phi.body, rename) if rename else phi.body
        return type(phi)(tuple(fresh_vars), substitute_formula(body, live))
    raise TypeError(f"not a formula: {phi!r}")


def _fresh_name(base: str, taken) -> str:
    i = 0
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


# ---------------------------------------------------------------------------
# finite Tarskian satisfaction


def eval_formula(algebra: FiniteAlgebra, phi: Formula, env: dict[str, int]) -> bool:
    """Standard satisfaction; quantifiers range over the whole universe."""
    if isinstance(phi, Eq):
        return eval_term(algebra, phi.lhs, env) == eval_term(algebra, phi.rhs, env)
    if isinstance(phi, Not):
        return not eval_formula(algebra, phi.body, env)
    if isinstance(phi, And):
        return all(eval_formula(algebra, p, env) for p in phi.parts)
    if isinstance(phi, Or):
        return any(eval_formula(algebra, p, env) for p in phi.parts)
    if isinstance(phi, Implies):
        return (not eval_formula(algebra, phi.lhs, env)) or eval_formula(
            algebra, phi.rhs, env
        )
    if isinstance(phi, (Forall, Exists)):
        combine = all if isinstance(phi, Forall) else any
        scope = dict(env)

        def assignments() -> Iterator[bool]:
            for values in itertools.product(range(algebra.size), repeat=len(phi.variables)):
                scope.update(zip(phi.variables, values))
                yield eval_formula(algebra, phi.body, scope)

        return combine(assignments())
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# definability on binary products


def _z_names(k: int) -> list[str]:
    return [f"z{i + 1}" for i in range(k)]


def _u_names(k: int) -> list[str]:
    return [f"u{i + 1}" for i in range(k)]


@dataclass(frozen=True)
class DefinesReport:
    passed: bool
    counterexample: Optional[dict] = None


def defines_theta1(
    phi: Formula,
    corpus: Sequence[tuple[FiniteAlgebra, FiniteAlgebra]],
    lex_mode: bool = False,
) -> DefinesReport:
    """Test the factor-congruence definability contract on product instances.

    For each (A,B): A×B ⊨ φ([0⃗,1⃗],(a,c),(b,d)) must hold exactly when
    c = d.  With ``lex_mode`` the right side becomes a = b (the 0-side
    convention).
    """
    if not corpus:
        raise ValueError("corpus must be nonempty")
    sig = corpus[0][0].signature
    k = sig.tuple_length
    allowed = {"x", "y", *_z_names(k)}
    extra = formula_free_vars(phi) - allowed
    if extra:
        raise FormulaShapeError(
            f"formula must use only x, y, z1..z{k}; found {sorted(extra)}"
        )
    for a, b in corpus:
        if a.signature != sig or b.signature != sig:
            raise FormulaShapeError("corpus algebras must share a signature")
        prod = product(a, b).algebra
        env = {
            name: pair_index(a.zero_tuple[i], b.one_tuple[i], b.size)
            for i, name in enumerate(_z_names(k))
        }
        for xa in range(a.size):
            for xb in range(b.size):
                for ya in range(a.size):
                    for yb in range(b.size):
                        env["x"] = pair_index(xa, xb, b.size)
                        env["y"] = pair_index(ya, yb, b.size)
                        expected = (xa == ya) if lex_mode else (xb == yb)
                        if eval_formula(prod, phi, env) != expected:
                            return DefinesReport(
                                passed=False,
                                counterexample={
                                    "left": a.name,
                                    "right": b.name,
                                    "quadruple": (xa, xb, ya, yb),
                                    "expected": expected,
                                },
                            )
    return DefinesReport(passed=True)


# ---------------------------------------------------------------------------
# the axiom set for complementary central pairs


def sigma_set(phi: Formula, signature: Signature) -> list[Formula]:
    """Axioms saying the two parameter tuples carve out a complementary
    factor-congruence pair.

    Order: the six two-parameter axioms with (z⃗,u⃗), the same six with
    (u⃗,z⃗), then one compatibility axiom per operation symbol (0-ary
    symbols degenerate to a trivially true closed equation, still emitted).
    """
    k = signature.tuple_length
    allowed = {"x", "y", *_z_names(k)}
    extra = formula_free_vars(phi) - allowed
    if extra:
        raise FormulaShapeError(
            f"formula must use only x, y, z1..z{k}; found {sorted(extra)}"
        )
    z = [Var(n) for n in _z_names(k)]
    u = [Var(n) for n in _u_names(k)]

    def inst(s: Term, t: Term, params: Sequence[Term]) -> Formula:
        mapping = {"x": s, "y": t}
        mapping.update({name: params[i] for i, name in enumerate(_z_names(k))})
        return substitute_formula(phi, mapping)

    def block(p: Sequence[Term], q: Sequence[Term]) -> list[Formula]:
        reflexive = Forall(("x",), inst(Var("x"), Var("x"), p))
        symmetric = Forall(
            ("x", "y"), Implies(inst(Var("x"), Var("y"), p), inst(Var("y"), Var("x"), p))
        )
        transitive = Forall(
            ("x", "y", "v"),
            Implies(
                And((inst(Var("x"), Var("v"), p), inst(Var("v"), Var("y"), p))),
                inst(Var("x"), Var("y"), p),
            ),
        )
        disjoint = Forall(
            ("x", "y"),
            Implies(
                And((inst(Var("x"), Var("y"), p), inst(Var("x"), Var("y"), q))),
                Eq(Var("x"), Var("y")),
            ),
        )
        permuting = Forall(
            ("x", "y"),
            Exists(
                ("v",),
                And((inst(Var("x"), Var("v"), p), inst(Var("v"), Var("y"), q))),
            ),
        )
        anchors = []
        for j in range(k):
            anchors.append(inst(signature.one_terms[j], p[j], p))
        for j in range(k):
            anchors.append(inst(signature.zero_terms[j], q[j], p))
        return [reflexive, symmetric, transitive, disjoint, permuting, conjunction(anchors)]

    compat = []
    for op, arity in signature.ops:
        if arity == 0:
            compat.append(Eq(App(op, ()), App(op, ())))
            continue
        ls = [Var(f"l{i + 1}") for i in range(arity)]
        vs = [Var(f"v{i + 1}") for i in range(arity)]
        premises = [inst(ls[i], vs[i], z) for i in range(arity)]
        conclusion = inst(App(op, tuple(ls)), App(op, tuple(vs)), z)
        compat.append(
            Forall(
                tuple(t.name for t in ls + vs),
                Implies(conjunction(premises), conclusion),
            )
        )
    return block(z, u) + block(u, z) + compat


@dataclass(frozen=True)
class SigmaCheck:
    holds: bool
    semantic: bool
    agrees: bool
    failed_axioms: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.holds


def check_sigma(
    algebra: FiniteAlgebra,
    e: Sequence[int],
    f: Sequence[int],
    phi: Formula,
    max_size: int = DEFAULT_SIZE_CAP,
) -> SigmaCheck:
    """Evaluate the axiom set at (e⃗,f⃗) and cross-validate against the
    ground-truth complementary-pair fact; a mismatch is a definability defect."""
    k = algebra.signature.tuple_length
    e, f = tuple(e), tuple(f)
    if len(e) != k or len(f) != k:
        raise FormulaShapeError(f"tuples must have length {k}")
    env = {name: e[i] for i, name in enumerate(_z_names(k))}
    env.update({name: f[i] for i, name in enumerate(_u_names(k))})
    failed = []
    for idx, sigma in enumerate(sigma_set(phi, algebra.signature)):
        if not eval_formula(algebra, sigma, env):
            failed.append(idx)
    holds = not failed
    semantic = are_complementary_centrals(algebra, e, f, max_size)
    return SigmaCheck(holds, semantic, holds == semantic, tuple(failed))


def check_connected_axioms(
    algebra: FiniteAlgebra, phi: Formula
) -> bool:
    """Distinct constants, and the axiom set admits only (0⃗,1⃗) and (1⃗,0⃗)."""
    if algebra.zero_tuple == algebra.one_tuple:
        return False
    k = algebra.signature.tuple_length
    sigmas = sigma_set(phi, algebra.signature)
    zero, one = algebra.zero_tuple, algebra.one_tuple
    for e in itertools.product(range(algebra.size), repeat=k):
        for f in itertools.product(range(algebra.size), repeat=k):
            env = {name: e[i] for i, name in enumerate(_z_names(k))}
            env.update({name: f[i] for i, name in enumerate(_u_names(k))})
            if all(eval_formula(algebra, s, env) for s in sigmas):
                if not ((e == zero and f == one) or (e == one and f == zero)):
                    return False
    return True


# ---------------------------------------------------------------------------
# chain certificates as existential formulas


@dataclass(frozen=True)
class PcfSchema:
    """An odd chain of terms packaged as a principal-congruence formula.

    ``terms`` are over generator slots g1..gn and witness slots w1..wm; the
    formula instantiates them at u⃗ (left) and v⃗ (right):

        ∃w⃗ ( x = t1(u⃗,w⃗) ∧ ⋀_{i even} t_i(u⃗,w⃗) = t_{i+1}(u⃗,w⃗)
                         ∧ ⋀_{i odd}  t_i(v⃗,w⃗) = t_{i+1}(v⃗,w⃗) ∧ t_k(v⃗,w⃗) = y )
    """

    terms: tuple[Term, ...]
    generator_count: int
    witness_values: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.terms)

    @property
    def witness_count(self) -> int:
        return len(self.witness_values)

    def g_names(self) -> list[str]:
        return [f"g{i + 1}" for i in range(self.generator_count)]

    def w_names(self) -> list[str]:
        return [f"w{i + 1}" for i in range(self.witness_count)]

    def formula(self, bind_witnesses: bool = True) -> Formula:
        u = {f"g{i + 1}": Var(f"u{i + 1}") for i in range(self.generator_count)}
        v = {f"g{i + 1}": Var(f"v{i + 1}") for i in range(self.generator_count)}
        left = [substitute(t, u) for t in self.terms]
        right = [substitute(t, v) for t in self.terms]
        conj: list[Formula] = [Eq(Var("x"), left[0])]
        for i in range(1, self.k):  # i = 1-based index of the earlier term
            if i % 2 == 0:
                conj.append(Eq(left[i - 1], left[i]))
            else:
                conj.append(Eq(right[i - 1], right[i]))
        conj.append(Eq(right[self.k - 1], Var("y")))
        body = conjunction(conj)
        if bind_witnesses and self.witness_count:
            return Exists(tuple(self.w_names()), body)
        return body

    def instance_env(
        self,
        a: int,
        b: int,
        generators: Sequence[tuple[int, int]],
        with_witnesses: bool = False,
    ) -> dict[str, int]:
        env = {"x": a, "y": b}
        for i, (c, d) in enumerate(generators):
            env[f"u{i + 1}"] = c
            env[f"v{i + 1}"] = d
        if with_witnesses:
            for i, value in enumerate(self.witness_values):
                env[f"w{i + 1}"] = value
        return env


def certificate_to_formula(cert: MaltsevCertificate) -> PcfSchema:
    """Package a chain certificate as a formula schema.

    Constants across all steps are pooled into one witness vector (equal
    values share a slot), so the emitted witness assignment replays the
    certificate and the existential closure is the membership formula.
    """
    slot_of_value: dict[int, int] = {}
    for step in cert.steps:
        for value in step.poly.consts:
            slot_of_value.setdefault(value, len(slot_of_value) + 1)
    terms = []
    for step in cert.steps:
        mapping: dict[str, Term] = {SLOT: Var(f"g{step.gen_index + 1}")}
        for i, value in enumerate(step.poly.consts):
            mapping[f"c{i}"] = Var(f"w{slot_of_value[value]}")
        terms.append(substitute(step.poly.term, mapping))
    witnesses = tuple(v for v, _ in sorted(slot_of_value.items(), key=lambda kv: kv[1]))
    return PcfSchema(tuple(terms), len(cert.generators), witnesses)


def pcf_relation(
    algebra: FiniteAlgebra, schema: PcfSchema, generators: Sequence[tuple[int, int]]
) -> frozenset[tuple[int, int]]:
    """All (a,b) satisfied by the schema at the given generators, by one scan
    over witness assignments.

    The pair variables occur only in the two endpoint equations, so each
    witness assignment that satisfies the stitching equations contributes
    exactly the pair (t1 at u⃗, tk at v⃗).
    """
    u_env = {f"g{i + 1}": c for i, (c, _) in enumerate(generators)}
    v_env = {f"g{i + 1}": d for i, (_, d) in enumerate(generators)}
    out = set()
    for values in itertools.product(range(algebra.size), repeat=schema.witness_count):
        w_env = {f"w{i + 1}": v for i, v in enumerate(values)}
        left = [eval_term(algebra, t, {**u_env, **w_env}) for t in schema.terms]
        right = [eval_term(algebra, t, {**v_env, **w_env}) for t in schema.terms]
        ok = True
        for i in range(1, schema.k):
            if i % 2 == 0:
                if left[i - 1] != left[i]:
                    ok = False
                    break
            else:
                if right[i - 1] != right[i]:
                    ok = False
                    break
        if ok:
            out.add((left[0], right[-1]))
    return frozenset(out)
