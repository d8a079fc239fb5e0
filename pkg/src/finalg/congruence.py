"""Congruences of finite algebras.

Principal congruence generation with replayable chain certificates, the full
congruence lattice, permutability, factor pairs, congruence systems, and
factorization of congruences on binary products.

Generation works by one-step unary translations: the closure rule is that a
related pair (u,v) forces f(..,u,..) related to f(..,v,..) for every
operation f, argument slot, and constant context.  Iterating this to a
fixpoint together with transitive merging yields the least congruence, and
each merge can be recorded, so that membership of any pair can later be
replayed as an odd-length chain of unary-polynomial steps whose endpoints are
substituted generator entries.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import FiniteAlgebra, eval_term, is_compatible_partition, structurally_equal
from .errors import (
    CertificateError,
    NotACongruenceError,
    PairNotRelatedError,
    SizeCapExceededError,
    TableError,
)
from .partition import Partition
from .terms import App, Term, Var, format_term, free_vars, substitute

SLOT = "x"  # designated variable of a unary polynomial
DEFAULT_SIZE_CAP = 12


@dataclass(frozen=True, eq=False)
class Congruence:
    """An operation-compatible partition tied to its algebra."""

    algebra: FiniteAlgebra
    partition: Partition

    def __post_init__(self):
        if self.partition.n != self.algebra.size:
            raise NotACongruenceError("partition is over the wrong universe")

    @staticmethod
    def from_partition(algebra: FiniteAlgebra, part: Partition) -> "Congruence":
        if not is_compatible_partition(algebra, part):
            raise NotACongruenceError("partition is not compatible with the operations")
        return Congruence(algebra, part)

    def same(self, a: int, b: int) -> bool:
        return self.partition.same(a, b)

    def relates_tuples(self, xs: Sequence[int], ys: Sequence[int]) -> bool:
        return all(self.partition.same(x, y) for x, y in zip(xs, ys))

    def blocks(self):
        return self.partition.blocks()

    def is_identity(self) -> bool:
        return self.partition.is_identity()

    def is_universal(self) -> bool:
        return self.partition.is_universal()

    def format_blocks(self) -> str:
        return self.partition.format_blocks()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Congruence)
            and self.partition == other.partition
            and structurally_equal(self.algebra, other.algebra)
        )

    def __hash__(self) -> int:
        return hash(self.partition)

    def __str__(self) -> str:
        return self.format_blocks()


def delta(algebra: FiniteAlgebra) -> Congruence:
    return Congruence(algebra, Partition.identity(algebra.size))


def nabla(algebra: FiniteAlgebra) -> Congruence:
    return Congruence(algebra, Partition.universal(algebra.size))


# ---------------------------------------------------------------------------
# unary polynomials


@dataclass(frozen=True)
class UnaryPoly:
    """A term in one designated slot plus positional constants c0,c1,...

    ``term`` may use Var(SLOT) and Var("c<i>") for i < len(consts).
    """

    term: Term
    consts: tuple[int, ...] = ()

    def apply(self, algebra: FiniteAlgebra, value: Optional[int]) -> int:
        env = {f"c{i}": v for i, v in enumerate(self.consts)}
        if value is not None:
            env[SLOT] = value
        return eval_term(algebra, self.term, env)

    def uses_slot(self) -> bool:
        return SLOT in free_vars(self.term)

    def compose(self, inner: "UnaryPoly") -> "UnaryPoly":
        """self after inner: x ↦ self(inner(x))."""
        offset = len(self.consts)
        renamed = _shift_consts(inner.term, offset)
        return UnaryPoly(
            substitute(self.term, {SLOT: renamed}), self.consts + inner.consts
        )

    def pretty(self) -> str:
        shown = substitute(
            self.term, {f"c{i}": Var(str(v)) for i, v in enumerate(self.consts)}
        )
        return format_term(shown)

    @staticmethod
    def identity() -> "UnaryPoly":
        return UnaryPoly(Var(SLOT), ())

    @staticmethod
    def constant(value: int) -> "UnaryPoly":
        return UnaryPoly(Var("c0"), (value,))

    @staticmethod
    def translation(op: str, arity: int, pos: int, context: tuple[int, ...]) -> "UnaryPoly":
        args: list[Term] = []
        ci = 0
        for slot in range(arity):
            if slot == pos:
                args.append(Var(SLOT))
            else:
                args.append(Var(f"c{ci}"))
                ci += 1
        return UnaryPoly(App(op, tuple(args)), context)


def _shift_consts(term: Term, offset: int) -> Term:
    names = [v for v in free_vars(term) if v.startswith("c")]
    return substitute(term, {v: Var(f"c{int(v[1:]) + offset}") for v in names})


def one_step_translations(algebra: FiniteAlgebra) -> list[UnaryPoly]:
    out = []
    for op, arity in algebra.signature.ops:
        for pos in range(arity):
            for context in itertools.product(range(algebra.size), repeat=arity - 1):
                out.append(UnaryPoly.translation(op, arity, pos, context))
    return out


# ---------------------------------------------------------------------------
# union-find with replayable explanations


class _ExplainUnionFind:
    """Union-find plus a proof forest in the style of congruence-closure solvers.

    Each proof edge carries the reason two elements were merged: either a
    generator pair or a unary translation applied to an earlier-equal pair.
    The path between two related elements replays as a chain of such steps.
    """

    def __init__(self, n: int, record: bool):
        self.parent = list(range(n))
        self.record = record
        # pedge[x] = (neighbor, reason, flipped); reason's natural orientation is
        # x -> neighbor when flipped is False
        self.pedge: list[Optional[tuple[int, tuple, bool]]] = [None] * n

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x: int, y: int, reason: tuple) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        if self.record:
            self._reverse_to_root(x)
            self.pedge[x] = (y, reason, False)
        return True

    def _reverse_to_root(self, x: int) -> None:
        chain = []
        cur = x
        while self.pedge[cur] is not None:
            nxt, reason, flip = self.pedge[cur]
            chain.append((cur, nxt, reason, flip))
            cur = nxt
        for u, v, reason, flip in chain:
            self.pedge[v] = (u, reason, not flip)
        self.pedge[x] = None

    def explain(self, a: int, b: int) -> list[tuple[tuple, bool]]:
        """Oriented reasons along the proof path a -> b."""
        if a == b:
            return []
        up_a = [a]
        cur = a
        while self.pedge[cur] is not None:
            cur = self.pedge[cur][0]
            up_a.append(cur)
        index_a = {node: i for i, node in enumerate(up_a)}
        path_b = [b]
        cur = b
        while cur not in index_a:
            edge = self.pedge[cur]
            if edge is None:
                raise PairNotRelatedError(f"elements {a} and {b} are not related")
            cur = edge[0]
            path_b.append(cur)
        lca = cur
        out = []
        cur = a
        while cur != lca:
            nxt, reason, flip = self.pedge[cur]  # type: ignore[misc]
            out.append((reason, flip))
            cur = nxt
        tail = []
        for node in path_b[:-1]:
            nxt, reason, flip = self.pedge[node]  # type: ignore[misc]
            tail.append((reason, not flip))
        out.extend(reversed(tail))
        return out

    def to_partition(self) -> Partition:
        return Partition.from_pairs(
            len(self.parent), ((i, self.find(i)) for i in range(len(self.parent)))
        )


@dataclass(frozen=True, eq=False)
class ProvenanceStore:
    """Frozen record of one principal-congruence generation run."""

    algebra: FiniteAlgebra
    generators: tuple[tuple[int, int], ...]
    _uf: _ExplainUnionFind

    def related(self, a: int, b: int) -> bool:
        return self._uf.find(a) == self._uf.find(b)

    _CLOSURE_BUDGET = 4000

    def _poly_closure(self) -> dict[tuple[int, ...], UnaryPoly]:
        """Cheapest known term per unary-polynomial function of the algebra.

        Breadth-first composition closure of the one-step translations; the
        budget caps pathological blowups, in which case the table is merely
        partial (extraction then falls back to the recorded derivation).
        """
        cached = getattr(self, "_closure_cache", None)
        if cached is not None:
            return cached
        algebra = self.algebra
        n = algebra.size
        table: dict[tuple[int, ...], UnaryPoly] = {}

        def key_of(poly: UnaryPoly) -> tuple[int, ...]:
            return tuple(poly.apply(algebra, x) for x in range(n))

        frontier: list[tuple[tuple[int, ...], UnaryPoly]] = []
        for poly in [UnaryPoly.identity()] + one_step_translations(algebra):
            key = key_of(poly)
            if key not in table:
                table[key] = poly
                frontier.append((key, poly))
        steps = one_step_translations(algebra)
        while frontier and len(table) < self._CLOSURE_BUDGET:
            key, poly = frontier.pop(0)
            for step in steps:
                composed_key = tuple(step.apply(algebra, v) for v in key)
                if composed_key not in table:
                    composed = step.compose(poly)
                    table[composed_key] = composed
                    frontier.append((composed_key, composed))
        object.__setattr__(self, "_closure_cache", table)
        return table

    def _hop_witnesses(self) -> dict[tuple[int, int], tuple[UnaryPoly, int, bool]]:
        """One-hop relation: (u,v) reachable as a polynomial image of some
        generator pair, with a witnessing (polynomial, generator, orientation)."""
        cached = getattr(self, "_hop_cache", None)
        if cached is not None:
            return cached
        hops: dict[tuple[int, int], tuple[UnaryPoly, int, bool]] = {}
        for poly in self._poly_closure().values():
            for j, (c, d) in enumerate(self.generators):
                u, v = poly.apply(self.algebra, c), poly.apply(self.algebra, d)
                if u != v:
                    hops.setdefault((u, v), (poly, j, True))
                    hops.setdefault((v, u), (poly, j, False))
        object.__setattr__(self, "_hop_cache", hops)
        return hops

    def shortest_chain(
        self, a: int, b: int
    ) -> Optional[list[tuple[UnaryPoly, int, bool]]]:
        """Breadth-first search over one-hop images; None when the closure
        table was insufficient (budget) to connect the pair."""
        if a == b:
            return []
        hops = self._hop_witnesses()
        succ: dict[int, list[int]] = {}
        for (u, v) in hops:
            succ.setdefault(u, []).append(v)
        back: dict[int, int] = {a: a}
        queue = deque([a])
        while queue:
            u = queue.popleft()
            if u == b:
                break
            for v in sorted(succ.get(u, ())):
                if v not in back:
                    back[v] = u
                    queue.append(v)
        if b not in back:
            return None
        path = [b]
        while path[-1] != a:
            path.append(back[path[-1]])
        path.reverse()
        return [hops[(u, v)] for u, v in zip(path, path[1:])]


# ---------------------------------------------------------------------------
# principal congruences


def principal_congruence(
    algebra: FiniteAlgebra,
    pairs: Sequence[tuple[int, int]],
    want_certificates: bool = False,
):
    """Least congruence containing the given pairs.

    Worklist closure: merging two classes enqueues the translated images of
    the merged pair for every one-step unary translation.  With
    ``want_certificates`` the merges are recorded and the return value is a
    ``(Congruence, ProvenanceStore)`` pair.
    """
    n = algebra.size
    gens = []
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise TableError(f"generator pair ({a},{b}) outside the universe")
        gens.append((a, b))
    polys = one_step_translations(algebra)
    uf = _ExplainUnionFind(n, record=want_certificates)
    queue: deque[tuple[int, int, tuple]] = deque()
    for j, (a, b) in enumerate(gens):
        if a != b:
            queue.append((a, b, ("gen", j)))
    while queue:
        x, y, reason = queue.popleft()
        if uf.find(x) == uf.find(y):
            continue
        uf.union(x, y, reason)
        for p in polys:
            px, py = p.apply(algebra, x), p.apply(algebra, y)
            if uf.find(px) != uf.find(py):
                queue.append((px, py, ("poly", p, x, y)))
    cong = Congruence(algebra, uf.to_partition())
    if want_certificates:
        return cong, ProvenanceStore(algebra, tuple(gens), uf)
    return cong


def principal_pair_congruence(
    algebra: FiniteAlgebra, ones: Sequence[int], others: Sequence[int]
) -> Congruence:
    """θ(a⃗, b⃗): the congruence generated by the componentwise pairs."""
    return principal_congruence(algebra, list(zip(ones, others)))


# ---------------------------------------------------------------------------
# chain certificates


@dataclass(frozen=True)
class ChainStep:
    poly: UnaryPoly
    gen_index: int


@dataclass(frozen=True)
class MaltsevCertificate:
    """Odd chain of unary-polynomial steps witnessing (a,b) ∈ θ(generators).

    Step i (1-based) evaluated at the c-side/d-side of its generator gives
    values Lc_i and Ld_i; the chain conditions are a = Lc_1, b = Ld_k,
    Lc_i = Lc_{i+1} for even i and Ld_i = Ld_{i+1} for odd i.
    """

    source: tuple[int, int]
    generators: tuple[tuple[int, int], ...]
    steps: tuple[ChainStep, ...]
    chain_values: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.steps)

    def side_values(self, algebra: FiniteAlgebra) -> tuple[list[int], list[int]]:
        lc, ld = [], []
        for step in self.steps:
            if step.poly.uses_slot():
                if not (0 <= step.gen_index < len(self.generators)):
                    raise CertificateError(
                        f"step references generator {step.gen_index} of {len(self.generators)}"
                    )
                c, d = self.generators[step.gen_index]
            else:
                c = d = None
            try:
                lc.append(step.poly.apply(algebra, c))
                ld.append(step.poly.apply(algebra, d))
            except Exception as exc:  # arity/slot problems in the descriptor
                raise CertificateError(f"malformed descriptor: {exc}") from exc
        return lc, ld

    def format_lines(self, algebra: FiniteAlgebra) -> list[str]:
        lc, ld = self.side_values(algebra)
        lines = [
            f"pair ({self.source[0]},{self.source[1]}) in theta("
            + "; ".join(f"{c},{d}" for c, d in self.generators)
            + f"), chain length {self.k}"
        ]
        for i, step in enumerate(self.steps):
            lines.append(
                f"  t{i + 1}: {step.poly.pretty()}  lambda={list(step.poly.consts)}"
                f"  gen#{step.gen_index}  c-side={lc[i]} d-side={ld[i]}"
            )
        lines.append(f"  values: {list(self.chain_values)}")
        return lines


def verify_certificate(algebra: FiniteAlgebra, cert: MaltsevCertificate) -> bool:
    """Replay the chain equations by pure term evaluation.

    Independent of how the certificate was produced: only the descriptors,
    generator entries, and table lookups are consulted.
    """
    k = cert.k
    if k == 0 or k % 2 == 0:
        return False
    lc, ld = cert.side_values(algebra)
    a, b = cert.source
    if lc[0] != a or ld[k - 1] != b:
        return False
    for i in range(1, k):  # i is the 1-based index of the left step
        if i % 2 == 0:
            if lc[i - 1] != lc[i]:
                return False
        else:
            if ld[i - 1] != ld[i]:
                return False
    if cert.chain_values:
        if len(cert.chain_values) != k + 1:
            return False
        vals = cert.chain_values
        if vals[0] != a or vals[k] != b:
            return False
        for i in range(1, k + 1):
            entry, exit_ = (lc[i - 1], ld[i - 1]) if i % 2 == 1 else (ld[i - 1], lc[i - 1])
            if vals[i - 1] != entry or vals[i] != exit_:
                return False
    return True


def _raw_steps(store: ProvenanceStore, a: int, b: int) -> list[tuple[UnaryPoly, int, bool]]:
    """Expand the proof-forest path into primitive steps (poly, generator, forward)."""
    if a == b:
        return []
    out: list[tuple[UnaryPoly, int, bool]] = []
    for reason, flipped in store._uf.explain(a, b):
        if reason[0] == "gen":
            out.append((UnaryPoly.identity(), reason[1], not flipped))
        else:
            _, poly, u, v = reason
            if flipped:
                u, v = v, u
            for q, j, fw in _raw_steps(store, u, v):
                out.append((poly.compose(q), j, fw))
    return out


def extract_certificate(store: ProvenanceStore, a: int, b: int) -> MaltsevCertificate:
    """Build a verified odd-length chain certificate for a related pair.

    A breadth-first search over one-hop polynomial images of the generators
    usually yields the shortest chain; when the polynomial closure was capped,
    the recorded derivation is replayed instead.  Either way the raw steps are
    normalized to the strict odd/even alternation by inserting constant steps
    (a final constant step pads even-length chains).
    """
    algebra = store.algebra
    n = algebra.size
    if not (0 <= a < n and 0 <= b < n):
        raise TableError(f"pair ({a},{b}) outside the universe")
    if not store.related(a, b):
        raise PairNotRelatedError(f"pair ({a},{b}) is not in the generated congruence")

    def endpoints(poly: UnaryPoly, j: int, forward: bool) -> tuple[int, int]:
        if poly.uses_slot():
            c, d = store.generators[j]
        else:
            c = d = None
        lc, ld = poly.apply(algebra, c), poly.apply(algebra, d)
        return (lc, ld) if forward else (ld, lc)

    raw = store.shortest_chain(a, b)
    if raw is None:
        raw = []
        cur = a
        for poly, j, forward in _raw_steps(store, a, b):
            entry, exit_ = endpoints(poly, j, forward)
            if entry != cur:
                raise CertificateError("derivation chain lost contact")
            cur = exit_
            raw.append((poly, j, forward))
        if cur != b:
            raise CertificateError("derivation chain ended away from the target")

    steps: list[ChainStep] = []
    values: list[int] = [a]
    cur = a
    for poly, j, forward in raw:
        entry, exit_ = endpoints(poly, j, forward)
        if entry != cur:
            raise CertificateError("derivation chain lost contact")
        if exit_ == entry:
            continue
        want_forward = len(steps) % 2 == 0  # next position is odd iff even count so far
        if forward != want_forward:
            steps.append(ChainStep(UnaryPoly.constant(cur), j))
            values.append(cur)
        steps.append(ChainStep(poly, j))
        values.append(exit_)
        cur = exit_
    if len(steps) % 2 == 0:  # covers the reflexive case and even-length chains
        steps.append(ChainStep(UnaryPoly.constant(cur), 0))
        values.append(cur)
    cert = MaltsevCertificate((a, b), store.generators, tuple(steps), tuple(values))
    if not verify_certificate(algebra, cert):
        raise CertificateError("internal error: emitted certificate failed replay")
    return cert


# ---------------------------------------------------------------------------
# the congruence lattice


def all_congruences(
    algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP
) -> tuple[Congruence, ...]:
    """Every congruence, as the join-closure of the principal ones.

    Returned in lexicographic representative-array order (so ∇ comes first
    and Δ last).
    """
    n = algebra.size
    if n > max_size:
        raise SizeCapExceededError(
            f"congruence lattice of a {n}-element algebra exceeds the cap {max_size}"
        )
    found: set[Partition] = {Partition.identity(n)}
    for a in range(n):
        for b in range(a + 1, n):
            found.add(principal_congruence(algebra, [(a, b)]).partition)
    worklist = list(found)
    while worklist:
        p = worklist.pop()
        for q in list(found):
            j = p.join(q)
            if j not in found:
                found.add(j)
                worklist.append(j)
    return tuple(Congruence(algebra, p) for p in sorted(found, key=lambda p: p.rep))


def congruence_meet(theta: Congruence, other: Congruence) -> Congruence:
    _check_same_algebra(theta, other)
    return Congruence(theta.algebra, theta.partition.meet(other.partition))


def congruence_join(theta: Congruence, other: Congruence) -> Congruence:
    # transitive closure of the union is automatically operation-compatible
    _check_same_algebra(theta, other)
    return Congruence(theta.algebra, theta.partition.join(other.partition))


def permutes(theta: Congruence, other: Congruence) -> bool:
    _check_same_algebra(theta, other)
    return theta.partition.compose(other.partition) == other.partition.compose(theta.partition)


def solve_system(
    algebra: FiniteAlgebra, constraints: Sequence[tuple[Congruence, int]]
) -> list[int]:
    """All x with x ≡ x_i modulo θ_i for every constraint, in increasing order."""
    if not constraints:
        raise ValueError("constraint list must be nonempty")
    for theta, x in constraints:
        if theta.partition.n != algebra.size:
            raise NotACongruenceError("constraint congruence is over the wrong universe")
        if not (0 <= x < algebra.size):
            raise TableError(f"constraint element {x} outside the universe")
    return [
        x
        for x in range(algebra.size)
        if all(theta.same(x, xi) for theta, xi in constraints)
    ]


def is_factor_pair(theta: Congruence, other: Congruence) -> bool:
    """θ∩δ = Δ and θ∘δ = ∇: the pair splits the algebra as a direct product."""
    _check_same_algebra(theta, other)
    if not theta.partition.meet(other.partition).is_identity():
        return False
    return theta.partition.composes_to_universal(other.partition)


def factor_pairs(
    algebra: FiniteAlgebra, max_size: int = DEFAULT_SIZE_CAP
) -> tuple[tuple[Congruence, Congruence], ...]:
    """Every ordered complementary pair, always including (Δ,∇) and (∇,Δ)."""
    congs = all_congruences(algebra, max_size)
    out = []
    for theta in congs:
        for other in congs:
            if is_factor_pair(theta, other):
                out.append((theta, other))
    return tuple(out)


def _check_same_algebra(theta: Congruence, other: Congruence) -> None:
    if not structurally_equal(theta.algebra, other.algebra):
        raise NotACongruenceError("congruences belong to different algebras")


# ---------------------------------------------------------------------------
# congruences on binary products


def factorize_product_congruence(
    a: FiniteAlgebra, b: FiniteAlgebra, theta: Congruence
) -> Optional[tuple[Congruence, Congruence]]:
    """Split θ on A×B as δ1×δ2 when possible.

    δ1 and δ2 are the coordinate projections of θ; the split exists exactly
    when θ equals their product relation.
    """
    from .algebra import product, unpair_index

    prod = product(a, b)
    if not structurally_equal(theta.algebra, prod.algebra):
        raise NotACongruenceError("congruence is not over the product of the given algebras")
    n = prod.algebra.size
    rel1: set[tuple[int, int]] = set()
    rel2: set[tuple[int, int]] = set()
    for x in range(n):
        for y in range(n):
            if theta.same(x, y):
                xa, xb = unpair_index(x, b.size)
                ya, yb = unpair_index(y, b.size)
                rel1.add((xa, ya))
                rel2.add((xb, yb))
    p1 = Partition.from_pairs(a.size, rel1)
    p2 = Partition.from_pairs(b.size, rel2)
    if p1.as_pairs() != frozenset(rel1) or p2.as_pairs() != frozenset(rel2):
        return None
    for x in range(n):
        xa, xb = unpair_index(x, b.size)
        for y in range(n):
            ya, yb = unpair_index(y, b.size)
            if (p1.same(xa, ya) and p2.same(xb, yb)) != theta.same(x, y):
                return None
    return Congruence.from_partition(a, p1), Congruence.from_partition(b, p2)


def check_fhp_instance(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    """θ((x,y),(x',y')) = θ(x,x') × θ(y,y') for every pair of product elements."""
    from .algebra import pair_index, product

    prod = product(a, b).algebra
    theta_a = {}
    for x in range(a.size):
        for y in range(a.size):
            theta_a[(x, y)] = principal_congruence(a, [(x, y)]).partition
    theta_b = {}
    for x in range(b.size):
        for y in range(b.size):
            theta_b[(x, y)] = principal_congruence(b, [(x, y)]).partition
    for xa in range(a.size):
        for xb in range(b.size):
            for ya in range(a.size):
                for yb in range(b.size):
                    u = pair_index(xa, xb, b.size)
                    v = pair_index(ya, yb, b.size)
                    if u > v:
                        continue
                    left = principal_congruence(prod, [(u, v)]).partition
                    pa, pb = theta_a[(xa, ya)], theta_b[(xb, yb)]
                    for s in range(prod.size):
                        sa, sb = divmod(s, b.size)
                        for t in range(prod.size):
                            ta, tb = divmod(t, b.size)
                            if left.same(s, t) != (pa.same(sa, ta) and pb.same(sb, tb)):
                                return False
    return True
