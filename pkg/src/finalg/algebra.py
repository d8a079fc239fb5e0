"""Finite algebras as operation tables.

An algebra is a universe {0..n-1} plus one table per operation symbol of its
signature.  The signature designates two tuples of closed terms whose values
serve as the algebra's zero tuple and one tuple; the decomposition machinery
in the rest of the package is phrased entirely in terms of those two tuples.

Everything here is immutable after construction and all operations are pure,
so concurrent use needs no locking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    NotACongruenceError,
    NotAHomomorphismError,
    SignatureError,
    SignatureMismatchError,
    SizeCapExceededError,
    TableError,
    UnboundVariableError,
)
from .partition import Partition
from .terms import App, Term, Var, format_term, free_vars


@dataclass(frozen=True)
class Signature:
    """Operation symbols with arities, plus the designated zero/one term tuples.

    ``tuple_length`` is the common length k of the zero and one tuples; all
    central elements of algebras over this signature are k-tuples.
    """

    ops: tuple[tuple[str, int], ...]
    tuple_length: int
    zero_terms: tuple[Term, ...]
    one_terms: tuple[Term, ...]

    def __post_init__(self):
        names = [name for name, _ in self.ops]
        if len(set(names)) != len(names):
            raise SignatureError("operation names must be pairwise distinct")
        for name, arity in self.ops:
            if not name:
                raise SignatureError("operation names must be nonempty")
            if arity < 0:
                raise SignatureError(f"operation {name!r} has negative arity")
        if self.tuple_length < 1:
            raise SignatureError("tuple_length must be positive")
        for label, terms in (("zero", self.zero_terms), ("one", self.one_terms)):
            if len(terms) != self.tuple_length:
                raise SignatureError(f"{label} tuple must have {self.tuple_length} terms")
            for t in terms:
                self.check_term(t)
                if free_vars(t):
                    raise SignatureError(f"{label} term {format_term(t)} is not closed")

    def arity(self, name: str) -> int:
        for op, arity in self.ops:
            if op == name:
                return arity
        raise SignatureError(f"unknown operation symbol {name!r}")

    def has_op(self, name: str) -> bool:
        return any(op == name for op, _ in self.ops)

    def check_term(self, term: Term) -> None:
        """Raise if the term misuses a symbol of this signature."""
        if isinstance(term, Var):
            return
        if not self.has_op(term.op):
            raise SignatureError(f"unknown operation symbol {term.op!r}")
        if len(term.args) != self.arity(term.op):
            raise SignatureError(
                f"operation {term.op!r} expects {self.arity(term.op)} arguments, "
                f"got {len(term.args)}"
            )
        for a in term.args:
            self.check_term(a)


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    """Operation tables over {0..size-1}.

    Tables are flattened row-major with the last argument varying fastest, so
    ``tables[f][a1*n**(m-1) + ... + am]`` is the value of f(a1,..,am).
    """

    signature: Signature
    size: int
    tables: dict[str, tuple[int, ...]]
    name: str = ""
    zero_tuple: tuple[int, ...] = field(init=False)
    one_tuple: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if self.size < 1:
            raise TableError("universe must be nonempty")
        declared = {name for name, _ in self.signature.ops}
        if set(self.tables) != declared:
            raise TableError("tables must cover exactly the declared operation symbols")
        for op, arity in self.signature.ops:
            table = self.tables[op]
            if len(table) != self.size**arity:
                raise TableError(
                    f"table for {op!r} has {len(table)} entries, expected {self.size**arity}"
                )
            for v in table:
                if not (0 <= v < self.size):
                    raise TableError(f"table entry {v} for {op!r} is outside the universe")
        object.__setattr__(
            self, "zero_tuple", tuple(eval_term(self, t, {}) for t in self.signature.zero_terms)
        )
        object.__setattr__(
            self, "one_tuple", tuple(eval_term(self, t, {}) for t in self.signature.one_terms)
        )

    def op_value(self, op: str, args: Sequence[int]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.tables[op][idx]

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @property
    def degenerate_constants(self) -> bool:
        """Nontrivial algebra whose zero and one tuples coincide.

        Such algebras load fine but the center machinery refuses them: every
        center analysis presupposes distinct zero and one tuples.
        """
        return self.size > 1 and self.zero_tuple == self.one_tuple

    def elements(self) -> range:
        return range(self.size)

    def __repr__(self) -> str:
        label = self.name or "algebra"
        return f"<{label}: {self.size} elements, {len(self.tables)} ops>"


def structurally_equal(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return a is b or (a.signature == b.signature and a.size == b.size and a.tables == b.tables)


def eval_term(algebra: FiniteAlgebra, term: Term, env: dict[str, int]) -> int:
    """Bottom-up table evaluation of a term under a variable environment."""
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise UnboundVariableError(f"variable {term.name!r} is not bound") from None
    algebra.signature.check_term(App(term.op, term.args))
    args = [eval_term(algebra, a, env) for a in term.args]
    return algebra.op_value(term.op, args)


# ---------------------------------------------------------------------------
# homomorphisms


def homomorphism_violation(
    source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]
) -> Optional[tuple[str, tuple[int, ...]]]:
    """First (operation, argument tuple) where the map breaks commutation, else None."""
    if source.signature != target.signature:
        raise SignatureMismatchError("source and target have different signatures")
    if len(mapping) != source.size:
        raise NotAHomomorphismError("map is not total on the source universe")
    for v in mapping:
        if not (0 <= v < target.size):
            raise NotAHomomorphismError(f"map value {v} outside the target universe")
    for op, arity in source.signature.ops:
        for args in itertools.product(range(source.size), repeat=arity):
            image = mapping[source.op_value(op, args)]
            mapped = target.op_value(op, [mapping[a] for a in args])
            if image != mapped:
                return op, args
    return None


def is_homomorphism(source: FiniteAlgebra, target: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    return homomorphism_violation(source, target, mapping) is None


@dataclass(frozen=True, eq=False)
class Homomorphism:
    """A total map between algebras, validated against every operation table."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]

    def __post_init__(self):
        witness = homomorphism_violation(self.source, self.target, self.mapping)
        if witness is not None:
            op, args = witness
            raise NotAHomomorphismError(
                f"map violates {op} at arguments {args}", op=op, args=args
            )

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def image_tuple(self, xs: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.mapping[x] for x in xs)

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """self ∘ first (apply ``first``, then self)."""
        if first.target is not self.source and not structurally_equal(first.target, self.source):
            raise SignatureMismatchError("composition endpoints do not match")
        return Homomorphism(
            first.source, self.target, tuple(self.mapping[v] for v in first.mapping)
        )

    def kernel(self) -> Partition:
        return Partition.from_pairs(
            self.source.size,
            (
                (a, b)
                for a in range(self.source.size)
                for b in range(a + 1, self.source.size)
                if self.mapping[a] == self.mapping[b]
            ),
        )

    @property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.source.size

    @property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.target.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective:
            raise NotAHomomorphismError("only bijections can be inverted")
        inv = [0] * self.target.size
        for a, b in enumerate(self.mapping):
            inv[b] = a
        return Homomorphism(self.target, self.source, tuple(inv))

    @staticmethod
    def identity(algebra: FiniteAlgebra) -> "Homomorphism":
        return Homomorphism(algebra, algebra, tuple(range(algebra.size)))


# ---------------------------------------------------------------------------
# products and quotients


def pair_index(a: int, b: int, b_size: int) -> int:
    return a * b_size + b


def unpair_index(x: int, b_size: int) -> tuple[int, int]:
    return divmod(x, b_size)


@dataclass(frozen=True, eq=False)
class Product:
    algebra: FiniteAlgebra
    left: Homomorphism
    right: Homomorphism


def product(a: FiniteAlgebra, b: FiniteAlgebra) -> Product:
    """Componentwise product on universe {0..|A||B|-1}, (x,y) encoded as x*|B|+y."""
    if a.signature != b.signature:
        raise SignatureMismatchError("product factors must share a signature")
    n = a.size * b.size
    tables = {}
    for op, arity in a.signature.ops:
        table = []
        for args in itertools.product(range(n), repeat=arity):
            decoded = [unpair_index(x, b.size) for x in args]
            va = a.op_value(op, [d[0] for d in decoded])
            vb = b.op_value(op, [d[1] for d in decoded])
            table.append(pair_index(va, vb, b.size))
        tables[op] = tuple(table)
    name = f"{a.name or 'A'}x{b.name or 'B'}"
    prod = FiniteAlgebra(a.signature, n, tables, name=name)
    left = Homomorphism(prod, a, tuple(unpair_index(x, b.size)[0] for x in range(n)))
    right = Homomorphism(prod, b, tuple(unpair_index(x, b.size)[1] for x in range(n)))
    return Product(prod, left, right)


def is_compatible_partition(algebra: FiniteAlgebra, part: Partition) -> bool:
    """Compatibility with every operation, checked one argument slot at a time.

    Single-slot substitution suffices: a multi-slot change decomposes into a
    chain of single-slot changes, and partitions are transitive.
    """
    if part.n != algebra.size:
        return False
    n = algebra.size
    blocks = part.blocks()
    for op, arity in algebra.signature.ops:
        if arity == 0:
            continue
        for pos in range(arity):
            for context in itertools.product(range(n), repeat=arity - 1):
                for block in blocks:
                    if len(block) == 1:
                        continue
                    base = block[0]
                    args = list(context[:pos]) + [base] + list(context[pos:])
                    image = part.rep[algebra.op_value(op, args)]
                    for other in block[1:]:
                        args[pos] = other
                        if part.rep[algebra.op_value(op, args)] != image:
                            return False
    return True


@dataclass(frozen=True, eq=False)
class Quotient:
    algebra: FiniteAlgebra
    canonical: Homomorphism
    partition: Partition


def quotient(algebra: FiniteAlgebra, theta) -> Quotient:
    """Quotient algebra with blocks indexed by increasing least representative.

    ``theta`` may be a Congruence or a raw Partition; raw partitions are
    checked for operation compatibility first.
    """
    part: Partition = getattr(theta, "partition", theta)
    already_checked = hasattr(theta, "partition")
    if not already_checked and not is_compatible_partition(algebra, part):
        raise NotACongruenceError("partition is not compatible with the operations")
    if part.n != algebra.size:
        raise NotACongruenceError("partition is over the wrong universe")
    reps = sorted(set(part.rep))
    index_of_rep = {r: i for i, r in enumerate(reps)}
    elem_block = [index_of_rep[part.rep[x]] for x in range(algebra.size)]
    m = len(reps)
    tables = {}
    for op, arity in algebra.signature.ops:
        table = []
        for args in itertools.product(range(m), repeat=arity):
            value = algebra.op_value(op, [reps[i] for i in args])
            table.append(elem_block[value])
        tables[op] = tuple(table)
    name = f"{algebra.name or 'A'}/~" if algebra.name else ""
    quot = FiniteAlgebra(algebra.signature, m, tables, name=name)
    canonical = Homomorphism(algebra, quot, tuple(elem_block))
    return Quotient(quot, canonical, part)


# ---------------------------------------------------------------------------
# isomorphism search


def _element_profile(algebra: FiniteAlgebra, x: int) -> tuple:
    """Cheap isomorphism-invariant fingerprint used to prune the search."""
    feats = []
    for op, arity in algebra.signature.ops:
        table = algebra.tables[op]
        feats.append(sum(1 for v in table if v == x))
        if arity >= 1:
            seen = {}
            cur, step = x, 0
            while cur not in seen:
                seen[cur] = step
                cur = algebra.op_value(op, [cur] * arity)
                step += 1
            feats.append((step - seen[cur], seen[cur]))
    feats.append(tuple(i for i, z in enumerate(algebra.zero_tuple) if z == x))
    feats.append(tuple(i for i, z in enumerate(algebra.one_tuple) if z == x))
    return tuple(feats)


def find_isomorphism(
    a: FiniteAlgebra, b: FiniteAlgebra, max_size: Optional[int] = None
) -> Optional[Homomorphism]:
    """Backtracking isomorphism search with invariant pruning.

    Candidates are tried in increasing element order, constants pinned first,
    so the returned isomorphism is deterministic.
    """
    if a.signature != b.signature:
        raise SignatureMismatchError("isomorphic algebras must share a signature")
    if a.size != b.size:
        return None
    if max_size is not None and a.size > max_size:
        raise SizeCapExceededError(f"isomorphism search capped at size {max_size}")
    n = a.size
    prof_a = [_element_profile(a, x) for x in range(n)]
    prof_b = [_element_profile(b, x) for x in range(n)]
    if sorted(prof_a) != sorted(prof_b):
        return None

    mapping: list[Optional[int]] = [None] * n
    used = [False] * n
    # constants must map to the matching constants
    forced = list(zip(a.zero_tuple, b.zero_tuple)) + list(zip(a.one_tuple, b.one_tuple))
    for op, arity in a.signature.ops:
        if arity == 0:
            forced.append((a.op_value(op, []), b.op_value(op, [])))
    for x, y in forced:
        if mapping[x] is None:
            if used[y] or prof_a[x] != prof_b[y]:
                return None
            mapping[x] = y
            used[y] = True
        elif mapping[x] != y:
            return None

    ops = a.signature.ops

    def consistent(x: int) -> bool:
        # check every fully-mapped constraint that involves x
        for op, arity in ops:
            if arity == 0:
                continue
            for args in itertools.product(range(n), repeat=arity):
                if x not in args:
                    continue
                imgs = [mapping[v] for v in args]
                if any(v is None for v in imgs):
                    continue
                out = mapping[a.op_value(op, args)]
                if out is None:
                    continue
                if b.op_value(op, imgs) != out:
                    return False
        return True

    def backtrack(x: int) -> bool:
        while x < n and mapping[x] is not None:
            x += 1
        if x == n:
            return True
        for y in range(n):
            if used[y] or prof_a[x] != prof_b[y]:
                continue
            mapping[x] = y
            used[y] = True
            if consistent(x) and backtrack(x + 1):
                return True
            mapping[x] = None
            used[y] = False
        return False

    for x in range(n):
        if mapping[x] is not None and not consistent(x):
            return None
    if not backtrack(0):
        return None
    return Homomorphism(a, b, tuple(mapping))  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# subuniverses and pushouts


def subuniverse_generate(algebra: FiniteAlgebra, seed: Iterable[int]) -> frozenset[int]:
    """Least subset containing the seed and all constants, closed under every operation."""
    current = set(seed)
    for x in current:
        if not (0 <= x < algebra.size):
            raise TableError(f"seed element {x} outside the universe")
    for op, arity in algebra.signature.ops:
        if arity == 0:
            current.add(algebra.op_value(op, []))
    changed = True
    while changed:
        changed = False
        for op, arity in algebra.signature.ops:
            if arity == 0:
                continue
            for args in itertools.product(sorted(current), repeat=arity):
                v = algebra.op_value(op, args)
                if v not in current:
                    current.add(v)
                    changed = True
    return frozenset(current)


@dataclass(frozen=True, eq=False)
class PushoutResult:
    """B/θ(f(S)) with its canonical map and the mediating map from A/θ(S)."""

    algebra: FiniteAlgebra
    canonical: Homomorphism
    induced: Homomorphism

    @property
    def source_quotient(self) -> FiniteAlgebra:
        return self.induced.source


def pushout_of_quotients(f: Homomorphism, pairs: Sequence[tuple[int, int]]) -> PushoutResult:
    """Push the quotient A↠A/θ(S) along f, giving B↠B/θ(f(S)).

    Returns the target quotient, its canonical map, and the induced map
    A/θ(S) → B/θ(f(S)); the square ν∘f = induced∘ν is verified.
    """
    from .congruence import principal_congruence

    a, b = f.source, f.target
    for x, y in pairs:
        if not (0 <= x < a.size and 0 <= y < a.size):
            raise TableError(f"pair ({x},{y}) outside the source universe")
    theta_a = principal_congruence(a, pairs)
    image_pairs = [(f(x), f(y)) for x, y in pairs]
    theta_b = principal_congruence(b, image_pairs)
    qa = quotient(a, theta_a)
    qb = quotient(b, theta_b)
    # the induced map sends the block of x to the block of f(x); well-definedness
    # amounts to θ(S) refining the pullback of θ(f(S)), which the congruence
    # generated on the image always grants — checked here anyway
    induced_map = [0] * qa.algebra.size
    seen = [False] * qa.algebra.size
    for x in range(a.size):
        blk = qa.canonical(x)
        img = qb.canonical(f(x))
        if seen[blk] and induced_map[blk] != img:
            raise NotAHomomorphismError("induced quotient map is not well-defined")
        induced_map[blk] = img
        seen[blk] = True
    induced = Homomorphism(qa.algebra, qb.algebra, tuple(induced_map))
    for x in range(a.size):
        if qb.canonical(f(x)) != induced(qa.canonical(x)):
            raise NotAHomomorphismError("pushout square does not commute")
    return PushoutResult(qb.algebra, qb.canonical, induced)
