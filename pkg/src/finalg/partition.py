"""Set partitions of {0..n-1} in least-representative normal form.

A partition is stored as a representative array where ``rep[i]`` is the least
element of the block containing ``i``.  All lattice operations (refinement,
meet, join) and the relational operations needed for factor-congruence work
(composition, permutability) are decided from representative arrays alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def _canonical(rep: Sequence[int]) -> tuple[int, ...]:
    # rewrite an arbitrary root array so each block is named by its least member
    n = len(rep)
    least: dict[int, int] = {}
    for i in range(n):
        r = rep[i]
        if r not in least or i < least[r]:
            least[r] = min(i, least.get(r, i))
    return tuple(least[rep[i]] for i in range(n))


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def to_rep(self) -> tuple[int, ...]:
        return _canonical([self.find(i) for i in range(len(self.parent))])


@dataclass(frozen=True)
class Partition:
    n: int
    rep: tuple[int, ...]

    def __post_init__(self):
        if len(self.rep) != self.n:
            raise ValueError("representative array has wrong length")
        for i, r in enumerate(self.rep):
            if not (0 <= r <= i) or self.rep[r] != r:
                raise ValueError("representative array is not in least-representative form")

    @staticmethod
    def identity(n: int) -> "Partition":
        return Partition(n, tuple(range(n)))

    @staticmethod
    def universal(n: int) -> "Partition":
        return Partition(n, (0,) * n)

    @staticmethod
    def from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        uf = _UnionFind(n)
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"pair ({a},{b}) out of range for universe of size {n}")
            uf.union(a, b)
        return Partition(n, uf.to_rep())

    @staticmethod
    def from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        pairs = []
        for block in blocks:
            block = list(block)
            pairs.extend((block[0], b) for b in block[1:])
        return Partition.from_pairs(n, pairs)

    def same(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        by_rep: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            by_rep.setdefault(r, []).append(i)
        return tuple(tuple(by_rep[r]) for r in sorted(by_rep))

    def block_of(self, a: int) -> tuple[int, ...]:
        r = self.rep[a]
        return tuple(i for i in range(self.n) if self.rep[i] == r)

    def block_count(self) -> int:
        return len(set(self.rep))

    def is_identity(self) -> bool:
        return self.rep == tuple(range(self.n))

    def is_universal(self) -> bool:
        return self.block_count() <= 1

    def refines(self, other: "Partition") -> bool:
        """True when every block of self is contained in a block of other."""
        self._check_size(other)
        return all(other.rep[i] == other.rep[self.rep[i]] for i in range(self.n))

    def meet(self, other: "Partition") -> "Partition":
        self._check_size(other)
        seen: dict[tuple[int, int], int] = {}
        rep = []
        for i in range(self.n):
            key = (self.rep[i], other.rep[i])
            rep.append(seen.setdefault(key, i))
        return Partition(self.n, _canonical(rep))

    def join(self, other: "Partition") -> "Partition":
        self._check_size(other)
        uf = _UnionFind(self.n)
        for i in range(self.n):
            uf.union(i, self.rep[i])
            uf.union(i, other.rep[i])
        return Partition(self.n, uf.to_rep())

    def compose(self, other: "Partition") -> frozenset[tuple[int, int]]:
        """Relational composition self∘other = {(x,z) : ∃y, x self y and y other z}."""
        self._check_size(other)
        out = set()
        for x in range(self.n):
            for y in range(self.n):
                if self.rep[x] == self.rep[y]:
                    ry = other.rep[y]
                    out.update((x, z) for z in range(self.n) if other.rep[z] == ry)
        return frozenset(out)

    def composes_to_universal(self, other: "Partition") -> bool:
        """True iff self∘other relates every pair of elements."""
        self._check_size(other)
        for x_rep in set(self.rep):
            reached = set()
            for y in range(self.n):
                if self.rep[y] == x_rep:
                    reached.add(other.rep[y])
            covered = sum(1 for z in range(self.n) if other.rep[z] in reached)
            if covered != self.n:
                return False
        return True

    def as_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (a, b) for a in range(self.n) for b in range(self.n) if self.rep[a] == self.rep[b]
        )

    def format_blocks(self) -> str:
        return ",".join("{" + ",".join(str(i) for i in block) + "}" for block in self.blocks())

    def _check_size(self, other: "Partition") -> None:
        if self.n != other.n:
            raise ValueError("partitions are over different universes")

    def __le__(self, other: "Partition") -> bool:
        return self.refines(other)

    def __str__(self) -> str:
        return self.format_blocks()
