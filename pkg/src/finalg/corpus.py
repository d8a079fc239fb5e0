"""Bundled test algebras: cyclic rings and small bounded lattices.

These are the desk-scale instances every analysis in the package is exercised
against: Z2, Z3, Z4, Z6, the 2-chain, the 2x2 and 2x2x2 Boolean lattices, and
the diamond M3 and pentagon N5.
"""

from __future__ import annotations

from typing import Sequence

from .algebra import FiniteAlgebra, Signature
from .errors import LatticeError
from .terms import App

RING_SIGNATURE = Signature(
    ops=(("+", 2), ("*", 2), ("-", 1), ("zero", 0), ("one", 0)),
    tuple_length=1,
    zero_terms=(App("zero"),),
    one_terms=(App("one"),),
)

LATTICE_SIGNATURE = Signature(
    ops=(("meet", 2), ("join", 2), ("bot", 0), ("top", 0)),
    tuple_length=1,
    zero_terms=(App("bot"),),
    one_terms=(App("top"),),
)


def cyclic_ring(n: int, name: str = "") -> FiniteAlgebra:
    """The ring of integers modulo n."""
    add = tuple((a + b) % n for a in range(n) for b in range(n))
    mul = tuple((a * b) % n for a in range(n) for b in range(n))
    neg = tuple((-a) % n for a in range(n))
    tables = {"+": add, "*": mul, "-": neg, "zero": (0,), "one": (1 % n,)}
    return FiniteAlgebra(RING_SIGNATURE, n, tables, name=name or f"z{n}")


def lattice_from_leq(leq: Sequence[Sequence[bool]], name: str = "") -> FiniteAlgebra:
    """Bounded lattice from an order matrix; meets and joins must exist."""
    n = len(leq)
    for i in range(n):
        if not leq[i][i]:
            raise LatticeError("order must be reflexive")
        for j in range(n):
            if leq[i][j] and leq[j][i] and i != j:
                raise LatticeError("order must be antisymmetric")
            for k in range(n):
                if leq[i][j] and leq[j][k] and not leq[i][k]:
                    raise LatticeError("order must be transitive")

    def glb(a: int, b: int) -> int:
        lowers = [x for x in range(n) if leq[x][a] and leq[x][b]]
        best = [x for x in lowers if all(leq[y][x] for y in lowers)]
        if len(best) != 1:
            raise LatticeError(f"no greatest lower bound for ({a},{b})")
        return best[0]

    def lub(a: int, b: int) -> int:
        uppers = [x for x in range(n) if leq[a][x] and leq[b][x]]
        best = [x for x in uppers if all(leq[x][y] for y in uppers)]
        if len(best) != 1:
            raise LatticeError(f"no least upper bound for ({a},{b})")
        return best[0]

    meet = tuple(glb(a, b) for a in range(n) for b in range(n))
    join = tuple(lub(a, b) for a in range(n) for b in range(n))
    bottoms = [x for x in range(n) if all(leq[x][y] for y in range(n))]
    tops = [x for x in range(n) if all(leq[y][x] for y in range(n))]
    if len(bottoms) != 1 or len(tops) != 1:
        raise LatticeError("lattice must be bounded")
    tables = {"meet": meet, "join": join, "bot": (bottoms[0],), "top": (tops[0],)}
    return FiniteAlgebra(LATTICE_SIGNATURE, n, tables, name=name)


def chain_lattice(n: int, name: str = "") -> FiniteAlgebra:
    leq = [[i <= j for j in range(n)] for i in range(n)]
    return lattice_from_leq(leq, name=name or f"chain{n}")


def boolean_lattice(k: int, name: str = "") -> FiniteAlgebra:
    """Powerset lattice 2^k on bitmask elements 0..2^k-1."""
    n = 1 << k
    leq = [[(i & j) == i for j in range(n)] for i in range(n)]
    return lattice_from_leq(leq, name=name or f"lat2^{k}")


def two_chain() -> FiniteAlgebra:
    return chain_lattice(2, name="lat2")


def square_lattice() -> FiniteAlgebra:
    return boolean_lattice(2, name="lat2x2")


def cube_lattice() -> FiniteAlgebra:
    return boolean_lattice(3, name="lat2x2x2")


def diamond_m3() -> FiniteAlgebra:
    # 0 < a,b,c < 1 with a,b,c pairwise incomparable; elements 0,a,b,c,1 -> 0..4
    leq = [[False] * 5 for _ in range(5)]
    for i in range(5):
        leq[i][i] = True
        leq[0][i] = True
        leq[i][4] = True
    return lattice_from_leq(leq, name="m3")


def pentagon_n5() -> FiniteAlgebra:
    # 0 < a < c < 1 and 0 < b < 1 with b incomparable to a and c; a,b,c -> 1,2,3
    leq = [[False] * 5 for _ in range(5)]
    for i in range(5):
        leq[i][i] = True
        leq[0][i] = True
        leq[i][4] = True
    leq[1][3] = True
    return lattice_from_leq(leq, name="n5")


def trivial_algebra(signature: Signature, name: str = "trivial") -> FiniteAlgebra:
    tables = {op: (0,) * (1**arity) for op, arity in signature.ops}
    return FiniteAlgebra(signature, 1, tables, name=name)


def ring_corpus() -> dict[str, FiniteAlgebra]:
    return {f"z{n}": cyclic_ring(n) for n in (2, 3, 4, 6)}


def lattice_corpus() -> dict[str, FiniteAlgebra]:
    return {
        "lat2": two_chain(),
        "lat2x2": square_lattice(),
        "m3": diamond_m3(),
        "n5": pentagon_n5(),
        "lat2x2x2": cube_lattice(),
    }


def full_corpus() -> dict[str, FiniteAlgebra]:
    out = ring_corpus()
    out.update(lattice_corpus())
    return out
