"""Exhaustive small-universe oracles.

Brute-force enumeration of all partitions of a small universe, filtered by
operation compatibility.  These are deliberately independent of the fast
closure algorithms in :mod:`finalg.congruence`: tests and the ``--oracle``
command line flag cross-check the two routes against each other.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .algebra import FiniteAlgebra, is_compatible_partition
from .errors import SizeCapExceededError
from .partition import Partition

ORACLE_SIZE_CAP = 9


def all_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {0..n-1}, via restricted growth strings."""
    if n == 0:
        return
    code = [0] * n

    def rec(i: int, maxcode: int):
        if i == n:
            yield Partition(n, _code_to_rep(code))
            return
        for c in range(maxcode + 2):
            code[i] = c
            yield from rec(i + 1, max(maxcode, c))

    yield from rec(1, 0)


def _code_to_rep(code: Sequence[int]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    rep = []
    for i, c in enumerate(code):
        rep.append(first.setdefault(c, i))
    return tuple(rep)


def brute_force_congruences(algebra: FiniteAlgebra) -> list[Partition]:
    """All operation-compatible partitions, in lexicographic representative order."""
    if algebra.size > ORACLE_SIZE_CAP:
        raise SizeCapExceededError(
            f"exhaustive oracle capped at {ORACLE_SIZE_CAP} elements"
        )
    found = [p for p in all_partitions(algebra.size) if is_compatible_partition(algebra, p)]
    return sorted(found, key=lambda p: p.rep)


def brute_force_principal(
    algebra: FiniteAlgebra,
    pairs: Sequence[tuple[int, int]],
    congruences: Sequence[Partition] | None = None,
) -> Partition:
    """Finest compatible partition containing the pairs: the intersection of
    all congruences that contain them.

    Pass a precomputed ``brute_force_congruences`` list to amortize the
    enumeration over many principal-congruence queries.
    """
    if congruences is None:
        congruences = brute_force_congruences(algebra)
    result = Partition.universal(algebra.size)
    for cong in congruences:
        if all(cong.same(a, b) for a, b in pairs):
            result = result.meet(cong)
    return result
