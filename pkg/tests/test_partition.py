import pytest
from hypothesis import given, strategies as st

from finalg.partition import Partition


def random_partition(n):
    return st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(
        lambda codes: Partition.from_pairs(n, [(i, codes[i]) for i in range(n)])
    )


def test_from_pairs_normal_form():
    p = Partition.from_pairs(6, [(1, 3), (3, 5)])
    assert p.rep == (0, 1, 2, 1, 4, 1)
    assert p.blocks() == ((0,), (1, 3, 5), (2,), (4,))
    assert p.format_blocks() == "{0},{1,3,5},{2},{4}"


def test_bounds():
    assert Partition.identity(4).block_count() == 4
    assert Partition.universal(4).block_count() == 1
    assert Partition.identity(4).refines(Partition.universal(4))


def test_meet_join_concrete():
    mod2 = Partition.from_pairs(6, [(0, 2), (2, 4), (1, 3), (3, 5)])
    mod3 = Partition.from_pairs(6, [(0, 3), (1, 4), (2, 5)])
    assert mod2.meet(mod3).is_identity()
    assert mod2.join(mod3).is_universal()


def test_composition():
    mod2 = Partition.from_pairs(6, [(0, 2), (2, 4), (1, 3), (3, 5)])
    mod3 = Partition.from_pairs(6, [(0, 3), (1, 4), (2, 5)])
    assert mod2.composes_to_universal(mod3)
    assert mod2.compose(mod3) == mod3.compose(mod2)
    ident = Partition.identity(6)
    assert ident.compose(mod2) == mod2.as_pairs()


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(random_partition(n), random_partition(n))))
def test_meet_join_laws(pq):
    p, q = pq
    assert p.meet(q) == q.meet(p)
    assert p.join(q) == q.join(p)
    assert p.meet(p) == p and p.join(p) == p
    assert p.meet(p.join(q)) == p
    assert p.join(p.meet(q)) == p
    assert p.meet(q).refines(p)
    assert p.refines(p.join(q))


@given(
    st.integers(2, 5).flatmap(
        lambda n: st.tuples(random_partition(n), random_partition(n), random_partition(n))
    )
)
def test_associativity(pqr):
    p, q, r = pqr
    assert p.meet(q.meet(r)) == p.meet(q).meet(r)
    assert p.join(q.join(r)) == p.join(q).join(r)


def test_mismatched_sizes_rejected():
    with pytest.raises(ValueError):
        Partition.identity(3).meet(Partition.identity(4))
