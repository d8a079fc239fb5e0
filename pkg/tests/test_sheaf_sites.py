import pytest

from finalg.corpus import chain_lattice, cube_lattice, square_lattice
from finalg.errors import LatticeError, SheafError
from finalg.pierce import (
    FiniteLatticeSite,
    build_pierce,
    check_representation,
    constant_representation,
    partition_object,
    pierce_representation,
    sheaf_coproduct,
    terminal_sheaf,
)


def site_of(lattice):
    return FiniteLatticeSite.from_algebra(lattice)


@pytest.fixture(scope="module")
def chain2():
    return site_of(chain_lattice(2))


@pytest.fixture(scope="module")
def chain3():
    return site_of(chain_lattice(3))


@pytest.fixture(scope="module")
def square_site():
    return site_of(square_lattice())


@pytest.fixture(scope="module")
def cube_site():
    return site_of(cube_lattice())


class TestSites:
    def test_bounds(self, chain3):
        assert chain3.bottom == 0 and chain3.top == 2

    def test_nondistributive_rejected(self, m3):
        with pytest.raises(LatticeError):
            FiniteLatticeSite.from_algebra(m3)

    def test_complemented_below(self, square_site):
        assert square_site.complemented_below(3) == [0, 1, 2, 3]
        assert square_site.complemented_below(1) == [0, 1]

    def test_from_center(self, z6):
        from finalg.center import center_algebra

        site = FiniteLatticeSite.from_center(center_algebra(z6))
        assert site.size == 4
        assert site.complemented_below(site.top) == [0, 1, 2, 3]


class TestSetSheaves:
    def test_terminal_is_sheaf(self, chain3):
        assert terminal_sheaf(chain3).is_sheaf()

    def test_partition_object_two_chain(self, chain2):
        po = partition_object(chain2)
        assert set(po.section(chain2.top)) == {(1, 0), (0, 1)}
        assert len(po.section(chain2.bottom)) == 1

    def test_partition_object_square(self, square_site):
        po = partition_object(square_site)
        assert len(po.section(square_site.top)) == 4

    @pytest.mark.parametrize("make", [
        lambda: chain_lattice(2), lambda: chain_lattice(3),
        square_lattice, cube_lattice,
    ])
    def test_partition_sizes_match_interval_centers(self, make):
        site = site_of(make())
        po = partition_object(site)
        for d in range(site.size):
            assert len(po.section(d)) == len(site.complemented_below(d))

    def test_partition_object_is_sheaf(self, cube_site):
        assert partition_object(cube_site).is_sheaf()

    def test_partition_naturality(self, cube_site):
        # the canonical bijection (a,b) -> a commutes with restriction
        site = cube_site
        po = partition_object(site)
        for d in range(site.size):
            for c in range(site.size):
                if not site.leq(c, d):
                    continue
                for (a, b) in po.section(d):
                    ra, rb = po.restrict(d, c, (a, b))
                    assert ra == site.meet(a, c) and rb == site.meet(b, c)

    def test_coproduct_sizes(self, chain2):
        one = terminal_sheaf(chain2)
        po = partition_object(chain2)
        cop = sheaf_coproduct(chain2, one, po)
        assert cop.is_sheaf()
        # over top: (a,b) with a|b = top, a&b = bot; sections multiply
        assert len(cop.section(chain2.top)) == len(po.section(chain2.bottom)) + len(
            po.section(chain2.top)
        )

    def test_nonsheaf_input_rejected(self, square_site):
        # doubled top section: the cover by the two atoms has two amalgams
        from finalg.pierce import SetSheaf

        site = square_site
        sections = [("*",)] * site.size
        sections[site.top] = ("s", "t")
        restrictions = {}
        for d in range(site.size):
            for c in range(site.size):
                if not site.leq(c, d):
                    continue
                restrictions[(d, c)] = {
                    x: (x if c == d else "*") for x in sections[d]
                }
        broken = SetSheaf(site, tuple(sections), restrictions)
        broken.validate_presheaf()
        assert broken.gluing_failure() is not None
        with pytest.raises(SheafError):
            sheaf_coproduct(site, broken, terminal_sheaf(site))


class TestRepresentations:
    def test_pierce_of_z6_accepted(self, z6):
        rep = pierce_representation(build_pierce(z6))
        assert check_representation(rep)

    def test_pierce_accepted_everywhere(self, corpus):
        for algebra in corpus.values():
            rep = pierce_representation(build_pierce(algebra))
            result = check_representation(rep)
            assert result.ok, (algebra.name, result.failures)

    def test_constant_connected_accepted(self, chain2, m3):
        rep = constant_representation(chain2, m3)
        assert check_representation(rep)

    def test_constant_z6_rejected(self, chain2, z6):
        rep = constant_representation(chain2, z6)
        result = check_representation(rep)
        assert not result.ok
        assert result.failures

    def test_trivial_section_above_bottom_rejected(self, chain3, m3):
        from finalg.algebra import Homomorphism, quotient
        from finalg.congruence import nabla
        from finalg.pierce import AlgebraSheaf

        triv = quotient(m3, nabla(m3))
        collapse = Homomorphism(m3, triv.algebra, triv.canonical.mapping)
        ident = Homomorphism.identity(triv.algebra)
        sheaf = AlgebraSheaf(
            chain3,
            (triv.algebra, triv.algebra, m3),
            {
                (0, 0): ident, (1, 1): ident, (2, 2): Homomorphism.identity(m3),
                (1, 0): ident, (2, 0): collapse, (2, 1): collapse,
            },
        )
        result = check_representation(sheaf)
        assert not result.ok
        assert any("trivial section" in f for f in result.failures)
