import itertools

import pytest

from finalg.algebra import FiniteAlgebra, Homomorphism, Signature, product, quotient
from finalg.center import (
    are_complementary_centrals,
    center_algebra,
    central_elements,
    check_center_axioms,
    check_codisjoint,
    check_product_stability,
    hom_center_check,
    lift_central,
)
from finalg.congruence import all_congruences, delta, factor_pairs, nabla
from finalg.corpus import cyclic_ring, trivial_algebra, RING_SIGNATURE
from finalg.errors import DegenerateConstantsError, DPViolationError
from finalg.terms import App


class TestCentralElements:
    def test_z6(self, z6):
        assert [e.tuple for e in central_elements(z6)] == [(0,), (1,), (3,), (4,)]

    def test_m3_trivial_center(self, m3):
        assert [e.tuple for e in central_elements(m3)] == [(0,), (4,)]

    def test_square_lattice_full(self, lat2x2):
        assert [e.tuple for e in central_elements(lat2x2)] == [(0,), (1,), (2,), (3,)]

    def test_constants_always_central(self, corpus):
        for algebra in corpus.values():
            tuples = {e.tuple for e in central_elements(algebra)}
            assert algebra.zero_tuple in tuples and algebra.one_tuple in tuples
            zero = next(e for e in central_elements(algebra) if e.tuple == algebra.zero_tuple)
            assert zero.theta0.is_identity() and zero.theta1.is_universal()

    def test_degenerate_refused(self):
        sig = Signature((("c", 0), ("f", 1)), 1, (App("c"),), (App("c"),))
        alg = FiniteAlgebra(sig, 2, {"c": (0,), "f": (0, 1)})
        with pytest.raises(DegenerateConstantsError):
            central_elements(alg)

    def test_trivial_algebra_refused(self):
        with pytest.raises(DegenerateConstantsError):
            central_elements(trivial_algebra(RING_SIGNATURE))

    def test_bijection_with_factor_pairs(self, corpus):
        # the pair (theta0, theta1) determines the tuple and vice versa
        for algebra in corpus.values():
            elements = central_elements(algebra)
            pairs = factor_pairs(algebra)
            assert len(elements) == len(pairs)
            seen = set()
            for e in elements:
                key = (e.theta0.partition.rep, e.theta1.partition.rep)
                assert key not in seen
                seen.add(key)
            assert seen == {
                (t.partition.rep, d.partition.rep) for t, d in pairs
            }

    def test_round_trip_through_pairs(self, corpus):
        # tuple -> pair -> tuple is the identity (both composites of the bijection)
        from finalg.congruence import solve_system

        for algebra in corpus.values():
            for e in central_elements(algebra):
                rebuilt = []
                for i in range(algebra.signature.tuple_length):
                    sols = solve_system(
                        algebra,
                        [(e.theta0, algebra.zero_tuple[i]), (e.theta1, algebra.one_tuple[i])],
                    )
                    assert len(sols) == 1
                    rebuilt.append(sols[0])
                assert tuple(rebuilt) == e.tuple


class TestCenterAlgebra:
    def test_z6_boolean_structure(self, z6):
        c = center_algebra(z6)
        i3, i4 = c.index_of((3,)), c.index_of((4,))
        assert c.elements[c.complement(i3)].tuple == (4,)
        assert c.elements[c.meet(i3, i4)].tuple == (0,)
        assert c.elements[c.join(i3, i4)].tuple == (1,)
        assert [c.elements[i].tuple for i in c.atoms()] == [(3,), (4,)]

    def test_complement_of_bottom(self, corpus):
        for algebra in corpus.values():
            c = center_algebra(algebra)
            assert c.complement(c.bottom) == c.top

    def test_square_lattice_atoms(self, lat2x2):
        c = center_algebra(lat2x2)
        atoms = {c.elements[i].tuple for i in c.atoms()}
        assert atoms == {(1,), (2,)}
        a = c.index_of((1,))
        assert c.elements[c.complement(a)].tuple == (2,)

    def test_boolean_laws_everywhere(self, corpus):
        for algebra in corpus.values():
            assert center_algebra(algebra).validate_boolean_laws() == []

    def test_order_characterizations_agree(self, corpus):
        # e <= f via meet table, theta0 inclusion, and reversed theta1 inclusion
        for algebra in corpus.values():
            c = center_algebra(algebra)
            for i, j in itertools.product(range(c.size), repeat=2):
                by_meet = c.meet(i, j) == i
                by_theta0 = c.elements[i].theta0.partition.refines(
                    c.elements[j].theta0.partition
                )
                by_theta1 = c.elements[j].theta1.partition.refines(
                    c.elements[i].theta1.partition
                )
                assert by_meet == by_theta0 == by_theta1

    def test_meet_maps_to_join_of_theta1(self, corpus):
        # the center-to-congruence map swaps meets and joins (anti-isomorphism)
        from finalg.congruence import congruence_join, congruence_meet

        for algebra in corpus.values():
            c = center_algebra(algebra)
            for i, j in itertools.product(range(c.size), repeat=2):
                meet_elem = c.elements[c.meet(i, j)]
                assert meet_elem.theta1 == congruence_join(
                    c.elements[i].theta1, c.elements[j].theta1
                )
                join_elem = c.elements[c.join(i, j)]
                assert join_elem.theta1 == congruence_meet(
                    c.elements[i].theta1, c.elements[j].theta1
                )


class TestCenterAxioms:
    @pytest.mark.parametrize("name", ["z2", "z3", "z4", "z6", "lat2", "lat2x2", "m3", "n5"])
    def test_all_pass(self, corpus, name):
        records = check_center_axioms(corpus[name])
        failed = [r.name for r in records if not r.passed]
        assert failed == []

    def test_theta_1_at_top_is_identity(self, z6):
        c = center_algebra(z6)
        assert c.elements[c.top].theta1.is_identity()


class TestHomCenter:
    def test_inclusion_into_m3_breaks_sc(self, lat2x2, m3):
        inc = Homomorphism(lat2x2, m3, (0, 1, 2, 4))
        report = hom_center_check(inc)
        assert not report.sc and not report.csc
        assert report.sc_witness in {(1,), (2,)}
        assert report.boolean_hom is None

    def test_mod3_preserves_everything(self, z6, z3):
        f = Homomorphism(z6, z3, tuple(x % 3 for x in range(6)))
        report = hom_center_check(f)
        assert report.sc and report.csc and report.boolean_hom

    def test_identity_all_true(self, z6):
        report = hom_center_check(Homomorphism.identity(z6))
        assert report.sc and report.csc and report.boolean_hom


class TestLiftCentral:
    def test_z6_lift(self, z6):
        mod2 = next(
            c for c in all_congruences(z6) if c.format_blocks() == "{0,2,4},{1,3,5}"
        )
        assert lift_central(z6, mod2, (0,)).tuple == (4,)

    def test_lift_along_identity(self, z6):
        for e in central_elements(z6):
            assert lift_central(z6, delta(z6), e.tuple).tuple == e.tuple

    def test_lift_along_universal(self, z6):
        assert lift_central(z6, nabla(z6), (2,)).tuple == (1,)

    def test_non_central_class_rejected(self, z6):
        # Z6/Δ is Z6 itself, where 2 is not central
        with pytest.raises(DPViolationError):
            lift_central(z6, delta(z6), (2,))

    def test_round_trip_through_quotient(self, z6):
        for theta, _ in factor_pairs(z6):
            quot = quotient(z6, theta)
            if quot.algebra.size == 1:
                continue
            for zcls in central_elements(quot.algebra):
                # pick any representative tuple of the class
                rep = []
                for target in zcls.tuple:
                    rep.append(
                        next(x for x in range(z6.size) if quot.canonical(x) == target)
                    )
                lifted = lift_central(z6, theta, tuple(rep))
                assert tuple(quot.canonical(v) for v in lifted.tuple) == zcls.tuple


class TestCoextensivityInstances:
    def test_codisjoint(self, z2, z3, lat2, m3):
        assert check_codisjoint(z2, z3)
        assert check_codisjoint(lat2, m3)
        assert check_codisjoint(z3, z3)

    def test_stability_along_mod3(self, z6, z3):
        f = Homomorphism(z6, z3, tuple(x % 3 for x in range(6)))
        e3 = next(e for e in central_elements(z6) if e.tuple == (3,))
        report = check_product_stability(f, e3)
        assert report.holds
        assert sorted(report.part_sizes) == [1, 3]

    def test_stability_along_identity(self, z6):
        e3 = next(e for e in central_elements(z6) if e.tuple == (3,))
        report = check_product_stability(Homomorphism.identity(z6), e3)
        assert report.holds
        assert sorted(report.part_sizes) == [2, 3]


def test_diamond_relation(z6):
    assert are_complementary_centrals(z6, (3,), (4,))
    assert are_complementary_centrals(z6, (0,), (1,))
    assert not are_complementary_centrals(z6, (3,), (3,))
    assert not are_complementary_centrals(z6, (2,), (5,))
