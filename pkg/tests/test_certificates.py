import dataclasses

import pytest

from finalg.congruence import (
    ChainStep,
    MaltsevCertificate,
    UnaryPoly,
    extract_certificate,
    principal_congruence,
    verify_certificate,
)
from finalg.errors import PairNotRelatedError


def test_generator_pair_chain(z6):
    cong, store = principal_congruence(z6, [(1, 3)], want_certificates=True)
    cert = extract_certificate(store, 1, 3)
    assert verify_certificate(z6, cert)
    assert cert.k % 2 == 1
    assert cert.chain_values[0] == 1 and cert.chain_values[-1] == 3


def test_reflexive_chain(z6):
    cong, store = principal_congruence(z6, [(1, 3)], want_certificates=True)
    cert = extract_certificate(store, 2, 2)
    assert cert.k == 1
    assert verify_certificate(z6, cert)


def test_reflexive_without_generators(z6):
    cong, store = principal_congruence(z6, [], want_certificates=True)
    cert = extract_certificate(store, 5, 5)
    assert verify_certificate(z6, cert)


def test_unrelated_pair_rejected(z6):
    cong, store = principal_congruence(z6, [(1, 3)], want_certificates=True)
    with pytest.raises(PairNotRelatedError):
        extract_certificate(store, 0, 1)


def test_perturbed_certificate_fails(z6):
    cong, store = principal_congruence(z6, [(1, 3)], want_certificates=True)
    cert = extract_certificate(store, 0, 2)
    bad_values = list(cert.chain_values)
    bad_values[1] = (bad_values[1] + 1) % 6
    bad = dataclasses.replace(cert, chain_values=tuple(bad_values))
    assert not verify_certificate(z6, bad)


def test_wrong_endpoint_fails(z6):
    cong, store = principal_congruence(z6, [(1, 3)], want_certificates=True)
    cert = extract_certificate(store, 0, 2)
    bad = dataclasses.replace(cert, source=(0, 4))
    assert not verify_certificate(z6, bad)


def test_even_chain_rejected(z6):
    poly = UnaryPoly.identity()
    cert = MaltsevCertificate(
        (1, 3), ((1, 3),), (ChainStep(poly, 0), ChainStep(poly, 0)), ()
    )
    assert not verify_certificate(z6, cert)


@pytest.mark.parametrize("name", ["z2", "z3", "z4", "z6", "lat2", "lat2x2", "m3", "n5"])
def test_soundness_and_completeness_everywhere(small_corpus, corpus, name):
    """(a,b) related iff extraction succeeds and replay verifies."""
    algebra = corpus[name]
    n = algebra.size
    for c in range(n):
        for d in range(n):
            cong, store = principal_congruence(algebra, [(c, d)], want_certificates=True)
            for a in range(n):
                for b in range(n):
                    if cong.same(a, b):
                        cert = extract_certificate(store, a, b)
                        assert verify_certificate(algebra, cert)
                        assert cert.k % 2 == 1
                    else:
                        with pytest.raises(PairNotRelatedError):
                            extract_certificate(store, a, b)


def test_multi_generator_certificates(z6):
    cong, store = principal_congruence(z6, [(0, 2), (1, 4)], want_certificates=True)
    assert cong.is_universal()
    for a in range(6):
        for b in range(6):
            cert = extract_certificate(store, a, b)
            assert verify_certificate(z6, cert)
            assert len(cert.generators) == 2


def test_format_lines(z6):
    cong, store = principal_congruence(z6, [(1, 3)], want_certificates=True)
    lines = extract_certificate(store, 0, 2).format_lines(z6)
    assert lines[0].startswith("pair (0,2)")
    assert any("t1:" in line for line in lines)


def test_poly_compose(z6):
    from finalg.congruence import one_step_translations

    polys = one_step_translations(z6)
    p, q = polys[1], polys[7]
    pq = p.compose(q)
    for x in range(6):
        assert pq.apply(z6, x) == p.apply(z6, q.apply(z6, x))
