import pytest

from finalg.corpus import (
    cube_lattice,
    cyclic_ring,
    diamond_m3,
    full_corpus,
    pentagon_n5,
    square_lattice,
    two_chain,
)


@pytest.fixture(scope="session")
def z2():
    return cyclic_ring(2)


@pytest.fixture(scope="session")
def z3():
    return cyclic_ring(3)


@pytest.fixture(scope="session")
def z4():
    return cyclic_ring(4)


@pytest.fixture(scope="session")
def z6():
    return cyclic_ring(6)


@pytest.fixture(scope="session")
def lat2():
    return two_chain()


@pytest.fixture(scope="session")
def lat2x2():
    return square_lattice()


@pytest.fixture(scope="session")
def m3():
    return diamond_m3()


@pytest.fixture(scope="session")
def n5():
    return pentagon_n5()


@pytest.fixture(scope="session")
def lat2x2x2():
    return cube_lattice()


@pytest.fixture(scope="session")
def corpus():
    return full_corpus()


@pytest.fixture(scope="session")
def small_corpus(corpus):
    """Corpus members with at most 6 elements (certificate-scale)."""
    return {name: alg for name, alg in corpus.items() if alg.size <= 6}
