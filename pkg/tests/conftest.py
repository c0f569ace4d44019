import pytest

from koiso.algebras import Family, cartan_decomposition
from koiso.casimir import compute_pair_constants


@pytest.fixture(scope="session")
def get_pair():
    """Session cache of Cartan decompositions keyed by (tag, n)."""
    cache = {}

    def _get(tag, n):
        if (tag, n) not in cache:
            cache[(tag, n)] = cartan_decomposition(Family(tag, n))
        return cache[(tag, n)]

    return _get


@pytest.fixture(scope="session")
def get_constants(get_pair):
    """Session cache of extracted Casimir/sandwich constants keyed by (tag, n)."""
    cache = {}

    def _get(tag, n):
        if (tag, n) not in cache:
            cache[(tag, n)] = compute_pair_constants(get_pair(tag, n))
        return cache[(tag, n)]

    return _get
