import math

import pytest

from spinsqueeze import SpinQuantum, VertexSubset, build_su2_triple, multipole_basis


@pytest.fixture(scope="session")
def j32():
    return SpinQuantum(3)


@pytest.fixture(scope="session")
def basis32(j32):
    return multipole_basis(j32)


@pytest.fixture(scope="session")
def triples(j32):
    """The four spin-3/2 class representatives keyed i..iv."""
    subsets = {"i": {1, 2, 3}, "ii": {1, 2}, "iii": {1, 3}, "iv": {1}}
    return {k: build_su2_triple(VertexSubset(j32, frozenset(s))) for k, s in subsets.items()}


@pytest.fixture(scope="session")
def f_values():
    return {"i": 1.0, "ii": math.sqrt(2.5), "iii": math.sqrt(5.0), "iv": math.sqrt(10.0)}
