import pytest

from locsym.field import GF


@pytest.fixture(scope="session")
def F9():
    return GF(2)


@pytest.fixture(scope="session")
def F3():
    return GF(1)
