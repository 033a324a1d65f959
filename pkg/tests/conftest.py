import pytest

from flagalg import soergel


@pytest.fixture(scope="session")
def C_A1():
    return soergel.coinvariant_algebra("A1", 5)


@pytest.fixture(scope="session")
def C_A2():
    return soergel.coinvariant_algebra("A2", 5)


@pytest.fixture(scope="session")
def C_B2():
    return soergel.coinvariant_algebra("B2", 7)
