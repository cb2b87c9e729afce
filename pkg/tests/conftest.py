import pytest

from hyperfocus.onefact import OneFactorization, enumerate_factorizations, parse_compact
from hyperfocus.twelve import fixture


@pytest.fixture(scope="session")
def k4():
    return parse_compact("ABCCBA")


@pytest.fixture(scope="session")
def survivor1() -> OneFactorization:
    return fixture(0)


@pytest.fixture(scope="session")
def survivor2() -> OneFactorization:
    return fixture(1)


@pytest.fixture(scope="session")
def classes8():
    return list(enumerate_factorizations(8))


@pytest.fixture(scope="session")
def classes10():
    return list(enumerate_factorizations(10))


@pytest.fixture(scope="session")
def small_classes(classes8, classes10):
    """Every class with n <= 10: 1 + 1 + 6 + 396 = 404."""
    return list(enumerate_factorizations(4)) + list(enumerate_factorizations(6)) + classes8 + classes10
