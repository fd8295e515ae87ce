import warnings

import pytest

from eulerlab.characters import character_from_label, principal
from eulerlab.zeros import default_zero_bank


@pytest.fixture(scope="session")
def bank():
    return default_zero_bank()


@pytest.fixture(scope="session")
def chi4():
    return character_from_label("4.1")


@pytest.fixture(scope="session")
def chi5():
    # order 4, chi(2) = i
    return character_from_label("5.1")


@pytest.fixture(scope="session")
def zeta_char():
    return principal(1)


@pytest.fixture
def quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        yield
