import pytest

from thuelat.forms import BinaryForm

CORPUS_STRINGS = (
    "3: 1 0 0 1",      # X^3 + Y^3
    "3: 1 0 0 -2",     # X^3 - 2Y^3
    "2: 1 0 1",        # X^2 + Y^2
    "4: 1 0 0 1 1",    # X^4 + XY^3 + Y^4
    "5: 1 0 0 0 0 -2", # X^5 - 2Y^5
)


@pytest.fixture(scope="session")
def corpus():
    return tuple(BinaryForm.parse(s) for s in CORPUS_STRINGS)


@pytest.fixture(scope="session")
def cubic():
    return BinaryForm.parse("3: 1 0 0 1")


@pytest.fixture(scope="session")
def cubic2():
    return BinaryForm.parse("3: 1 0 0 -2")


@pytest.fixture(scope="session")
def gauss():
    return BinaryForm.parse("2: 1 0 1")


@pytest.fixture(scope="session")
def quartic():
    return BinaryForm.parse("4: 1 0 0 1 1")


@pytest.fixture(scope="session")
def quintic():
    return BinaryForm.parse("5: 1 0 0 0 0 -2")
