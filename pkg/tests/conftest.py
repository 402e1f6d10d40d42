import pytest

from convcodes import MergeParams, field_new, general_construction, hankel1, hankel2


@pytest.fixture(scope="session")
def gf11():
    return field_new(11)


@pytest.fixture(scope="session")
def gf13():
    return field_new(13)


@pytest.fixture(scope="session")
def h1_code(gf11):
    # (9,5;12,10) over GF(11)
    return hankel1(MergeParams(2, 5, 4, 2), gf11)


@pytest.fixture(scope="session")
def h2_code(gf13):
    # (7,4;10,8) over GF(13)
    return hankel2(MergeParams(2, 4, 3, 2), gf13)


@pytest.fixture(scope="session")
def xor_code():
    # (3,2;5,4) single-parity codes over GF(2)
    return general_construction(MergeParams(2, 2, 1, 1))


@pytest.fixture(scope="session")
def gen_code():
    return general_construction(MergeParams(2, 3, 3, 3))


@pytest.fixture(scope="session")
def headline_code():
    return general_construction(MergeParams(2, 10, 4, 4))
