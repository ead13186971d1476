import pytest

from pmqhur import fixtures
from pmqhur.completion import complete


@pytest.fixture(scope="session")
def free1():
    return fixtures.pmq("free1")


@pytest.fixture(scope="session")
def trans3():
    return fixtures.pmq("trans3")


@pytest.fixture(scope="session")
def triv():
    return fixtures.pmq("triv")


@pytest.fixture(scope="session")
def s3norm():
    return fixtures.pmq("s3norm")


@pytest.fixture(scope="session")
def pair_trans3():
    return fixtures.pair("pair_trans3_s3")


@pytest.fixture(scope="session")
def tc_free1_3(free1):
    return complete(free1, 3)


@pytest.fixture(scope="session")
def tc_trans3_2(trans3):
    return complete(trans3, 2)


@pytest.fixture(scope="session")
def tc_s3norm_3(s3norm):
    return complete(s3norm, 3)


@pytest.fixture(scope="session")
def tc_trans3_4(trans3):
    return complete(trans3, 4)
