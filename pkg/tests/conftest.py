import pytest

from wreathlab import construct_named


@pytest.fixture(scope="session")
def s3():
    return construct_named("S:3")


@pytest.fixture(scope="session")
def s4():
    return construct_named("S:4")


@pytest.fixture(scope="session")
def d4():
    return construct_named("D:4")


@pytest.fixture(scope="session")
def q8():
    return construct_named("Q8")
