import pytest

from pellrep.prover import prove


@pytest.fixture(scope="session")
def pell_cert():
    return prove("pell")


@pytest.fixture(scope="session")
def pl_cert():
    return prove("pell-lucas")
