import pytest

from logfiber import build_lot_family, build_named, combine


@pytest.fixture(scope="session")
def lot_a():
    return build_named("lot-a")


@pytest.fixture(scope="session")
def g1():
    return build_named("g1")


@pytest.fixture(scope="session")
def gf():
    return build_named("gf")


@pytest.fixture(scope="session")
def g2():
    return build_named("g2")


@pytest.fixture(scope="session")
def torus():
    return build_named("torus")


@pytest.fixture(scope="session")
def mixed():
    return combine(build_lot_family(5, "a"), build_lot_family(6, "b"), "a0 b2 a1^-1 b0^-1")
