import pytest

from gdecomp import build_ball, compute_global_decomposition
from gdecomp.fixtures import load_fixture


@pytest.fixture(scope="session")
def sl2z():
    return load_fixture("sl2z")


@pytest.fixture(scope="session")
def c2c3():
    return load_fixture("c2*c3")


@pytest.fixture(scope="session")
def c4c2c6():
    return load_fixture("c4*c2*c6")


@pytest.fixture(scope="session")
def f2():
    return load_fixture("f2")


@pytest.fixture(scope="session")
def z5():
    return load_fixture("z5")


@pytest.fixture(scope="session")
def zgroup():
    return load_fixture("z")


@pytest.fixture(scope="session")
def sl2z_ball10(sl2z):
    return build_ball(sl2z, 10)


@pytest.fixture(scope="session")
def sl2z_ball8(sl2z):
    return build_ball(sl2z, 8)


@pytest.fixture(scope="session")
def sl2z_decomp(sl2z_ball10):
    return compute_global_decomposition(sl2z_ball10, 6)
