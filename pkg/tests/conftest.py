import pytest

from qmm.laurent import XRing
from qmm.macdonald import MacdonaldSession
from qmm.rootsys import build_root_system


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B", 2)


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G", 2)


@pytest.fixture(scope="session")
def xa1(a1):
    return XRing(a1)


@pytest.fixture(scope="session")
def xa2(a2):
    return XRing(a2)


@pytest.fixture(scope="session")
def xb2(b2):
    return XRing(b2)


@pytest.fixture(scope="session")
def ma1(xa1):
    return MacdonaldSession(xa1)


@pytest.fixture(scope="session")
def ma2(xa2):
    return MacdonaldSession(xa2)


@pytest.fixture(scope="session")
def mb2(xb2):
    return MacdonaldSession(xb2)


@pytest.fixture(scope="session")
def ma1z(a1):
    return MacdonaldSession(XRing(a1, nz=1))
