import pytest

from fourfold.arith import undecidable_count
from fourfold.blocks import K3, CP2Bar, S1xS3, S4, SurfaceProduct, make_block


@pytest.fixture(scope="session")
def sp33():
    return make_block(SurfaceProduct(3, 3))


@pytest.fixture(scope="session")
def k3():
    return make_block(K3())


@pytest.fixture(scope="session")
def s1s3():
    return make_block(S1xS3())


@pytest.fixture(scope="session")
def cp2bar():
    return make_block(CP2Bar())


@pytest.fixture(scope="session")
def s4():
    return make_block(S4())


def pytest_sessionfinish(session, exitstatus):
    # sign decisions at the default pi^2 interval must never come back undecidable
    n = undecidable_count()
    if n:
        session.exitstatus = 1
        print(f"\n{n} undecidable sign(s) at the default pi^2 interval")
