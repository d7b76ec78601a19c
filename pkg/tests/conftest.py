import pytest

from application.quantum_algebras import build_k_xi_iso3, build_poincare, build_uq_sl2
from application.rmatrix import rmat_k_xi, rmat_uq_sl2


@pytest.fixture(scope="session")
def sl2():
    return build_uq_sl2(1, 4)


@pytest.fixture(scope="session")
def sl2_small():
    return build_uq_sl2(1, 2)


@pytest.fixture(scope="session")
def kxi():
    return build_k_xi_iso3(0, 3)


@pytest.fixture(scope="session")
def kxi_one():
    return build_k_xi_iso3(1, 3)


@pytest.fixture(scope="session")
def poincare_one():
    return build_poincare(1, 2)


@pytest.fixture(scope="session")
def sl2_rmatrix(sl2):
    return rmat_uq_sl2(hopf=sl2)


@pytest.fixture(scope="session")
def kxi_rmatrix(kxi):
    return rmat_k_xi(hopf=kxi)
