import pytest

from flipspec.examples import CRITERION_GEOMETRIES, blowup_point, local_model_p1, local_model_point


@pytest.fixture(scope="session")
def dp1():
    return blowup_point(2)


@pytest.fixture(scope="session")
def blp3():
    return blowup_point(3)


@pytest.fixture(scope="session")
def lm12():
    return local_model_point(1, 2)


@pytest.fixture(scope="session")
def lm23():
    return local_model_point(2, 3)


@pytest.fixture(scope="session")
def lmp1():
    return local_model_p1()


@pytest.fixture(scope="session")
def all_geometries():
    return {name: mk() for name, mk in CRITERION_GEOMETRIES.items()}
