import numpy as np
import pytest

from symlab.distributions import get_alternative, get_null


@pytest.fixture(scope="session")
def normal():
    return get_null("normal")


@pytest.fixture(scope="session")
def logistic():
    return get_null("logistic")


@pytest.fixture(scope="session")
def cauchy():
    return get_null("cauchy")


@pytest.fixture(scope="session")
def all_nulls(normal, logistic, cauchy):
    return (normal, logistic, cauchy)


@pytest.fixture(scope="session")
def contam_normal(normal):
    return get_alternative("contam", normal)


@pytest.fixture(scope="session")
def fs_normal(normal):
    return get_alternative("fs", normal)


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)
