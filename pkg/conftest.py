# conftest.py
import numpy as np
import pytest
from hypothesis import settings

from algoritmos.monge_ampere import EcuacionMA
from logica.configuracion import SEMILLA_POR_DEFECTO, TOLERANCIAS

settings.register_profile("proyecto", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("proyecto")


@pytest.fixture
def rng():
    return np.random.default_rng(SEMILLA_POR_DEFECTO)


@pytest.fixture
def tol():
    return TOLERANCIAS


@pytest.fixture
def laplace():
    return EcuacionMA.constante(0, 1, 0, 1, 0)


@pytest.fixture
def onda():
    return EcuacionMA.constante(0, 1, 0, -1, 0)


@pytest.fixture
def ma_homogenea():
    return EcuacionMA.constante(1, 0, 0, 0, 0)
