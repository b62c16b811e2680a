"""
conftest.py - Fixtures compartilhadas dos testes
"""

import numpy as np
import pytest

from src.characters.characters import UnipotentContext
from src.combinatorics.partitions import Partition
from src.fields.coeff_field import CYCLOTOMIC, MODULAR, make_coeff_field
from src.fields.finite_field import make_field


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(4)


@pytest.fixture(scope="session")
def k2():
    """Q(ζ_2) = Q."""
    return make_coeff_field(CYCLOTOMIC, 2)


@pytest.fixture(scope="session")
def k3():
    return make_coeff_field(CYCLOTOMIC, 3)


@pytest.fixture(scope="session")
def k2_mod3():
    return make_coeff_field(MODULAR, 2, 3)


@pytest.fixture(scope="session")
def k2_mod7():
    return make_coeff_field(MODULAR, 2, 7)


@pytest.fixture(scope="session")
def ctx_2_2(f2, k2):
    """GL_2(F_2), característica 0."""
    return UnipotentContext(2, f2, k2)


@pytest.fixture(scope="session")
def ctx_3_2(f2, k2):
    """GL_3(F_2), característica 0."""
    return UnipotentContext(3, f2, k2)


@pytest.fixture(scope="session")
def ctx_2_3(f3, k3):
    """GL_2(F_3) com K = Q(ζ_3)."""
    return UnipotentContext(2, f3, k3)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def P(*parts: int) -> Partition:
    """Atalho para partições nos testes."""
    return Partition(parts)
