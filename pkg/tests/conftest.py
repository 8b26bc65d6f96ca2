"""
Shared fixtures: fields under their default moduli, an alternative
modulus for GF(2^6) and a seeded random generator.
"""

import numpy as np
import pytest

from cyclicweights.gf2m import get_field


@pytest.fixture
def field3():
    return get_field(3)


@pytest.fixture
def field4():
    return get_field(4)


@pytest.fixture
def field5():
    return get_field(5)


@pytest.fixture
def field6():
    return get_field(6)


@pytest.fixture
def field6_alt():
    """GF(2^6) under x^6 + x^5 + 1 instead of x^6 + x + 1"""
    return get_field(6, 0x61)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cache_dir(tmp_path):
    path = tmp_path / "cache"
    path.mkdir()
    return path
