from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.components.linear import FieldSpec  # noqa: E402
from src.data.catalog import catalog_algebra  # noqa: E402


@pytest.fixture(scope="session")
def qq() -> FieldSpec:
    return FieldSpec.rationals()


@pytest.fixture(scope="session")
def gf7() -> FieldSpec:
    return FieldSpec.prime(7)


@pytest.fixture(scope="session")
def k_alg():
    return catalog_algebra("k")


@pytest.fixture(scope="session")
def dual_numbers():
    return catalog_algebra("dual-numbers")


@pytest.fixture(scope="session")
def a2():
    return catalog_algebra("a2")


@pytest.fixture(scope="session")
def kronecker():
    return catalog_algebra("kronecker")


@pytest.fixture(scope="session")
def a3_rad2():
    return catalog_algebra("a3-rad2")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
