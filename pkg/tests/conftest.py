from __future__ import annotations

import numpy as np
import pytest

from knitframes import build_dihedral, build_subspace, left_regular


@pytest.fixture(scope="session")
def d6():
    return build_dihedral(3)


@pytest.fixture(scope="session")
def d8():
    return build_dihedral(4)


@pytest.fixture(scope="session")
def d6_subspace(d6):
    group, _ = d6
    rep = left_regular(group)
    a = np.zeros(6, dtype=complex)
    a[0] = 1.0
    return build_subspace(rep, a)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_complex(rng: np.random.Generator, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
