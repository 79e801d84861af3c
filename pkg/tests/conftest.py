import copy

import numpy as np
import pytest

from src.harness.generate import GeneratorSpec, SpectrumLaw, generate
from src.utils.config import DEFAULT_CONFIG


@pytest.fixture
def config():
    """A private copy of the default configuration that tests may mutate."""
    return copy.deepcopy(DEFAULT_CONFIG)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(20240517))


@pytest.fixture
def nilpotent():
    return np.array([[0, 1], [0, 0]], dtype=np.complex128)


@pytest.fixture
def diag_ray():
    """diag(1+i, 2+2i): spectrum on the ray arg = pi/4, so T = i T*."""
    return np.diag([1 + 1j, 2 + 2j])


@pytest.fixture
def random_normal():
    """Factory for seeded random normal matrices."""

    def make(n, seed, kind="normal", law=None):
        spec = GeneratorSpec(kind=kind, n=n, seed=seed, spectrum_law=law)
        return generate(spec)

    return make


@pytest.fixture
def ray_law():
    def make(angle, R=1.0):
        return SpectrumLaw(kind="ray", angle=angle, R=R)

    return make


@pytest.fixture
def write_cmat(tmp_path):
    """Write a matrix to a cmat file under tmp_path and return its path."""
    from src.harness.matrix_io import write_matrix

    def write(A, name="matrix.cmat"):
        return write_matrix(tmp_path / name, np.asarray(A, dtype=np.complex128))

    return write
