import numpy as np
import pytest

from nucrange import RealSym2


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)


def random_complex_matrix(rng, n=2, scale=2.0):
    return scale * (rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n)))


def random_realsym2(rng, scale=2.0):
    return RealSym2(*(scale * rng.uniform(-1, 1, 3)))


def random_hermitian(rng, n=2, scale=2.0):
    m = random_complex_matrix(rng, n, scale)
    return 0.5 * (m + m.conj().T)


def random_state(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)
