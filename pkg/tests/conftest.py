import numpy as np
import pytest


def haar_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-distributed U(dim) via QR of a complex Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q @ np.diag(r.diagonal() / np.abs(r.diagonal()))


def haar_state(rng: np.random.Generator, n_qubits: int = 1) -> np.ndarray:
    raw = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return raw / np.linalg.norm(raw)


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
