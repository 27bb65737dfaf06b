import numpy as np
import pytest

from dnls_well.field import Field, make_grid


def random_smooth_field(rng, grid, n_modes=12, amp=1.0):
    """Band-limited random complex field with decaying spectrum."""
    coeffs = rng.standard_normal((2, n_modes)) + 1j * rng.standard_normal((2, n_modes))
    k = np.arange(1, n_modes + 1)
    decay = 1.0 / (1.0 + k**2)
    x = grid.x * np.pi / grid.L
    vals = np.zeros(grid.N, dtype=complex)
    for j, kj in enumerate(k):
        vals += decay[j] * (coeffs[0, j] * np.cos(kj * x) + coeffs[1, j] * np.sin(kj * x))
    envelope = np.exp(-((grid.x / (0.6 * grid.L)) ** 8))
    return Field(grid, amp * vals * envelope)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
