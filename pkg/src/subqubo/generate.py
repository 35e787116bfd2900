"""Random integer test systems with a known solution."""

from __future__ import annotations

import numpy as np

from .errors import ConfigurationError
from .problem_model import LinearSystem

DEFAULT_ENTRY_RANGE = (-10, 9)
DEFAULT_X_RANGE = (-128, 126)
DEFAULT_DIMENSION = 32


def gen_random(
    n: int = DEFAULT_DIMENSION,
    entry_range: tuple[int, int] = DEFAULT_ENTRY_RANGE,
    x_range: tuple[int, int] = DEFAULT_X_RANGE,
    seed: int | None = None,
    invertible: bool = False,
) -> tuple[LinearSystem, np.ndarray]:
    """Draw ``A`` and ``x`` uniformly from inclusive integer ranges and set ``b = A x``.

    With ``invertible=True``, ``A`` is redrawn until it is nonsingular so that
    ``x`` is the only solution.
    """
    if n < 1:
        raise ConfigurationError(f"n must be positive, got {n}")
    for name, (lo, hi) in (("entry_range", entry_range), ("x_range", x_range)):
        if lo > hi:
            raise ConfigurationError(f"{name} [{lo}, {hi}] is empty")
    if invertible and entry_range == (0, 0):
        raise ConfigurationError("entry_range [0, 0] cannot produce an invertible matrix")
    rng = np.random.default_rng(seed)
    while True:
        A = rng.integers(entry_range[0], entry_range[1], size=(n, n), endpoint=True)
        if not invertible or np.linalg.matrix_rank(A) == n:
            break
    x = rng.integers(x_range[0], x_range[1], size=n, endpoint=True)
    return LinearSystem(A, A @ x), x
