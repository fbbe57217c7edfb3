"""Projective t-design moment test on Bloch point sets."""

from __future__ import annotations

import numpy as np

from ..bloch import bloch_coords
from ..quantum import haar_random_states


def random_bloch_points(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Bloch vectors of ``n`` Haar-random pure states (uniform on S^2 for qubits)."""
    return bloch_coords(haar_random_states(d, n, rng))


def bloch_dim_to_d(m: int) -> int:
    d = int(round(np.sqrt(m + 1)))
    if d * d - 1 != m:
        raise ValueError(f"{m} is not of the form d^2 - 1")
    return d


def moment_spread(vs, t: int, n: int = 200, seed: int = 0) -> list[float]:
    """Variance of ``sum_j (u.v_j)^s`` over random pure-state Bloch vectors ``u``, for ``s = 1..t``."""
    vs = np.asarray(vs, float)
    d = bloch_dim_to_d(vs.shape[1])
    U = random_bloch_points(d, n, np.random.default_rng(seed))
    dots = U @ vs.T
    return [float(np.var((dots**s).sum(axis=1))) for s in range(1, t + 1)]


def is_t_design(vs, t: int, n: int = 200, seed: int = 0, tol: float = 1e-9) -> bool:
    """True iff every moment up to order ``t`` is constant over the pure states."""
    return all(v < tol for v in moment_spread(vs, t, n, seed))
