"""Entropy functionals of measurement statistics (natural logarithms throughout)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as _tol
from .quantum import (
    DimensionMismatch,
    Povm,
    StructuralError,
    as_density,
    outcome_probabilities,
)


def eta(x):
    """``-x ln x`` with ``eta(x) = 0`` for ``x`` at or below the floor."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x > _tol.TOL.eta_floor, x, 1.0)
    return np.where(x > _tol.TOL.eta_floor, -safe * np.log(safe), 0.0)


def _check_distribution(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.min() < -_tol.TOL.negative_prob:
        raise StructuralError(f"negative probability {p.min()!r}")
    return np.clip(p, 0.0, None)


def shannon_entropy(p) -> float:
    p = _check_distribution(p)
    return float(eta(p).sum(axis=-1))


def entropy(state, povm: Povm) -> float:
    """``H(rho, Pi)``: Shannon entropy of the outcome distribution."""
    return shannon_entropy(outcome_probabilities(state, povm))


def relative_entropy(state, povm: Povm) -> float:
    """``ln k - H(rho, Pi)``."""
    return float(np.log(povm.outcomes) - entropy(state, povm))


def h_function(t, d: int):
    """``eta(((d-1) t + 1) / d)`` on ``[-1/(d-1), 1]``."""
    t = np.asarray(t, dtype=float)
    lo = -1.0 / (d - 1)
    slack = 1e-12
    if np.any(t < lo - slack) or np.any(t > 1 + slack):
        raise ValueError(f"t outside [{lo:g}, 1]")
    x = np.clip(((d - 1) * t + 1) / d, 0.0, 1.0)
    return eta(x)


def entropy_from_bloch(u, vs, d: int, k: int | None = None) -> float | np.ndarray:
    """Entropy of a rank-1 normalized POVM from Bloch data.

    ``u`` may be a single unit vector or an ``(n, d^2-1)`` batch; ``vs`` are
    the POVM Bloch vectors.
    """
    u = np.asarray(u, dtype=float)
    vs = np.asarray(vs, dtype=float)
    k = len(vs) if k is None else k
    if u.shape[-1] != vs.shape[1] or vs.shape[1] != d * d - 1:
        raise DimensionMismatch("Bloch vector lengths do not match d^2 - 1")
    dots = np.clip(u @ vs.T, -1.0 / (d - 1), 1.0)
    out = np.log(k / d) + (d / k) * h_function(dots, d).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def tsallis_theta(x, alpha: float):
    x = np.clip(np.asarray(x, dtype=float), 0.0, None)
    return (x - x**alpha) / (alpha - 1)


def alpha_entropy(p, alpha: float, kind: str = "tsallis") -> float:
    """Havrda-Charvat-Tsallis or Renyi entropy for ``alpha`` in (0, 2)."""
    if not 0 < alpha < 2:
        raise ValueError(f"alpha must lie in (0, 2), got {alpha}")
    if kind not in ("tsallis", "renyi"):
        raise ValueError(f"unknown alpha-entropy kind {kind!r}")
    p = _check_distribution(p)
    if alpha == 1:
        return shannon_entropy(p)
    if kind == "tsallis":
        return float(tsallis_theta(p, alpha).sum(axis=-1))
    return float(np.log((p**alpha).sum(axis=-1)) / (1 - alpha))


def index_of_coincidence(p):
    """``sum_j p_j^2``; a 2-D input gives one value per row."""
    p = np.asarray(p, dtype=float)
    out = (p * p).sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True, eq=False)
class Ensemble:
    weights: np.ndarray
    states: list

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.min() < 0 or abs(w.sum() - 1) > _tol.TOL.normalization:
            raise StructuralError("ensemble weights must be a probability vector")
        if len(self.states) != len(w):
            raise StructuralError("one weight per state required")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, states) -> "Ensemble":
        states = list(states)
        return cls(np.full(len(states), 1.0 / len(states)), states)


def joint_table(ens: Ensemble, povm: Povm) -> np.ndarray:
    rows = []
    for w, s in zip(ens.weights, ens.states):
        rho = as_density(s)
        if rho.shape[0] != povm.dim:
            raise DimensionMismatch("ensemble state and POVM dimensions differ")
        rows.append(w * outcome_probabilities(rho, povm))
    return np.array(rows)


def mutual_information(ens: Ensemble, povm: Povm) -> float:
    """``H(rows) + H(columns) - H(joint)`` for ``P_ij = pi_i tr(sigma_i Pi_j)``."""
    P = joint_table(ens, povm)
    return float(eta(P.sum(axis=1)).sum() + eta(P.sum(axis=0)).sum() - eta(P).sum())


def jones_average(d: int) -> float:
    """Haar average of the relative entropy of any rank-1 POVM in dimension ``d``."""
    return float(np.log(d) - sum(1.0 / j for j in range(2, d + 1)))


def sic_min_relative_entropy(d: int) -> float:
    return float(np.log(d) - (d - 1) / d * np.log(d + 1))


def sic_max_relative_entropy_bound(d: int) -> float:
    return float(np.log(2 * d / (d + 1)))


def jones_average_limit() -> float:
    return float(1 - np.euler_gamma)
