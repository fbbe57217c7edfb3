"""States, POVMs and outcome probabilities.

Operators are plain ``numpy`` complex arrays. A POVM stores its effects as a
``(k, d, d)`` stack; a pure state is a length-``d`` vector and a density
matrix a ``(d, d)`` array. The light wrapper classes below validate on
construction and are otherwise interchangeable with raw arrays in every
function of the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import tolerances as _tol


class StructuralError(ValueError):
    """Malformed input: wrong shapes, mismatched dimensions, invalid states."""


class DimensionMismatch(StructuralError):
    pass


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > _tol.TOL.normalization:
            raise StructuralError(f"pure state not normalized (norm {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, vector) -> "PureState":
        v = np.asarray(vector, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if n == 0:
            raise StructuralError("zero vector cannot be normalized")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def density(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        if other.dim != self.dim:
            return False
        return fidelity(self, other) >= 1 - _tol.TOL.structural

    __hash__ = None


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise StructuralError(f"density matrix must be square, got shape {rho.shape}")
        t = _tol.TOL
        if np.max(np.abs(rho - rho.conj().T)) > t.hermitian:
            raise StructuralError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > t.hermitian:
            raise StructuralError("density matrix trace differs from 1")
        if np.linalg.eigvalsh(rho).min() < -t.structural:
            raise StructuralError("density matrix has a negative eigenvalue")
        rho = rho.copy()
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def density(self) -> np.ndarray:
        return self.entries


StateLike = Union[PureState, DensityMatrix, np.ndarray]


def as_density(state: StateLike) -> np.ndarray:
    """Density matrix of ``state``; 1-D arrays are read as state vectors."""
    if isinstance(state, (PureState, DensityMatrix)):
        return state.density()
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        return np.outer(a, a.conj())
    if a.ndim == 2 and a.shape[0] == a.shape[1]:
        return a
    raise StructuralError(f"cannot interpret array of shape {a.shape} as a state")


def _as_vector(state) -> np.ndarray:
    if isinstance(state, PureState):
        return state.amplitudes
    return np.asarray(state, dtype=complex).ravel()


def maximally_mixed(d: int) -> DensityMatrix:
    return DensityMatrix(np.eye(d, dtype=complex) / d)


@dataclass(frozen=True, eq=False)
class Povm:
    """Ordered list of effects summing to the identity.

    Construction only checks shapes; call :func:`validate_povm` for the
    positivity and completeness checks.
    """

    effects: np.ndarray
    label: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        try:
            eff = np.array([np.asarray(e, dtype=complex) for e in self.effects])
        except ValueError as exc:  # ragged list of matrices
            raise DimensionMismatch("effects have inconsistent dimensions") from exc
        if eff.ndim != 3 or eff.shape[0] == 0:
            raise DimensionMismatch("effects must be a nonempty list of square matrices")
        if eff.shape[1] != eff.shape[2]:
            raise DimensionMismatch(f"effects are not square: {eff.shape[1:]}")
        eff.setflags(write=False)
        object.__setattr__(self, "effects", eff)

    @property
    def dim(self) -> int:
        return self.effects.shape[1]

    @property
    def outcomes(self) -> int:
        return self.effects.shape[0]

    def __len__(self):
        return self.outcomes


@dataclass
class ValidationReport:
    psd_ok: bool
    identity_ok: bool
    rank1_normalized: bool
    max_residuals: dict

    @property
    def accepted(self) -> bool:
        return self.psd_ok and self.identity_ok


def validate_povm(povm: Povm) -> ValidationReport:
    t = _tol.TOL
    eff = povm.effects
    d, k = povm.dim, povm.outcomes
    herm = float(np.max(np.abs(eff - eff.conj().transpose(0, 2, 1))))
    eigs = np.linalg.eigvalsh((eff + eff.conj().transpose(0, 2, 1)) / 2)
    min_eig = float(eigs.min())
    identity_res = float(np.max(np.abs(eff.sum(axis=0) - np.eye(d))))
    traces = np.einsum("kii->k", eff).real
    trace_res = float(np.max(np.abs(traces - d / k)))
    # second-largest eigenvalue measures distance from rank one
    rank_res = float(np.max(np.abs(eigs[:, :-1]))) if d > 1 else 0.0
    psd_ok = herm <= t.hermitian and min_eig >= -t.structural
    identity_ok = identity_res <= t.structural
    rank1 = psd_ok and trace_res <= t.structural and rank_res <= t.structural
    return ValidationReport(
        psd_ok=psd_ok,
        identity_ok=identity_ok,
        rank1_normalized=rank1,
        max_residuals={
            "hermiticity": herm,
            "min_eigenvalue": min_eig,
            "identity": identity_res,
            "trace": trace_res,
            "rank": rank_res,
        },
    )


def _check_dims(d_state: int, povm: Povm):
    if d_state != povm.dim:
        raise DimensionMismatch(f"state dimension {d_state} != POVM dimension {povm.dim}")


def outcome_probabilities(state: StateLike, povm: Povm) -> np.ndarray:
    """``p_j = tr(rho Pi_j)``, clamped at zero."""
    t = _tol.TOL
    if isinstance(state, PureState) or np.ndim(state) == 1:
        psi = _as_vector(state)
        _check_dims(psi.shape[0], povm)
        p = np.einsum("i,kij,j->k", psi.conj(), povm.effects, psi).real
    else:
        rho = as_density(state)
        _check_dims(rho.shape[0], povm)
        p = np.einsum("ij,kji->k", rho, povm.effects).real
    if p.min() < -t.negative_prob:
        raise StructuralError(f"negative outcome probability {p.min()!r}; is the state valid?")
    return np.clip(p, 0.0, None)


def is_informationally_complete(povm: Povm) -> dict:
    """Real dimension of the span of the traceless parts of the effects.

    For rank-1 normalized POVMs the traceless part of ``Pi_j`` is
    ``Pi_j - I/k``.
    """
    d = povm.dim
    eff = povm.effects
    traceless = eff - (np.einsum("kii->k", eff).real / d)[:, None, None] * np.eye(d)
    rows = np.concatenate([traceless.real.reshape(len(eff), -1), traceless.imag.reshape(len(eff), -1)], axis=1)
    span = int(np.linalg.matrix_rank(rows, tol=1e-9))
    return {"complete": span == d * d - 1, "span_dim": span}


def fidelity(a, b) -> float:
    """``|<a|b>|^2`` for pure states."""
    va, vb = _as_vector(a), _as_vector(b)
    if va.shape != vb.shape:
        raise DimensionMismatch(f"state dimensions differ: {va.shape[0]} vs {vb.shape[0]}")
    return float(abs(np.vdot(va, vb)) ** 2)


def haar_random_states(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` Haar-random unit vectors in C^d as rows (normalized complex Gaussians)."""
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)
