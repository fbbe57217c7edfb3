"""Normalized Bloch vectors.

States are mapped to ``R^(d^2-1)`` so that pure states land on the unit
sphere and ``tr(rho sigma) = ((d-1) u.v + 1) / d``. For ``d = 2`` the
coordinates are the expectations of (sigma_x, sigma_y, sigma_z), so
``|0><0|`` maps to the north pole ``(0, 0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import tolerances as _tol
from .quantum import DensityMatrix, Povm, StructuralError, as_density, validate_povm

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@dataclass(frozen=True, eq=False)
class BlochVector:
    dim: int
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float).ravel()
        if c.shape[0] != self.dim**2 - 1:
            raise StructuralError(f"Bloch vector for d={self.dim} needs {self.dim**2 - 1} coordinates")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


@lru_cache(maxsize=None)
def traceless_basis(d: int) -> np.ndarray:
    """Orthonormal (Hilbert-Schmidt) basis of traceless Hermitian ``d x d`` matrices.

    Generalized Gell-Mann family scaled by ``1/sqrt(2)``: symmetric pairs in
    lexicographic order, then antisymmetric pairs, then diagonals.
    """
    sym, asym, diag = [], [], []
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), complex)
            s[j, k] = s[k, j] = 1
            a = np.zeros((d, d), complex)
            a[j, k], a[k, j] = -1j, 1j
            sym.append(s)
            asym.append(a)
    for l in range(1, d):
        m = np.zeros((d, d), complex)
        m[np.arange(l), np.arange(l)] = 1
        m[l, l] = -l
        diag.append(m * np.sqrt(2.0 / (l * (l + 1))))
    basis = np.array(sym + asym + diag) / np.sqrt(2)
    basis.setflags(write=False)
    return basis


def _scale(d: int) -> float:
    return np.sqrt(d / (d - 1))


def bloch_coords(states) -> np.ndarray:
    """Bloch coordinates for a batch.

    ``states`` is either a ``(n, d)`` array of state vectors or a
    ``(n, d, d)`` array of density matrices; returns ``(n, d^2-1)``.
    """
    a = np.asarray(states, dtype=complex)
    if a.ndim == 2:
        d = a.shape[1]
        E = traceless_basis(d)
        r = np.einsum("ni,aij,nj->na", a.conj(), E, a).real
    elif a.ndim == 3:
        d = a.shape[1]
        E = traceless_basis(d)
        r = np.einsum("nij,aji->na", a, E).real
    else:
        raise StructuralError(f"unsupported batch shape {a.shape}")
    return r * _scale(d)


def bloch_vector(state) -> BlochVector:
    rho = as_density(state)
    d = rho.shape[0]
    if d < 2:
        raise StructuralError("Bloch representation needs d >= 2")
    return BlochVector(d, bloch_coords(rho[None])[0])


def state_from_bloch(u) -> DensityMatrix:
    """Inverse Bloch map, qubits only."""
    if isinstance(u, BlochVector):
        if u.dim != 2:
            raise StructuralError("state_from_bloch supports d = 2 only")
        coords = u.coords
    else:
        coords = np.asarray(u, dtype=float).ravel()
        if coords.shape[0] != 3:
            raise StructuralError("state_from_bloch supports d = 2 only (3 coordinates)")
    n = np.linalg.norm(coords)
    if n > 1 + _tol.TOL.structural:
        raise StructuralError(f"|u| = {n:.6g} exceeds 1; not a state")
    rho = (np.eye(2) + np.einsum("a,aij->ij", coords, PAULI)) / 2
    return DensityMatrix(rho)


def pure_state_from_bloch(u) -> np.ndarray:
    """Unit vector in C^2 with Bloch vector ``u`` (``|u| = 1``), first amplitude real."""
    x, y, z = np.asarray(u, dtype=float) / np.linalg.norm(u)
    theta = np.arctan2(np.hypot(x, y), z)  # stable near the poles, unlike arccos(z)
    phi = np.arctan2(y, x)
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def povm_bloch_vectors(povm: Povm) -> np.ndarray:
    """Bloch vectors of the pure states ``(k/d) Pi_j`` as a ``(k, d^2-1)`` array."""
    if not validate_povm(povm).rank1_normalized:
        raise StructuralError(f"POVM {povm.label!r} is not rank-1 normalized")
    d, k = povm.dim, povm.outcomes
    return bloch_coords(povm.effects * (k / d))
