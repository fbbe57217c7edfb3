"""Point groups T_d, O_h, I_h, their orbits, and the primary invariants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import tolerances as _tol
from ..catalog import TAU, polyhedron

ORDERS = {"T_d": 24, "O_h": 48, "I_h": 120}


@dataclass(frozen=True, eq=False)
class SymmetryGroup:
    name: str
    elements: np.ndarray  # (|G|, 3, 3)

    @property
    def order(self) -> int:
        return len(self.elements)


def _signed_permutations(even_signs_only: bool = False, cyclic_only: bool = False):
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1)] if cyclic_only else list(itertools.permutations(range(3)))
    out = []
    for perm in perms:
        P = np.eye(3)[list(perm)]
        for signs in itertools.product((1, -1), repeat=3):
            if even_signs_only and np.prod(signs) < 0:
                continue
            out.append(np.diag(signs) @ P)
    return out


def _rotation(axis, angle):
    n = np.asarray(axis, float) / np.linalg.norm(axis)
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K


def _closure(generators, limit=200):
    elems = [np.eye(3)]
    frontier = [np.eye(3)]
    while frontier:
        new = []
        for g in frontier:
            for s in generators:
                h = s @ g
                if not any(np.allclose(h, e, atol=1e-9) for e in elems):
                    elems.append(h)
                    new.append(h)
        frontier = new
        if len(elems) > limit:
            raise RuntimeError("group closure did not terminate")
    return np.array(elems)


@lru_cache(maxsize=None)
def symmetry_group(name: str) -> SymmetryGroup:
    """Canonical representation: tetrahedron at (1,1,1),..., icosahedron at (+-tau, +-1, 0) cyclic."""
    if name == "T_d":
        elems = np.array(_signed_permutations(even_signs_only=True))
    elif name == "O_h":
        elems = np.array(_signed_permutations())
    elif name == "I_h":
        # pyritohedral T_h plus a 5-fold rotation about an icosahedron vertex
        gens = _signed_permutations(cyclic_only=True) + [_rotation((TAU, 1, 0), 2 * np.pi / 5)]
        elems = _closure(gens)
    else:
        raise ValueError(f"unknown group {name!r}")
    elems.setflags(write=False)
    return SymmetryGroup(name, elems)


def check_group_axioms(g: SymmetryGroup, tol: float = 1e-12) -> dict:
    E = g.elements
    orth = float(np.max(np.abs(np.einsum("gij,gkj->gik", E, E) - np.eye(3))))
    has_identity = any(np.max(np.abs(e - np.eye(3))) < tol for e in E)
    flat = E.reshape(len(E), 9)
    closed = True
    for a in E:
        prods = np.einsum("ij,gjk->gik", a, E).reshape(len(E), 9)
        d = np.min(np.max(np.abs(prods[:, None, :] - flat[None]), axis=2), axis=1)
        if d.max() > tol:
            closed = False
            break
    return {"orthogonal": orth <= tol, "max_orthogonality_residual": orth, "identity": has_identity, "closed": closed}


def dedupe(vectors, tol: float | None = None) -> np.ndarray:
    tol = _tol.TOL.cluster if tol is None else tol
    out = []
    for v in np.asarray(vectors, float):
        if not any(np.max(np.abs(v - w)) <= tol for w in out):
            out.append(v)
    return np.array(out)


def group_orbit(g: SymmetryGroup, seed) -> np.ndarray:
    seed = np.asarray(seed, float)
    if abs(np.linalg.norm(seed) - 1) > _tol.TOL.structural:
        raise ValueError("orbit seed must be a unit vector")
    orbit = dedupe(g.elements @ seed)
    assert g.order % len(orbit) == 0
    return orbit


def same_point_set(a, b, tol: float | None = None) -> bool:
    """Equality of finite point sets on the sphere, order ignored."""
    tol = _tol.TOL.cluster if tol is None else tol
    a, b = np.asarray(a, float), np.asarray(b, float)
    if a.shape != b.shape:
        return False
    dist = np.max(np.abs(a[:, None] - b[None]), axis=2)
    return bool(np.all(dist.min(axis=1) <= tol) and np.all(dist.min(axis=0) <= tol))


def in_point_set(v, points, tol: float | None = None) -> bool:
    tol = _tol.TOL.cluster if tol is None else tol
    return bool(np.min(np.max(np.abs(np.asarray(points) - np.asarray(v)), axis=1)) <= tol)


# ---------------------------------------------------------------------------
# Primary invariants


def _xyz(point):
    p = np.asarray(point, dtype=float)
    return p[..., 0], p[..., 1], p[..., 2]


def primary_invariant(name: str, point):
    x, y, z = _xyz(point)
    t2 = TAU**2
    if name == "I2":
        return x**2 + y**2 + z**2
    if name == "I3":
        return x * y * z
    if name == "I4":
        return x**4 + y**4 + z**4
    if name == "I6":
        return x**6 + y**6 + z**6
    if name == "I6p":
        return (t2 * x**2 - y**2) * (t2 * y**2 - z**2) * (t2 * z**2 - x**2)
    if name == "I10":
        return (
            (x + y + z)
            * (x - y - z)
            * (y - z - x)
            * (z - y - x)
            * (x**2 / t2 - t2 * y**2)
            * (y**2 / t2 - t2 * z**2)
            * (z**2 / t2 - t2 * x**2)
        )
    raise ValueError(f"unknown invariant {name!r}")


INVARIANTS = ("I2", "I3", "I4", "I6", "I6p", "I10")

# Orbits where each invariant restricted to S^2 attains its global extrema.
INVARIANT_EXTREMA = {
    "I4": {"min": "cube", "max": "octahedron"},
    "I6": {"min": "cube", "max": "octahedron"},
    "I6p": {"min": "icosahedron", "max": "dodecahedron"},
}

# Group used for each qubit HS-POVM and the invariant spanning P_v|S^2 beyond constants.
HS_GROUP = {
    "tetrahedron": ("T_d", None),
    "cube": ("O_h", "I4"),
    "octahedron": ("O_h", "I4"),
    "cuboctahedron": ("O_h", "I4"),
    "icosahedron": ("I_h", "I6p"),
    "dodecahedron": ("I_h", "I6p"),
    "icosidodecahedron": ("I_h", "I6p"),
}


def extremal_role(invariant: str, w) -> str | None:
    """``"max"`` / ``"min"`` if ``w`` lies on the orbit maximizing/minimizing the invariant."""
    for role, solid in INVARIANT_EXTREMA[invariant].items():
        if in_point_set(w, polyhedron(solid).vertices):
            return role
    return None
