"""Constructors for the measurement families: SICs, qubit HS-POVMs, n-gons, PVMs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from . import tolerances as _tol
from .quantum import Povm, PureState, StructuralError

TAU = (1 + np.sqrt(5)) / 2


class NotASicFiducial(ValueError):
    """The group orbit of the fiducial fails the SIC Gram test."""

    def __init__(self, message, worst_pair=None, worst_residual=None):
        super().__init__(message)
        self.worst_pair = worst_pair
        self.worst_residual = worst_residual


@dataclass(frozen=True, eq=False)
class FiducialRecord:
    dim: int
    vector: np.ndarray
    source: str = "builtin"
    label: str = ""
    group: str = "cyclic"  # "cyclic" Weyl-Heisenberg or "qubit_pauli" (d = 2^n)

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex).ravel()
        if v.shape[0] != self.dim:
            raise StructuralError(f"fiducial has {v.shape[0]} entries, expected {self.dim}")
        if abs(np.linalg.norm(v) - 1) > _tol.TOL.normalization:
            raise StructuralError("fiducial vector is not normalized")
        if self.group not in ("cyclic", "qubit_pauli"):
            raise StructuralError(f"unknown displacement group {self.group!r}")
        object.__setattr__(self, "vector", v)

    @classmethod
    def from_unnormalized(cls, vector, **kw) -> "FiducialRecord":
        v = np.asarray(vector, dtype=complex).ravel()
        return cls(dim=v.shape[0], vector=v / np.linalg.norm(v), **kw)


def weyl_heisenberg_displacements(d: int) -> list[tuple[tuple[int, int], np.ndarray]]:
    """``X^a Z^b`` for ``a, b`` in ``Z_d``, lexicographic in ``(a, b)``."""
    omega = np.exp(2j * np.pi / d)
    X = np.roll(np.eye(d), 1, axis=0)
    Z = np.diag(omega ** np.arange(d))
    out = []
    for a in range(d):
        Xa = np.linalg.matrix_power(X, a)
        for b in range(d):
            out.append(((a, b), Xa @ np.linalg.matrix_power(Z, b)))
    return out


def qubit_pauli_displacements(d: int) -> list[tuple[tuple[int, int], np.ndarray]]:
    """Tensor products of single-qubit ``X^a Z^b``; ``a, b`` are bit strings read as integers."""
    n = int(round(np.log2(d)))
    if 2**n != d:
        raise StructuralError(f"qubit Pauli group needs d = 2^n, got {d}")
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.diag([1.0, -1.0]).astype(complex)
    out = []
    for a in itertools.product((0, 1), repeat=n):
        for b in itertools.product((0, 1), repeat=n):
            M = np.eye(1, dtype=complex)
            for ai, bi in zip(a, b):
                M = np.kron(M, np.linalg.matrix_power(X, ai) @ np.linalg.matrix_power(Z, bi))
            out.append(((int("".join(map(str, a)), 2), int("".join(map(str, b)), 2)), M))
    return out


def sic_gram_residual(effects: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Worst deviation from ``tr(Pi_i Pi_j) = (1 + d delta_ij) / (d^2 (d+1))``."""
    k, d, _ = effects.shape
    G = np.einsum("aij,bji->ab", effects, effects).real
    target = np.full((k, k), 1.0 / (d * d * (d + 1)))
    np.fill_diagonal(target, 1.0 / d**2)
    res = np.abs(G - target)
    i, j = np.unravel_index(np.argmax(res), res.shape)
    return float(res[i, j]), (int(i), int(j))


def sic_from_fiducial(fiducial: FiducialRecord) -> Povm:
    d = fiducial.dim
    if fiducial.group == "cyclic":
        displacements = weyl_heisenberg_displacements(d)
    else:
        displacements = qubit_pauli_displacements(d)
    vecs = np.array([D @ fiducial.vector for _, D in displacements])
    effects = np.einsum("ki,kj->kij", vecs, vecs.conj()) / d
    worst, pair = sic_gram_residual(effects)
    if worst > _tol.TOL.structural:
        raise NotASicFiducial(
            f"not a SIC fiducial: Gram residual {worst:.3e} at effects {pair}",
            worst_pair=pair,
            worst_residual=worst,
        )
    return Povm(
        effects,
        label=fiducial.label or f"sic-d{d}",
        metadata={
            "family": "sic",
            "construction": f"{fiducial.group} displacement orbit",
            "fiducial_source": fiducial.source,
            "displacements": [list(ab) for ab, _ in displacements],
            "gram_residual": worst,
        },
    )


def _qubit_fiducial_from_bloch(u) -> np.ndarray:
    x, y, z = np.asarray(u, float) / np.linalg.norm(u)
    theta, phi = np.arctan2(np.hypot(x, y), z), np.arctan2(y, x)
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def _builtin_fiducial(name: str, t: float = 0.0) -> FiducialRecord:
    if name == "tetrahedral":
        vec = _qubit_fiducial_from_bloch(np.ones(3) / np.sqrt(3))
        return FiducialRecord(2, vec, label="tetrahedral")
    if name == "hesse":
        return FiducialRecord.from_unnormalized([0, 1, -1], label="hesse")
    if name == "generic3":
        return FiducialRecord.from_unnormalized([0, 1, -np.exp(1j * t)], label=f"generic3(t={t:g})")
    raise StructuralError(f"unknown builtin SIC {name!r}")


def load_fiducial(path) -> FiducialRecord:
    from .io import fiducial_from_json

    text = Path(path).read_text()
    return fiducial_from_json(text, source=str(path))


def hoggar_fiducial_path() -> Path:
    """Path of the bundled Hoggar fiducial file."""
    return Path(str(resources.files("povmlab") / "data" / "hoggar_fiducial.json"))


def builtin_sic(name: str, t: float = 0.0, path=None) -> Povm:
    """``tetrahedral`` (d=2), ``hesse`` (d=3), ``generic3`` (d=3, parameter ``t``), ``hoggar`` (d=8, file)."""
    if name == "hoggar":
        if path is None:
            raise StructuralError("hoggar SIC requires a fiducial file of dimension 8")
        fid = load_fiducial(path)
        if fid.dim != 8:
            raise StructuralError(f"hoggar fiducial must have dim 8, file has {fid.dim}")
        return sic_from_fiducial(fid)
    return sic_from_fiducial(_builtin_fiducial(name, t))


# ---------------------------------------------------------------------------
# Qubit polyhedra

POLYHEDRA = (
    "tetrahedron",
    "cube",
    "octahedron",
    "icosahedron",
    "dodecahedron",
    "cuboctahedron",
    "icosidodecahedron",
)


@dataclass(frozen=True, eq=False)
class PolyhedronSpec:
    name: str
    vertices: np.ndarray = field(repr=False)


def _unit(rows) -> np.ndarray:
    a = np.asarray(rows, dtype=float)
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def _edges(verts: np.ndarray) -> list[tuple[int, int]]:
    dist = np.linalg.norm(verts[:, None] - verts[None], axis=-1)
    edge = dist[dist > 1e-9].min()
    n = len(verts)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if abs(dist[i, j] - edge) < 1e-9]


def _triangles(verts: np.ndarray) -> list[tuple[int, int, int]]:
    adj = set(_edges(verts))
    n = len(verts)
    return [
        (i, j, l)
        for i, j, l in itertools.combinations(range(n), 3)
        if (i, j) in adj and (j, l) in adj and (i, l) in adj
    ]


@lru_cache(maxsize=None)
def _vertices(name: str) -> np.ndarray:
    if name == "tetrahedron":
        return _unit([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)])
    if name == "octahedron":
        return np.array([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], float)
    if name == "cube":
        return _unit(list(itertools.product((1, -1), repeat=3)))
    if name == "icosahedron":
        rows = []
        for shift in range(3):
            for s1, s2 in itertools.product((1, -1), repeat=2):
                rows.append(np.roll([s1 * TAU, s2 * 1.0, 0.0], shift))
        return _unit(rows)
    if name == "dodecahedron":
        ico = _vertices("icosahedron")
        return _unit([ico[list(tri)].sum(axis=0) for tri in _triangles(ico)])
    if name == "cuboctahedron":
        cube = _vertices("cube")
        return _unit([cube[i] + cube[j] for i, j in _edges(cube)])
    if name == "icosidodecahedron":
        ico = _vertices("icosahedron")
        return _unit([ico[i] + ico[j] for i, j in _edges(ico)])
    raise StructuralError(f"unknown polyhedron {name!r}")


def ngon_vertices(n: int) -> np.ndarray:
    if n < 2:
        raise StructuralError(f"n-gon needs n >= 2, got {n}")
    ang = 2 * np.pi * np.arange(n) / n
    v = np.stack([np.cos(ang), np.sin(ang), np.zeros(n)], axis=1)
    v[np.abs(v) < 1e-15] = 0.0
    return v


def polyhedron(name: str, n: int | None = None) -> PolyhedronSpec:
    """Vertex data by name; ``ngon`` needs ``n``, ``digon`` is ``ngon(2)``."""
    if name == "digon":
        return PolyhedronSpec("digon", ngon_vertices(2))
    if name == "ngon":
        if n is None:
            raise StructuralError("ngon requires n")
        return PolyhedronSpec(f"ngon({n})", ngon_vertices(n))
    v = _vertices(name).copy()
    v.setflags(write=False)
    return PolyhedronSpec(name, v)


def qubit_povm_from_bloch(vertices, label: str, metadata=None) -> Povm:
    """Rank-1 qubit POVM with effects ``(2/k) rho(v_j)``."""
    from .bloch import PAULI

    v = np.asarray(vertices, dtype=float)
    k = len(v)
    rhos = (np.eye(2) + np.einsum("ka,aij->kij", v, PAULI)) / 2
    return Povm(rhos * (2.0 / k), label=label, metadata=dict(metadata or {}))


def hs_povm(spec: PolyhedronSpec | str) -> Povm:
    if isinstance(spec, str):
        spec = polyhedron(spec)
    return qubit_povm_from_bloch(spec.vertices, spec.name, {"family": "hs", "polyhedron": spec.name})


def ngon_povm(n: int) -> Povm:
    spec = polyhedron("ngon", n)
    label = "digon" if n == 2 else spec.name
    return qubit_povm_from_bloch(spec.vertices, label, {"family": "ngon", "n": n})


def pvm_from_basis(basis) -> Povm:
    vecs = np.array([b.amplitudes if isinstance(b, PureState) else np.asarray(b, complex) for b in basis])
    d = vecs.shape[1]
    if vecs.shape[0] != d:
        raise StructuralError(f"basis needs {d} vectors, got {vecs.shape[0]}")
    gram = vecs.conj() @ vecs.T
    if np.max(np.abs(gram - np.eye(d))) > _tol.TOL.structural:
        raise StructuralError("basis vectors are not orthonormal")
    return Povm(np.einsum("ki,kj->kij", vecs, vecs.conj()), label=f"pvm-d{d}", metadata={"family": "pvm"})


def standard_pvm(d: int) -> Povm:
    return pvm_from_basis(np.eye(d, dtype=complex))


def fourier_pvm(d: int) -> Povm:
    F = np.exp(2j * np.pi * np.outer(np.arange(d), np.arange(d)) / d) / np.sqrt(d)
    return pvm_from_basis(F.T)


def by_name(name: str, hoggar_path=None) -> Povm:
    """Catalog lookup used by the CLI: polyhedra, ``digon``, ``ngon:N``, SIC names, ``pvm:D``."""
    if name in POLYHEDRA:
        return hs_povm(name)
    if name == "digon":
        return ngon_povm(2)
    if name.startswith("ngon:"):
        return ngon_povm(int(name.split(":", 1)[1]))
    if name.startswith("pvm:"):
        return standard_pvm(int(name.split(":", 1)[1]))
    if name in ("tetrahedral", "hesse"):
        return builtin_sic(name)
    if name.startswith("generic3"):
        t = float(name.split(":", 1)[1]) if ":" in name else 0.0
        return builtin_sic("generic3", t=t)
    if name == "hoggar":
        return builtin_sic("hoggar", path=hoggar_path or hoggar_fiducial_path())
    raise StructuralError(f"unknown POVM name {name!r}")
