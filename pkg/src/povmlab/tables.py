"""Extremal relative-entropy tables for qubit HS-POVMs and SIC-POVMs.

Values come from the optimizer (extrema), closed forms (SIC minimum, Haar
average) and quadrature (the n-gon limit). Configuration names are not
hard-coded per row: they are recovered by matching the optimizer's global
clusters against known point sets.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from . import catalog
from .bloch import povm_bloch_vectors
from .catalog import polyhedron, sic_gram_residual
from .certify.groups import same_point_set
from .entropy import (
    eta,
    jones_average,
    jones_average_limit,
    sic_max_relative_entropy_bound,
    sic_min_relative_entropy,
)
from .optimize import OptConfig, maximize_entropy

HS_ROWS = (
    "tetrahedron",
    "octahedron",
    "cube",
    "cuboctahedron",
    "icosahedron",
    "dodecahedron",
    "icosidodecahedron",
)

NGON_PROBE = 15  # odd n used to identify the n-gon configurations


def fmt(x: float) -> str:
    if abs(x) < 5e-11:
        x = 0.0
    return f"{x:.5f}"


def _global_bloch(result) -> np.ndarray:
    return np.array([c.bloch for c in result.global_clusters])


def identify_qubit_configuration(points: np.ndarray, povm_vertices: np.ndarray, povm_name: str) -> str:
    """Name of the point set ``points`` (unit vectors on S^2), relative to the POVM."""
    if len(points) > 1 and np.all(np.abs(points @ povm_vertices[0]) < 1e-6) and povm_name == "digon":
        return "equator"
    for solid in catalog.POLYHEDRA:
        if same_point_set(points, polyhedron(solid).vertices, 1e-6):
            return solid
    if same_point_set(points, povm_vertices, 1e-6):
        return povm_name
    if same_point_set(points, -povm_vertices, 1e-6):
        return f"'twin' {povm_name}"
    if same_point_set(points, np.array([[0, 0, 1.0], [0, 0, -1.0]]), 1e-6):
        return "digon"
    return "unidentified"


def ngon_limit_max_relative_entropy() -> float:
    """``lim_n max H~`` for equatorial n-gons: mean of ``(1+cos f) ln(1+cos f)`` over the circle."""
    val, _ = quad(lambda f: -eta(1 + np.cos(f)), 0, 2 * np.pi, limit=200)
    return float(val / (2 * np.pi))


def hs_rows(starts: int = 256, seed: int = 0) -> list[dict]:
    cfg = OptConfig(starts=starts, seed=seed)
    rows = []

    digon = catalog.ngon_povm(2)
    dv = povm_bloch_vectors(digon)
    lo = maximize_entropy(digon, cfg)
    hi = maximize_entropy(digon, cfg, direction="max-relative-entropy")
    rows.append({
        "povm": "digon",
        "min_config": identify_qubit_configuration(_global_bloch(lo), dv, "digon"),
        "min": lo.best_relative_entropy,
        "max_config": identify_qubit_configuration(_global_bloch(hi), dv, "digon"),
        "max": hi.best_value,
    })

    n = NGON_PROBE
    ngon = catalog.ngon_povm(n)
    nv = povm_bloch_vectors(ngon)
    lo = maximize_entropy(ngon, cfg)
    hi = maximize_entropy(ngon, cfg, direction="max-relative-entropy")
    rot = np.pi / n
    dual = nv @ np.array([[np.cos(rot), -np.sin(rot), 0], [np.sin(rot), np.cos(rot), 0], [0, 0, 1]]).T
    rows.append({
        "povm": "regular n-gon (n->inf)",
        "min_config": identify_qubit_configuration(_global_bloch(lo), nv, f"{n}-gon"),
        "min": lo.best_relative_entropy,
        "max_config": "dual n-gon" if same_point_set(_global_bloch(hi), dual, 1e-6) else "unidentified",
        "max": ngon_limit_max_relative_entropy(),
    })

    for name in HS_ROWS:
        povm = catalog.hs_povm(name)
        vs = povm_bloch_vectors(povm)
        lo = maximize_entropy(povm, cfg)
        hi = maximize_entropy(povm, cfg, direction="max-relative-entropy")
        rows.append({
            "povm": name,
            "min_config": identify_qubit_configuration(_global_bloch(lo), vs, name),
            "min": lo.best_relative_entropy,
            "max_config": identify_qubit_configuration(_global_bloch(hi), vs, name),
            "max": hi.best_value,
        })
    return rows


def render_hs_table(rows: list[dict]) -> str:
    lines = ["POVM configuration | minimal configuration | minimum | maximal configuration | maximum"]
    for r in rows:
        lines.append(f"{r['povm']} | {r['min_config']} | {fmt(r['min'])} | {r['max_config']} | {fmt(r['max'])}")
    lines.append(f"average relative entropy | {fmt(jones_average(2))}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SIC table


def _orbit_states(povm, psi) -> np.ndarray:
    disp = povm.metadata.get("construction", "")
    d = povm.dim
    if disp.startswith("qubit_pauli"):
        ops = catalog.qubit_pauli_displacements(d)
    else:
        ops = catalog.weyl_heisenberg_displacements(d)
    return np.array([D @ psi for _, D in ops])


def _is_sic_orbit(povm, psi) -> bool:
    vecs = _orbit_states(povm, psi)
    effects = np.einsum("ki,kj->kij", vecs, vecs.conj()) / povm.dim
    return sic_gram_residual(effects)[0] < 1e-7


def identify_sic_configuration(povm, states: np.ndarray, sic_name: str, minimal: bool) -> str:
    d = povm.dim
    sic_states = np.array([np.linalg.eigh(E)[1][:, -1] for E in povm.effects])
    overlaps = np.abs(states.conj() @ sic_states.T) ** 2
    if np.all(overlaps.max(axis=1) > 1 - 1e-6):
        return sic_name
    if minimal:
        return "unidentified"
    G = np.abs(states.conj() @ states.T) ** 2
    off = G[~np.eye(len(states), dtype=bool)]
    if len(states) == d and np.all(off < 1e-6):
        return "orthonormal basis"
    if len(states) == d * (d + 1) and np.all((off < 1e-6) | (np.abs(off - 1 / d) < 1e-6)):
        return f"complete {d}-MUB"
    if _is_sic_orbit(povm, states[0]):
        return f"'twin' {sic_name}"
    return "unidentified"


def sic_cases(dims, generic_t: float = 0.3, hoggar_path=None) -> list[tuple[str, object, str]]:
    cases = []
    for d in dims:
        if d == 2:
            cases.append(("2", catalog.builtin_sic("tetrahedral"), "2-SIC"))
        elif d == 3:
            cases.append(("3 (generic)", catalog.builtin_sic("generic3", t=generic_t), "generic 3-SIC"))
            cases.append(("3 (Hesse)", catalog.builtin_sic("hesse"), "Hesse 3-SIC"))
        elif d == 8:
            path = hoggar_path or catalog.hoggar_fiducial_path()
            cases.append(("8 (Hoggar)", catalog.builtin_sic("hoggar", path=path), "Hoggar 8-SIC"))
        else:
            cases.append((str(d), None, f"{d}-SIC"))
    return cases


def sic_rows(dims=(2, 3, 8), generic_t: float = 0.3, hoggar_path=None, starts: int = 64, seed: int = 0) -> list[dict]:
    rows = []
    for label, povm, name in sic_cases(dims, generic_t, hoggar_path):
        d = int(label.split()[0])
        row = {
            "dimension": label,
            "min_config": name,
            "min": sic_min_relative_entropy(d),
            "average": jones_average(d),
            "max_config": "?",
            "max": None,
            "bound": sic_max_relative_entropy_bound(d),
        }
        if povm is not None:
            n = max(starts // 4, 8) if d > 3 else starts
            cfg = OptConfig(starts=n, seed=seed)
            lo = maximize_entropy(povm, cfg)
            hi = maximize_entropy(povm, cfg, direction="max-relative-entropy")
            lo_states = np.array([c.state.amplitudes for c in lo.global_clusters])
            hi_states = np.array([c.state.amplitudes for c in hi.global_clusters])
            row["min_config"] = identify_sic_configuration(povm, lo_states, name, minimal=True)
            row["min_optimizer"] = lo.best_relative_entropy
            row["max_config"] = identify_sic_configuration(povm, hi_states, name, minimal=False)
            row["max"] = hi.best_value
        rows.append(row)
    return rows


def render_sic_table(rows: list[dict]) -> str:
    lines = ["dimension | minimal configuration | minimum | average | maximal configuration | maximum"]
    for r in rows:
        mx = fmt(r["max"]) if r["max"] is not None else f"<= {fmt(r['bound'])} (probably not achievable)"
        lines.append(f"{r['dimension']} | {r['min_config']} | {fmt(r['min'])} | {fmt(r['average'])} | {r['max_config']} | {mx}")
    lines.append("d | d-SIC | ln d - ((d-1)/d) ln(d+1) | ln d - sum_{j=2..d} 1/j | ? | <= ln(2d/(d+1))")
    lines.append(f"d -> inf | | {fmt(0.0)} | {fmt(jones_average_limit())} | | <= {fmt(np.log(2))}")
    return "\n".join(lines) + "\n"
