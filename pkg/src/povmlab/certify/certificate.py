"""Optimality certificates for entropy maximizers via Hermite interpolation from above.

The per-outcome entropy term is replaced by a polynomial ``p`` that touches
it exactly at the overlaps ``w . v_j`` of a candidate ``w`` and dominates it
elsewhere. Summed over the POVM this gives a polynomial ``P >= H`` on the
Bloch set with ``P(w) = H(w)``, so ``w`` is a global maximizer of ``H`` once
``P`` is shown to peak on the candidate orbit: either ``P`` is constant, or
``P|S^2 = A + B * Inv`` for a primary invariant whose extremal orbit contains
the candidate and ``B`` has the matching sign.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .. import tolerances as _tol
from ..bloch import povm_bloch_vectors
from ..catalog import polyhedron
from ..entropy import entropy_from_bloch
from ..quantum import Povm
from .designs import is_t_design, random_bloch_points
from .groups import (
    HS_GROUP,
    extremal_role,
    group_orbit,
    primary_invariant,
    symmetry_group,
)
from .hermite import (
    check_from_above,
    from_above_spec,
    h_target,
    hermite_interpolate,
    node_reproduction_error,
    theta_target,
)


class CertificateError(RuntimeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def node_set(vs, w, tol: float | None = None) -> dict:
    """Overlaps ``w . v`` clustered into distinct values with multiplicities."""
    tol = _tol.TOL.cluster if tol is None else tol
    dots = np.sort(np.asarray(vs, float) @ np.asarray(w, float))
    groups: list[list[float]] = []
    for x in dots:
        if groups and x - groups[-1][-1] <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    values = [float(np.mean(g)) for g in groups]
    values = [1.0 if abs(v - 1) <= tol else -1.0 if abs(v + 1) <= tol else v for v in values]
    return {"multiset": dots.tolist(), "values": values, "multiplicities": [len(g) for g in groups]}


@dataclass
class CertificateReport:
    povm_label: str
    candidate_orbit: list
    nodes: dict
    interpolant: dict
    from_above_ok: bool
    decomposition: dict
    sign_verdict: str
    certified_value: float
    entropy_at_candidate: float
    residuals: dict = field(default_factory=dict)
    design: dict = field(default_factory=dict)
    valid: bool = False

    @property
    def certified_relative_entropy(self) -> float:
        """``ln k - certified_value``; only meaningful for Shannon certificates."""
        return float(np.log(self.nodes["k"]) - self.certified_value)

    def to_dict(self) -> dict:
        return asdict(self)


def _candidate_vectors(povm: Povm, vs: np.ndarray, candidate) -> np.ndarray:
    if isinstance(candidate, str):
        if candidate == "self":
            return vs.copy()
        if candidate == "twin":
            return -vs
        if povm.dim != 2:
            raise ValueError("named polyhedral candidates exist only for qubits")
        return polyhedron(candidate).vertices.copy()
    w = np.atleast_2d(np.asarray(candidate, float))
    if np.any(np.abs(np.linalg.norm(w, axis=1) - 1) > _tol.TOL.structural):
        raise ValueError("candidate vectors must be unit norm")
    return w


def build_certificate(
    povm: Povm,
    candidate="self",
    alpha: float | None = None,
    strict: bool = True,
    seed: int = 0,
) -> CertificateReport:
    """Certify that ``candidate`` (an orbit of Bloch vectors) maximizes the entropy of ``povm``.

    ``candidate`` is ``"self"`` (the POVM's own states, the SIC case), a
    polyhedron name for qubits, or an array of unit Bloch vectors. With
    ``alpha`` the Tsallis entropy is certified instead of Shannon's. Raises
    :class:`CertificateError` on failure unless ``strict=False``.
    """
    t = _tol.TOL
    vs = povm_bloch_vectors(povm)
    d, k = povm.dim, povm.outcomes
    W = _candidate_vectors(povm, vs, candidate)
    w = W[0]

    if alpha is None:
        f = h_target(d)
        offset, scale = np.log(k / d), d / k

        def true_entropy(U):
            return entropy_from_bloch(U, vs, d, k)

    else:
        f = theta_target(alpha, d, k)
        offset, scale = 0.0, 1.0

        def true_entropy(U):
            return f(np.clip(np.atleast_2d(U) @ vs.T, -1 / (d - 1), 1)).sum(axis=1)

    ns = node_set(vs, w)
    ns["k"] = k
    spec = from_above_spec(ns["values"], f)
    if not spec.is_from_above_shape():
        # a node at -1/(d-1) (an orthogonal POVM state) rules out interpolation from above
        msg = f"node set {ns['values']} does not admit interpolation from above"
        report = CertificateReport(
            povm_label=povm.label, candidate_orbit=W.tolist(), nodes=ns, interpolant={},
            from_above_ok=False, decomposition={"kind": "none"}, sign_verdict="n/a",
            certified_value=float("nan"), entropy_at_candidate=float(true_entropy(w[None])[0]),
            residuals={"problem": msg},
        )
        if strict:
            raise CertificateError(msg, report)
        return report
    p = hermite_interpolate(spec, f)
    node_err = node_reproduction_error(p, spec, f)
    above = check_from_above(p, f, nodes=spec.nodes)
    deg_bound = spec.total_multiplicity - 1

    def P(U):
        U = np.atleast_2d(U)
        return offset + scale * p(U @ vs.T).sum(axis=1)

    rng = np.random.default_rng(seed)
    U = random_bloch_points(d, t.fit_points, rng)
    PU = P(U)
    spread = float(PU.max() - PU.min())
    Pw = float(P(w)[0])
    Hw = float(true_entropy(w[None])[0])
    dominance = float(np.min(PU - true_entropy(U)))

    decomposition: dict
    if spread <= t.fit_residual:
        decomposition = {"kind": "constant", "invariant": None, "A": float(PU.mean()), "B": 0.0,
                         "residual": spread}
        sign_verdict = "n/a (constant)"
        sign_ok = True
    else:
        if d != 2:
            raise CertificateError("non-constant bounding polynomial outside d = 2 is not supported")
        group_name, inv = HS_GROUP.get(povm.metadata.get("polyhedron", povm.label), (None, None))
        if inv is None:
            raise CertificateError(f"no invariant decomposition known for POVM {povm.label!r}")
        v0 = vs[0]
        Iw, Iv = float(primary_invariant(inv, w)), float(primary_invariant(inv, v0))
        Pv = float(P(v0)[0])
        B = (Pw - Pv) / (Iw - Iv)
        A = Pw - B * Iw
        resid = float(np.max(np.abs(PU - (A + B * primary_invariant(inv, U)))))
        role = extremal_role(inv, w)
        if role == "max":
            sign_ok = B > 0
        elif role == "min":
            sign_ok = B < 0
        else:
            sign_ok = False
        sign_verdict = f"candidate on {inv} {role or 'non-extremal'} orbit, B {'>' if B > 0 else '<'} 0: " + (
            "consistent" if sign_ok else "inconsistent"
        )
        decomposition = {
            "kind": "A_plus_B_invariant",
            "invariant": inv,
            "group": group_name,
            "A": A,
            "B": B,
            "residual": resid,
            "fit_points": {"candidate": w.tolist(), "povm_vertex": v0.tolist(),
                           "P_candidate": Pw, "P_povm_vertex": Pv},
        }

    design = {"t2": bool(is_t_design(vs, 2)), "orbit_size": len(W)}
    if d == 2:
        group_name = HS_GROUP.get(povm.metadata.get("polyhedron", povm.label), (None, None))[0]
        if group_name:
            orbit = group_orbit(symmetry_group(group_name), w)
            design["candidate_orbit_size"] = len(orbit)
            design["candidate_t2"] = bool(is_t_design(orbit, 2))

    report = CertificateReport(
        povm_label=povm.label,
        candidate_orbit=W.tolist(),
        nodes=ns,
        interpolant={
            "function": f.name,
            "spec": [list(n) for n in spec.nodes],
            "newton_coefficients": p.coeffs.tolist(),
            "newton_centers": p.centers.tolist(),
            "monomial_coefficients": p.monomial_coefficients().tolist(),
            "degree": p.degree,
            "degree_bound": deg_bound,
        },
        from_above_ok=bool(above["ok"]),
        decomposition=decomposition,
        sign_verdict=sign_verdict,
        certified_value=Pw,
        entropy_at_candidate=Hw,
        residuals={
            "node_reproduction": node_err,
            "from_above_min_gap": above["min_gap"],
            "from_above_min_gap_off_nodes": above["min_gap_off_nodes"],
            "P_minus_H_min_on_samples": dominance,
            "certified_minus_entropy": abs(Pw - Hw),
        },
        design=design,
    )
    problems = []
    if node_err > t.node_match:
        problems.append(f"interpolant misses node data by {node_err:.2e}")
    if not report.from_above_ok:
        problems.append("interpolant does not dominate the entropy term")
    if decomposition["residual"] > t.fit_residual:
        problems.append(f"decomposition residual {decomposition['residual']:.2e} too large")
    if not sign_ok:
        problems.append(sign_verdict)
    if dominance < -t.structural:
        problems.append(f"bounding polynomial dips below the entropy by {-dominance:.2e}")
    if abs(Pw - Hw) > t.structural:
        problems.append("bounding polynomial does not touch the entropy at the candidate")
    report.valid = not problems
    if problems and strict:
        raise CertificateError("; ".join(problems), report)
    return report

