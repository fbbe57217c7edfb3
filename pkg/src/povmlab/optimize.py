"""Multi-start search for pure states of extreme measurement entropy."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import least_squares, linear_sum_assignment, minimize

from .bloch import bloch_coords, povm_bloch_vectors, pure_state_from_bloch
from .entropy import entropy_from_bloch, eta
from .quantum import Povm, PureState, StructuralError, haar_random_states

DIRECTIONS = ("max-entropy", "max-relative-entropy")


@dataclass(frozen=True)
class OptConfig:
    direction: str = "max-entropy"
    starts: int = 64
    step_tol: float = 1e-12
    value_tol: float = 1e-10
    cluster_fidelity: float = 1 - 1e-8
    global_tol: float = 1e-7  # optima within this of the best value count as global
    seed: int = 0
    kind: str = "shannon"  # shannon | tsallis | renyi
    alpha: float | None = None
    polish: bool = True  # gradient refinement of interior optima
    max_iter: int = 20000

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")
        if self.kind not in ("shannon", "tsallis", "renyi"):
            raise ValueError(f"unknown entropy kind {self.kind!r}")
        if self.kind != "shannon" and (self.alpha is None or not 0 < self.alpha < 2):
            raise ValueError("alpha-entropies need alpha in (0, 2)")


@dataclass
class Cluster:
    state: PureState
    value: float
    multiplicity: int

    @property
    def bloch(self) -> np.ndarray:
        return bloch_coords(self.state.amplitudes[None])[0]


@dataclass
class OptResult:
    optima: list  # (PureState, value) per converged start; value is H or ln k - H per direction
    clusters: list  # Cluster, best value first
    best_value: float
    config: OptConfig
    povm_label: str = ""
    outcomes: int = 0
    dropped: int = 0
    diagnostics: dict = field(default_factory=dict)

    @property
    def global_clusters(self) -> list:
        return [c for c in self.clusters if abs(c.value - self.best_value) <= self.config.global_tol]

    @property
    def best_relative_entropy(self) -> float:
        """``ln k - H`` at the best optimum (Shannon objective)."""
        return float(np.log(self.outcomes) - self.best_entropy)

    @property
    def best_entropy(self) -> float:
        if self.config.direction == "max-entropy":
            return self.best_value
        return float(np.log(self.outcomes) - self.best_value)

    def to_dict(self) -> dict:
        return {
            "povm": self.povm_label,
            "config": self.config.__dict__,
            "best_value": self.best_value,
            "dropped": self.dropped,
            "clusters": [
                {
                    "amplitudes": [[z.real, z.imag] for z in c.state.amplitudes],
                    "bloch": c.bloch.tolist(),
                    "value": c.value,
                    "multiplicity": c.multiplicity,
                }
                for c in self.clusters
            ],
        }


class _Objective:
    """Entropy functional of a POVM with an analytic gradient in ``R^(2d)``."""

    def __init__(self, povm: Povm, config: OptConfig):
        self.d, self.k = povm.dim, povm.outcomes
        # factor every effect as a sum of rank-1 terms F_r^dag F_r
        rows, owner = [], []
        for j, E in enumerate(povm.effects):
            w, V = np.linalg.eigh((E + E.conj().T) / 2)
            for lam, vec in zip(w, V.T):
                if lam > 1e-14:
                    rows.append(np.sqrt(lam) * vec.conj())
                    owner.append(j)
        self.F = np.array(rows)
        self.owner = np.array(owner)
        self.kind, self.alpha = config.kind, config.alpha
        self.sign = 1.0 if config.direction == "max-entropy" else -1.0

    def probabilities(self, psi: np.ndarray) -> np.ndarray:
        amp = self.F @ psi
        return np.bincount(self.owner, weights=(amp.conj() * amp).real, minlength=self.k)

    def entropy(self, p: np.ndarray) -> float:
        p = np.clip(p, 0.0, None)
        if self.kind == "shannon":
            return float(eta(p).sum())
        a = self.alpha
        if self.kind == "tsallis":
            return float(((p - p**a) / (a - 1)).sum())
        return float(np.log((p**a).sum()) / (1 - a))

    def dentropy(self, p: np.ndarray) -> np.ndarray:
        a = self.alpha
        if self.kind == "shannon":
            return -np.log(p) - 1
        if self.kind == "tsallis":
            return (1 - a * p ** (a - 1)) / (a - 1)
        return a * p ** (a - 1) / ((1 - a) * (p**a).sum())

    def value(self, psi) -> float:
        """Objective to maximize (entropy or its negative)."""
        return self.sign * self.entropy(self.probabilities(psi))

    def reported(self, psi) -> float:
        """``H`` for max-entropy runs, ``ln k - H`` for max-relative-entropy runs."""
        h = self.entropy(self.probabilities(psi))
        return h if self.sign > 0 else float(np.log(self.k) - h)

    # real parametrization z = x[:d] + i x[d:], state z/|z|
    def neg_value_and_grad(self, x):
        d = self.d
        z = x[:d] + 1j * x[d:]
        nz2 = np.vdot(z, z).real
        psi = z / np.sqrt(nz2)
        p = self.probabilities(psi)
        g_p = self.dentropy(np.clip(p, 1e-300, None))
        # sum_j g_j (Pi_j z - p_j z) / |z|^2
        amp = self.F @ z
        Pz = self.F.conj().T @ (g_p[self.owner] * amp)
        vec = 2 * (Pz - (g_p @ p) * z) / nz2
        grad = np.concatenate([vec.real, vec.imag])
        return -self.sign * self.entropy(p), -self.sign * grad


def _fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1 - 2 * i / n
    phi = np.pi * (1 + 5**0.5) * i
    r = np.sqrt(1 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _angles_to_state(a) -> np.ndarray:
    theta, phi = a
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def _params_to_state(x, d) -> np.ndarray:
    # x = (Re a_0, Re a_1..a_{d-1}, Im a_1..a_{d-1}); a_0 real
    z = np.empty(d, complex)
    z[0] = x[0]
    z[1:] = x[1:d] + 1j * x[d:]
    n = np.linalg.norm(z)
    return z / n if n > 0 else np.eye(d)[0].astype(complex)


def _state_to_params(psi) -> np.ndarray:
    psi = _fix_phase(psi)
    return np.concatenate([[psi[0].real], psi[1:].real, psi[1:].imag])


def _fix_phase(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, complex)
    j = int(np.argmax(np.abs(psi) > 1e-12))
    ph = psi[j] / abs(psi[j])
    out = psi / ph
    out[j] = abs(out[j])
    return out / np.linalg.norm(out)


def _start_points(d: int, config: OptConfig, rng: np.random.Generator) -> list[np.ndarray]:
    if d == 2:
        n_grid = (config.starts + 1) // 2
        pts = np.concatenate([_fibonacci_sphere(n_grid), _random_sphere(config.starts - n_grid, rng)])
        return [pure_state_from_bloch(u) for u in pts]
    return list(haar_random_states(d, config.starts, rng))


def _random_sphere(n, rng) -> np.ndarray:
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _local_search(obj: _Objective, psi0: np.ndarray, config: OptConfig):
    d = obj.d
    if d == 2:
        u = bloch_coords(psi0[None])[0]
        a0 = np.array([np.arccos(np.clip(u[2], -1, 1)), np.arctan2(u[1], u[0])])
        simplex = np.array([a0, a0 + [0.2, 0], a0 + [0, 0.2]])
        res = minimize(
            lambda a: -obj.value(_angles_to_state(a)),
            a0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": config.step_tol, "fatol": config.value_tol * 1e-3,
                     "maxiter": config.max_iter, "maxfev": config.max_iter},
        )
        psi = _angles_to_state(res.x)
    else:
        x0 = _state_to_params(psi0)
        simplex = np.vstack([x0] + [x0 + 0.1 * e for e in np.eye(len(x0))])
        res = minimize(
            lambda x: -obj.value(_params_to_state(x, d)),
            x0,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": config.step_tol, "fatol": config.value_tol * 1e-3,
                     "maxiter": config.max_iter * d, "maxfev": config.max_iter * d, "adaptive": True},
        )
        psi = _params_to_state(res.x, d)
    converged = bool(res.success)
    if config.polish and obj.probabilities(psi).min() > 1e-6:
        psi = _polish(obj, psi)
        converged = True
    return _fix_phase(psi), converged


def _polish(obj: _Objective, psi: np.ndarray) -> np.ndarray:
    """Drive the analytic gradient to zero near an interior optimum.

    Near a maximum the objective is flat to second order, so value-based line
    searches stall with the position resolved only to ~1e-8; the gradient is
    first order in the offset and keeps resolving it well below that.
    """
    d = obj.d
    x0 = np.concatenate([psi.real, psi.imag])
    sol = least_squares(lambda x: obj.neg_value_and_grad(x)[1], x0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    cand = (sol.x[:d] + 1j * sol.x[d:]) / np.linalg.norm(sol.x)
    # accept only a nearby point that does not lose objective value
    if abs(np.vdot(cand, psi)) ** 2 > 1 - 1e-6 and obj.value(cand) >= obj.value(psi) - 1e-14:
        return cand
    return psi


def _cluster(optima, threshold: float):
    order = sorted(range(len(optima)), key=lambda i: (-optima[i][1], tuple(np.round(optima[i][0].view(float), 9))))
    clusters: list[list] = []
    for i in order:
        psi, val = optima[i]
        for c in clusters:
            if abs(np.vdot(c[0], psi)) ** 2 >= threshold:
                c[2] += 1
                break
        else:
            clusters.append([psi, val, 1])
    return clusters


def maximize_entropy(povm: Povm, config: OptConfig | None = None, **overrides) -> OptResult:
    """Multi-start local ascent of the entropy (or relative entropy) over pure states.

    Each start runs a Nelder-Mead search (spherical angles for qubits,
    phase-fixed amplitudes otherwise). Starts that end in the smooth interior
    are then refined by solving for a zero of the analytic gradient.
    """
    config = replace(config or OptConfig(), **overrides)
    obj = _Objective(povm, config)
    rng = np.random.default_rng(config.seed)
    optima, dropped = [], 0
    for psi0 in _start_points(povm.dim, config, rng):
        psi, ok = _local_search(obj, psi0, config)
        if not ok:
            dropped += 1
            continue
        optima.append((psi, obj.reported(psi)))
    if not optima:
        raise RuntimeError("no optimizer start converged")
    raw = _cluster(optima, config.cluster_fidelity)
    clusters = [Cluster(PureState(_fix_phase(psi)), float(val), n) for psi, val, n in raw]
    best = max(v for _, v in optima)
    return OptResult(
        optima=[(PureState(psi), float(v)) for psi, v in optima],
        clusters=clusters,
        best_value=float(best),
        config=config,
        povm_label=povm.label,
        outcomes=povm.outcomes,
        dropped=dropped,
        diagnostics={"starts": config.starts, "converged": len(optima)},
    )


def _expected_states(expected) -> list[np.ndarray]:
    out = []
    for e in expected:
        if isinstance(e, PureState):
            out.append(e.amplitudes)
            continue
        a = np.asarray(e)
        if a.dtype.kind == "f" and a.shape == (3,):
            out.append(pure_state_from_bloch(a))
        else:
            out.append(np.asarray(a, complex))
    return out


def verify_maximizer_set(result: OptResult, expected, tol: float = 1e-8) -> dict:
    """Match global clusters against expected states by fidelity.

    ``expected`` holds :class:`PureState` objects, state vectors, or (for
    qubits) unit Bloch vectors.
    """
    found = [c.state.amplitudes for c in result.global_clusters]
    exp = _expected_states(expected)
    F = np.array([[abs(np.vdot(a, b)) ** 2 for b in exp] for a in found]) if found and exp else np.zeros((0, 0))
    rows, cols = linear_sum_assignment(-F) if F.size else (np.array([], int), np.array([], int))
    good = [(int(r), int(c)) for r, c in zip(rows, cols) if F[r, c] > 1 - tol]
    matched_r = {r for r, _ in good}
    matched_c = {c for _, c in good}
    return {
        "passed": len(found) == len(exp) and len(good) == len(exp),
        "found": len(found),
        "expected": len(exp),
        "matched": len(good),
        "min_fidelity": float(min((F[r, c] for r, c in good), default=float("nan"))),
        "unmatched_found": [i for i in range(len(found)) if i not in matched_r],
        "unmatched_expected": [i for i in range(len(exp)) if i not in matched_c],
    }


def landscape_scan(povm: Povm, resolution: int) -> np.ndarray:
    """Entropy over an equal-area (uniform ``z`` by uniform ``phi``) sphere grid.

    Returns rows ``(theta, phi, H, Hrel)``.
    """
    if povm.dim != 2:
        raise StructuralError("landscape_scan supports qubit POVMs only")
    n = int(resolution)
    if n < 2:
        raise ValueError("resolution must be >= 2")
    z = np.linspace(-1, 1, n)
    phi = 2 * np.pi * np.arange(2 * n) / (2 * n)
    Z, PHI = np.meshgrid(z, phi, indexing="ij")
    theta = np.arccos(Z).ravel()
    PHI = PHI.ravel()
    U = np.stack([np.sin(theta) * np.cos(PHI), np.sin(theta) * np.sin(PHI), np.cos(theta)], axis=1)
    vs = povm_bloch_vectors(povm)
    H = entropy_from_bloch(U, vs, 2)
    return np.stack([theta, PHI, H, np.log(povm.outcomes) - H], axis=1)


def landscape_csv(rows: np.ndarray) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "phi", "H", "Hrel"])
    for r in rows:
        w.writerow([f"{x:.12g}" for x in r])
    return buf.getvalue()
