"""Hermite interpolation with repeated nodes and interpolation-from-above checks."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .. import tolerances as _tol
from ..entropy import eta, tsallis_theta


def eta_derivative(l: int, x):
    """``l``-th derivative of ``eta(x) = -x ln x`` for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if l < 1:
        raise ValueError("derivative order must be >= 1")
    if l == 1:
        return -np.log(x) - 1
    return (-1) ** (l - 1) * factorial(l - 2) / x ** (l - 1)


def _falling(alpha: float, l: int) -> float:
    out = 1.0
    for i in range(l):
        out *= alpha - i
    return out


def theta_derivative(l: int, x, alpha: float):
    """``l``-th derivative of ``(x - x^alpha)/(alpha - 1)``."""
    x = np.asarray(x, dtype=float)
    if l == 0:
        return tsallis_theta(x, alpha)
    lin = 1.0 if l == 1 else 0.0
    return (lin - _falling(alpha, l) * x ** (alpha - l)) / (alpha - 1)


@dataclass(frozen=True)
class ScalarFunction:
    """A function of ``t`` on ``[a, b]`` together with all its derivatives."""

    name: str
    interval: tuple[float, float]
    derivative: Callable[[int, np.ndarray], np.ndarray]  # (order, t) -> value; order 0 is the function

    def __call__(self, t):
        return self.derivative(0, t)


def _prob_map(d: int, m: int):
    c = (d - 1) / m
    return c, lambda t: np.clip(c * np.asarray(t, float) + 1.0 / m, 0.0, None)


def h_target(d: int) -> ScalarFunction:
    """``h(t) = eta(((d-1) t + 1)/d)`` on ``[-1/(d-1), 1]``."""
    c, x = _prob_map(d, d)

    def deriv(l, t):
        if l == 0:
            return eta(x(t))
        return c**l * eta_derivative(l, x(t))

    return ScalarFunction(f"h(d={d})", (-1.0 / (d - 1), 1.0), deriv)


def theta_target(alpha: float, d: int, k: int | None = None) -> ScalarFunction:
    """``theta_alpha(((d-1) t + 1)/k)``: one outcome's share of the Tsallis entropy.

    With ``k`` omitted the map matches ``h`` (denominator ``d``).
    """
    if not 0 < alpha < 2 or alpha == 1:
        raise ValueError("alpha must lie in (0, 2) \\ {1}")
    c, x = _prob_map(d, k or d)

    def deriv(l, t):
        return c**l * theta_derivative(l, x(t), alpha)

    return ScalarFunction(f"theta(alpha={alpha:g},d={d},k={k or d})", (-1.0 / (d - 1), 1.0), deriv)


@dataclass(frozen=True)
class HermiteSpec:
    nodes: tuple[tuple[float, int], ...]
    interval: tuple[float, float]
    function: str = ""

    def __post_init__(self):
        ts = [t for t, _ in self.nodes]
        if any(m < 1 for _, m in self.nodes):
            raise ValueError("multiplicities must be positive")
        if len(set(ts)) != len(ts):
            raise ValueError("duplicate interpolation nodes")
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("nodes must be strictly increasing")
        a, b = self.interval
        if ts and (ts[0] < a or ts[-1] > b):
            raise ValueError("nodes outside the interval")

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.nodes)

    def is_from_above_shape(self, tol: float = 1e-12) -> bool:
        """Interior nodes doubled, right endpoint single, no node at the left endpoint."""
        a, b = self.interval
        ts = [t for t, _ in self.nodes]
        if ts[0] <= a + tol:
            return False
        *inner, (t_last, m_last) = self.nodes
        if any(m != 2 for _, m in inner):
            return False
        return m_last == (1 if abs(t_last - b) <= tol else 2)


def from_above_spec(node_values: Sequence[float], f: ScalarFunction, tol: float = 1e-12) -> HermiteSpec:
    """Nodes with multiplicity 2, except 1 at the right endpoint."""
    b = f.interval[1]
    ts = sorted(float(t) for t in node_values)
    nodes = tuple((t, 1 if abs(t - b) <= tol else 2) for t in ts)
    nodes = tuple((b if m == 1 else t, m) for t, m in nodes)
    return HermiteSpec(nodes, f.interval, f.name)


class Polynomial:
    """Polynomial in Newton form ``sum c_i prod_{j<i} (t - z_j)``."""

    def __init__(self, coeffs, centers):
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.centers = np.asarray(centers, dtype=float)

    @property
    def degree(self) -> int:
        nz = np.nonzero(np.abs(self.coeffs) > 1e-13 * max(1.0, np.abs(self.coeffs).max()))[0]
        return int(nz[-1]) if nz.size else 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.full_like(t, self.coeffs[-1])
        for c, z in zip(self.coeffs[-2::-1], self.centers[len(self.coeffs) - 2 :: -1]):
            out = c + (t - z) * out
        return out

    def to_numpy(self) -> np.polynomial.Polynomial:
        P = np.polynomial.Polynomial([0.0])
        basis = np.polynomial.Polynomial([1.0])
        for i, c in enumerate(self.coeffs):
            P = P + c * basis
            if i < len(self.centers):
                basis = basis * np.polynomial.Polynomial([-self.centers[i], 1.0])
        return P

    def monomial_coefficients(self) -> np.ndarray:
        return self.to_numpy().coef

    def derivative(self, order: int = 1):
        return self.to_numpy().deriv(order)

    def shifted(self, delta: float) -> "Polynomial":
        c = self.coeffs.copy()
        c[0] += delta
        return Polynomial(c, self.centers)


def hermite_interpolate(spec: HermiteSpec, values) -> Polynomial:
    """Newton divided differences with repeated nodes.

    ``values`` is either a :class:`ScalarFunction` or a sequence with one
    entry per node listing ``[f(t_i), f'(t_i), ...]`` up to order ``k_i - 1``.
    """
    if isinstance(values, ScalarFunction):
        data = [[float(values.derivative(l, t)) for l in range(m)] for t, m in spec.nodes]
    else:
        data = [list(map(float, v)) for v in values]
        if len(data) != len(spec.nodes):
            raise ValueError("one derivative list per node required")
        for (t, m), v in zip(spec.nodes, data):
            if len(v) < m:
                raise ValueError(f"node {t:g} needs {m} derivative values, got {len(v)}")
    z, owner = [], []
    for i, (t, m) in enumerate(spec.nodes):
        z += [t] * m
        owner += [i] * m
    n = len(z)
    Q = np.zeros((n, n))
    for i in range(n):
        Q[i, 0] = data[owner[i]][0]
    for j in range(1, n):
        for i in range(j, n):
            if owner[i] == owner[i - j]:
                Q[i, j] = data[owner[i]][j] / factorial(j)
            else:
                Q[i, j] = (Q[i, j - 1] - Q[i - 1, j - 1]) / (z[i] - z[i - j])
    return Polynomial(np.diag(Q).copy(), z[:-1])


def node_reproduction_error(p: Polynomial, spec: HermiteSpec, f: ScalarFunction) -> float:
    """Largest mismatch of ``p^(l)(t_i)`` against ``f^(l)(t_i)`` over the node data."""
    P = p.to_numpy()
    worst = 0.0
    for t, m in spec.nodes:
        for l in range(m):
            pl = P.deriv(l)(t) if l else p(t)
            worst = max(worst, abs(float(pl) - float(f.derivative(l, t))))
    return worst


def check_from_above(p, f: ScalarFunction, interval=None, nodes=None, grid_n: int | None = None) -> dict:
    """Grid check that ``p >= f`` on the interval.

    ``min_gap_off_nodes`` is the smallest gap more than five grid steps away
    from every node; it is reported for diagnostics only, since high-order
    contact can make a valid gap arbitrarily small between close nodes.
    """
    t = _tol.TOL
    a, b = interval or f.interval
    grid_n = grid_n or t.grid
    ts = np.linspace(a, b, grid_n)
    gap = p(ts) - f(ts)
    node_ts = np.array([n[0] if isinstance(n, tuple) else n for n in (nodes or [])], dtype=float)
    near_radius = 5 * (b - a) / grid_n
    if node_ts.size:
        dist = np.min(np.abs(ts[:, None] - node_ts[None]), axis=1)
        off = dist > near_radius
    else:
        off = np.ones_like(ts, dtype=bool)
    min_gap = float(gap.min())
    min_gap_off = float(gap[off].min()) if off.any() else float("inf")
    ok = min_gap >= -t.from_above
    return {"ok": ok, "min_gap": min_gap, "min_gap_off_nodes": min_gap_off}
