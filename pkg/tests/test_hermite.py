import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from povmlab.certify.hermite import (
    HermiteSpec,
    ScalarFunction,
    check_from_above,
    eta_derivative,
    from_above_spec,
    h_target,
    hermite_interpolate,
    node_reproduction_error,
    theta_target,
)
from povmlab.entropy import eta


def confluent_vandermonde(spec, f):
    """Monomial coefficients of the Hermite interpolant from a direct linear solve."""
    n = spec.total_multiplicity
    A, rhs = [], []
    for t, m in spec.nodes:
        for l in range(m):
            row = [0.0] * n
            for j in range(l, n):
                row[j] = math.factorial(j) / math.factorial(j - l) * t ** (j - l)
            A.append(row)
            rhs.append(float(f.derivative(l, t)))
    return np.linalg.solve(np.array(A), np.array(rhs))


def square():
    return ScalarFunction("t^2", (-1.0, 1.0), lambda l, t: [t**2, 2 * t, 2.0 + 0 * t][l] if l < 3 else 0 * t)


def test_polynomial_reproduces_itself():
    spec = HermiteSpec(((0.0, 2), (1.0, 1)), (-1.0, 1.0))
    p = hermite_interpolate(spec, square())
    np.testing.assert_allclose(p.monomial_coefficients()[:3], [0, 0, 1], atol=1e-14)
    ts = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(p(ts), ts**2, atol=1e-14)


def test_tetrahedral_quadratic():
    f = h_target(2)
    spec = HermiteSpec(((-1 / 3, 2), (1.0, 1)), f.interval)
    p = hermite_interpolate(spec, f)
    assert p.degree <= 2
    assert p(-1 / 3) == pytest.approx(0.366204, abs=1e-6)
    assert p(-1 / 3) == pytest.approx(float(eta(1 / 3)), abs=1e-14)
    assert p(1.0) == pytest.approx(0, abs=1e-14)
    np.testing.assert_allclose(p.monomial_coefficients()[:3], confluent_vandermonde(spec, f), atol=1e-12)


def test_cube_octahedron_cubic():
    f = h_target(2)
    s = 1 / math.sqrt(3)
    spec = HermiteSpec(((-s, 2), (s, 2)), f.interval)
    p = hermite_interpolate(spec, f)
    assert p.degree <= 3
    np.testing.assert_allclose(p.monomial_coefficients()[:4], confluent_vandermonde(spec, f), atol=1e-12)
    assert node_reproduction_error(p, spec, f) < 1e-12


def test_errors():
    with pytest.raises(ValueError):
        HermiteSpec(((0.0, 2), (0.0, 1)), (-1.0, 1.0))
    spec = HermiteSpec(((0.0, 2), (1.0, 1)), (-1.0, 1.0))
    with pytest.raises(ValueError):
        hermite_interpolate(spec, [[0.0], [1.0]])
    with pytest.raises(ValueError):
        hermite_interpolate(spec, [[0.0, 0.0]])


def test_values_as_lists_match_function():
    f = h_target(3)
    spec = from_above_spec([-0.3, 0.2, 1.0], f)
    data = [[float(f.derivative(l, t)) for l in range(m)] for t, m in spec.nodes]
    a, b = hermite_interpolate(spec, f), hermite_interpolate(spec, data)
    np.testing.assert_allclose(a.coeffs, b.coeffs)


def test_from_above_examples():
    f = h_target(2)
    spec = from_above_spec([-1 / 3, 1.0], f)
    p = hermite_interpolate(spec, f)
    assert check_from_above(p, f, nodes=spec.nodes)["ok"]
    low = check_from_above(p.shifted(-0.01), f, nodes=spec.nodes)
    assert not low["ok"] and low["min_gap"] < 0
    g = theta_target(1.5, 2)
    q = hermite_interpolate(from_above_spec([-1 / 3, 1.0], g), g)
    assert check_from_above(q, g, nodes=spec.nodes)["ok"]


def test_eta_derivative_examples():
    assert eta_derivative(2, 0.5) == pytest.approx(-2)
    assert eta_derivative(3, 1.0) == pytest.approx(1)
    assert eta_derivative(1, 1 / math.e) == pytest.approx(0, abs=1e-15)
    with pytest.raises(ValueError):
        eta_derivative(0, 0.5)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.floats(0.01, 0.99))
def test_eta_derivative_finite_difference(l, x):
    h = 1e-5
    fd = (eta_derivative(l, x + h) - eta_derivative(l, x - h)) / (2 * h) if l >= 1 else None
    assert fd == pytest.approx(eta_derivative(l + 1, x), rel=1e-4, abs=1e-6)


def from_above_nodes(d, raw, sep=0.15):
    """Interior nodes in (a, 1), kept ``sep`` apart from each other and from 1."""
    a = -1 / (d - 1)
    ts = []
    for t in sorted(a + (1 - a) * (0.02 + 0.9 * r) for r in raw):
        if (not ts or t - ts[-1] >= sep) and 1 - t >= sep:
            ts.append(t)
    return ts + [1.0]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 8]), st.lists(st.floats(0, 1), min_size=1, max_size=4))
def test_from_above_interpolants_dominate_h(d, raw):
    """Doubled interior nodes plus a single node at 1 always interpolate h from above."""
    nodes = from_above_nodes(d, raw)
    assume(len(nodes) >= 2)  # the remainder argument needs an interior node
    f = h_target(d)
    spec = from_above_spec(nodes, f)
    assert spec.is_from_above_shape()
    p = hermite_interpolate(spec, f)
    assert node_reproduction_error(p, spec, f) < 1e-8
    grid = np.linspace(*f.interval, 1000)
    assert np.min(p(grid) - f(grid)) >= -1e-10
    assert check_from_above(p, f, nodes=spec.nodes)["ok"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.lists(st.floats(0, 1), min_size=1, max_size=3))
def test_error_sign_matches_remainder_formula(d, raw):
    """f - p has the sign of f^(n)(xi) * prod (t - t_i)^(m_i): odd n and a single node at 1 give f <= p."""
    nodes = from_above_nodes(d, raw)
    assume(len(nodes) >= 2)
    f = h_target(d)
    spec = from_above_spec(nodes, f)
    n = spec.total_multiplicity
    assert n % 2 == 1
    xs = np.linspace(0.05, 1, 50)
    assert np.all(eta_derivative(n, xs) > 0)  # odd order derivatives of eta are positive
    p = hermite_interpolate(spec, f)
    ts = np.linspace(*f.interval, 500)
    w = np.prod([(ts - t) ** m for t, m in spec.nodes], axis=0)
    assert np.all(w <= 1e-15)
    assert np.all(f(ts) - p(ts) <= 1e-10)


def test_from_above_shape_rejects_left_endpoint():
    f = h_target(2)
    spec = HermiteSpec(((-1.0, 2), (1.0, 1)), f.interval)
    assert not spec.is_from_above_shape()
