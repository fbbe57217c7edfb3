import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from povmlab import catalog
from povmlab.bloch import (
    bloch_coords,
    bloch_vector,
    povm_bloch_vectors,
    pure_state_from_bloch,
    state_from_bloch,
    traceless_basis,
)
from povmlab.quantum import (
    StructuralError,
    haar_random_states,
    maximally_mixed,
    outcome_probabilities,
)


def test_pole_convention():
    u = bloch_vector(np.diag([1.0, 0.0]).astype(complex))
    np.testing.assert_allclose(u.coords, [0, 0, 1], atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 8])
def test_maximally_mixed_is_origin(d):
    np.testing.assert_allclose(bloch_vector(maximally_mixed(d)).coords, 0, atol=1e-15)


def test_orthogonal_qubit_states_are_antipodal():
    u, v = bloch_coords(np.array([[1, 1j], [1, -1j]]) / np.sqrt(2))
    assert u @ v == pytest.approx(-1, abs=1e-14)


def test_state_from_bloch():
    np.testing.assert_allclose(state_from_bloch([0, 0, 1]).entries, np.diag([1, 0]), atol=1e-15)
    with pytest.raises(StructuralError):
        state_from_bloch([0, 0, 1.5])
    with pytest.raises(StructuralError):
        state_from_bloch(np.zeros(8))


def test_tetrahedral_fiducial_from_bloch(tetra_sic):
    rho = state_from_bloch(np.ones(3) / np.sqrt(3))
    p = outcome_probabilities(rho, tetra_sic)
    np.testing.assert_allclose(sorted(p), [1 / 6, 1 / 6, 1 / 6, 1 / 2], atol=1e-12)


@pytest.mark.parametrize("name, d", [("tetrahedral", 2), ("hesse", 3), ("generic3:0.7", 3), ("hoggar", 8)])
def test_sic_bloch_vectors_pairwise_dot(name, d):
    vs = povm_bloch_vectors(catalog.by_name(name))
    assert vs.shape == (d * d, d * d - 1)
    G = vs @ vs.T
    np.testing.assert_allclose(np.diag(G), 1, atol=1e-10)
    off = G[~np.eye(d * d, dtype=bool)]
    np.testing.assert_allclose(off, -1 / (d * d - 1), atol=1e-10)


def test_octahedron_round_trip():
    vs = povm_bloch_vectors(catalog.hs_povm("octahedron"))
    np.testing.assert_allclose(vs, catalog.polyhedron("octahedron").vertices, atol=1e-14)


def test_non_rank1_povm_rejected():
    with pytest.raises(StructuralError):
        povm_bloch_vectors(catalog.standard_pvm(2).__class__(np.array([np.eye(2)])))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_traceless_basis_orthonormal(d):
    B = traceless_basis(d)
    assert B.shape == (d * d - 1, d, d)
    G = np.einsum("aij,bji->ab", B, B)
    np.testing.assert_allclose(G, np.eye(d * d - 1), atol=1e-13)
    np.testing.assert_allclose(np.trace(B, axis1=1, axis2=2), 0, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 8]), st.integers(0, 2**31))
def test_inner_product_relation(d, seed):
    """tr(rho sigma) = ((d-1) u.v + 1)/d for pure states."""
    rng = np.random.default_rng(seed)
    a, b = haar_random_states(d, 2, rng)
    u, v = bloch_coords(np.stack([a, b]))
    direct = abs(np.vdot(a, b)) ** 2
    assert ((d - 1) * (u @ v) + 1) / d == pytest.approx(direct, abs=1e-10)
    assert np.linalg.norm(u) == pytest.approx(1, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.floats(0, np.pi), st.floats(0, 2 * np.pi))
def test_qubit_bloch_round_trip(theta, phi):
    u = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    psi = pure_state_from_bloch(u)
    np.testing.assert_allclose(bloch_coords(psi[None])[0], u, atol=1e-12)
