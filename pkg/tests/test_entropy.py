import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from povmlab import catalog
from povmlab.bloch import bloch_coords, povm_bloch_vectors
from povmlab.entropy import (
    Ensemble,
    alpha_entropy,
    entropy,
    entropy_from_bloch,
    h_function,
    index_of_coincidence,
    joint_table,
    jones_average,
    mutual_information,
    relative_entropy,
    shannon_entropy,
    sic_max_relative_entropy_bound,
    sic_min_relative_entropy,
)
from povmlab.quantum import (
    DimensionMismatch,
    StructuralError,
    haar_random_states,
    maximally_mixed,
    outcome_probabilities,
)

SIC_NAMES = ["tetrahedral", "hesse", "generic3:0.3", "hoggar"]


def shannon_oracle(p):
    return -sum(x * math.log(x) for x in p if x > 0)


def states_of(povm):
    return [np.linalg.eigh(E)[1][:, -1] for E in povm.effects]


def test_shannon_examples():
    assert shannon_entropy([0.25] * 4) == pytest.approx(math.log(4), abs=1e-15)
    assert shannon_entropy([1, 0, 0]) == 0
    assert shannon_entropy([0.5, 1 / 6, 1 / 6, 1 / 6]) == pytest.approx(1.242453, abs=1e-6)
    assert shannon_entropy([0.5, 1 / 6, 1 / 6, 1 / 6]) == pytest.approx(0.5 * math.log(2) + 0.5 * math.log(6), abs=1e-15)


def test_shannon_rejects_negative():
    with pytest.raises(StructuralError):
        shannon_entropy([1.1, -0.1])
    assert shannon_entropy([1.0, -1e-13]) == 0


def test_relative_entropy_examples(tetra_sic):
    psi = states_of(tetra_sic)[0]
    assert relative_entropy(psi, tetra_sic) == pytest.approx(0.14384, abs=5e-6)
    octa = catalog.hs_povm("octahedron")
    cube_vertex = catalog.polyhedron("cube").vertices[0]
    from povmlab.bloch import pure_state_from_bloch

    assert relative_entropy(pure_state_from_bloch(cube_vertex), octa) == pytest.approx(0.17744, abs=5e-6)
    for name in ("cube", "hesse", "hoggar"):
        povm = catalog.by_name(name)
        assert relative_entropy(maximally_mixed(povm.dim), povm) == pytest.approx(0, abs=1e-14)


def test_h_function():
    assert h_function(1, 2) == 0
    assert h_function(-1, 2) == 0
    assert h_function(0, 2) == pytest.approx(0.346574, abs=1e-6)
    with pytest.raises(ValueError):
        h_function(-0.6, 3)
    with pytest.raises(ValueError):
        h_function(1.01, 2)


def test_entropy_from_bloch_examples(tetra_sic):
    vs = povm_bloch_vectors(tetra_sic)
    assert entropy_from_bloch(vs[0], vs, 2) == pytest.approx(1.242453, abs=1e-6)
    digon = povm_bloch_vectors(catalog.ngon_povm(2))
    assert entropy_from_bloch(np.array([0, 0.6, 0.8]), digon, 2) == pytest.approx(math.log(2), abs=1e-15)
    with pytest.raises(DimensionMismatch):
        entropy_from_bloch(np.zeros(8), vs, 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["cube", "icosidodecahedron", "tetrahedral", "hesse", "generic3:0.3", "hoggar", "ngon:5"]),
       st.integers(0, 2**31))
def test_bloch_form_matches_operator_form(name, seed):
    povm = catalog.by_name(name)
    psi = haar_random_states(povm.dim, 1, np.random.default_rng(seed))[0]
    u = bloch_coords(psi[None])[0]
    direct = shannon_oracle(outcome_probabilities(psi, povm))
    assert entropy_from_bloch(u, povm_bloch_vectors(povm), povm.dim) == pytest.approx(direct, abs=1e-10)


def test_alpha_entropy_examples():
    p = np.full(4, 0.25)
    for a in (1 - 1e-4, 1 + 1e-4):
        assert alpha_entropy(p, a, "tsallis") == pytest.approx(math.log(4), abs=1e-3)
    q = np.array([0.5, 0.3, 0.2])
    for a in (1 - 1e-6, 1 + 1e-6):
        assert alpha_entropy(q, a, "tsallis") == pytest.approx(shannon_oracle(q), abs=1e-6)
        assert alpha_entropy(q, a, "renyi") == pytest.approx(shannon_oracle(q), abs=1e-6)
    assert alpha_entropy([1, 0], 0.5, "tsallis") == 0
    assert alpha_entropy([0.5, 0.5], 0.5, "renyi") == pytest.approx(math.log(2), abs=1e-15)
    with pytest.raises(ValueError):
        alpha_entropy(p, 2.0)
    with pytest.raises(ValueError):
        alpha_entropy(p, 0.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0.001, 1), min_size=2, max_size=8), st.floats(0.05, 1.95))
def test_alpha_entropy_oracles(w, alpha):
    p = np.array(w) / sum(w)
    ts = sum((x - x**alpha) / (alpha - 1) for x in p) if alpha != 1 else shannon_oracle(p)
    rn = math.log(sum(x**alpha for x in p)) / (1 - alpha) if alpha != 1 else shannon_oracle(p)
    assert alpha_entropy(p, alpha, "tsallis") == pytest.approx(ts, rel=1e-10, abs=1e-12)
    assert alpha_entropy(p, alpha, "renyi") == pytest.approx(rn, rel=1e-10, abs=1e-12)


def test_index_of_coincidence_examples():
    assert index_of_coincidence(np.full(7, 1 / 7)) == pytest.approx(1 / 7)


@pytest.mark.parametrize("name", SIC_NAMES)
def test_sic_index_of_coincidence_constant(name):
    povm = catalog.by_name(name)
    d = povm.dim
    psi = haar_random_states(d, 1000, np.random.default_rng(7))
    p = np.einsum("ni,kij,nj->nk", psi.conj(), povm.effects, psi).real
    np.testing.assert_allclose(index_of_coincidence(p), 2 / (d * (d + 1)), atol=1e-10)
    if d in (2, 3):
        assert 2 / (d * (d + 1)) == pytest.approx({2: 1 / 3, 3: 1 / 6}[d])


def mi_oracle(P):
    r, c = P.sum(axis=1), P.sum(axis=0)
    out = 0.0
    for i in range(P.shape[0]):
        for j in range(P.shape[1]):
            if P[i, j] > 0:
                out += P[i, j] * math.log(P[i, j] / (r[i] * c[j]))
    return out


def test_mutual_information_examples(tetra_sic):
    s = states_of(tetra_sic)
    pgm = Ensemble(np.full(4, 0.25), [2 * E for E in tetra_sic.effects])
    assert mutual_information(pgm, tetra_sic) == pytest.approx(0.14384, abs=5e-6)
    twin_vs = -povm_bloch_vectors(tetra_sic)
    from povmlab.bloch import pure_state_from_bloch

    twin = Ensemble.uniform([pure_state_from_bloch(v) for v in twin_vs])
    assert mutual_information(twin, tetra_sic) == pytest.approx(0.28768, abs=5e-6)
    assert mutual_information(Ensemble.uniform([s[0]]), tetra_sic) == pytest.approx(0, abs=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(1, 5), st.integers(0, 2**31))
def test_mutual_information_matches_kl_form(d, n, seed):
    rng = np.random.default_rng(seed)
    povm = catalog.fourier_pvm(d)
    w = rng.random(n) + 0.05
    ens = Ensemble(w / w.sum(), list(haar_random_states(d, n, rng)))
    P = joint_table(ens, povm)
    mi = mutual_information(ens, povm)
    assert mi == pytest.approx(mi_oracle(P), abs=1e-12)
    assert -1e-12 <= mi <= math.log(d) + 1e-12


def test_mutual_information_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mutual_information(Ensemble.uniform([np.array([1, 0, 0])]), catalog.standard_pvm(2))


@pytest.mark.parametrize("d, value", [(2, 0.193147), (3, 0.265279), (8, 0.361585)])
def test_jones_average(d, value):
    assert jones_average(d) == pytest.approx(value, abs=1e-6)


@pytest.mark.parametrize("d, value", [(2, 0.143841), (3, 0.174416), (8, 0.156870)])
def test_sic_min_closed_form(d, value):
    assert sic_min_relative_entropy(d) == pytest.approx(value, abs=1e-6)


def test_sic_min_decreases_to_zero():
    vals = [sic_min_relative_entropy(d) for d in (4, 10, 100, 10**4, 10**6)]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-4
    assert sic_max_relative_entropy_bound(2) == pytest.approx(math.log(4 / 3))


@pytest.mark.parametrize("name", SIC_NAMES)
def test_sic_state_matches_closed_form(name):
    povm = catalog.by_name(name)
    for psi in states_of(povm)[:5]:
        assert relative_entropy(psi, povm) == pytest.approx(sic_min_relative_entropy(povm.dim), abs=1e-10)
        assert entropy(psi, povm) == pytest.approx(math.log(povm.outcomes) - sic_min_relative_entropy(povm.dim),
                                                   abs=1e-10)
