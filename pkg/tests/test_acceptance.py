"""Acceptance criteria, one test (and one summary line) per criterion.

Reference numbers are the published five-digit table values; tolerances are
the ones each criterion states.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from povmlab import catalog
from povmlab.bloch import bloch_coords, povm_bloch_vectors
from povmlab.certify import build_certificate, is_t_design
from povmlab.certify.certificate import node_set
from povmlab.certify.hermite import (
    check_from_above,
    from_above_spec,
    h_target,
    hermite_interpolate,
    node_reproduction_error,
)
from povmlab.cli import haar_average, main
from povmlab.entropy import (
    index_of_coincidence,
    jones_average,
    relative_entropy,
    sic_min_relative_entropy,
)
from povmlab.optimize import OptConfig, maximize_entropy, verify_maximizer_set
from povmlab.quantum import haar_random_states, validate_povm

GOLDEN = Path(__file__).parent / "golden"

# POVM: (min H~, minimizing orbit, max H~, maximizing orbit)
TABLE_HS = {
    "tetrahedron": (0.14384, "tetrahedron", 0.28768, "twin"),
    "octahedron": (0.17744, "cube", 0.23105, "octahedron"),
    "cube": (0.17744, "octahedron", 0.21576, "cube"),
    "cuboctahedron": (0.18443, "octahedron", 0.20273, "cuboctahedron"),
    "icosahedron": (0.18997, "dodecahedron", 0.20189, "icosahedron"),
    "dodecahedron": (0.18997, "icosahedron", 0.19686, "dodecahedron"),
    "icosidodecahedron": (0.19099, "icosahedron", 0.19486, "icosidodecahedron"),
}
SICS = ["tetrahedral", "hesse", "generic3:0.3", "hoggar"]
HS_STARTS = 256


def orbit(povm_name, spec):
    if spec == "twin":
        return -catalog.polyhedron(povm_name).vertices
    return catalog.polyhedron(spec).vertices


@pytest.fixture(scope="module")
def hs_runs():
    t0 = time.perf_counter()
    runs = {}
    for name in TABLE_HS:
        povm = catalog.hs_povm(name)
        cfg = OptConfig(starts=HS_STARTS, seed=0)
        runs[name] = (maximize_entropy(povm, cfg), maximize_entropy(povm, cfg, direction="max-relative-entropy"))
    return runs, time.perf_counter() - t0


def test_criterion_1_sic_closed_form(criterion):
    criterion("1 SIC closed form")
    t0 = time.perf_counter()
    for d, ref in [(2, 0.14384), (3, 0.17442), (8, 0.15687)]:
        assert round(sic_min_relative_entropy(d), 5) == ref
    worst = 0.0
    for name in SICS:
        povm = catalog.by_name(name)
        for E in povm.effects:
            psi = np.linalg.eigh(E)[1][:, -1]
            worst = max(worst, abs(relative_entropy(psi, povm) - sic_min_relative_entropy(povm.dim)))
    assert worst <= 1e-10
    criterion("1 SIC closed form", f"max |H~(SIC state) - closed form| = {worst:.1e}; {time.perf_counter() - t0:.1f}s")


def test_criterion_2_hs_extrema(criterion, hs_runs):
    criterion("2 HS-POVM extrema")
    runs, elapsed = hs_runs
    worst = 0.0
    for name, (lo_ref, lo_orbit, hi_ref, hi_orbit) in TABLE_HS.items():
        lo, hi = runs[name]
        worst = max(worst, abs(lo.best_relative_entropy - lo_ref), abs(hi.best_value - hi_ref))
        assert abs(lo.best_relative_entropy - lo_ref) <= 5e-5, name
        assert abs(hi.best_value - hi_ref) <= 5e-5, name
        assert verify_maximizer_set(lo, orbit(name, lo_orbit))["passed"], f"{name} min configuration"
        assert verify_maximizer_set(hi, orbit(name, hi_orbit))["passed"], f"{name} max configuration"
    assert elapsed < 120
    criterion("2 HS-POVM extrema", f"max table deviation {worst:.1e}, 14 configuration sets verified; {elapsed:.0f}s")


def test_criterion_3_certificates(criterion, hs_runs):
    criterion("3 certificates")
    runs, _ = hs_runs
    t0 = time.perf_counter()
    expected_sign = {"cuboctahedron": 1, "icosahedron": 1, "dodecahedron": -1, "icosidodecahedron": -1}
    worst_gap = -np.inf
    for name, (_, cand, _, _) in TABLE_HS.items():
        rep = build_certificate(catalog.hs_povm(name), cand)
        assert rep.valid and rep.from_above_ok
        assert rep.decomposition["residual"] < 1e-8
        if name in expected_sign:
            assert np.sign(rep.decomposition["B"]) == expected_sign[name], name
        else:
            assert rep.decomposition["kind"] == "constant", name
        values = [v for _, v in runs[name][0].optima]
        worst_gap = max(worst_gap, max(values) - rep.certified_value)
        assert max(values) <= rep.certified_value + 1e-8
        assert runs[name][0].best_value == pytest.approx(rep.certified_value, abs=1e-8)
    for name in SICS:
        povm = catalog.by_name(name)
        rep = build_certificate(povm, "self")
        assert rep.valid and rep.decomposition["kind"] == "constant"
        res = maximize_entropy(povm, OptConfig(starts=16 if povm.dim > 3 else 64))
        assert max(v for _, v in res.optima) <= rep.certified_value + 1e-8
    elapsed = time.perf_counter() - t0
    assert elapsed < 60
    criterion("3 certificates", f"11 certificates valid, max(optimizer - certified) = {worst_gap:.1e}; {elapsed:.0f}s")


@pytest.mark.parametrize("name, d, ref", [("cube", 2, 0.19315), ("hesse", 3, 0.26528)])
def test_criterion_4_jones_average(criterion, name, d, ref):
    criterion(f"4 Jones average d={d}")
    out = haar_average(catalog.by_name(name), 100_000, seed=0)
    assert round(jones_average(d), 5) == ref
    assert abs(out["estimate"] - jones_average(d)) <= 3 * out["stderr"]
    criterion(f"4 Jones average d={d}", f"{out['estimate']:.5f} +- {out['stderr']:.5f}, z = {out['z']:+.2f}")


def test_criterion_5_property_suites(criterion):
    criterion("5 property suites")
    rng = np.random.default_rng(2024)
    names = [*catalog.POLYHEDRA, "digon", "ngon:3", "ngon:5", "pvm:2", "pvm:3", *SICS]
    for n in names:
        assert validate_povm(catalog.by_name(n)).accepted or n.startswith("pvm")

    worst_rel = 0.0
    for d in (2, 3, 4, 8):
        a = haar_random_states(d, 500, rng)
        b = haar_random_states(d, 500, rng)
        u, v = bloch_coords(a), bloch_coords(b)
        lhs = np.abs(np.einsum("ni,ni->n", a.conj(), b)) ** 2
        worst_rel = max(worst_rel, np.max(np.abs(lhs - ((d - 1) * np.einsum("ni,ni->n", u, v) + 1) / d)))
    assert worst_rel <= 1e-10

    for n in SICS:
        assert is_t_design(povm_bloch_vectors(catalog.by_name(n)), 2), n
    for solid in ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"):
        assert is_t_design(catalog.polyhedron(solid).vertices, 2), solid
        assert is_t_design(-catalog.polyhedron(solid).vertices, 2), solid

    worst_ic = 0.0
    for n in SICS:
        povm = catalog.by_name(n)
        d = povm.dim
        psi = haar_random_states(d, 1000, rng)
        p = np.einsum("ni,kij,nj->nk", psi.conj(), povm.effects, psi).real
        worst_ic = max(worst_ic, np.max(np.abs(index_of_coincidence(p) - 2 / (d * (d + 1)))))
    assert worst_ic <= 1e-10

    worst_node = 0.0
    for name, (_, cand, _, _) in TABLE_HS.items():
        vs = catalog.polyhedron(name).vertices
        f = h_target(2)
        spec = from_above_spec(node_set(vs, catalog.polyhedron(cand).vertices[0])["values"], f)
        p = hermite_interpolate(spec, f)
        worst_node = max(worst_node, node_reproduction_error(p, spec, f))
        assert check_from_above(p, f, nodes=spec.nodes, grid_n=1000)["ok"], name
    for n in SICS:
        vs = povm_bloch_vectors(catalog.by_name(n))
        f = h_target(int(round(np.sqrt(vs.shape[1] + 1))))
        spec = from_above_spec(node_set(vs, vs[0])["values"], f)
        p = hermite_interpolate(spec, f)
        worst_node = max(worst_node, node_reproduction_error(p, spec, f))
        assert check_from_above(p, f, nodes=spec.nodes, grid_n=1000)["ok"], n
    assert worst_node <= 1e-8

    worst_torus = 0.0
    for d in (2, 3, 4):
        res = maximize_entropy(catalog.fourier_pvm(d), OptConfig(starts=16, seed=d))
        for c in res.global_clusters:
            worst_torus = max(worst_torus, np.max(np.abs(np.abs(np.fft.fft(c.state.amplitudes) / np.sqrt(d)) ** 2 - 1 / d)))
    assert worst_torus <= 1e-8

    for povm_name, orb in (("cube", "octahedron"), ("octahedron", "cube")):
        for alpha in (0.5, 1.5):
            res = maximize_entropy(catalog.hs_povm(povm_name), OptConfig(starts=64, kind="tsallis", alpha=alpha))
            assert verify_maximizer_set(res, catalog.polyhedron(orb).vertices)["passed"], (povm_name, alpha)
    criterion(
        "5 property suites",
        f"Bloch relation {worst_rel:.1e}, coincidence {worst_ic:.1e}, nodes {worst_node:.1e}, torus {worst_torus:.1e}",
    )


def _stdout(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_criterion_6_reproducibility(criterion, capsys):
    criterion("6 reproducibility")
    for argv in (["optimize", "--povm", "dodecahedron", "--starts", "32", "--seed", "11"],
                 ["optimize", "--povm", "hesse", "--starts", "8", "--seed", "11"],
                 ["average", "--povm", "tetrahedral", "--samples", "20000", "--seed", "4"]):
        a, b = _stdout(capsys, argv), _stdout(capsys, argv)
        assert a == b and a[0] == 0
    code, hs = _stdout(capsys, ["table-hs"])
    assert code == 0 and hs == (GOLDEN / "table_hs.txt").read_text()
    code, sic = _stdout(capsys, ["table-sic", "--dims", "2,3,8"])
    assert code == 0 and sic == (GOLDEN / "table_sic.txt").read_text()
    criterion("6 reproducibility", "seeded runs identical; table_hs.txt and table_sic.txt byte-identical")
