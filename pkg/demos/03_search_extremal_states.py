"""Multi-start search for the pure states of extreme entropy.

For each informationally complete qubit HS-POVM the most uncertain states
sit on the vertices of a dual polyhedron, while the least uncertain ones sit
on the POVM's own vertices (or their antipodes for the tetrahedron).

Run: python3 demos/03_search_extremal_states.py
"""
import numpy as np

from povmlab import catalog
from povmlab.bloch import povm_bloch_vectors
from povmlab.optimize import OptConfig, maximize_entropy, verify_maximizer_set
from povmlab.tables import identify_qubit_configuration

cfg = OptConfig(starts=256, seed=0)
print(f"{'POVM':18s} {'min H~':>8s}  {'minimizers':14s} {'max H~':>8s}  maximizers")
for name in ("tetrahedron", "octahedron", "cube", "cuboctahedron", "icosahedron", "dodecahedron",
             "icosidodecahedron"):
    povm = catalog.hs_povm(name)
    vs = povm_bloch_vectors(povm)
    lo = maximize_entropy(povm, cfg)
    hi = maximize_entropy(povm, cfg, direction="max-relative-entropy")
    lo_pts = np.array([c.bloch for c in lo.global_clusters])
    hi_pts = np.array([c.bloch for c in hi.global_clusters])
    print(f"{name:18s} {lo.best_relative_entropy:8.5f}  {identify_qubit_configuration(lo_pts, vs, name):14s}"
          f" {hi.best_value:8.5f}  {identify_qubit_configuration(hi_pts, vs, name)}")

# %% Fidelity-level check of one answer
res = maximize_entropy(catalog.hs_povm("cube"), cfg)
print("\ncube maximizers vs octahedron:", verify_maximizer_set(res, catalog.polyhedron("octahedron").vertices))

# %% The same orbits maximize the Tsallis entropies
for alpha in (0.5, 1.5):
    r = maximize_entropy(catalog.hs_povm("cube"), OptConfig(starts=64, kind="tsallis", alpha=alpha))
    ok = verify_maximizer_set(r, catalog.polyhedron("octahedron").vertices)["passed"]
    print(f"Tsallis alpha={alpha}: maximizers on the octahedron: {ok}")
