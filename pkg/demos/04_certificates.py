"""Proving global optimality with Hermite interpolation from above.

The entropy term h is replaced by a polynomial p that touches it at the
overlaps of the candidate state with the POVM vectors and lies above it
elsewhere. Summing p over the POVM gives a polynomial P >= H that equals H at
the candidate; if P is constant or peaks on the candidate orbit, the
candidate is a global maximizer.

Run: python3 demos/04_certificates.py
"""
import numpy as np

from povmlab import catalog
from povmlab.certify import (
    build_certificate,
    check_from_above,
    from_above_spec,
    h_target,
    hermite_interpolate,
)
from povmlab.certify.certificate import node_set

# %% The tetrahedral case by hand: nodes -1/3 (double) and 1 (single)
f = h_target(2)
spec = from_above_spec([-1 / 3, 1.0], f)
p = hermite_interpolate(spec, f)
print("interpolant coefficients (t^0, t^1, ...):", np.round(p.monomial_coefficients(), 6))
print("p >= h on the grid:", check_from_above(p, f, nodes=spec.nodes))

# %% Lowering the polynomial breaks domination
print("p - 0.01 >= h:", check_from_above(p.shifted(-0.01), f, nodes=spec.nodes)["ok"])

# %% Node sets for a dual pair
cube = catalog.polyhedron("cube").vertices
print("\ncube vs octahedron vertex:", node_set(cube, [1.0, 0, 0]))

# %% Full certificates for all seven polyhedra
cases = [("tetrahedron", "tetrahedron"), ("cube", "octahedron"), ("octahedron", "cube"),
         ("cuboctahedron", "octahedron"), ("icosahedron", "dodecahedron"),
         ("dodecahedron", "icosahedron"), ("icosidodecahedron", "icosahedron")]
for povm_name, cand in cases:
    rep = build_certificate(catalog.hs_povm(povm_name), cand)
    dec = rep.decomposition
    extra = f"{dec['invariant']} with B = {dec['B']:+.5f}" if dec["invariant"] else "constant"
    print(f"{povm_name:18s} -> {cand:13s} {extra:26s} min H~ = {rep.certified_relative_entropy:.5f}")

# %% SICs need no symmetry argument: P is constant
for name in ("hesse", "hoggar"):
    rep = build_certificate(catalog.by_name(name), "self")
    print(f"{name}: {rep.decomposition['kind']}, certified min H~ = {rep.certified_relative_entropy:.5f}")
