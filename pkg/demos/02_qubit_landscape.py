"""Entropy landscape of qubit HS-POVMs on the Bloch sphere.

Writes one CSV per POVM (columns theta, phi, H, Hrel) ready for any plotting
tool, and prints where the extremes of the grid sit.

Run: python3 demos/02_qubit_landscape.py [outdir]
"""
import sys
from pathlib import Path

import numpy as np

from povmlab import catalog
from povmlab.optimize import landscape_csv, landscape_scan

outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "landscapes")
outdir.mkdir(exist_ok=True)


def to_xyz(theta, phi):
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


for name in ("tetrahedron", "octahedron", "cube", "icosahedron"):
    povm = catalog.hs_povm(name)
    rows = landscape_scan(povm, 120)
    (outdir / f"{name}.csv").write_text(landscape_csv(rows))
    lo, hi = rows[np.argmin(rows[:, 3])], rows[np.argmax(rows[:, 3])]
    print(f"{name:12s} grid min H~ {lo[3]:.5f} at {np.round(to_xyz(*lo[:2]), 3)}"
          f"   grid max H~ {hi[3]:.5f} at {np.round(to_xyz(*hi[:2]), 3)}")

# The digon is not informationally complete: H equals ln 2 on a whole great circle
rows = landscape_scan(catalog.ngon_povm(2), 60)
ring = rows[np.isclose(rows[:, 2], np.log(2))]
print(f"\ndigon: {len(ring)} grid points reach H = ln 2, all with x = 0:",
      bool(np.allclose(np.sin(ring[:, 0]) * np.cos(ring[:, 1]), 0, atol=1e-9)))
print(f"CSV files in {outdir}/")
