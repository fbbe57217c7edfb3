"""SIC-POVMs: construction, Gram test and the minimum of the relative entropy.

Run: python3 demos/01_sic_povms.py
"""
import numpy as np

from povmlab import catalog
from povmlab.bloch import povm_bloch_vectors
from povmlab.catalog import FiducialRecord, NotASicFiducial, sic_gram_residual
from povmlab.entropy import relative_entropy, sic_min_relative_entropy

# %% Build the four built-in SICs from their fiducials
sics = {
    "tetrahedral": catalog.builtin_sic("tetrahedral"),
    "hesse": catalog.builtin_sic("hesse"),
    "generic3(t=0.3)": catalog.builtin_sic("generic3", t=0.3),
    "hoggar": catalog.builtin_sic("hoggar", path=catalog.hoggar_fiducial_path()),
}
for name, povm in sics.items():
    worst, pair = sic_gram_residual(povm.effects)
    print(f"{name:16s} d={povm.dim} k={povm.outcomes:3d}  Gram residual {worst:.1e}")

# %% In Bloch form the SIC vectors form a regular simplex: pairwise dot -1/(d^2-1)
vs = povm_bloch_vectors(sics["hesse"])
G = vs @ vs.T
print("\nHesse Bloch dots off the diagonal:", np.unique(np.round(G[~np.eye(9, dtype=bool)], 12)))

# %% A basis vector is not a fiducial: the error names the worst pair
try:
    catalog.sic_from_fiducial(FiducialRecord(3, np.array([1, 0, 0])))
except NotASicFiducial as exc:
    print("\nrejected:", exc)

# %% The SIC states themselves minimize the relative entropy; compare with the closed form
print("\n d   H~ at a SIC state   ln d - ((d-1)/d) ln(d+1)")
for name, povm in sics.items():
    psi = np.linalg.eigh(povm.effects[0])[1][:, -1]
    print(f"{povm.dim:2d}   {relative_entropy(psi, povm):.10f}        {sic_min_relative_entropy(povm.dim):.10f}")

# %% The minimum tends to zero as d grows
for d in (10, 100, 1000, 10**5):
    print(f"d = {d:>6d}: {sic_min_relative_entropy(d):.6f}")
