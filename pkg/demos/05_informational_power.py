"""Mutual information, Haar averages and the two summary tables.

Run: python3 demos/05_informational_power.py   (about a minute)
"""
import numpy as np

from povmlab import catalog
from povmlab.bloch import povm_bloch_vectors, pure_state_from_bloch
from povmlab.cli import haar_average
from povmlab.entropy import Ensemble, jones_average, mutual_information
from povmlab.tables import hs_rows, render_hs_table, render_sic_table, sic_rows

sic = catalog.builtin_sic("tetrahedral")

# %% Measuring the "pretty good" ensemble of SIC states recovers only the minimum
pgm = Ensemble(np.full(4, 0.25), [2 * E for E in sic.effects])
print(f"I(SIC states : SIC)       = {mutual_information(pgm, sic):.5f}")

# %% The antipodal ensemble attains the informational power ln(4/3)
twin = Ensemble.uniform([pure_state_from_bloch(-v) for v in povm_bloch_vectors(sic)])
print(f"I(twin states : SIC)      = {mutual_information(twin, sic):.5f}   ln(4/3) = {np.log(4 / 3):.5f}")

# %% The Haar average of H~ depends only on d
for name in ("cube", "tetrahedral", "hesse", "hoggar"):
    povm = catalog.by_name(name)
    out = haar_average(povm, 100_000, seed=1)
    print(f"{name:12s} d={povm.dim}: {out['estimate']:.5f} +- {out['stderr']:.5f}  exact {jones_average(povm.dim):.5f}")

# %% Tables
print()
print(render_hs_table(hs_rows()))
print(render_sic_table(sic_rows((2, 3, 4, 8))))
