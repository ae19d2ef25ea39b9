"""Tabulate the Weyl-quantised Gaussian family against its Hermite eigenvalues.

For Gamma_eps the eigenvalue on the k-th Hermite function is
2/(1+2e) * ((2e-1)/(2e+1))^k with e = eps^2.  The eps^2 = 0.05 row is
under-resolved on the default lattice and is flagged in the report notes.
"""
import numpy as np

from qha.grid import PhaseGrid
from qha.multiplier.experiments import gaussian_weyl_experiment

pg = PhaseGrid.from_length(256, 12.0)
eps2 = (0.05, 0.125, 0.25, 0.3, 0.45, 0.5, 0.55, 1.0, 2.0)
rep = gaussian_weyl_experiment(pg, eps2)
print(f"{'eps2':>6} {'min_eig':>12} {'S1':>10} {'S2':>10} {'S1 expected':>12}")
for row in rep.series["rows"]:
    e = row["eps2"]
    r = (2 * e - 1) / (2 * e + 1)
    s1 = 2 / (1 + 2 * e) / (1 - abs(r))
    print(f"{e:6.3f} {row['min_eig']:12.4e} {row['S1']:10.6f} {row['S2']:10.6f} {s1:12.6f}")
print(rep.summary())
for note in rep.notes:
    print("  ", note)
