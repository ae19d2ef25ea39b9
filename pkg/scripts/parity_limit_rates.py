"""Gap to 2<P phi_k, phi_k> for the Weyl-quantised Gaussian as eps shrinks.

The gap on phi_k is |lambda_k(eps) - 2 (-1)^k|, about 4 (2k + 1) eps^2 for
small eps, so phi_0 needs eps^2 near 2.5e-4 to get below 1e-3.  Below
eps^2 ~ 0.02 the Gaussian spans only a few frequency cells of the default
lattice and the lattice values drift away from the continuum ones.
"""
import numpy as np

from qha.grid import PhaseGrid
from qha.multiplier.experiments import parity_limit_experiment

pg = PhaseGrid.from_length(256, 12.0)
eps2 = (0.5, 0.25, 0.1, 0.05, 0.02, 0.01)
rep = parity_limit_experiment(pg, eps2)
for k, pair in enumerate(rep.series["pairs"]):
    print(f"pair {k}: gaps {[f'{g:.2e}' for g in pair['gaps']]}")
for k in (0, 1):
    lam = [2 / (1 + 2 * e) * ((2 * e - 1) / (2 * e + 1)) ** k for e in eps2]
    print(f"continuum phi_{k}: gaps {[f'{abs(l - 2 * (-1) ** k):.2e}' for l in lam]}")
