"""Quantum/classical norm ratios for the bump family over several exponents."""
from qha.grid import PhaseGrid
from qha.multiplier import Budget, bump_family
from qha.multiplier.experiments import equivalence_experiment

pg = PhaseGrid.from_length(128, 12.0)
family = bump_family(pg, 2.0)
for p in (1.0, 1.25, 4 / 3, 1.5, 2.0):
    rep = equivalence_experiment(family, p, Budget())
    spread = max(rep.ratios) / min(rep.ratios)
    print(f"p={p:.3f} ratios={[round(v, 4) for v in rep.ratios]} spread={spread:.3f}")
