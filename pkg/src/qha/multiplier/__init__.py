"""Classical and Fourier-Wigner multipliers, norm estimates and experiments."""
from .core import classical_multiplier, fw_multiplier
from .norms import Budget, NormEstimate, estimate_multiplier_norm
from .symbols import (
    MultiplierSymbol,
    bochner_riesz,
    bump_family,
    constant_symbol,
    gaussian_bump,
    gaussian_symbol,
    sine_symbol,
    smooth_bump,
    symbol_from_config,
    tau_spreading,
)

__all__ = [
    "Budget",
    "MultiplierSymbol",
    "NormEstimate",
    "bochner_riesz",
    "bump_family",
    "classical_multiplier",
    "constant_symbol",
    "estimate_multiplier_norm",
    "fw_multiplier",
    "gaussian_bump",
    "gaussian_symbol",
    "sine_symbol",
    "smooth_bump",
    "symbol_from_config",
    "tau_spreading",
]
