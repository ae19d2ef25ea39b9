"""Classical symplectic multipliers T_m and Fourier-Wigner multipliers."""
from __future__ import annotations

from ..fourier_wigner import fw_inverse, fw_transform
from ..grid import PhaseFunction, _check_phase
from ..op_core import OperatorMatrix
from ..tf_core import symplectic_ft
from .symbols import MultiplierSymbol


def classical_multiplier(m: MultiplierSymbol, Psi: PhaseFunction) -> PhaseFunction:
    """T_m Psi = F_sigma(m F_sigma(Psi))."""
    _check_phase(m.grid, Psi.grid)
    return symplectic_ft(m.table * symplectic_ft(Psi))


def fw_multiplier(m: MultiplierSymbol, T: OperatorMatrix) -> OperatorMatrix:
    """T -> F_W^{-1}(m F_W(T))."""
    if not m.grid.x.same_as(T.grid):
        raise ValueError(f"symbol grid {m.grid.x} does not match operator grid {T.grid}")
    return fw_inverse(m.table * fw_transform(T))
