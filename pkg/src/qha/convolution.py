"""Operator convolutions, localisation operators and Werner-Young checks.

The working routes are spectral:

    F_sigma(T * S) = F_W(T) F_W(S),     F_W(F * S) = F_sigma(F) F_W(S).

The literal definitions (trace against alpha_z(PSP), and the weighted sum
of conjugated copies) are kept as small-n oracles.
"""
from __future__ import annotations

import numpy as np

from .fourier_wigner import fw_inverse, fw_transform
from .grid import GridFunction, PhaseFunction, PhaseGrid, _check_line, function_norm, phase_inner_product
from .op_core import OperatorMatrix, compose, parity_conjugate, rank_one, schatten_norm, trace
from .report import ExperimentReport
from .tf_core import LatticePoint, ambiguity, rho_matrix, symplectic_ft


def _check_geometry(F: PhaseFunction, S: OperatorMatrix):
    if not F.grid.x.same_as(S.grid):
        raise ValueError(f"phase grid {F.grid.x} does not match operator grid {S.grid}")


def op_op_convolve(T: OperatorMatrix, S: OperatorMatrix) -> PhaseFunction:
    _check_line(T.grid, S.grid)
    return symplectic_ft(fw_transform(T) * fw_transform(S))


def fun_op_convolve(F: PhaseFunction, S: OperatorMatrix) -> OperatorMatrix:
    _check_geometry(F, S)
    return fw_inverse(symplectic_ft(F) * fw_transform(S))


def localisation(F: PhaseFunction, psi: GridFunction, phi: GridFunction) -> OperatorMatrix:
    """Mixed-state localisation operator F * (phi (x) psi)."""
    _check_line(psi.grid, phi.grid)
    return fun_op_convolve(F, rank_one(phi, psi))


def _alpha(T: OperatorMatrix, z: LatticePoint) -> OperatorMatrix:
    grid = T.grid
    M = rho_matrix(grid, z)
    R = OperatorMatrix.from_matrix(grid, M)
    Rinv = OperatorMatrix.from_matrix(grid, M.conj().T)
    return compose(compose(R, T), Rinv)


def op_op_convolve_direct(T: OperatorMatrix, S: OperatorMatrix, z: LatticePoint) -> complex:
    """tr(T alpha_z(P S P)) evaluated literally at one lattice point."""
    return trace(compose(T, _alpha(parity_conjugate(S), z)))


def fun_op_convolve_direct(F: PhaseFunction, S: OperatorMatrix) -> OperatorMatrix:
    """sum_z F(z) alpha_z(S) dz over the full lattice; O(n^5), small n only."""
    _check_geometry(F, S)
    n = S.grid.n
    acc = np.zeros((n, n), dtype=complex)
    for jx in range(n):
        for jxi in range(n):
            c = F.values[jx, jxi]
            if c != 0:
                acc += c * _alpha(S, LatticePoint(jx, jxi)).kernel
    return OperatorMatrix(S.grid, acc * F.grid.cell_area)


def localisation_form(F: PhaseFunction, psi: GridFunction, phi: GridFunction, f: GridFunction, g: GridFunction) -> complex:
    """<A f, g> = sum_z F(z) A(f, psi)(z) conj(A(g, phi)(z)) dz."""
    return phase_inner_product(F * ambiguity(f, psi), ambiguity(g, phi))


def _conjugate_exponent_r(p: float, q: float) -> float:
    inv = 1.0 / p + 1.0 / q - 1.0
    if inv < -1e-12 or inv > 1 + 1e-12:
        raise ValueError(f"no r in [1, inf] with 1 + 1/r = 1/{p} + 1/{q}")
    return np.inf if abs(inv) <= 1e-12 else 1.0 / inv


def werner_young_report(functions, ops_t, ops_s, p: float, q: float, tol: float = 1e-6) -> ExperimentReport:
    """Max Werner-Young ratios for F * S (S^r) and T * S (L^r).

    ``functions`` and ``ops_t`` are paired member-wise with ``ops_s``.
    """
    r = _conjugate_exponent_r(p, q)
    fs_ratios, ts_ratios, notes = [], [], []
    for i, (F, S) in enumerate(zip(functions, ops_s)):
        den = function_norm(F, p) * schatten_norm(S, q)
        if den == 0:
            notes.append(f"F*S member {i}: zero denominator, skipped")
            continue
        fs_ratios.append(schatten_norm(fun_op_convolve(F, S), r) / den)
    for i, (T, S) in enumerate(zip(ops_t, ops_s)):
        den = schatten_norm(T, p) * schatten_norm(S, q)
        if den == 0:
            notes.append(f"T*S member {i}: zero denominator, skipped")
            continue
        ts_ratios.append(function_norm(op_op_convolve(T, S), r) / den)
    ratios = fs_ratios + ts_ratios
    max_ratio = max(ratios) if ratios else None
    return ExperimentReport(
        name="werner_young",
        params={"p": p, "q": q, "r": r},
        ratios=ratios,
        max_ratio=max_ratio,
        tolerance=tol,
        passed=max_ratio is None or max_ratio <= 1 + tol,
        series={"function_operator": fs_ratios, "operator_operator": ts_ratios},
        notes=notes,
    )


def phase_grid_of(T: OperatorMatrix) -> PhaseGrid:
    return PhaseGrid(T.grid)
