"""Fourier-Wigner transform F_W(T)(z) = tr(T rho(-z)) and its inverse."""
from __future__ import annotations

import numpy as np

from .grid import PhaseFunction, PhaseGrid, function_norm, lorentz_norm
from .op_core import OperatorMatrix, compose, lorentz_schatten_norm, schatten_norm, trace
from .report import ExperimentReport
from .tf_core import LatticePoint, _half_phase, cdft, cidft, rho_matrix


def _diagonals(K: np.ndarray) -> np.ndarray:
    """D[a, s] = K[(s + a) mod n, s] with a running over centered offsets."""
    n = K.shape[0]
    a = np.arange(n) - n // 2
    rows = (np.arange(n)[None, :] + a[:, None]) % n
    return K[rows, np.arange(n)[None, :]]


def fw_transform(T: OperatorMatrix) -> PhaseFunction:
    """Row formula exp(-pi i x xi) h sum_s K(s + x, s) exp(-2 pi i xi s).

    This is tr(T rho(-z)) evaluated with one FFT per shift row; see
    ``fw_point_oracle`` for the literal trace.
    """
    grid = T.grid
    pg = PhaseGrid(grid)
    table = grid.h * cdft(_diagonals(T.kernel), axis=1) * _half_phase(pg).conj()
    return PhaseFunction(pg, table)


def fw_point_oracle(T: OperatorMatrix, z: LatticePoint) -> complex:
    """tr(T rho(z)^*) from an explicit shift matrix (cross-check only).

    rho(z)^* is rho(-z) away from the lattice edge; on the edge row the
    circular negation of z picks up a sign, while the adjoint stays exact.
    """
    grid = T.grid
    R = OperatorMatrix.from_matrix(grid, rho_matrix(grid, z).conj().T)
    return trace(compose(T, R))


def fw_inverse(F: PhaseFunction) -> OperatorMatrix:
    """Integrated Schroedinger representation sum_z F(z) rho(z) dz.

    Kernel K(s + x, s) = dxi sum_xi F(x, xi) exp(pi i xi (2 s + x)), with x
    the centered representative of t - s, which inverts ``fw_transform``
    exactly on the lattice.
    """
    pg = F.grid
    grid = pg.x
    n = grid.n
    D = pg.xi.h * cidft(F.values * _half_phase(pg), axis=1)  # [a, s]
    a = np.arange(n) - n // 2
    rows = (np.arange(n)[None, :] + a[:, None]) % n
    K = np.empty((n, n), dtype=complex)
    K[rows, np.broadcast_to(np.arange(n), (n, n))] = D
    return OperatorMatrix(grid, K)


def hausdorff_young_report(ensemble, p: float, tol: float = 1e-8) -> ExperimentReport:
    """Forward and reverse Hausdorff-Young ratios over an operator ensemble.

    Forward: ||F_W T||_{L^{p',p}} / ||T||_{S^p};
    reverse: ||F_W^{-1} F||_{S^{p'}} / ||F||_{L^{p,p'}} with F = F_W T.
    At p = 1 both endpoints use sup norms against L1/S1 norms.
    """
    ensemble = list(ensemble)
    if not ensemble:
        raise ValueError("ensemble is empty")
    if not (1 <= p <= 2):
        raise ValueError(f"Hausdorff-Young needs 1 <= p <= 2, got {p}")
    pp = np.inf if p == 1 else p / (p - 1)
    forward, reverse = [], []
    for T in ensemble:
        F = fw_transform(T)
        sT = schatten_norm(T, p)
        if p == 1:
            fwd = function_norm(F, np.inf)
            rev_num, rev_den = schatten_norm(T, np.inf), function_norm(F, 1)
        else:
            fwd = lorentz_norm(F, pp, p)
            rev_num, rev_den = schatten_norm(T, pp), lorentz_norm(F, p, pp)
        forward.append(fwd / sT)
        reverse.append(rev_num / rev_den)
    forward, reverse = np.array(forward), np.array(reverse)
    if p == 2:
        ok = bool(np.all(np.abs(forward - 1) <= tol) and np.all(np.abs(reverse - 1) <= tol))
        tolerance = tol
    elif p == 1:
        ok = bool(forward.max() <= 1 + tol)
        tolerance = tol
    else:
        ok = bool(np.all(np.isfinite(forward)) and np.all(np.isfinite(reverse)))
        tolerance = None
    return ExperimentReport(
        name="hausdorff_young",
        params={"p": p, "p_conjugate": pp, "members": len(ensemble)},
        ratios=forward.tolist(),
        max_ratio=float(forward.max()),
        tolerance=tolerance,
        passed=ok,
        series={"reverse": reverse.tolist()},
    )


def lorentz_hausdorff_young(T: OperatorMatrix, p: float) -> float:
    """||F_W T||_{L^{p'}} / ||T||_{S^{p,p'}} (second form of the inequality)."""
    pp = p / (p - 1)
    return function_norm(fw_transform(T), pp) / lorentz_schatten_norm(T, p, pp)
