"""Lower-bound estimates of multiplier norms S^p -> S^q and L^p -> L^q.

The estimate is the best ratio ||M x||_q / ||x||_p found over a candidate
pool (structured probes, a rank-one Hermite sweep and random ensembles),
followed by dual power iterations from the strongest candidates:

    y* = J_q(M x),   x <- J_{p'}(M^* y*),

where J_r(v) is the unit element of the dual space norming v.  For p = 1 the
update J_inf is a top singular pair, so the quantum iteration stays on
rank-one inputs f (x) g.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..fourier_wigner import fw_inverse, fw_transform
from ..grid import PhaseFunction, _check_exponent, hermite, hermite_table, lp_norm
from ..op_core import OperatorMatrix, random_hermite_vectors
from ..tf_core import LatticePoint, symplectic_ft, tf_shift
from .symbols import MultiplierSymbol


@dataclass(frozen=True)
class Budget:
    n_random: int = 6
    n_alternating_steps: int = 50
    seed: int = 0
    sweep_modes: int = 6
    modes: int = 16
    n_starts: int = 3
    rank: int | None = None  # cap on the rank of quantum test operators
    stall_tol: float = 1e-9


@dataclass(frozen=True)
class NormEstimate:
    value: float
    witness: str
    n_trials: int
    method: str  # "random" | "alternating" | "rank-one-sweep" | "probe"

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError(f"norm estimate must be nonnegative, got {self.value}")


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return np.inf
    if p == np.inf:
        return 1.0
    return p / (p - 1)


def schatten_dual(Y: np.ndarray, q: float) -> np.ndarray:
    """Unit element of S^{q'} norming Y under the pairing tr(Y X^*)."""
    U, s, Vh = np.linalg.svd(Y)
    if s[0] == 0:
        return np.zeros_like(Y)
    if q == np.inf:
        return np.outer(U[:, 0], Vh[0])
    if q == 1:
        keep = s > s[0] * 1e-12
        return (U[:, keep] * 1.0) @ Vh[keep]
    w = (s / lp_norm(s, q)) ** (q - 1)
    return (U * w) @ Vh


def lp_dual(y: np.ndarray, q: float, weight: float) -> np.ndarray:
    """Unit element of L^{q'} norming y under the pairing weight * sum y conj(x)."""
    a = np.abs(y)
    if a.max() == 0:
        return np.zeros_like(y)
    phase = np.where(a > 0, y / np.where(a > 0, a, 1), 0)
    if q == np.inf:
        out = np.zeros_like(y)
        k = np.unravel_index(np.argmax(a), a.shape)
        out[k] = phase[k] / weight
        return out
    if q == 1:
        return phase
    return (a / lp_norm(a, q, weight)) ** (q - 1) * phase


def _truncate_rank(X: np.ndarray, r: int) -> np.ndarray:
    U, s, Vh = np.linalg.svd(X)
    return (U[:, :r] * s[:r]) @ Vh[:r]


class _QuantumSpace:
    def __init__(self, m: MultiplierSymbol, rank: int | None):
        self.m = m
        self.grid = m.grid.x
        self.rank = rank

    def apply(self, X, symbol=None):
        sym = self.m.table if symbol is None else symbol
        T = OperatorMatrix.from_matrix(self.grid, X)
        return self.grid.h * fw_inverse(sym * fw_transform(T)).kernel

    def apply_adjoint(self, Y):
        return self.apply(Y, self.m.table.conj())

    def norm(self, X, r):
        return lp_norm(np.linalg.svd(X, compute_uv=False), r)

    def dual(self, X, r):
        return schatten_dual(X, r)

    def project(self, X, p):
        if self.rank is None or self.rank >= X.shape[0]:
            return X
        Xr = _truncate_rank(X, self.rank)
        return Xr / self.norm(Xr, p)


class _ClassicalSpace:
    def __init__(self, m: MultiplierSymbol):
        self.m = m
        self.weight = m.grid.cell_area

    def _run(self, x, sym):
        pg = self.m.grid
        return symplectic_ft(sym * symplectic_ft(PhaseFunction(pg, x))).values

    def apply(self, x):
        return self._run(x, self.m.table)

    def apply_adjoint(self, y):
        return self._run(y, self.m.table.conj())

    def norm(self, x, r):
        return lp_norm(x, r, self.weight)

    def dual(self, x, r):
        return lp_dual(x, r, self.weight)

    def project(self, x, p):
        return x


def _argmax_point(m: MultiplierSymbol) -> LatticePoint:
    jx, jxi = np.unravel_index(np.argmax(np.abs(m.values)), m.values.shape)
    return LatticePoint(int(jx), int(jxi))


def _quantum_candidates(m: MultiplierSymbol, budget: Budget, rng) -> list[tuple[str, str, np.ndarray]]:
    grid = m.grid.x
    n = grid.n
    h = grid.h
    cands = []
    full_rank_ok = budget.rank is None or budget.rank >= n
    z = _argmax_point(m)
    if full_rank_ok:
        cands.append(("probe", "identity", np.eye(n, dtype=complex)))
        delta = np.zeros((n, n), dtype=complex)
        delta[z.jx, z.jxi] = 1.0
        cands.append(("probe", f"spreading delta at {z}", h * fw_inverse(PhaseFunction(m.grid, delta)).kernel))
    phi0 = hermite(grid, 0)
    coh = tf_shift(phi0, z)
    cands.append(("probe", f"coherent state pair at {z}", h * np.outer(coh.values, phi0.values.conj())))
    if budget.rank is not None:
        H = hermite_table(grid, min(budget.rank, n // 4 + 1) - 1)
        cands.append(("probe", f"Hermite projector rank {budget.rank}", h * H.T @ H))
    K = min(budget.sweep_modes, n // 4 + 1)
    H = hermite_table(grid, K - 1)
    for j in range(K):
        for k in range(K):
            cands.append(("rank-one-sweep", f"h_{j} (x) h_{k}", h * np.outer(H[j], H[k])))
    max_rank = budget.modes if budget.rank is None else budget.rank
    for i in range(budget.n_random):
        r = int(rng.integers(1, max_rank + 1))
        U = random_hermite_vectors(rng, grid, r, budget.modes)
        V = random_hermite_vectors(rng, grid, r, budget.modes)
        c = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        cands.append(("random", f"random rank-{r} #{i}", h * np.einsum("k,kt,ks->ts", c, U, V.conj())))
    return cands


def _classical_candidates(m: MultiplierSymbol, budget: Budget, rng) -> list[tuple[str, str, np.ndarray]]:
    pg = m.grid
    n = pg.n
    c = n // 2
    cands = []
    delta = np.zeros((n, n), dtype=complex)
    delta[c, c] = 1.0 / pg.cell_area
    cands.append(("probe", "cell delta", delta))
    z = _argmax_point(m)
    zx, zxi = z.coords(pg)
    X, XI = pg.mesh
    for width in (0.25, 0.5, 1.0, 2.0):
        packet = np.exp(-np.pi * ((X - zx) ** 2 + (XI - zxi) ** 2) / width**2)
        cands.append(("probe", f"wave packet width {width} at {z}", symplectic_ft(PhaseFunction(pg, packet)).values))
    for i in range(budget.n_random):
        w = rng.uniform(0.3, 2.0)
        R = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * np.exp(-np.pi * pg.radius_sq / w**2)
        cands.append(("random", f"random gaussian-windowed #{i}", R))
    return cands


def estimate_multiplier_norm(m: MultiplierSymbol, p: float, q: float, side: str = "quantum", budget: Budget | None = None) -> NormEstimate:
    """Lower bound for ||T_m||_{L^p -> L^q} (classical) or ||T_m||_{S^p -> S^q} (quantum)."""
    _check_exponent(p)
    _check_exponent(q, "q")
    budget = budget or Budget()
    rng = np.random.default_rng(budget.seed)
    if side == "quantum":
        space = _QuantumSpace(m, budget.rank)
        cands = _quantum_candidates(m, budget, rng)
    elif side == "classical":
        space = _ClassicalSpace(m)
        cands = _classical_candidates(m, budget, rng)
    else:
        raise ValueError(f"side must be 'classical' or 'quantum', got {side!r}")

    pp = conjugate_exponent(p)
    scored = []
    for method, label, x in cands:
        nx = space.norm(x, p)
        if nx == 0:
            continue
        x = x / nx
        scored.append((space.norm(space.apply(x), q), method, label, x))
    scored.sort(key=lambda t: -t[0])
    best_val, best_method, best_label, _ = scored[0]
    trials = len(scored)

    for val0, _, label0, x in scored[: budget.n_starts]:
        prev = val0
        for step in range(budget.n_alternating_steps):
            y = space.apply(x)
            ystar = space.dual(y, q)
            g = space.apply_adjoint(ystar)
            if not np.any(g):
                break
            x_new = space.project(space.dual(g, pp), p)
            val = space.norm(space.apply(x_new), q)
            trials += 1
            if val > best_val * (1 + 1e-12):
                best_val, best_method, best_label = val, "alternating", f"refined from {label0}"
            x = x_new
            # the iteration is monotone; stop once it stalls
            if val <= prev * (1 + budget.stall_tol):
                break
            prev = val
    return NormEstimate(float(best_val), best_label, trials, best_method)
