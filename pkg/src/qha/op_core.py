"""Dense kernel realisation of operators on L2 and their singular values.

An operator is stored by its kernel K(t_j, s_k) and acts as
(Tf)(t_j) = h sum_k K(t_j, s_k) f(s_k).  The matrix A = h K is the one whose
ordinary SVD gives the operator's singular values, since the Riemann-sum
inner product is h times the Euclidean one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import (
    GridFunction,
    LineGrid,
    PhaseFunction,
    _check_exponent,
    _check_line,
    hermite_table,
    lp_norm,
    negation_index,
)


class SpectrumError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    grid: LineGrid
    kernel: np.ndarray

    def __post_init__(self):
        K = np.asarray(self.kernel, dtype=complex)
        n = self.grid.n
        if K.shape != (n, n):
            raise ValueError(f"kernel must be ({n}, {n}), got {K.shape}")
        object.__setattr__(self, "kernel", K)

    @classmethod
    def from_matrix(cls, grid: LineGrid, A: np.ndarray) -> "OperatorMatrix":
        """Build from the weighted matrix A = h K."""
        return cls(grid, np.asarray(A) / grid.h)

    @classmethod
    def identity(cls, grid: LineGrid) -> "OperatorMatrix":
        return cls(grid, np.eye(grid.n) / grid.h)

    @classmethod
    def zero(cls, grid: LineGrid) -> "OperatorMatrix":
        return cls(grid, np.zeros((grid.n, grid.n)))

    @property
    def matrix(self) -> np.ndarray:
        return self.grid.h * self.kernel

    def __add__(self, other):
        _check_line(self.grid, other.grid)
        return OperatorMatrix(self.grid, self.kernel + other.kernel)

    def __sub__(self, other):
        _check_line(self.grid, other.grid)
        return OperatorMatrix(self.grid, self.kernel - other.kernel)

    def __mul__(self, c):
        return OperatorMatrix(self.grid, c * self.kernel)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return compose(self, other)


@dataclass(frozen=True)
class SingularSpectrum:
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or np.any(v < 0) or np.any(np.diff(v) > 0):
            raise ValueError("singular values must be a nonincreasing nonnegative vector")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]


def rank_one(f: GridFunction, g: GridFunction) -> OperatorMatrix:
    """f (x) g : u -> <u, g> f."""
    _check_line(f.grid, g.grid)
    return OperatorMatrix(f.grid, np.outer(f.values, g.values.conj()))


def apply(T: OperatorMatrix, f: GridFunction) -> GridFunction:
    _check_line(T.grid, f.grid)
    return GridFunction(T.grid, T.matrix @ f.values)


def compose(S: OperatorMatrix, T: OperatorMatrix) -> OperatorMatrix:
    """S o T."""
    _check_line(S.grid, T.grid)
    return OperatorMatrix(S.grid, S.grid.h * (S.kernel @ T.kernel))


def adjoint(T: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix(T.grid, T.kernel.conj().T)


def trace(T: OperatorMatrix) -> complex:
    return complex(T.grid.h * np.trace(T.kernel))


def parity_conjugate(T: OperatorMatrix) -> OperatorMatrix:
    """P T P, kernel K(-t, -s)."""
    idx = negation_index(T.grid.n)
    return OperatorMatrix(T.grid, T.kernel[np.ix_(idx, idx)])


def parity_operator(grid: LineGrid) -> OperatorMatrix:
    P = np.zeros((grid.n, grid.n))
    P[np.arange(grid.n), negation_index(grid.n)] = 1.0
    return OperatorMatrix.from_matrix(grid, P)


def singular_values(T: OperatorMatrix) -> SingularSpectrum:
    A = T.matrix
    if not np.all(np.isfinite(A)):
        raise SpectrumError("kernel contains non-finite entries")
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SpectrumError(f"SVD did not converge for n={T.grid.n}: {exc}") from exc
    return SingularSpectrum(np.clip(s, 0.0, None))


def schatten_norm(T: OperatorMatrix, p: float) -> float:
    return lp_norm(singular_values(T).values, p)


def sequence_lorentz_norm(s: np.ndarray, p: float, q: float) -> float:
    """(sum_n n^{q/p - 1} s_n^q)^{1/q}; sup_n n^{1/p} s_n for q = inf."""
    if not (1 <= p < np.inf):
        raise ValueError(f"Lorentz p must satisfy 1 <= p < inf, got {p}")
    _check_exponent(q, "q")
    s = np.sort(np.abs(np.asarray(s, dtype=float)))[::-1]
    if s.size == 0 or s[0] == 0:
        return 0.0
    k = np.arange(1, s.size + 1, dtype=float)
    if q == np.inf:
        return float(np.max(k ** (1.0 / p) * s))
    top = s[0]
    return float(top * np.sum(k ** (q / p - 1.0) * (s / top) ** q) ** (1.0 / q))


def lorentz_schatten_norm(T: OperatorMatrix, p: float, q: float) -> float:
    return sequence_lorentz_norm(singular_values(T).values, p, q)


def hermitian_eigenvalues(T: OperatorMatrix, tol: float = 1e-8) -> np.ndarray:
    """Ascending eigenvalues of a (numerically) self-adjoint operator.

    Raises if the kernel is not self-adjoint to ``tol`` relative to its size.
    """
    A = T.matrix
    defect = np.abs(A - A.conj().T).max()
    scale = max(np.abs(A).max(), 1.0)
    if defect > tol * scale:
        raise SpectrumError(f"operator is not self-adjoint (defect {defect:.3e})")
    return np.linalg.eigvalsh(0.5 * (A + A.conj().T))


def weyl_quantize(a: PhaseFunction) -> OperatorMatrix:
    """L_a, routed through the spreading function F_sigma(a)."""
    from .fourier_wigner import fw_inverse
    from .tf_core import symplectic_ft

    return fw_inverse(symplectic_ft(a))


def weyl_symbol(T: OperatorMatrix) -> PhaseFunction:
    from .fourier_wigner import fw_transform
    from .tf_core import symplectic_ft

    return symplectic_ft(fw_transform(T))


def random_hermite_vectors(rng: np.random.Generator, grid: LineGrid, count: int, modes: int = 16) -> np.ndarray:
    """``count`` random L2-unit vectors in the span of the first ``modes`` Hermite functions."""
    modes = min(modes, grid.n // 4 + 1)
    H = hermite_table(grid, modes - 1)
    c = rng.standard_normal((count, modes)) + 1j * rng.standard_normal((count, modes))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    return c @ H


def random_trace_class(seed: int, decay: float, grid: LineGrid, rank: int = 8, modes: int = 16) -> OperatorMatrix:
    """T = sum_k c_k u_k (x) v_k with |c_k| = exp(-decay k) and random phases."""
    rng = np.random.default_rng(seed)
    U = random_hermite_vectors(rng, grid, rank, modes)
    V = random_hermite_vectors(rng, grid, rank, modes)
    c = np.exp(-decay * np.arange(rank)) * np.exp(2j * np.pi * rng.random(rank))
    return OperatorMatrix(grid, np.einsum("k,kt,ks->ts", c, U, V.conj()))
