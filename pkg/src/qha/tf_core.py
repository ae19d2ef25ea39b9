"""Time-frequency shifts, ambiguity/Wigner tables and the symplectic FT.

Conventions (d = 1):

    rho(x, xi) f(t) = exp(-pi i x xi) exp(2 pi i xi t) f(t - x)
    A(f, g)(z)      = <f, rho(z) g>
    sigma(z, z')    = x' xi - x xi'
    F_sigma Psi(w)  = int Psi(z) exp(-2 pi i sigma(w, z)) dz

Shifts are circular on the grid.  The modulation factor exp(2 pi i xi t) is
periodic on the lattice, so translations and modulations form an exact
finite Heisenberg group; only the symmetric half-phase exp(-pi i x xi) is
evaluated pointwise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, PhaseFunction, PhaseGrid, _check_line


@dataclass(frozen=True)
class LatticePoint:
    jx: int
    jxi: int

    def offsets(self, n: int) -> tuple[int, int]:
        """Signed lattice offsets (a, b) with x = a h, xi = b dxi."""
        if not (0 <= self.jx < n and 0 <= self.jxi < n):
            raise ValueError(f"lattice point {self} outside 0..{n - 1}")
        return self.jx - n // 2, self.jxi - n // 2

    @classmethod
    def from_offsets(cls, a: int, b: int, n: int) -> "LatticePoint":
        return cls(a + n // 2, b + n // 2)

    def coords(self, grid: PhaseGrid) -> tuple[float, float]:
        return float(grid.x.points[self.jx]), float(grid.xi.points[self.jxi])

    def __neg__(self):
        raise TypeError("negate via negate(point, n); lattice size is needed")


def negate(z: LatticePoint, n: int) -> LatticePoint:
    return LatticePoint((n - z.jx) % n, (n - z.jxi) % n)


def symplectic_form(z, zp) -> float:
    (x, xi), (xp, xip) = z, zp
    return xp * xi - x * xip


def cdft(u: np.ndarray, axis: int = -1) -> np.ndarray:
    """Centered DFT: sum_j u_j exp(-2 pi i (k - n/2)(j - n/2) / n)."""
    return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(u, axes=axis), axis=axis), axes=axis)


def cidft(u: np.ndarray, axis: int = -1) -> np.ndarray:
    """Unnormalised centered inverse DFT (kernel exp(+2 pi i ...))."""
    n = u.shape[axis]
    return n * np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(u, axes=axis), axis=axis), axes=axis)


def shift_matrix(g: GridFunction, z: LatticePoint) -> np.ndarray:
    grid = g.grid
    a, b = z.offsets(grid.n)
    x, xi = a * grid.h, b / (grid.n * grid.h)
    t = grid.points
    return np.exp(-1j * np.pi * x * xi) * np.exp(2j * np.pi * xi * t) * np.roll(g.values, a)


def tf_shift(f: GridFunction, z: LatticePoint) -> GridFunction:
    return GridFunction(f.grid, shift_matrix(f, z))


def rho_matrix(grid, z: LatticePoint) -> np.ndarray:
    """Matrix M of rho(z) acting on sample vectors: (rho f)_j = sum_k M_jk f_k."""
    n = grid.n
    a, b = z.offsets(n)
    x, xi = a * grid.h, b / (n * grid.h)
    M = np.zeros((n, n), dtype=complex)
    rows = np.arange(n)
    M[rows, (rows - a) % n] = np.exp(-1j * np.pi * x * xi) * np.exp(2j * np.pi * xi * grid.points)
    return M


def _half_phase(pg: PhaseGrid) -> np.ndarray:
    """exp(pi i x xi) on the whole lattice."""
    X, XI = pg.mesh
    return np.exp(1j * np.pi * X * XI)


def ambiguity(f: GridFunction, g: GridFunction) -> PhaseFunction:
    """Cross-ambiguity table A(f, g)(x_a, xi_b) = <f, rho(x_a, xi_b) g>.

    One centered FFT per shift row: the row for shift x is
    exp(pi i x xi) * h * DFT_t[f(t) conj(g(t - x))](xi).
    """
    _check_line(f.grid, g.grid)
    grid = f.grid
    n = grid.n
    pg = PhaseGrid(grid)
    a = np.arange(n) - n // 2
    idx = (np.arange(n)[None, :] - a[:, None]) % n
    prods = f.values[None, :] * g.values.conj()[idx]
    table = grid.h * cdft(prods, axis=1) * _half_phase(pg)
    return PhaseFunction(pg, table)


def symplectic_ft(Psi: PhaseFunction) -> PhaseFunction:
    """F_sigma on the lattice; unitary and an exact involution.

    With x = a h, xi = b dxi the kernel exp(-2 pi i (x Xi - X xi)) becomes
    exp(-2 pi i a B / n) exp(2 pi i A b / n), so the transform is a forward
    DFT over x producing Xi, an inverse DFT over xi producing X, and an
    exchange of the two axes.  The cell area is 1/n.
    """
    n = Psi.grid.n
    G = cdft(Psi.values, axis=0)  # [B, b]
    H = cidft(G, axis=1)  # [B, A]
    return PhaseFunction(Psi.grid, H.T / n)


def wigner(f: GridFunction, g: GridFunction) -> PhaseFunction:
    return symplectic_ft(ambiguity(f, g))


def lattice_shift(F: PhaseFunction, z: LatticePoint) -> np.ndarray:
    """Table of F(w - z) with circular lattice subtraction."""
    a, b = z.offsets(F.grid.n)
    return np.roll(F.values, (a, b), axis=(0, 1))


def sigma_table(pg: PhaseGrid, z: LatticePoint) -> np.ndarray:
    """sigma(z, w) for all lattice points w."""
    x, xi = z.coords(pg)
    X, XI = pg.mesh
    return X * xi - x * XI


def covariant_shift(F: PhaseFunction, z: LatticePoint) -> np.ndarray:
    """exp(pi i sigma(z, w)) F(w - z) with circular subtraction.

    When w - z wraps by k lattice lengths the symmetric phase of the
    wrapped point differs by (-1)^(k_x b' + k_xi a'), where (a', b') is the
    wrapped offset; that sign is applied so that
    A(rho(z) f, g) = covariant_shift(A(f, g), z) holds at every lattice point.
    """
    pg = F.grid
    n = pg.n
    a, b = z.offsets(n)
    off = np.arange(n) - n // 2
    dx, dxi = off[:, None] - a, off[None, :] - b
    wa, wb = (dx + n // 2) % n - n // 2, (dxi + n // 2) % n - n // 2
    kx, kxi = (dx - wa) // n, (dxi - wb) // n
    sign = np.where((kx * wb + kxi * wa) % 2, -1.0, 1.0)
    return sign * np.exp(1j * np.pi * sigma_table(pg, z)) * lattice_shift(F, z)
