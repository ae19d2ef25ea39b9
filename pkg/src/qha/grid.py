"""Uniform grids on the line and on phase space, quadrature and norms.

Everything here is d = 1.  A ``LineGrid`` samples the line at
``t_j = (j - n/2) h``; its dual grid has spacing ``1 / (n h)`` so that the
centered DFT realises the continuous Fourier transform exactly on the
lattice.  ``PhaseGrid`` pairs a position grid with its dual frequency grid.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

DEFAULT_N = 256
DEFAULT_LENGTH = 12.0


@dataclass(frozen=True)
class LineGrid:
    n: int
    h: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ValueError(f"n must be an even integer >= 2, got {self.n}")
        if not self.h > 0:
            raise ValueError(f"spacing must be positive, got {self.h}")

    @classmethod
    def from_length(cls, n: int = DEFAULT_N, length: float = DEFAULT_LENGTH) -> "LineGrid":
        return cls(n, length / n)

    @property
    def length(self) -> float:
        return self.n * self.h

    @cached_property
    def points(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.h

    @property
    def center(self) -> int:
        """Index of the sample at 0."""
        return self.n // 2

    def dual(self) -> "LineGrid":
        return LineGrid(self.n, 1.0 / (self.n * self.h))

    def same_as(self, other: "LineGrid") -> bool:
        return self.n == other.n and np.isclose(self.h, other.h, rtol=1e-14, atol=0)


@dataclass(frozen=True)
class PhaseGrid:
    x: LineGrid
    xi: LineGrid = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "xi", self.x.dual())

    @classmethod
    def from_length(cls, n: int = DEFAULT_N, length: float = DEFAULT_LENGTH) -> "PhaseGrid":
        return cls(LineGrid.from_length(n, length))

    @classmethod
    def square(cls, n: int) -> "PhaseGrid":
        """Grid whose position and frequency spacings coincide (h = 1/sqrt(n))."""
        return cls(LineGrid(n, 1.0 / np.sqrt(n)))

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def cell_area(self) -> float:
        return self.x.h * self.xi.h

    def swapped(self) -> "PhaseGrid":
        """Phase grid built on the frequency axis (roles of x and xi exchanged)."""
        return PhaseGrid(self.xi)

    @cached_property
    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x.points, self.xi.points, indexing="ij")

    @cached_property
    def radius_sq(self) -> np.ndarray:
        X, XI = self.mesh
        return X**2 + XI**2

    def same_as(self, other: "PhaseGrid") -> bool:
        return self.x.same_as(other.x)


@dataclass(frozen=True, eq=False)
class GridFunction:
    grid: LineGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    def __add__(self, other):
        _check_line(self.grid, other.grid)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _check_line(self.grid, other.grid)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        return GridFunction(self.grid, c * self.values)

    __rmul__ = __mul__

    def norm(self) -> float:
        return float(np.sqrt(inner_product(self, self).real))

    def conj(self) -> "GridFunction":
        return GridFunction(self.grid, self.values.conj())

    def parity(self) -> "GridFunction":
        """(Pf)(t) = f(-t), an exact index permutation on the centered grid."""
        return GridFunction(self.grid, self.values[negation_index(self.grid.n)])


@dataclass(frozen=True, eq=False)
class PhaseFunction:
    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        n = self.grid.n
        if v.shape != (n, n):
            raise ValueError(f"expected ({n}, {n}) table, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: PhaseGrid, func) -> "PhaseFunction":
        X, XI = grid.mesh
        return cls(grid, func(X, XI))

    def __add__(self, other):
        _check_phase(self.grid, other.grid)
        return PhaseFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _check_phase(self.grid, other.grid)
        return PhaseFunction(self.grid, self.values - other.values)

    def __mul__(self, other):
        if isinstance(other, PhaseFunction):
            _check_phase(self.grid, other.grid)
            return PhaseFunction(self.grid, self.values * other.values)
        return PhaseFunction(self.grid, other * self.values)

    __rmul__ = __mul__

    def conj(self) -> "PhaseFunction":
        return PhaseFunction(self.grid, self.values.conj())

    def reflect(self) -> "PhaseFunction":
        """z -> F(-z) with circular index negation."""
        idx = negation_index(self.grid.n)
        return PhaseFunction(self.grid, self.values[np.ix_(idx, idx)])

    def integral(self) -> complex:
        return complex(self.values.sum() * self.grid.cell_area)

    def max_abs(self) -> float:
        return float(np.abs(self.values).max())


def negation_index(n: int) -> np.ndarray:
    """Index permutation j -> -j (mod n) about the center sample n/2."""
    return (n - np.arange(n)) % n


def _check_line(a: LineGrid, b: LineGrid):
    if not a.same_as(b):
        raise ValueError(f"grid mismatch: {a} vs {b}")


def _check_phase(a: PhaseGrid, b: PhaseGrid):
    if not a.same_as(b):
        raise ValueError(f"phase grid mismatch: {a.x} vs {b.x}")


def _check_exponent(p, name="p"):
    if not (p == np.inf or p >= 1):
        raise ValueError(f"{name} must be in [1, inf], got {p}")


def inner_product(f: GridFunction, g: GridFunction) -> complex:
    """Riemann-sum L2 inner product, conjugate-linear in the second slot."""
    _check_line(f.grid, g.grid)
    return complex(f.grid.h * np.vdot(g.values, f.values))


def phase_inner_product(F: PhaseFunction, G: PhaseFunction) -> complex:
    _check_phase(F.grid, G.grid)
    return complex(F.grid.cell_area * np.vdot(G.values, F.values))


def lp_norm(values: np.ndarray, p: float, weight: float = 1.0) -> float:
    """(sum |v|^p * weight)^(1/p); max |v| for p = inf."""
    _check_exponent(p)
    a = np.abs(np.asarray(values)).ravel()
    if a.size == 0:
        return 0.0
    if p == np.inf:
        return float(a.max())
    top = a.max()
    if top == 0:
        return 0.0
    # scale out the maximum so large p does not overflow
    return float(top * (np.sum((a / top) ** p) * weight) ** (1.0 / p))


def function_norm(F: PhaseFunction, p: float) -> float:
    return lp_norm(F.values, p, F.grid.cell_area)


def lorentz_sequence_norm(a: np.ndarray, p: float, q: float, mu: float) -> float:
    """Discrete Lorentz quasi-norm of a sample multiset with atom measure ``mu``.

    The decreasing rearrangement is a step function taking the value a_k on
    ((k-1) mu, k mu], so the layer-cake integral is an exact finite sum.
    """
    if not (1 <= p < np.inf):
        raise ValueError(f"Lorentz p must satisfy 1 <= p < inf, got {p}")
    _check_exponent(q, "q")
    a = np.sort(np.abs(np.asarray(a)).ravel())[::-1]
    if a.size == 0 or a[0] == 0:
        return 0.0
    k = np.arange(1, a.size + 1) * mu
    if q == np.inf:
        return float(np.max(k ** (1.0 / p) * a))
    top = a[0]
    r = q / p
    increments = k**r - (k - mu) ** r
    return float(top * np.sum(increments * (a / top) ** q) ** (1.0 / q))


def lorentz_norm(F: PhaseFunction, p: float, q: float) -> float:
    return lorentz_sequence_norm(F.values, p, q, F.grid.cell_area)


def mixed_norm(F: PhaseFunction, p: float, q: float) -> float:
    """L^q over xi of the L^p norm over x (rows of the table are x)."""
    _check_exponent(p)
    _check_exponent(q, "q")
    g = F.grid
    cols = np.array([lp_norm(F.values[:, k], p, g.x.h) for k in range(g.n)])
    return lp_norm(cols, q, g.xi.h)


def hermite(grid: LineGrid, k: int) -> GridFunction:
    """L2-normalised Hermite function of order k for the e^{-pi t^2} scaling.

    k = 0 is phi_0(t) = 2^{1/4} exp(-pi t^2).  Uses the stable three-term
    recurrence on u = sqrt(2 pi) t.
    """
    if k < 0 or k > grid.n // 4:
        raise ValueError(f"hermite order {k} outside [0, n/4 = {grid.n // 4}]")
    return GridFunction(grid, hermite_table(grid, k)[k])


def hermite_table(grid: LineGrid, kmax: int) -> np.ndarray:
    """Rows 0..kmax of Hermite function samples, shape (kmax + 1, n)."""
    t = grid.points
    u = np.sqrt(2 * np.pi) * t
    out = np.empty((kmax + 1, grid.n))
    out[0] = 2**0.25 * np.exp(-np.pi * t**2)
    if kmax >= 1:
        out[1] = np.sqrt(2.0) * u * out[0]
    for j in range(1, kmax):
        out[j + 1] = np.sqrt(2.0 / (j + 1)) * u * out[j] - np.sqrt(j / (j + 1)) * out[j - 1]
    return out


def gaussian(grid: LineGrid) -> GridFunction:
    return hermite(grid, 0)
