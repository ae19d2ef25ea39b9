"""Multiplier symbols sampled on the phase-space lattice."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..grid import PhaseFunction, PhaseGrid


@dataclass(frozen=True, eq=False)
class MultiplierSymbol:
    table: PhaseFunction
    compact_support: float | None = None
    name: str = "custom"
    sup_norm: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sup_norm", self.table.max_abs())
        R = self.compact_support
        if R is not None:
            outside = self.table.grid.radius_sq > R**2 * (1 + 1e-12)
            if np.any(self.table.values[outside] != 0):
                raise ValueError(f"symbol '{self.name}' does not vanish outside |z| <= {R}")

    @property
    def grid(self) -> PhaseGrid:
        return self.table.grid

    @property
    def values(self) -> np.ndarray:
        return self.table.values

    def at_origin(self) -> complex:
        c = self.grid.n // 2
        return complex(self.values[c, c])

    def scaled(self, c: complex) -> "MultiplierSymbol":
        return MultiplierSymbol(c * self.table, self.compact_support, f"{c}*{self.name}")

    def conj(self) -> "MultiplierSymbol":
        return MultiplierSymbol(self.table.conj(), self.compact_support, f"conj({self.name})")

    def reflect(self) -> "MultiplierSymbol":
        return MultiplierSymbol(self.table.reflect(), self.compact_support, f"{self.name}(-z)")

    def __mul__(self, other: "MultiplierSymbol") -> "MultiplierSymbol":
        supports = [s for s in (self.compact_support, other.compact_support) if s is not None]
        return MultiplierSymbol(self.table * other.table, min(supports) if supports else None, f"{self.name}*{other.name}")


def constant_symbol(grid: PhaseGrid, value: complex = 1.0) -> MultiplierSymbol:
    return MultiplierSymbol(PhaseFunction(grid, np.full((grid.n, grid.n), value, dtype=complex)), name=f"constant({value})")


def bochner_riesz(grid: PhaseGrid, delta: float) -> MultiplierSymbol:
    """m_delta(z) = max(1 - |z|^2, 0)^delta."""
    if not delta > 0:
        raise ValueError(f"Bochner-Riesz exponent must be positive, got {delta}")
    base = np.clip(1.0 - grid.radius_sq, 0.0, None)
    return MultiplierSymbol(PhaseFunction(grid, base**delta), compact_support=1.0, name=f"bochner_riesz({delta})")


def gaussian_symbol(grid: PhaseGrid, eps: float) -> MultiplierSymbol:
    """Gamma_eps(z) = eps^{-2} exp(-pi |z|^2 / eps^2)  (d = 1)."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    vals = eps**-2 * np.exp(-np.pi * grid.radius_sq / eps**2)
    return MultiplierSymbol(PhaseFunction(grid, vals), name=f"gaussian(eps={eps:g})")


def sine_symbol(grid: PhaseGrid) -> MultiplierSymbol:
    return MultiplierSymbol(PhaseFunction(grid, np.sin(np.pi * grid.radius_sq)), name="sine")


def tau_spreading(grid: PhaseGrid) -> PhaseFunction:
    """Closed form of F_sigma(sin(pi |z|^2)) for d = 1."""
    r2 = grid.radius_sq
    d = 1
    vals = (np.exp(0.5j * np.pi * d) * np.exp(-1j * np.pi * r2) - np.exp(-0.5j * np.pi * d) * np.exp(1j * np.pi * r2)) / 2j
    return PhaseFunction(grid, vals)


def smooth_bump(grid: PhaseGrid, radius: float, center=(0.0, 0.0), support: float | None = None) -> MultiplierSymbol:
    """C-infinity bump exp(1 - 1/(1 - |u|^2)) on the disc |z - center| < radius, peak 1."""
    X, XI = grid.mesh
    u2 = ((X - center[0]) ** 2 + (XI - center[1]) ** 2) / radius**2
    vals = np.zeros_like(u2)
    inside = u2 < 1
    vals[inside] = np.exp(1.0 - 1.0 / (1.0 - u2[inside]))
    if support is None:
        support = radius + float(np.hypot(*center))
    return MultiplierSymbol(PhaseFunction(grid, vals), compact_support=support, name=f"bump(r={radius:g},c={tuple(center)})")


def bump_family(grid: PhaseGrid, support: float = 2.0) -> list[MultiplierSymbol]:
    """Five smooth bumps all supported in |z| <= support."""
    s = support
    specs = [
        (1.0 * s, (0.0, 0.0)),
        (0.75 * s, (0.0, 0.0)),
        (0.5 * s, (0.0, 0.0)),
        (0.5 * s, (0.4 * s, 0.0)),
        (0.6 * s, (0.0, -0.3 * s)),
    ]
    return [smooth_bump(grid, r, c, support=s) for r, c in specs]


def gaussian_bump(grid: PhaseGrid, width: float = 1.0, center=(0.0, 0.0)) -> MultiplierSymbol:
    """exp(-pi |z - center|^2 / width^2), peak 1."""
    X, XI = grid.mesh
    vals = np.exp(-np.pi * ((X - center[0]) ** 2 + (XI - center[1]) ** 2) / width**2)
    return MultiplierSymbol(PhaseFunction(grid, vals), name=f"gaussian_bump(w={width:g},c={tuple(center)})")


def symbol_from_config(grid: PhaseGrid, conf: dict) -> MultiplierSymbol:
    """Build a symbol from {"family": ..., parameter: ...}."""
    family = conf.get("family")
    if family == "bochner_riesz":
        return bochner_riesz(grid, float(conf.get("delta", 1.0)))
    if family == "gaussian":
        return gaussian_symbol(grid, float(conf.get("eps", 1.0)))
    if family == "sine":
        return sine_symbol(grid)
    if family == "constant":
        return constant_symbol(grid, complex(conf.get("value", 1.0)))
    if family == "csv":
        from ..io import read_phase_csv

        table = read_phase_csv(conf["path"])
        if not table.grid.same_as(grid):
            raise ValueError("CSV symbol grid does not match the run grid")
        return MultiplierSymbol(table, conf.get("support"), name=f"csv({conf['path']})")
    raise ValueError(f"unknown symbol family {family!r}")
