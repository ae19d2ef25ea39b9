"""Run configuration: JSON file plus command-line overrides."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .grid import DEFAULT_LENGTH, DEFAULT_N, PhaseGrid
from .multiplier.norms import Budget


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class GridConfig:
    n: int = DEFAULT_N
    length: float = DEFAULT_LENGTH
    d: int = 1

    def __post_init__(self):
        if self.d != 1:
            raise ConfigError(f"only d = 1 is implemented, got d = {self.d}")
        if self.n < 4 or self.n % 2:
            raise ConfigError(f"grid.n must be an even integer >= 4, got {self.n}")
        if not self.length > 0:
            raise ConfigError(f"grid.length must be positive, got {self.length}")

    def build(self) -> PhaseGrid:
        return PhaseGrid.from_length(self.n, self.length)


@dataclass(frozen=True)
class RunConfig:
    grid: GridConfig = field(default_factory=GridConfig)
    seed: int = 0
    symbol: dict[str, Any] | None = None
    budget: dict[str, Any] = field(default_factory=dict)
    params: dict[str, Any] = field(default_factory=dict)

    def make_budget(self) -> Budget:
        try:
            return Budget(seed=self.seed, **self.budget)
        except TypeError as exc:
            raise ConfigError(f"bad budget entry: {exc}") from None

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


_TOP_KEYS = {"grid", "seed", "symbol", "budget", "params", "experiment"}


def parse_config(raw: dict[str, Any]) -> RunConfig:
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    grid_raw = raw.get("grid", {})
    if not isinstance(grid_raw, dict):
        raise ConfigError("'grid' must be an object with n, length, d")
    try:
        grid = GridConfig(
            n=int(grid_raw.get("n", DEFAULT_N)),
            length=float(grid_raw.get("length", DEFAULT_LENGTH)),
            d=int(grid_raw.get("d", 1)),
        )
        seed = int(raw.get("seed", 0))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    symbol = raw.get("symbol")
    if symbol is not None and not (isinstance(symbol, dict) and "family" in symbol):
        raise ConfigError("'symbol' must be an object with a 'family' key")
    return RunConfig(grid, seed, symbol, dict(raw.get("budget", {})), dict(raw.get("params", {})))


def load_config(path) -> RunConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return parse_config(raw)
