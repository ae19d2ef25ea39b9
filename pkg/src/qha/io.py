"""CSV and binary serialisation of phase tables, operators and spectra."""
from __future__ import annotations

import csv
import struct
from pathlib import Path

import numpy as np

from .grid import LineGrid, PhaseFunction, PhaseGrid
from .op_core import OperatorMatrix, SingularSpectrum

PHASE_MAGIC = b"QHAPHF01"
OPERATOR_MAGIC = b"QHAOPK01"


def _fmt(c: complex) -> str:
    return f"{c.real!r}{'+' if c.imag >= 0 or np.isnan(c.imag) else '-'}{abs(c.imag)!r}j"


def write_phase_csv(F: PhaseFunction, path) -> None:
    """Header row of xi values, then one row per x: x value followed by cells."""
    pg = F.grid
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x\\xi"] + [repr(float(v)) for v in pg.xi.points])
        for x, row in zip(pg.x.points, F.values):
            w.writerow([repr(float(x))] + [_fmt(complex(c)) for c in row])


def read_phase_csv(path) -> PhaseFunction:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 3:
        raise ValueError(f"{path}: too few rows for a phase table")
    xi = np.array([float(v) for v in rows[0][1:]])
    x = np.array([float(r[0]) for r in rows[1:]])
    vals = np.array([[complex(c) for c in r[1:]] for r in rows[1:]])
    n = len(x)
    if vals.shape != (n, n) or len(xi) != n:
        raise ValueError(f"{path}: table is not square")
    pg = PhaseGrid(LineGrid(n, float(x[1] - x[0])))
    if not (np.allclose(pg.x.points, x) and np.allclose(pg.xi.points, xi)):
        raise ValueError(f"{path}: axes are not a centered lattice and its dual")
    return PhaseFunction(pg, vals)


def write_phase_binary(F: PhaseFunction, path) -> None:
    """Magic, n (uint64), h (float64), then row-major complex128 little-endian."""
    with open(path, "wb") as fh:
        fh.write(PHASE_MAGIC)
        fh.write(struct.pack("<Qd", F.grid.n, F.grid.x.h))
        fh.write(np.ascontiguousarray(F.values, dtype="<c16").tobytes())


def read_phase_binary(path) -> PhaseFunction:
    data = Path(path).read_bytes()
    if data[:8] != PHASE_MAGIC:
        raise ValueError(f"{path}: bad magic {data[:8]!r}")
    n, h = struct.unpack_from("<Qd", data, 8)
    vals = np.frombuffer(data, dtype="<c16", offset=24)
    if vals.size != n * n:
        raise ValueError(f"{path}: expected {n * n} entries, found {vals.size}")
    return PhaseFunction(PhaseGrid(LineGrid(int(n), h)), vals.reshape(n, n).astype(complex))


def write_operator_binary(T: OperatorMatrix, path) -> None:
    """Magic, n (uint64), h (float64), then the kernel as row-major complex128."""
    with open(path, "wb") as fh:
        fh.write(OPERATOR_MAGIC)
        fh.write(struct.pack("<Qd", T.grid.n, T.grid.h))
        fh.write(np.ascontiguousarray(T.kernel, dtype="<c16").tobytes())


def read_operator_binary(path) -> OperatorMatrix:
    data = Path(path).read_bytes()
    if data[:8] != OPERATOR_MAGIC:
        raise ValueError(f"{path}: bad magic {data[:8]!r}")
    n, h = struct.unpack_from("<Qd", data, 8)
    K = np.frombuffer(data, dtype="<c16", offset=24)
    if K.size != n * n:
        raise ValueError(f"{path}: expected {n * n} entries, found {K.size}")
    return OperatorMatrix(LineGrid(int(n), h), K.reshape(n, n).astype(complex))


def write_spectrum_csv(s: SingularSpectrum, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "singular_value"])
        for i, v in enumerate(s.values):
            w.writerow([i, repr(float(v))])


def write_series_csv(rows: list[dict], path) -> None:
    """Plot-ready CSV from a list of flat dicts sharing the same keys."""
    if not rows:
        Path(path).write_text("")
        return
    keys = list(rows[0])
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=keys)
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
