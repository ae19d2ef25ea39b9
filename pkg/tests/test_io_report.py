import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qha.grid import PhaseFunction
from qha.io import (
    read_operator_binary,
    read_phase_binary,
    read_phase_csv,
    write_operator_binary,
    write_phase_binary,
    write_phase_csv,
    write_spectrum_csv,
)
from qha.op_core import OperatorMatrix, singular_values
from qha.report import REPORT_KEYS, ExperimentReport

from .conftest import cnormal


def test_phase_csv_round_trip(tmp_path, pg32, rng):
    F = PhaseFunction(pg32, cnormal(rng, (32, 32)))
    path = tmp_path / "f.csv"
    write_phase_csv(F, path)
    header = path.read_text().splitlines()[0].split(",")
    assert len(header) == 33 and float(header[1]) == pg32.xi.points[0]
    G = read_phase_csv(path)
    assert G.grid.same_as(pg32)
    assert np.array_equal(G.values, F.values)


def test_phase_binary_layout(tmp_path, pg32, rng):
    F = PhaseFunction(pg32, cnormal(rng, (32, 32)))
    path = tmp_path / "f.bin"
    write_phase_binary(F, path)
    raw = path.read_bytes()
    assert raw[:8] == b"QHAPHF01"
    body = np.frombuffer(raw, dtype="<c16", offset=24)
    assert np.array_equal(body, F.values.ravel())
    assert np.array_equal(read_phase_binary(path).values, F.values)


def test_operator_binary_round_trip(tmp_path, line64, rng):
    T = OperatorMatrix(line64, cnormal(rng, (64, 64)))
    path = tmp_path / "t.bin"
    write_operator_binary(T, path)
    assert path.read_bytes()[:8] == b"QHAOPK01"
    U = read_operator_binary(path)
    assert U.grid.same_as(line64) and np.array_equal(U.kernel, T.kernel)


def test_bad_magic_rejected(tmp_path):
    path = tmp_path / "x.bin"
    path.write_bytes(b"NOTMAGIC" + bytes(40))
    with pytest.raises(ValueError):
        read_phase_binary(path)
    with pytest.raises(ValueError):
        read_operator_binary(path)


def test_spectrum_csv(tmp_path, line64, rng):
    s = singular_values(OperatorMatrix(line64, cnormal(rng, (64, 64))))
    path = tmp_path / "s.csv"
    write_spectrum_csv(s, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "index,singular_value" and len(lines) == 65
    assert float(lines[1].split(",")[1]) == s.values[0]


def test_report_keys_and_cleaning():
    r = ExperimentReport("x", {"p": np.float64(1.5)}, [np.float64(1.0), float("inf")], None, 1e-6, np.bool_(True))
    d = r.to_dict()
    assert tuple(d)[: len(REPORT_KEYS)] == REPORT_KEYS
    assert d["ratios"] == [1.0, "inf"] and d["pass"] is True
    assert "[PASS] x" in r.summary()
    assert ExperimentReport("y", {}, [], None, None, None).summary().startswith("[REPORT]")


@given(
    st.lists(st.floats(allow_nan=False, allow_infinity=False), max_size=5),
    st.one_of(st.none(), st.booleans()),
)
def test_report_json_round_trip(ratios, verdict):
    r = ExperimentReport("t", {"a": 1}, ratios, max(ratios) if ratios else None, 0.1, verdict, notes=["n"])
    back = ExperimentReport.from_dict(json.loads(r.to_json()))
    assert back.to_json() == r.to_json()


def test_csv_symbol_family(tmp_path, pg32):
    from qha.multiplier import bochner_riesz, symbol_from_config

    m = bochner_riesz(pg32, 1.0)
    path = tmp_path / "m.csv"
    write_phase_csv(m.table, path)
    back = symbol_from_config(pg32, {"family": "csv", "path": str(path), "support": 1.0})
    assert np.array_equal(back.table.values, m.table.values) and back.compact_support == 1.0
    from qha.grid import PhaseGrid

    with pytest.raises(ValueError):
        symbol_from_config(PhaseGrid.from_length(32, 6.0), {"family": "csv", "path": str(path)})
    with pytest.raises(ValueError):
        symbol_from_config(pg32, {"family": "nope"})
