import json

import pytest

from qha.cli import main
from qha.config import ConfigError, GridConfig, parse_config


def test_grid_config_validation():
    assert GridConfig().build().n == 256
    for bad in (dict(n=7), dict(n=2), dict(length=0.0), dict(d=2)):
        with pytest.raises(ConfigError):
            GridConfig(**bad)


def test_parse_config_rejects_bad_shapes():
    with pytest.raises(ConfigError):
        parse_config({"grid": {"n": 64}, "colour": 1})
    with pytest.raises(ConfigError):
        parse_config({"symbol": {"delta": 1}})
    with pytest.raises(ConfigError):
        parse_config({"budget": {"nonsense": 3}}).make_budget()
    cfg = parse_config({"grid": {"n": 64, "length": 8}, "seed": 3, "budget": {"n_starts": 1}})
    assert cfg.grid.n == 64 and cfg.seed == 3 and cfg.make_budget().n_starts == 1


def test_cli_success_writes_outputs(tmp_path):
    out = tmp_path / "o"
    assert main(["gaussian-weyl", "--n", "128", "--eps2", "0.3,0.5,1.0", "--out", str(out)]) == 0
    run = json.loads((out / "run.json").read_text())
    assert run["pass"] is True and run["command"] == "gaussian-weyl"
    assert (out / "00_gaussian_weyl.csv").read_text().startswith("eps2,")


def test_cli_bad_arguments_exit_two(tmp_path):
    assert main(["gaussian-weyl", "--n", "7", "--out", str(tmp_path)]) == 2
    assert main(["verify", "--only", "no-such-check", "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "--config", str(bad), "--out", str(tmp_path)]) == 2
    assert main(["m-at-zero", "--symbol", "csv", "--path", str(tmp_path / "missing.csv"), "--out", str(tmp_path)]) == 2


def test_cli_failure_exit_one(tmp_path):
    # a box of length 6 is too short for the continuum ladder to keep converging
    assert main(["refine", "--length", "6", "--ladder", "64,128", "--out", str(tmp_path)]) == 1


def test_verify_exclude(tmp_path):
    out = tmp_path / "v"
    assert main(["verify", "--n", "64", "--only", "pool-unitarity,fw-roundtrip,covariance", "--exclude", "covariance", "--out", str(out)]) == 0
    names = [r["name"] for r in json.loads((out / "run.json").read_text())["reports"]]
    assert len(names) == 2


def test_frozen_clock_is_reproducible(tmp_path):
    outs = [tmp_path / "a", tmp_path / "b"]
    for o in outs:
        assert main(["m-at-zero", "--n", "64", "--frozen-clock", "--out", str(o)]) == 0
    files = sorted(p.name for p in outs[0].iterdir())
    assert files == sorted(p.name for p in outs[1].iterdir())
    for name in files:
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()
