import numpy as np
import pytest

from qha.grid import GridFunction, PhaseFunction, PhaseGrid, hermite
from qha.multiplier import (
    Budget,
    bochner_riesz,
    bump_family,
    constant_symbol,
    gaussian_bump,
    gaussian_symbol,
    sine_symbol,
)
from qha.multiplier.experiments import (
    blowup_experiment,
    commutation_check,
    dilated_gaussian,
    duality_check,
    equivalence_experiment,
    gaussian_weyl_experiment,
    lorentz_symbol_report,
    m_at_zero_recovery,
    modulation_probe,
    modulation_probe_direct,
    parity_limit_experiment,
    trace_probe_question,
    weyl_commutation_check,
)
from qha.op_core import random_trace_class, rank_one
from qha.tf_core import symplectic_ft

FAST = Budget(n_random=3, n_alternating_steps=20, sweep_modes=4, n_starts=2)


def test_commutation_reports(pg64):
    T, S = random_trace_class(0, 0.5, pg64.x), random_trace_class(1, 0.5, pg64.x)
    r = commutation_check(constant_symbol(pg64), T, S)
    assert r.passed and r.max_ratio < 1e-10
    assert commutation_check(bochner_riesz(pg64, 1.0), T, S).passed


def test_weyl_commutation_reports(pg64):
    phi0 = hermite(pg64.x, 0)
    P = rank_one(phi0, phi0)
    for m in (constant_symbol(pg64), gaussian_symbol(pg64, 1.0), sine_symbol(pg64)):
        assert weyl_commutation_check(m, P).passed


def test_duality_two_two_and_self_dual(pg64):
    m = gaussian_bump(pg64, 1.0)
    r = duality_check(m, 2, 2, FAST)
    assert r.passed and all(abs(v - m.sup_norm) < 0.05 for v in r.ratios)
    r = duality_check(constant_symbol(pg64), 1, np.inf, FAST)
    assert r.ratios[0] == pytest.approx(r.ratios[1], rel=1e-12)


def test_equivalence_guards(pg64):
    with pytest.raises(ValueError):
        equivalence_experiment([gaussian_bump(pg64, 1.0)], 2, FAST)
    with pytest.raises(ValueError):
        equivalence_experiment(bump_family(pg64, 3.5), 2, FAST)  # L/4 = 3


def test_equivalence_scale_invariance(pg64):
    m = bump_family(pg64, 2.0)[2]
    r = equivalence_experiment([m, m.scaled(2.0)], 1, FAST)
    assert r.ratios[0] == pytest.approx(r.ratios[1], rel=1e-9)
    r2 = equivalence_experiment([m], 2, FAST)
    assert r2.passed and abs(r2.ratios[0] - 1) < 0.05


def test_modulation_probe_against_direct_sum():
    pg = PhaseGrid.square(24)
    F = symplectic_ft(bochner_riesz(pg, 1.0).table)
    assert modulation_probe(F, 1) == pytest.approx(modulation_probe_direct(F, 1), rel=1e-10)
    assert np.isfinite(modulation_probe(F, 1))


def test_modulation_probe_gaussian_closed_form():
    # |<G, rho(Z, W) Phi0>| = 2^{-1/2} e^{-pi|Z|^2/2} e^{-pi|W|^2/2}; sup over W then L1 over Z gives sqrt(2)
    pg = PhaseGrid.square(32)
    G = PhaseFunction(pg, np.exp(-np.pi * pg.radius_sq))
    assert modulation_probe(G, 1) == pytest.approx(np.sqrt(2), rel=1e-6)
    assert modulation_probe(G, 2) == pytest.approx(np.sqrt(0.5), rel=1e-6)


def test_modulation_probe_trivial_and_guard():
    pg = PhaseGrid.square(16)
    assert modulation_probe(PhaseFunction(pg, np.zeros((16, 16))), 2) == 0
    with pytest.raises(ValueError):
        modulation_probe(PhaseFunction(PhaseGrid.square(50), np.zeros((50, 50))), 1)


def test_gaussian_weyl_rows(pg256):
    r = gaussian_weyl_experiment(pg256, (0.125, 0.5, 1.0))
    assert r.passed, r.notes
    rows = {row["eps2"]: row for row in r.series["rows"]}
    assert rows[0.125]["S1"] >= 2 * (1 - 1e-6)
    assert rows[1.0]["min_eig"] >= -1e-10
    assert rows[0.5]["top_singular"][0] == pytest.approx(1, abs=1e-6)


def test_parity_limit_targets(pg256):
    r = parity_limit_experiment(pg256, (0.5, 0.1))
    targets = [p["target"] for p in r.series["pairs"]]
    assert targets[0] == pytest.approx(2) and abs(targets[1]) < 1e-12 and targets[2] == pytest.approx(-2)
    # closed form for the phi0 pair: <L phi0, phi0> = 2 / (1 + 2 eps^2)
    vals = r.series["pairs"][0]["values"]
    assert vals[0] == pytest.approx(1.0, abs=1e-10) and vals[1] == pytest.approx(2 / 1.2, abs=1e-10)


def test_parity_limit_closed_form_for_hermite_one(pg256):
    e2 = 0.05
    r = parity_limit_experiment(pg256, (e2,), pairs=[(hermite(pg256.x, 1), hermite(pg256.x, 1))])
    lam1 = 2 / (1 + 2 * e2) * (2 * e2 - 1) / (2 * e2 + 1)
    assert r.series["pairs"][0]["values"][0].real == pytest.approx(lam1, abs=1e-6)


@pytest.mark.parametrize("make, m0", [(constant_symbol, 1.0), (lambda g: bochner_riesz(g, 1.0), 1.0), (sine_symbol, 0.0)])
def test_m_at_zero(pg256, make, m0):
    r = m_at_zero_recovery(make(pg256))
    assert r.passed
    assert np.allclose(r.series["values"], m0, atol=1e-4)


def test_trace_probe_is_report_only(pg64):
    r = trace_probe_question(pg64, seed=1)
    assert r.passed is None and r.tolerance is None
    assert any("zero window" in n for n in r.notes)
    assert all(np.isfinite(r.ratios))
    zero = GridFunction(pg64.x, np.zeros(64))
    r2 = trace_probe_question(pg64, windows=[("phi0", hermite(pg64.x, 0), hermite(pg64.x, 0)), ("zero", zero, zero)])
    assert len(r2.ratios) == 1 and len(r2.notes) == 1


def test_dilated_gaussian_normalised(pg256):
    for a in (1, 2, 4, 8):
        assert dilated_gaussian(pg256.x, a).norm() == pytest.approx(1, abs=1e-10)


def test_blowup_growth_factor_is_sqrt_two(pg64):
    r = blowup_experiment(gaussian_bump(pg64, 1.0), ranks=(1, 2, 4), budget=FAST)
    assert np.allclose(r.ratios, np.sqrt(2), rtol=1e-6)
    assert r.passed is False


def test_lorentz_symbol_report(pg64):
    ens = [random_trace_class(s, 0.5, pg64.x) for s in range(3)]
    r = lorentz_symbol_report(gaussian_bump(pg64, 1.0), ens, 4 / 3, 4)
    assert r.passed
    with pytest.raises(ValueError):
        lorentz_symbol_report(gaussian_bump(pg64, 1.0), ens, 3, 4)
