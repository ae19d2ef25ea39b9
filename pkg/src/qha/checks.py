"""Named invariant checks run by ``qha verify`` and the refinement ladder.

Each check takes a ``CheckContext`` and returns a list of reports.  Checks
that estimate multiplier norms use ``ctx.estimation_grid`` (n capped at 128);
everything else runs on ``ctx.grid``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .convolution import werner_young_report
from .fourier_wigner import fw_inverse, fw_transform, hausdorff_young_report
from .grid import (
    GridFunction,
    LineGrid,
    PhaseFunction,
    PhaseGrid,
    function_norm,
    hermite,
)
from .multiplier import (
    Budget,
    bochner_riesz,
    bump_family,
    constant_symbol,
    estimate_multiplier_norm,
    fw_multiplier,
    gaussian_bump,
    gaussian_symbol,
    sine_symbol,
    smooth_bump,
)
from .multiplier.experiments import (
    blowup_experiment,
    commutation_check,
    duality_check,
    equivalence_experiment,
    gaussian_weyl_experiment,
    lorentz_symbol_report,
    m_at_zero_recovery,
    parity_limit_experiment,
    weyl_commutation_check,
)
from .multiplier.symbols import MultiplierSymbol
from .op_core import OperatorMatrix, adjoint, parity_conjugate, random_trace_class, schatten_norm
from .report import ExperimentReport
from .tf_core import LatticePoint, ambiguity, covariant_shift, symplectic_ft, tf_shift, wigner

ESTIMATION_N = 128


@dataclass(frozen=True)
class CheckContext:
    grid: PhaseGrid
    seed: int = 0
    budget: Budget = field(default_factory=Budget)

    @property
    def line(self) -> LineGrid:
        return self.grid.x

    @property
    def estimation_grid(self) -> PhaseGrid:
        n = min(self.grid.n, ESTIMATION_N)
        return PhaseGrid.from_length(n, self.grid.x.length)

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


def _report(name, params, errs, tol, **kw) -> ExperimentReport:
    errs = [float(e) for e in errs]
    worst = max(errs)
    return ExperimentReport(name, params, errs, worst, tol, worst < tol, **kw)


def random_kernel(rng, grid: LineGrid) -> OperatorMatrix:
    n = grid.n
    return OperatorMatrix(grid, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def random_phase_function(rng, pg: PhaseGrid, width: float | None = None) -> PhaseFunction:
    n = pg.n
    w = rng.uniform(0.5, 2.0) if width is None else width
    vals = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * np.exp(-np.pi * pg.radius_sq / w**2)
    return PhaseFunction(pg, vals)


def trace_class_ensemble(ctx: CheckContext, count: int, salt: int, grid: LineGrid | None = None):
    grid = grid or ctx.line
    rng = ctx.rng(salt)
    seeds = rng.integers(0, 2**31, count)
    ranks = rng.integers(1, 9, count)
    decays = rng.uniform(0.0, 1.5, count)
    return [random_trace_class(int(s), float(d), grid, rank=int(r)) for s, d, r in zip(seeds, decays, ranks)]


# -- time-frequency core ---------------------------------------------------


def check_gaussian_ambiguity(ctx):
    pg = ctx.grid
    phi0 = hermite(ctx.line, 0)
    A = ambiguity(phi0, phi0).values
    W = wigner(phi0, phi0).values
    ea = np.abs(A - np.exp(-np.pi * pg.radius_sq / 2)).max()
    ew = np.abs(W - 2 * np.exp(-2 * np.pi * pg.radius_sq)).max()
    return [_report("gaussian_ambiguity", {"n": pg.n, "length": pg.x.length}, [ea, ew], 1e-6)]


def check_covariance(ctx, count: int = 32):
    rng = ctx.rng(3)
    n = ctx.line.n
    f = GridFunction(ctx.line, rng.standard_normal(n) + 1j * rng.standard_normal(n))
    g = GridFunction(ctx.line, rng.standard_normal(n) + 1j * rng.standard_normal(n))
    A = ambiguity(f, g)
    errs = []
    for _ in range(count):
        z = LatticePoint(*map(int, rng.integers(0, n, 2)))
        errs.append(np.abs(ambiguity(tf_shift(f, z), g).values - covariant_shift(A, z)).max())
    return [_report("covariance", {"shifts": count, "seed": ctx.seed}, errs, 1e-10)]


def check_symplectic_ft(ctx):
    rng = ctx.rng(4)
    n = ctx.grid.n
    Psi = PhaseFunction(ctx.grid, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    F = symplectic_ft(Psi)
    inv = np.abs(symplectic_ft(F).values - Psi.values).max()
    pars = abs(function_norm(F, 2) - function_norm(Psi, 2)) / function_norm(Psi, 2)
    gauss = PhaseFunction(ctx.grid, np.exp(-np.pi * ctx.grid.radius_sq))
    self_dual = np.abs(symplectic_ft(gauss).values - gauss.values).max()
    return [_report("symplectic_ft", {"seed": ctx.seed}, [inv, pars, self_dual], 1e-10)]


def check_pool_unitarity(ctx, count: int = 20):
    rng = ctx.rng(2)
    errs = []
    for _ in range(count):
        T = random_kernel(rng, ctx.line)
        s2 = schatten_norm(T, 2)
        errs.append(abs(function_norm(fw_transform(T), 2) - s2) / s2)
    return [_report("pool_unitarity", {"members": count, "seed": ctx.seed}, errs, 1e-10)]


def check_fw_roundtrip(ctx, count: int = 5):
    rng = ctx.rng(5)
    one = constant_symbol(ctx.grid)
    errs = []
    for _ in range(count):
        T = random_kernel(rng, ctx.line)
        scale = np.abs(T.kernel).max()
        errs.append(np.abs(fw_inverse(fw_transform(T)).kernel - T.kernel).max() / scale)
        errs.append(np.abs(fw_multiplier(one, T).kernel - T.kernel).max() / scale)
    return [_report("fw_roundtrip", {"members": count, "seed": ctx.seed}, errs, 1e-10)]


# -- convolutions and Hausdorff-Young ---------------------------------------


def check_werner_young(ctx, members: int = 50):
    rng = ctx.rng(6)
    funcs = [random_phase_function(rng, ctx.grid) for _ in range(members)]
    ts = trace_class_ensemble(ctx, members, 7)
    ss = trace_class_ensemble(ctx, members, 8)
    return [werner_young_report(funcs, ts, ss, p, q) for p, q in ((1, 1), (2, 2), (1, 2))]


def check_hausdorff_young(ctx, members: int = 20):
    ens = trace_class_ensemble(ctx, members, 9)
    return [hausdorff_young_report(ens, p) for p in (2, 1, 4 / 3)]


# -- multipliers --------------------------------------------------------------


def _commutation_symbols(pg: PhaseGrid, rng):
    c = tuple(rng.uniform(-1, 1, 2))
    return [gaussian_bump(pg, rng.uniform(0.7, 1.5), c), bochner_riesz(pg, 1.0), sine_symbol(pg)]


def check_commutation(ctx, pairs: int = 5):
    rng = ctx.rng(10)
    ts = trace_class_ensemble(ctx, pairs, 11)
    ss = trace_class_ensemble(ctx, pairs, 12)
    reports = []
    for m in _commutation_symbols(ctx.grid, rng):
        errs = [commutation_check(m, T, S).max_ratio for T, S in zip(ts, ss)]
        reports.append(_report("commutation", {"symbol": m.name, "pairs": pairs}, errs, 1e-9))
    return reports


def check_weyl_commutation(ctx):
    phi0 = hermite(ctx.line, 0)
    T0 = OperatorMatrix(ctx.line, np.outer(phi0.values, phi0.values.conj()))
    T1 = trace_class_ensemble(ctx, 1, 13)[0]
    return [
        weyl_commutation_check(gaussian_symbol(ctx.grid, 1.0), T0),
        weyl_commutation_check(sine_symbol(ctx.grid), T1),
    ]


def check_adjoint_parity(ctx, count: int = 3):
    rng = ctx.rng(14)
    n = ctx.grid.n
    errs = []
    for _ in range(count):
        m = MultiplierSymbol(PhaseFunction(ctx.grid, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))))
        T = random_kernel(rng, ctx.line)
        lhs = adjoint(fw_multiplier(m, T)).kernel
        rhs = fw_multiplier(m.reflect().conj(), adjoint(T)).kernel
        errs.append(np.abs(lhs - rhs).max())
        lhs = fw_multiplier(m.reflect(), parity_conjugate(T)).kernel
        rhs = parity_conjugate(fw_multiplier(m, T)).kernel
        errs.append(np.abs(lhs - rhs).max())
    return [_report("adjoint_parity", {"members": count, "seed": ctx.seed}, errs, 1e-9)]


def smooth_test_symbols(pg: PhaseGrid) -> list[MultiplierSymbol]:
    return [gaussian_bump(pg, 1.0), gaussian_bump(pg, 1.0, (0.5, 0.3)), smooth_bump(pg, 1.5)]


def check_m2_isometry(ctx):
    pg = ctx.estimation_grid
    syms = smooth_test_symbols(pg)
    est = [estimate_multiplier_norm(m, 2, 2, "quantum", ctx.budget).value / m.sup_norm for m in syms]
    errs = [abs(e - 1) for e in est]
    return [_report("m2_isometry", {"symbols": [m.name for m in syms], "n": pg.n}, errs, 0.05, series={"ratio_to_sup": est})]


DUALITY_PAIRS = ((1.0, 1.0), (1.0, 2.0), (4 / 3, 2.0))


def check_duality(ctx):
    pg = ctx.estimation_grid
    return [duality_check(m, p, q, ctx.budget) for m in smooth_test_symbols(pg) for p, q in DUALITY_PAIRS]


def check_gaussian_weyl(ctx):
    return [gaussian_weyl_experiment(ctx.grid)]


def check_gaussian_lp(ctx):
    pg = ctx.grid
    errs, rows = [], []
    for k in (1, 2, 4):
        F = PhaseFunction(pg, np.exp(-np.pi * k * pg.radius_sq))
        for p in (1, 2, 4):
            got = function_norm(F, p) ** p
            errs.append(abs(got - 1 / (k * p)))
            rows.append({"k": k, "p": p, "value": got, "expected": 1 / (k * p)})
    return [_report("gaussian_lp", {"n": pg.n}, errs, 1e-6, series={"rows": rows})]


def check_parity_limit(ctx):
    return [parity_limit_experiment(ctx.grid)]


def check_m_at_zero(ctx):
    pg = ctx.grid
    return [m_at_zero_recovery(m) for m in (constant_symbol(pg), bochner_riesz(pg, 1.0), sine_symbol(pg))]


def check_equivalence(ctx):
    pg = ctx.estimation_grid
    return [equivalence_experiment(bump_family(pg, 2.0), p, ctx.budget) for p in (1, 2)]


def check_algebra_nesting(ctx, count: int = 3):
    rng = ctx.rng(15)
    pg = ctx.grid
    errs, nest_violations = [], []
    ens = trace_class_ensemble(ctx, count, 16)
    for T in ens:
        m1 = gaussian_bump(pg, rng.uniform(0.5, 2.0), tuple(rng.uniform(-1, 1, 2)))
        m2 = sine_symbol(pg)
        lhs = fw_multiplier(m1 * m2, T).kernel
        rhs = fw_multiplier(m1, fw_multiplier(m2, T)).kernel
        errs.append(np.abs(lhs - rhs).max())
        out = fw_multiplier(m1, T)
        norms = [schatten_norm(out, s) for s in (1, 4 / 3, 2, 4, np.inf)]
        nest_violations.append(max(0.0, max(norms[i + 1] - norms[i] for i in range(len(norms) - 1))))
    return [
        _report("banach_algebra", {"members": count}, errs, 1e-10),
        _report("nesting", {"members": count, "exponents": [1, 4 / 3, 2, 4, "inf"]}, nest_violations, 1e-12),
    ]


def check_blowup(ctx):
    pg = ctx.estimation_grid
    return [blowup_experiment(gaussian_bump(pg, 1.0), budget=ctx.budget)]


def check_lorentz_symbol(ctx):
    pg = ctx.grid
    ens = trace_class_ensemble(ctx, 5, 17)
    return [lorentz_symbol_report(gaussian_bump(pg, 1.0), ens, 4 / 3, 4)]


CHECKS = {
    "gaussian-ambiguity": check_gaussian_ambiguity,
    "pool-unitarity": check_pool_unitarity,
    "covariance": check_covariance,
    "symplectic-ft": check_symplectic_ft,
    "fw-roundtrip": check_fw_roundtrip,
    "werner-young": check_werner_young,
    "hausdorff-young": check_hausdorff_young,
    "commutation": check_commutation,
    "weyl-commutation": check_weyl_commutation,
    "adjoint-parity": check_adjoint_parity,
    "m2-isometry": check_m2_isometry,
    "duality": check_duality,
    "gaussian-weyl": check_gaussian_weyl,
    "gaussian-lp": check_gaussian_lp,
    "parity-limit": check_parity_limit,
    "m-at-zero": check_m_at_zero,
    "equivalence": check_equivalence,
    "algebra-nesting": check_algebra_nesting,
    "blowup": check_blowup,
    "lorentz-symbol": check_lorentz_symbol,
}


def run_checks(ctx: CheckContext, names=None) -> list[ExperimentReport]:
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    out = []
    for name in names:
        out.extend(CHECKS[name](ctx))
    return out


# -- refinement ladder --------------------------------------------------------

ROUNDOFF_FLOOR = 1e-12


def _gaussian_errors(pg: PhaseGrid) -> dict[str, float]:
    phi0 = hermite(pg.x, 0)
    A = ambiguity(phi0, phi0).values
    W = wigner(phi0, phi0).values
    gamma = gaussian_symbol(pg, 1.0).table
    return {
        "gaussian_ambiguity": float(np.abs(A - np.exp(-np.pi * pg.radius_sq / 2)).max()),
        "gaussian_wigner": float(np.abs(W - 2 * np.exp(-2 * np.pi * pg.radius_sq)).max()),
        "gamma_integral": float(abs(gamma.integral() - 1)),
    }


def _exact_errors(pg: PhaseGrid, seed: int) -> dict[str, float]:
    rng = np.random.default_rng(seed)
    n = pg.n
    Psi = PhaseFunction(pg, rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    T = random_kernel(rng, pg.x)
    return {
        "fsigma_involution": float(np.abs(symplectic_ft(symplectic_ft(Psi)).values - Psi.values).max()),
        "fw_roundtrip": float(np.abs(fw_inverse(fw_transform(T)).kernel - T.kernel).max() / np.abs(T.kernel).max()),
    }


def refinement_ladder(ladder, length: float, seed: int = 0) -> list[ExperimentReport]:
    """Continuum errors must not increase along the ladder; a ladder that
    stalls above roundoff means the box is too short (wrap error dominates).
    Lattice-exact identities must stay at roundoff on every rung."""
    ladder = sorted(int(n) for n in ladder)
    rows = []
    for n in ladder:
        pg = PhaseGrid.from_length(n, length)
        rows.append({"n": n, **_gaussian_errors(pg), **_exact_errors(pg, seed)})
    reports = []
    for key in ("gaussian_ambiguity", "gaussian_wigner", "gamma_integral"):
        errs = [r[key] for r in rows]
        notes = []
        increasing = [i for i in range(len(errs) - 1) if errs[i + 1] > max(errs[i], ROUNDOFF_FLOOR)]
        stalled = [i for i in range(len(errs) - 1) if errs[i] > ROUNDOFF_FLOOR and errs[i + 1] > 0.5 * errs[i]]
        if increasing:
            notes.append(f"error increases after n={[ladder[i] for i in increasing]}")
        if stalled:
            notes.append(f"error stalls above roundoff after n={[ladder[i] for i in stalled]}: length {length} too small")
        reports.append(
            ExperimentReport(
                f"refine_{key}", {"ladder": ladder, "length": length}, errs, max(errs), None, not notes, notes=notes
            )
        )
    for key in ("fsigma_involution", "fw_roundtrip"):
        errs = [r[key] for r in rows]
        reports.append(_report(f"refine_{key}", {"ladder": ladder, "length": length}, errs, 1e-10))
    reports[0].series["rows"] = rows
    return reports


# -- report-only experiments --------------------------------------------------


def bochner_riesz_report(pg: PhaseGrid, deltas, p: float, budget: Budget) -> ExperimentReport:
    """Quantum and classical p -> p estimates for Bochner-Riesz symbols.

    delta = 0 stands for the ball indicator.  The conjectured range
    |1/p - 1/2| < (2 delta + 1) / 4 is recorded next to each estimate; no
    verdict is drawn.
    """
    rows = []
    for delta in deltas:
        if delta == 0:
            m = MultiplierSymbol(PhaseFunction(pg, (pg.radius_sq <= 1).astype(float)), 1.0, "ball_indicator")
        else:
            m = bochner_riesz(pg, delta)
        qn = estimate_multiplier_norm(m, p, p, "quantum", budget).value
        cn = estimate_multiplier_norm(m, p, p, "classical", budget).value
        rows.append(
            {
                "delta": float(delta),
                "p": float(p),
                "quantum": qn,
                "classical": cn,
                "in_conjectured_range": bool(abs(1 / p - 1 / 2) < (2 * delta + 1) / 4),
            }
        )
    return ExperimentReport(
        "bochner_riesz",
        {"deltas": [float(d) for d in deltas], "p": p, "n": pg.n, "length": pg.x.length, "seed": budget.seed},
        [r["quantum"] for r in rows],
        None,
        None,
        None,
        series={"rows": rows},
    )
