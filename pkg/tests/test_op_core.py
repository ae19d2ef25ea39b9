import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qha.grid import GridFunction, PhaseFunction, PhaseGrid, hermite, inner_product, phase_inner_product
from qha.multiplier import gaussian_symbol
from qha.op_core import (
    OperatorMatrix,
    SingularSpectrum,
    SpectrumError,
    adjoint,
    apply,
    compose,
    hermitian_eigenvalues,
    lorentz_schatten_norm,
    parity_conjugate,
    parity_operator,
    random_trace_class,
    rank_one,
    schatten_norm,
    sequence_lorentz_norm,
    singular_values,
    trace,
    weyl_quantize,
    weyl_symbol,
)
from qha.tf_core import LatticePoint, rho_matrix, wigner

from .conftest import cnormal


def random_op(rng, grid):
    return OperatorMatrix(grid, cnormal(rng, (grid.n, grid.n)))


def test_kernel_shape_checked(line64):
    with pytest.raises(ValueError):
        OperatorMatrix(line64, np.zeros((63, 64)))


def test_rank_one_spectrum_and_trace(line64, rng):
    f, g = GridFunction(line64, cnormal(rng, 64)), GridFunction(line64, cnormal(rng, 64))
    T = rank_one(f, g)
    s = singular_values(T).values
    assert s[0] == pytest.approx(f.norm() * g.norm(), rel=1e-12)
    assert s[1] < 1e-10 * s[0]
    assert trace(T) == pytest.approx(inner_product(f, g), rel=1e-12)
    u = GridFunction(line64, cnormal(rng, 64))
    # (f (x) g) u = <u, g> f
    assert np.allclose(apply(T, u).values, inner_product(u, g) * f.values)


def test_projector_onto_phi0(pg256):
    phi0 = hermite(pg256.x, 0)
    P = rank_one(phi0, phi0)
    assert schatten_norm(P, 1) == pytest.approx(1, abs=1e-8)
    s = singular_values(P).values
    assert s[0] == pytest.approx(1, abs=1e-8) and s[1] < 1e-8
    for p in (1, 2, 4):
        assert lorentz_schatten_norm(P, p, np.inf) == pytest.approx(1, abs=1e-8)


def test_compose_adjoint_trace(line64, rng):
    S, T = random_op(rng, line64), random_op(rng, line64)
    assert np.allclose(compose(S, T).matrix, S.matrix @ T.matrix)
    assert np.array_equal(adjoint(adjoint(T)).kernel, T.kernel)
    assert trace(OperatorMatrix.identity(line64)) == pytest.approx(64)
    assert np.allclose(singular_values(T).values, singular_values(adjoint(T)).values, atol=1e-10)
    f = GridFunction(line64, cnormal(rng, 64))
    g = GridFunction(line64, cnormal(rng, 64))
    assert inner_product(apply(T, f), g) == pytest.approx(inner_product(f, apply(adjoint(T), g)), rel=1e-12)


def test_parity_conjugation(line64, rng):
    f, g = GridFunction(line64, cnormal(rng, 64)), GridFunction(line64, cnormal(rng, 64))
    lhs = parity_conjugate(rank_one(f, g)).kernel
    assert np.abs(lhs - rank_one(f.parity(), g.parity()).kernel).max() < 1e-12
    T = random_op(rng, line64)
    assert np.array_equal(parity_conjugate(parity_conjugate(T)).kernel, T.kernel)
    P = parity_operator(line64)
    assert np.allclose(compose(compose(P, T), P).kernel, parity_conjugate(T).kernel)


def test_parity_flips_shift(line64, rng):
    # rho(-z) = P rho(z) P for lattice points whose negation stays in range
    P = parity_operator(line64).matrix
    for _ in range(20):
        a, b = map(int, rng.integers(-31, 32, 2))
        z = LatticePoint.from_offsets(a, b, 64)
        mz = LatticePoint.from_offsets(-a, -b, 64)
        assert np.abs(rho_matrix(line64, mz) - P @ rho_matrix(line64, z) @ P).max() < 1e-10


def test_schatten_norms_match_numpy(line64, rng):
    T = random_op(rng, line64)
    A = T.matrix
    assert schatten_norm(T, 1) == pytest.approx(np.linalg.norm(A, "nuc"), rel=1e-12)
    assert schatten_norm(T, 2) == pytest.approx(np.linalg.norm(A, "fro"), rel=1e-12)
    assert schatten_norm(T, np.inf) == pytest.approx(np.linalg.norm(A, 2), rel=1e-12)


def test_singular_values_of_constructed_kernel(line64, rng):
    Q1, _ = np.linalg.qr(cnormal(rng, (64, 64)))
    Q2, _ = np.linalg.qr(cnormal(rng, (64, 64)))
    d = np.sort(rng.random(64))[::-1]
    T = OperatorMatrix.from_matrix(line64, Q1 @ np.diag(d) @ Q2)
    assert np.abs(singular_values(T).values - d).max() < 1e-10
    assert np.all(singular_values(OperatorMatrix.zero(line64)).values == 0)


def test_spectrum_validation(line64):
    with pytest.raises(ValueError):
        SingularSpectrum(np.array([1.0, 2.0]))
    bad = OperatorMatrix(line64, np.full((64, 64), np.nan))
    with pytest.raises(SpectrumError):
        singular_values(bad)


@given(st.integers(0, 2**31))
def test_schatten_nesting(seed):
    rng = np.random.default_rng(seed)
    from qha.grid import LineGrid

    T = random_op(rng, LineGrid.from_length(16, 4.0))
    norms = [schatten_norm(T, p) for p in (1, 1.5, 2, 3, 8, np.inf)]
    assert all(norms[i + 1] <= norms[i] * (1 + 1e-12) for i in range(len(norms) - 1))


@given(st.integers(0, 2**31), st.sampled_from([1.0, 4 / 3, 2.0, 5.0]))
def test_lorentz_schatten_collapses(seed, p):
    rng = np.random.default_rng(seed)
    from qha.grid import LineGrid

    T = random_op(rng, LineGrid.from_length(16, 4.0))
    assert lorentz_schatten_norm(T, p, p) == pytest.approx(schatten_norm(T, p), rel=1e-12)


def test_sequence_lorentz_two_term():
    assert sequence_lorentz_norm(np.array([3.0, 1.0, 0.0]), 1, np.inf) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        sequence_lorentz_norm(np.ones(3), np.inf, 2)


def test_weyl_quantize_wigner_of_phi0(pg256):
    phi0 = hermite(pg256.x, 0)
    a = PhaseFunction(pg256, 2 * np.exp(-2 * np.pi * pg256.radius_sq))
    assert np.abs(weyl_quantize(a).kernel - rank_one(phi0, phi0).kernel).max() < 1e-6
    assert np.abs(weyl_symbol(rank_one(phi0, phi0)).values - a.values).max() < 1e-6


def test_weyl_symbol_of_rank_one_is_cross_wigner(line64, rng):
    f, g = GridFunction(line64, cnormal(rng, 64)), GridFunction(line64, cnormal(rng, 64))
    assert np.abs(weyl_symbol(rank_one(f, g)).values - wigner(f, g).values).max() < 1e-8


def test_weyl_pairing(pg64, rng):
    # <L_a f, g> = <a, W(g, f)>
    a = PhaseFunction(pg64, cnormal(rng, (64, 64)))
    f, g = GridFunction(pg64.x, cnormal(rng, 64)), GridFunction(pg64.x, cnormal(rng, 64))
    lhs = inner_product(apply(weyl_quantize(a), f), g)
    assert lhs == pytest.approx(phase_inner_product(a, wigner(g, f)), rel=1e-10)


def test_weyl_round_trip(line64, rng):
    T = random_op(rng, line64)
    assert np.abs(weyl_quantize(weyl_symbol(T)).kernel - T.kernel).max() < 1e-9


def test_gaussian_quantisation_positivity(pg256):
    L_half = weyl_quantize(gaussian_symbol(pg256, np.sqrt(0.5)).table)
    assert hermitian_eigenvalues(L_half).min() >= -1e-10
    L_low = weyl_quantize(gaussian_symbol(pg256, np.sqrt(0.3)).table)
    assert hermitian_eigenvalues(L_low).min() < -1e-8
    for e2 in (0.5, 1.0):
        assert schatten_norm(weyl_quantize(gaussian_symbol(pg256, np.sqrt(e2)).table), 1) == pytest.approx(1, abs=1e-6)
    assert schatten_norm(weyl_quantize(gaussian_symbol(pg256, np.sqrt(0.125)).table), 1) >= 2 * (1 - 1e-6)


def test_gaussian_quantisation_eigenvalues_closed_form(pg256):
    # L_{Gamma_eps} h_k = 2/(1+2e) ((2e-1)/(2e+1))^k h_k with e = eps^2
    e = 0.3
    lam = hermitian_eigenvalues(weyl_quantize(gaussian_symbol(pg256, np.sqrt(e)).table))
    expected = np.array([2 / (1 + 2 * e) * ((2 * e - 1) / (2 * e + 1)) ** k for k in range(6)])
    got = np.concatenate([lam[-3:][::-1], lam[:3]])
    order = np.concatenate([expected[0::2][:3], expected[1::2][:3]])
    assert np.abs(got - order).max() < 1e-10


def test_hermitian_eigenvalues_rejects_non_selfadjoint(line64, rng):
    with pytest.raises(SpectrumError):
        hermitian_eigenvalues(random_op(rng, line64))


def test_random_trace_class_contract(line64):
    T1, T2 = random_trace_class(7, 0.5, line64), random_trace_class(7, 0.5, line64)
    assert np.array_equal(T1.kernel, T2.kernel)
    # |c_k| = e^{-decay k}, unit factors: triangle inequality
    assert schatten_norm(T1, 1) <= np.exp(-0.5 * np.arange(8)).sum() + 1e-10
    R = random_trace_class(3, 30.0, line64)
    s = singular_values(R).values
    assert s[1] / s[0] < np.exp(-30.0) + 1e-10
