import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from fermichain.chain import make_coupling_set, xy_couplings
from fermichain.correlation import (build_correlation_matrix, clamp_spectrum, default_mode_count,
                                    df_alpha_dy, entropy_from_correlations, entropy_from_spectrum,
                                    exact_entropy, exact_log_det, f_alpha)
from fermichain.errors import CriticalModelError, DomainError


def integral_block(gamma, h, d):
    """Thermodynamic-limit correlation entries by adaptive quadrature."""
    def lam(t):
        return np.hypot(2 * np.cos(t) - h, 2 * gamma * np.sin(t))
    m11 = quad(lambda t: (2 * np.cos(t) - h) / lam(t) * np.cos(t * d), 0, 2 * np.pi,
               epsabs=1e-14, limit=200)[0] / (2 * np.pi)
    # G = 2 i gamma sin(t); (1/2pi) int G/Lambda e^{i t d} = -(1/2pi) int 2 gamma sin t sin(td)/Lambda
    m12 = -quad(lambda t: 2 * gamma * np.sin(t) / lam(t) * np.sin(t * d), 0, 2 * np.pi,
                epsabs=1e-14, limit=200)[0] / (2 * np.pi)
    return m11, m12


def test_default_mode_count():
    assert default_mode_count(10) == 2 ** 13
    assert default_mode_count(200) == 12800


def test_entries_against_quadrature():
    g, h, X = 0.9, 1.0, 5
    V = build_correlation_matrix(xy_couplings(g, h), X)
    for n in range(X):
        for m in range(X):
            m11, m12 = integral_block(g, h, n - m)
            blk = V.block(n, m)
            assert blk[0, 0] == pytest.approx(m11, abs=1e-11)
            assert blk[1, 1] == pytest.approx(-m11, abs=1e-11)
            assert blk[0, 1] == pytest.approx(m12, abs=1e-11)
            assert blk[1, 0] == pytest.approx(-m12, abs=1e-11)


def test_matrix_hermitian_and_bounded():
    V = build_correlation_matrix(xy_couplings(0.5, 1.2), 30)
    M = V.entries
    assert np.max(np.abs(M - M.conj().T)) < 1e-13
    v = V.eigenvalues()
    assert np.all(np.abs(v) <= 1 + 1e-12)
    np.testing.assert_allclose(np.sort(v), -np.sort(v)[::-1], atol=1e-12)


def test_critical_refused_and_shifted_grid():
    with pytest.raises(CriticalModelError, match="theta_k"):
        build_correlation_matrix(xy_couplings(1.0, 2.0), 10)
    r = exact_entropy(xy_couplings(1.0, 2.0), 10, allow_near_critical=True)
    assert np.isfinite(r.value) and r.value > 0


def test_mode_count_guard():
    with pytest.raises(DomainError):
        build_correlation_matrix(xy_couplings(0.9, 1.0), 100, mode_count=400)
    with pytest.raises(DomainError):
        build_correlation_matrix(xy_couplings(0.9, 1.0), 0)


def test_f_alpha_values():
    assert f_alpha(1.0, 0.0, 1.0) == pytest.approx(np.log(2), abs=1e-15)
    assert f_alpha(1.0, 1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert f_alpha(1.0, 0.0, 2.0) == pytest.approx(np.log(2), abs=1e-15)
    v = 0.6
    p, q = 0.8, 0.2
    assert f_alpha(1.0, v, 1.0) == pytest.approx(-p * np.log(p) - q * np.log(q), rel=1e-14)
    assert f_alpha(1.0, v, 2.0) == pytest.approx(-np.log(p * p + q * q), rel=1e-14)
    assert f_alpha(1.0, v, 1.0 + 1e-9) == pytest.approx(f_alpha(1.0, v, 1.0), abs=1e-8)


@pytest.mark.parametrize("alpha", [1.0, 2.0, 0.5])
def test_derivative_against_difference(alpha):
    y = np.linspace(-0.9, 0.9, 7)
    h = 1e-6
    fd = (f_alpha(1.0, y + h, alpha) - f_alpha(1.0, y - h, alpha)) / (2 * h)
    np.testing.assert_allclose(df_alpha_dy(y, alpha), fd, atol=1e-8)


def test_clamp_and_sum():
    v = np.array([-1 - 5e-11, 0.0, 1 + 5e-11])
    assert np.all(np.abs(clamp_spectrum(v)) <= 1.0)
    assert entropy_from_spectrum(np.array([0.0, 0.0]), 1.0) == pytest.approx(np.log(2))


def test_entropy_of_product_state_is_zero():
    # h large: ground state close to a product state
    assert exact_entropy(xy_couplings(0.1, 50.0), 20).value < 1e-4


def test_entropy_result_metadata():
    r = exact_entropy(xy_couplings(0.9, 1.0), 20, 2.0)
    assert r.method == "exact-eigen"
    assert r.interval_length == 20 and r.alpha == 2.0
    assert r.diagnostics["N"] == 2 ** 13


def test_log_det_matches_product_of_eigenvalues():
    c = xy_couplings(0.9, 1.0)
    v = build_correlation_matrix(c, 15).eigenvalues()
    for lam in (1.5, 3j, 2 - 1j):
        assert np.exp(exact_log_det(c, lam, 15)) == pytest.approx(np.prod(lam - v), rel=1e-10)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.0, 4.0).filter(lambda h: abs(h - 2) > 0.2),
       st.sampled_from([1.0, 2.0, 3.0]))
def test_entropy_bounds(gamma, h, alpha):
    X = 12
    S = exact_entropy(xy_couplings(gamma, h), X, alpha).value
    assert 0 <= S <= X * np.log(2) + 1e-12


@settings(max_examples=10, deadline=None)
@given(st.floats(0.2, 1.5), st.floats(0.0, 1.5))
def test_renyi_monotone_in_alpha(gamma, h):
    c = xy_couplings(gamma, h)
    V = build_correlation_matrix(c, 12)
    s = [entropy_from_correlations(V, a).value for a in (0.5, 1.0, 2.0, 4.0)]
    assert all(a >= b - 1e-12 for a, b in zip(s, s[1:]))


def test_l2_model_runs():
    c = make_coupling_set(2, [0.1, 1.0, -0.5, 1.0, 0.1], [-0.2, -0.7, 0.0, 0.7, 0.2])
    r = exact_entropy(c, 40)
    assert 0 < r.value < 40 * np.log(2)
