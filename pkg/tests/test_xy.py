import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import ellipk

from fermichain.chain import xy_couplings
from fermichain.correlation import exact_entropy
from fermichain.errors import CriticalModelError, DomainError
from fermichain.surface import surface
from fermichain.theta import asymptotic_entropy
from fermichain.xy import (_s1_region2, classify, cross_ratio_xy, dispersion_rescaling_residual,
                           dual_1b, dual_kramers_wannier, elliptic_I, elliptic_I_complement,
                           entropy, entropy_closed_form,
                           finite_size_ising_triality_check, ising_constant, ising_line_entropy, tau,
                           triality_partner, xy_roots)


def I_ref(z):
    return float(ellipk(z * z))      # scipy takes the parameter m = z^2


def test_elliptic_values():
    assert elliptic_I(0.0) == pytest.approx(np.pi / 2, abs=1e-15)
    assert elliptic_I(1 / np.sqrt(2)) == pytest.approx(1.8540747, abs=1e-7)
    for z in np.linspace(0, 0.999, 23):
        assert elliptic_I(z) == pytest.approx(I_ref(z), rel=1e-14)
    with pytest.raises(DomainError):
        elliptic_I(1.0)


@pytest.mark.parametrize("y", np.linspace(0.05, 0.95, 19))
def test_landen_identities(y):
    assert elliptic_I(2 * np.sqrt(y) / (1 + y)) == pytest.approx((1 + y) * elliptic_I(y), rel=1e-13)
    assert elliptic_I((1 - y) / (1 + y)) == pytest.approx(
        (1 + y) / 2 * elliptic_I(np.sqrt(1 - y * y)), rel=1e-13)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-6, 1 - 1e-6))
def test_landen_identities_via_complements(y):
    # moduli near 1 are passed through their exactly formed complements
    k1 = (1 - y) / (1 + y)
    k2 = 2 * np.sqrt(y) / (1 + y)
    assert elliptic_I_complement(k1) == pytest.approx((1 + y) * elliptic_I(y), rel=1e-13)
    assert elliptic_I_complement(k2) == pytest.approx(
        (1 + y) / 2 * elliptic_I_complement(y), rel=1e-13)


def test_complement_consistency():
    for z in np.linspace(0, 0.9, 10):
        assert elliptic_I_complement(np.sqrt(1 - z * z)) == pytest.approx(elliptic_I(z), rel=1e-14)


@pytest.mark.parametrize("g,h,x,region", [
    (0.9, 1.0, 0.92593, "R1a"),
    (0.3, 1.0, 8.3333, "R1b"),
    (1.0, 3.0, -1.25, "R2"),
    (0.7, 2.0, 0.0, "critical-Ising-line"),
    (0.0, 1.0, np.inf, "critical-XX"),
])
def test_classify(g, h, x, region):
    p = classify(g, h)
    assert p.region == region
    assert p.x == pytest.approx(x, abs=5e-5)


def test_roots_formula():
    zp, zm = xy_roots(1.0, 1.0)
    assert zp == pytest.approx(0.5) and zm == pytest.approx(0.0)


def test_closed_form_matches_exact():
    S = entropy(0.9, 1.0)
    assert abs(exact_entropy(xy_couplings(0.9, 1.0), 200).value - S) < 1e-4


@pytest.mark.parametrize("g,h", [(0.5, 1.0), (0.5, 3.0), (0.3, 1.0), (2.0, 4.0)])
def test_closed_form_matches_surface_route(g, h):
    r = asymptotic_entropy(surface(xy_couplings(g, h)), 1.0).value
    assert entropy(g, h) == pytest.approx(r, abs=1e-10)


@pytest.mark.parametrize("g,h", [(0.9, 1.0), (0.5, 3.0), (0.3, 1.0)])
def test_theta_route_at_alpha_one(g, h):
    p = classify(g, h)
    a = entropy_closed_form(p, 1.0)
    b = entropy_closed_form(p, 1.0, route="theta")
    assert a.method == "xy-closed-form" and b.method == "theta-asymptotic"
    assert a.value == pytest.approx(b.value, abs=1e-10)


@pytest.mark.parametrize("alpha", [2.0, 3.0])
def test_general_alpha_against_exact(alpha):
    r = entropy_closed_form(classify(0.5, 1.0), alpha)
    assert r.method == "theta-asymptotic"
    assert r.value == pytest.approx(exact_entropy(xy_couplings(0.5, 1.0), 150, alpha).value, abs=1e-10)


def test_alpha_below_one_against_exact():
    # f_alpha has a square-root edge at +-1 for alpha < 1, so eigenvalue
    # roundoff is amplified to ~1e-8 per eigenvalue in the exact route
    r = entropy_closed_form(classify(0.5, 1.0), 0.5).value
    assert r == pytest.approx(exact_entropy(xy_couplings(0.5, 1.0), 50, 0.5).value, abs=5e-6)


def test_closed_form_refusals():
    with pytest.raises(CriticalModelError):
        entropy(1.0, 2.0)
    with pytest.raises(CriticalModelError):
        entropy(0.0, 1.0)
    with pytest.raises(DomainError):
        entropy_closed_form(classify(0.9, 1.0), 2.0, route="closed-form")


def test_self_dual_circle():
    assert entropy(np.cos(0.4), 2 * np.sin(0.4)) == pytest.approx(np.log(2), abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 0.95))
def test_region_one_inversion_symmetry(x):
    g1, h1 = 1.0, 2 * np.sqrt(1 - x)
    g2, h2 = 1 / np.sqrt(1 / x), 0.0       # x' = 1/x: gamma^2 = x
    assert cross_ratio_xy(g2, h2) == pytest.approx(1 / x)
    assert entropy(g1, h1) == pytest.approx(entropy(g2, h2), abs=1e-13)


@settings(max_examples=30, deadline=None)
@given(st.floats(-20, -0.05))
def test_region_two_inversion_structure(x):
    # the log term is even under x -> 1/x and the elliptic term is odd
    even = np.log(16 * (2 - x - 1 / x)) / 6
    assert _s1_region2(x) + _s1_region2(1 / x) == pytest.approx(even, abs=1e-12)


@pytest.mark.parametrize("g,h", [(0.5, 3.0), (2.0, 4.0), (1.3, 2.2)])
def test_region_two_against_surface(g, h):
    r = asymptotic_entropy(surface(xy_couplings(g, h)), 1.0).value
    assert entropy(g, h) == pytest.approx(r, abs=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 1.5), st.floats(0.0, 1.9), st.floats(0.2, 1.5))
def test_entropy_depends_on_x_only(g, h, g2):
    x = cross_ratio_xy(g, h)
    rad = 1 - x * g2 * g2
    if rad < 0 or abs(x - 1) < 1e-6 or x <= 0:
        return
    h2 = 2 * np.sqrt(rad)
    if abs(h2 - 2) < 1e-6:
        return
    assert entropy(g, h) == pytest.approx(entropy(g2, h2), abs=1e-13)


def test_divergence_towards_ising_line():
    hs = [1.9, 1.99, 1.999, 1.9999]
    S = [entropy(1.0, h) for h in hs]
    assert all(b > a for a, b in zip(S, S[1:]))


def test_dual_1b():
    g, h = dual_1b(0.9, 1.0)
    assert (g, h) == pytest.approx((0.86603, 0.87178), abs=5e-6)
    assert cross_ratio_xy(g, h) == pytest.approx(1 / cross_ratio_xy(0.9, 1.0), rel=1e-13)
    assert entropy(g, h) == pytest.approx(entropy(0.9, 1.0), abs=1e-14)
    for a in (2.0, 0.5):
        assert entropy(g, h, a) == pytest.approx(entropy(0.9, 1.0, a), abs=1e-10)
    with pytest.raises(DomainError):
        dual_1b(1.2, 0.5)


def test_kramers_wannier():
    assert dual_kramers_wannier(1.0, 1.0) == (1.0, 4.0)
    za, _ = xy_roots(1.0, 1.0)
    z2, _ = xy_roots(1.0, 4.0)
    assert za == pytest.approx(0.5) and z2 == pytest.approx(2.0)
    assert dispersion_rescaling_residual(1.0, 1.0) < 1e-12
    assert dispersion_rescaling_residual(0.8, 1.3) < 1e-12
    with pytest.raises(DomainError):
        dual_kramers_wannier(0.1, 0.1)


def test_triality_partner_and_modulus():
    assert triality_partner(1.0, 1.0) == pytest.approx((1 / 3, 0.0))
    gT, hT = triality_partner(0.9, 1.0)
    t = tau(classify(0.9, 1.0))
    tT = tau(classify(gT, hT))
    assert tT == pytest.approx(t / 2, abs=1e-10)
    k = dual_kramers_wannier(0.9, 1.0)
    for a in (1.0, 2.0):
        assert entropy(0.9, 1.0, a) + entropy(*k, a) == pytest.approx(entropy(gT, hT, a), abs=1e-10)


@pytest.mark.parametrize("X,alpha", [(5, 1.0), (10, 1.0), (20, 2.0)])
def test_finite_size_triality(X, alpha):
    assert finite_size_ising_triality_check(1.0, alpha, X) < 1e-8


def test_finite_size_triality_near_critical():
    assert finite_size_ising_triality_check(2 - 1e-3, 1.0, 10) < 1e-6


def test_ising_prefactor_and_constant():
    a1 = ising_line_entropy(1.0, 1.0, 100).value - ising_line_entropy(1.0, 1.0, 50).value
    a2 = ising_line_entropy(1.0, 2.0, 100).value - ising_line_entropy(1.0, 2.0, 50).value
    assert a1 == pytest.approx(np.log(2) / 6, rel=1e-14)
    assert a2 == pytest.approx(np.log(2) / 8, rel=1e-14)
    assert ising_constant(1.0) == pytest.approx(0.478558, abs=2e-6)
    with pytest.raises(DomainError):
        ising_line_entropy(0.0, 1.0, 10)


@pytest.mark.parametrize("gamma", [0.3, 1.0])
@pytest.mark.parametrize("alpha", [1.0, 2.0])
def test_ising_line_against_numerics(gamma, alpha):
    num = exact_entropy(xy_couplings(gamma, 2.0), 100, alpha, allow_near_critical=True).value
    assert abs(num - ising_line_entropy(gamma, alpha, 100).value) < 5e-3


def test_doubling_on_critical_line():
    g = 0.6
    X = 50
    sa = exact_entropy(xy_couplings(g, 2.0), X, allow_near_critical=True).value
    sT = exact_entropy(xy_couplings(0.0, 2 * np.sqrt(1 - g * g)), 2 * X,
                       allow_near_critical=True).value
    assert abs(sT - 2 * sa) < 5e-3
