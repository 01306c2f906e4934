"""
Self-verification suites: each check returns a residual and its tolerance.

Used by ``fermichain verify``; the test suite runs the same properties
independently.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .chain import make_coupling_set, spectral_gap, xy_couplings
from .correlation import exact_entropy, exact_log_det
from .moebius import (MoebiusElement, check_dispersion_homogeneity, representation_matrix,
                      so11, transform_couplings)
from .surface import branch_data, period_matrix, transpose_roots
from .theta import asymptotic_log_det, beta_of_lambda, normalized_theta, theta_spec
from .xy import (classify, cross_ratio_xy, dispersion_rescaling_residual, dual_1b,
                 dual_kramers_wannier, entropy, finite_size_ising_triality_check, triality_partner,
                 xy_roots)

SUITES = ("moebius", "dualities", "appendixA", "appendixB", "asymptotics")


@dataclass
class Check:
    name: str
    residual: float
    tolerance: float
    relation: str = "<"

    @property
    def passed(self) -> bool:
        if self.relation == "<":
            return bool(self.residual < self.tolerance)
        return bool(self.residual > self.tolerance)

    def as_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def random_gapped_l2(seed: int = 1, min_gap: float = 0.2, max_gap: float = np.inf):
    """Reproducible random range-2 coupling set with spectral gap in ``(min_gap, max_gap)``."""
    rng = np.random.default_rng(seed)
    while True:
        a = rng.normal(size=3)
        b = rng.normal(size=2)
        c = make_coupling_set(2, [a[2], a[1], a[0], a[1], a[2]], [-b[1], -b[0], 0.0, b[0], b[1]])
        if min_gap < spectral_gap(c) < max_gap:
            return c


def slow_gapped_l2():
    """Range-2 model with gap near 0.05 and a branch point close to the unit circle."""
    return random_gapped_l2(seed=7, min_gap=0.02, max_gap=0.08)


def random_sl2r(rng, spread: float = 0.25, shear: float = 0.5) -> MoebiusElement:
    """``K A N`` sample: uniform rotation, bounded boost and shear."""
    th = rng.uniform(0, 2 * np.pi)
    s = rng.uniform(-spread, spread)
    n = rng.uniform(-shear, shear)
    K = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    M = K @ np.diag([np.exp(s), np.exp(-s)]) @ np.array([[1.0, n], [0.0, 1.0]])
    return MoebiusElement.from_matrix(M)


def theta_product(geom, lams) -> np.ndarray:
    """``th(beta e) th(-beta e)`` at the given ``lam``."""
    spec = theta_spec(geom)
    e = np.asarray(geom.e_vector, float)
    out = []
    for lam in lams:
        beta = beta_of_lambda(lam)
        out.append(normalized_theta(spec, beta * e) * normalized_theta(spec, -beta * e))
    return np.array(out)


def log_det_relative_error(asym: complex, exact: complex) -> float:
    """Relative difference of two logarithms, compared modulo ``2 pi i``."""
    d = asym - exact
    d -= 2j * np.pi * np.round(d.imag / (2 * np.pi))
    return float(abs(d) / abs(exact))


def suite_moebius(X: int = 100) -> list[Check]:
    out = []
    for label, c in (("xy(0.9,1)", xy_couplings(0.9, 1.0)), ("random-L2", random_gapped_l2())):
        s0 = exact_entropy(c, X).value
        for z in (-0.5, -0.2, 0.2, 0.5):
            s1 = exact_entropy(transform_couplings(c, so11(z)), X).value
            out.append(Check(f"entropy invariance {label} zeta={z}", abs(s1 - s0), 1e-4))
    p = classify(0.9, 1.0)
    worst = 0.0
    for z in np.linspace(-1, 1, 21):
        cp = transform_couplings(xy_couplings(0.9, 1.0), so11(z))
        g, h = cp.pairing(1) / cp.hopping(1), -cp.hopping(0) / cp.hopping(1)
        worst = max(worst, abs(cross_ratio_xy(g, h) - p.x))
    out.append(Check("cross ratio invariance along flow", worst, 1e-13))
    for L, c in ((1, xy_couplings(0.9, 1.0)), (2, random_gapped_l2())):
        for z in (0.1, 0.3, 0.7):
            out.append(Check(f"dispersion homogeneity L={L} zeta={z}",
                             check_dispersion_homogeneity(c, z), 1e-12))
    return out


def suite_dualities() -> list[Check]:
    a = (0.9, 1.0)
    b = dual_1b(*a)
    out = [Check("1a-1b closed-form equality", abs(entropy(*a) - entropy(*b)), 1e-14)]
    za, _ = xy_roots(1.0, 1.0)
    g2, h2 = dual_kramers_wannier(1.0, 1.0)
    z2, _ = xy_roots(g2, h2)
    out.append(Check("Kramers-Wannier reciprocity z_a+ z_2+ = 1", abs(za * z2 - 1), 1e-12))
    out.append(Check("Kramers-Wannier dispersion rescaling", dispersion_rescaling_residual(1.0, 1.0), 1e-12))
    out.append(Check("Kramers-Wannier entropies differ", abs(entropy(1, 1) - entropy(g2, h2)), 0.01, ">"))
    k = dual_kramers_wannier(*a)
    t = triality_partner(*a)
    for alpha in (1.0, 2.0):
        r = abs(entropy(*a, alpha) + entropy(*k, alpha) - entropy(*t, alpha))
        out.append(Check(f"triality asymptotic alpha={alpha}", r, 1e-10))
    for X in (5, 10, 20):
        for alpha in (1.0, 2.0):
            out.append(Check(f"finite-size Ising triality X={X} alpha={alpha}",
                             finite_size_ising_triality_check(1.0, alpha, X), 1e-8))
    return out


LAMBDAS = (1.5, 2.0, 3j, 0.5 + 0.5j, -2.0 + 1.0j)


def suite_appendix_a() -> list[Check]:
    out = []
    cases = [("genus 1 xy(0.9,1)", xy_couplings(0.9, 1.0), (0, 1)),
             ("genus 1 xy(0.5,3)", xy_couplings(0.5, 3.0), (2, 3)),
             ("genus 3 random-L2", random_gapped_l2(), (1, 2))]
    for label, c, (j1, j2) in cases:
        b = branch_data(c)
        P0 = theta_product(period_matrix(b), LAMBDAS)
        P1 = theta_product(period_matrix(transpose_roots(b, j1, j2)), LAMBDAS)
        out.append(Check(f"{label} transposition ({j1},{j2})",
                         float(np.max(np.abs(P1 - P0) / np.abs(P0))), 1e-10))
    return out


def suite_appendix_b(pairs: int = 100, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    out = []
    for L in (1, 2, 4):
        worst = 0.0
        for _ in range(pairs):
            V1, V2 = random_sl2r(rng), random_sl2r(rng)
            t12 = representation_matrix(L, V1 @ V2).t
            worst = max(worst, float(np.max(np.abs(t12 - representation_matrix(L, V1).t
                                                   @ representation_matrix(L, V2).t))))
        out.append(Check(f"representation property L={L}", worst, 1e-12))
        sym = max(float(np.max(np.abs(t - t[::-1, ::-1])))
                  for t in (representation_matrix(L, so11(z)).t for z in (-0.7, 0.2, 0.5, 1.1)))
        out.append(Check(f"SO(1,1) index symmetry L={L}", sym, 1e-14))
    return out


def suite_asymptotics() -> list[Check]:
    c = xy_couplings(0.9, 1.0)
    ref = entropy(0.9, 1.0)
    gaps = [abs(exact_entropy(c, X).value - ref) for X in (25, 50, 100, 200)]
    out = [Check("xy(0.9,1) closed form vs exact X=200", gaps[-1], 1e-4),
           Check("xy(0.9,1) gap monotone", float(max(np.diff(gaps))), 0.0)]
    # small gap: finite-size corrections stay well above roundoff up to X = 200
    c2 = slow_gapped_l2()
    geom = period_matrix(branch_data(c2))
    for lam in (1.5, 2.0, 3j):
        rel = []
        for X in (50, 100, 200):
            ex = exact_log_det(c2, lam, X)
            asym = asymptotic_log_det(geom, lam, X)
            rel.append(log_det_relative_error(asym, ex))
        out.append(Check(f"log det relative error decreasing lam={lam}",
                         float(max(np.diff(rel))), 0.0))
    return out


def run_suite(name: str) -> list[Check]:
    table = {"moebius": suite_moebius, "dualities": suite_dualities, "appendixA": suite_appendix_a,
             "appendixB": suite_appendix_b, "asymptotics": suite_asymptotics}
    if name not in table:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    return table[name]()
