"""
XY chain: closed-form entropies, dualities and the critical Ising line.

The couplings ``(gamma, h)`` enter the entropy only through the cross ratio

    x = (1 - (h/2)^2) / gamma^2

of the branch points ``z_+, z_-, 1/z_+, 1/z_-``.  Three non-critical regions
are distinguished: 1a (``0 < x < 1``), 1b (``x > 1``) and 2 (``x < 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .chain import dispersion, spectral_gap, xy_couplings
from .correlation import ALPHA_ONE_TOL, EntropyResult, exact_entropy
from .errors import CriticalModelError, DomainError
from .surface import SurfaceGeometry
from .theta import asymptotic_entropy

REGIONS = ("R1a", "R1b", "R2", "critical-Ising-line", "critical-XX")
_AGM_TOL = 1e-16


# ---------------------------------------------------------------------------
# elliptic integral
# ---------------------------------------------------------------------------

def _agm(a: float, b: float) -> float:
    for _ in range(64):
        if abs(a - b) <= _AGM_TOL * a:
            break
        a, b = 0.5 * (a + b), np.sqrt(a * b)
    return a


def elliptic_I_complement(kp: float) -> float:
    """``I(z)`` given the complementary modulus ``kp = sqrt(1 - z^2) > 0``."""
    if kp <= 0:
        raise DomainError("complementary modulus must be positive")
    return np.pi / (2 * _agm(1.0, float(kp)))


def elliptic_I(z: float) -> float:
    """
    Complete elliptic integral of the first kind,
    ``I(z) = int_0^1 dy / sqrt((1 - y^2)(1 - z^2 y^2))``, by the arithmetic-geometric mean.

    Raises
    ------
    DomainError
        Outside ``0 <= z < 1``.
    """
    z = float(z)
    if not 0 <= z < 1:
        raise DomainError(f"elliptic_I needs 0 <= z < 1, got {z}")
    return elliptic_I_complement(np.sqrt((1 - z) * (1 + z)))


# ---------------------------------------------------------------------------
# parameter space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class XYPoint:
    gamma: float
    h: float
    x: float
    region: str

    @property
    def critical(self) -> bool:
        return self.region.startswith("critical")


def cross_ratio_xy(gamma: float, h: float) -> float:
    return (1 - (h / 2) ** 2) / gamma ** 2


def classify(gamma: float, h: float) -> XYPoint:
    """Cross ratio and region of ``(gamma, h)``; critical tags take precedence."""
    if gamma < 0 or h < 0:
        raise DomainError("gamma and h must be non-negative")
    if h == 2:
        return XYPoint(gamma, h, cross_ratio_xy(gamma, h) if gamma > 0 else np.nan,
                       "critical-Ising-line")
    if gamma == 0:
        if h < 2:
            return XYPoint(gamma, h, np.inf, "critical-XX")
        return XYPoint(gamma, h, -np.inf, "R2")
    x = cross_ratio_xy(gamma, h)
    if x < 0:
        region = "R2"
    elif x <= 1:
        region = "R1a"
    else:
        region = "R1b"
    return XYPoint(gamma, h, x, region)


def xy_roots(gamma: float, h: float) -> tuple[complex, complex]:
    """Zeros ``z_+-`` of ``g^2``; the poles are their inverses."""
    r = np.sqrt(complex((h / 2) ** 2 + gamma ** 2 - 1))
    return (h / 2 + r) / (1 + gamma), (h / 2 - r) / (1 + gamma)


def _modulus_pair(x: float) -> tuple[float, float]:
    """``xi`` and its complement ``sqrt(1 - xi^2)``, each formed without cancellation."""
    if 0 < x < 1:
        xi, kp = np.sqrt(x), np.sqrt(1 - x)
    elif x > 1:
        xi, kp = np.sqrt(1 / x), np.sqrt(1 - 1 / x)
    elif x < 0:
        xi, kp = 1 / np.sqrt(1 - 1 / x), 1 / np.sqrt(1 - x)
    else:
        raise DomainError(f"no finite modulus at x = {x}")
    return xi, kp


def tau(p: XYPoint) -> complex:
    """Modulus ``tau = i I(xi) / I(sqrt(1 - xi^2))`` of the genus-1 curve."""
    if p.critical:
        raise CriticalModelError(f"critical point ({p.gamma}, {p.h}) has no modulus")
    if p.x == 1:
        raise DomainError("x = 1: the modulus degenerates (tau = i infinity)")
    xi, kp = _modulus_pair(p.x)
    return 1j * elliptic_I_complement(kp) / elliptic_I_complement(xi)


def genus_one_geometry(p: XYPoint) -> SurfaceGeometry:
    """Theta data of the XY curve, built from ``x`` alone (valid also at ``gamma = 1``)."""
    t = tau(p)
    mu = -0.5 if p.region in ("R1a", "R1b") else 0.0
    return SurfaceGeometry(np.array([[t]]), np.array([mu]), np.array([0.0]), np.array([1.0]),
                           diagnostics={"region": p.region, "x": p.x})


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------

def _s1_region1(x: float) -> float:
    if x == 1:
        return float(np.log(2))
    if x > 1:
        x = 1 / x
    Ik = elliptic_I_complement(np.sqrt(x))        # I(sqrt(1-x))
    Ix = elliptic_I_complement(np.sqrt(1 - x))    # I(sqrt(x))
    return (np.log((1 - x) / (16 * np.sqrt(x))) + 2 * (1 + x) / np.pi * Ik * Ix) / 6 + np.log(2)


def _s1_region2(x: float) -> float:
    s = 2 - x - 1 / x
    I1 = elliptic_I_complement(1 / np.sqrt(1 - 1 / x))   # I(1/sqrt(1-x))
    I2 = elliptic_I_complement(1 / np.sqrt(1 - x))       # I(1/sqrt(1-1/x))
    return (np.log(16 * s) + 4 * (x - 1 / x) / (np.pi * s) * I1 * I2) / 12


def entropy_closed_form(p: XYPoint, alpha: float = 1.0, *, route: str = "auto") -> EntropyResult:
    """
    Asymptotic Renyi entropy of a non-critical XY point.

    ``alpha = 1`` uses the printed region formulas (method ``xy-closed-form``);
    other ``alpha``, or ``route="theta"``, use the genus-1 theta determinant
    (method ``theta-asymptotic``).

    Raises
    ------
    CriticalModelError
        On the Ising line (use :func:`ising_line_entropy`) or the XX line.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if p.critical:
        hint = " use ising_line_entropy" if p.region == "critical-Ising-line" else ""
        raise CriticalModelError(f"({p.gamma}, {p.h}) is critical ({p.region});{hint}")
    if not np.isfinite(p.x):
        raise DomainError("gamma = 0: the curve degenerates and no genus-1 form applies")
    diag = {"region": p.region, "x": p.x}
    if p.x == 1:
        # degenerate modulus: every correlation eigenvalue is 0 or +-1
        return EntropyResult(alpha, None, float(np.log(2)), "xy-closed-form", diag)
    if route not in ("auto", "closed-form", "theta"):
        raise ValueError(f"unknown route {route!r}")
    if route != "theta" and abs(alpha - 1) < ALPHA_ONE_TOL:
        v = _s1_region2(p.x) if p.region == "R2" else _s1_region1(p.x)
        return EntropyResult(1.0, None, float(v), "xy-closed-form", diag)
    if route == "closed-form":
        raise DomainError("closed forms are printed for alpha = 1 only")
    r = asymptotic_entropy(genus_one_geometry(p), alpha)
    return EntropyResult(float(alpha), None, r.value, "theta-asymptotic",
                         {**diag, "tau": tau(p), **r.diagnostics})


def entropy(gamma: float, h: float, alpha: float = 1.0, **kw) -> float:
    return entropy_closed_form(classify(gamma, h), alpha, **kw).value


# ---------------------------------------------------------------------------
# dualities
# ---------------------------------------------------------------------------

def dual_1b(gamma_a: float, h_a: float) -> tuple[float, float]:
    """Region-1b partner with inverted cross ratio and equal entropies."""
    p = classify(gamma_a, h_a)
    if p.region != "R1a" or gamma_a > 1 or h_a > 2:
        raise DomainError("dual_1b needs a region-1a point with gamma <= 1 and h <= 2")
    return float(np.sqrt(1 - (h_a / 2) ** 2)), float(2 * np.sqrt(1 - gamma_a ** 2))


def dual_kramers_wannier(gamma_a: float, h_a: float) -> tuple[float, float]:
    """
    Partner with ``z_{a+} = 1/z_{2+}``: ``h_2 = 4/h_a`` and
    ``(gamma_2^2 - 1)/h_2 = (gamma_a^2 - 1)/h_a``.  Same curve, spectrum rescaled by ``2/h_a``.
    """
    if h_a <= 0:
        raise DomainError("Kramers-Wannier dual needs h_a > 0")
    h2 = 4.0 / h_a
    g2 = 1 + h2 * (gamma_a ** 2 - 1) / h_a
    if g2 < 0:
        raise DomainError(f"no real dual: gamma_2^2 = {g2:.6g} < 0")
    return float(np.sqrt(g2)), float(h2)


def triality_partner(gamma_a: float, h_a: float) -> tuple[float, float]:
    """
    Region-1b point whose modulus is half that of ``(gamma_a, h_a)``; its entropy
    is the sum of the entropies of ``(gamma_a, h_a)`` and its Kramers-Wannier dual.
    """
    if gamma_a <= 0 or gamma_a > 1:
        raise DomainError("triality partner needs 0 < gamma_a <= 1")
    x = cross_ratio_xy(gamma_a, h_a)
    if not 0 < x < 1:
        raise DomainError("triality partner needs a region-1a point")
    y = np.sqrt(1 - x)
    return float(gamma_a * (1 - y) / (1 + y)), float(2 * np.sqrt(1 - gamma_a ** 2))


def dispersion_rescaling_residual(gamma_a: float, h_a: float, grid: int = 512) -> float:
    """``max |Lambda_2 - (2/h_a) Lambda_a|`` for the Kramers-Wannier pair."""
    theta = 2 * np.pi * np.arange(grid) / grid
    g2, h2 = dual_kramers_wannier(gamma_a, h_a)
    la = dispersion(xy_couplings(gamma_a, h_a), theta)
    l2 = dispersion(xy_couplings(g2, h2), theta)
    return float(np.max(np.abs(l2 - 2 / h_a * la)))


def finite_size_ising_triality_check(h_a: float, alpha: float, interval_length: int,
                                     mode_count: int | None = None) -> float:
    """
    ``|S^a(|X|) + S^2(|X|) - S^T(2|X|)|`` with exact entropies for the Ising
    chain ``(1, h_a)``, its dual ``(1, 4/h_a)`` and ``((1 - h_a/2)/(1 + h_a/2), 0)``.
    """
    X = int(interval_length)
    gT = (1 - h_a / 2) / (1 + h_a / 2)
    models = (xy_couplings(1.0, h_a), xy_couplings(1.0, 4.0 / h_a), xy_couplings(gT, 0.0))
    N = mode_count
    if N is None:
        # trapezoid error decays like exp(-N gap): resolve the smallest gap
        gap = min(spectral_gap(c) for c in models)
        N = max(2 ** 13, 64 * 2 * X, 2 ** int(np.ceil(np.log2(64 / max(gap, 1e-12)))))
    sa = exact_entropy(models[0], X, alpha, N).value
    s2 = exact_entropy(models[1], X, alpha, N).value
    sT = exact_entropy(models[2], 2 * X, alpha, N).value
    return abs(sa + s2 - sT)


# ---------------------------------------------------------------------------
# critical Ising line
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def ising_constant(alpha: float) -> float:
    """
    Non-universal constant of the critical Ising line::

        U = (alpha+1)/(6 alpha) log 2
            + (1/pi) int_{-1}^{1} f'_alpha(1, lam) arg Gamma(1/2 + i w/(2 pi)) d lam,

    with ``w = log((1 + lam)/(1 - lam))``; this is the real form of the
    ``log[Gamma(1/2 - beta)/Gamma(1/2 + beta)]`` integral.  Tanh-sinh quadrature.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")

    a = mpmath.mpf(alpha)

    def integrand(lam):
        p, q = (1 + lam) / 2, (1 - lam) / 2
        if p == 0 or q == 0:
            return mpmath.mpf(0)
        w = mpmath.log(p / q)
        if abs(alpha - 1) < ALPHA_ONE_TOL:
            df = -w / 2
        else:
            df = a / 2 / (1 - a) * (p ** (a - 1) - q ** (a - 1)) / (p ** a + q ** a)
        return df * mpmath.im(mpmath.loggamma(mpmath.mpc(0.5, w / (2 * mpmath.pi))))

    with mpmath.workdps(25):
        val = mpmath.quad(integrand, [-1, 0, 1], method="tanh-sinh")
    return float((alpha + 1) / (6 * alpha) * np.log(2) + float(val) / np.pi)


def critical_mode_count(interval_length: int) -> int:
    """
    Ring size for exact numerics on a gapless chain.

    A ring of ``N`` sites shifts a critical entropy by about
    ``(c/3) log(sin(pi X/N) N/(pi X))``, i.e. ``-(c/18)(pi X/N)^2``;
    ``N = 1024 |X|`` keeps this below ``1e-6``.
    """
    return max(2 ** 13, 1024 * int(interval_length))


def ising_line_entropy(gamma_a: float, alpha: float, interval_length: int) -> EntropyResult:
    """
    Large-interval Renyi entropy on ``h = 2``:
    ``(alpha+1)/(12 alpha) log(|X| gamma_a) + U(alpha)``.
    """
    if gamma_a <= 0 or gamma_a > 1:
        raise DomainError("ising_line_entropy needs 0 < gamma_a <= 1")
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    X = int(interval_length)
    U = ising_constant(float(alpha))
    val = (alpha + 1) / (12 * alpha) * np.log(X * gamma_a) + U
    return EntropyResult(float(alpha), X, float(val), "xy-closed-form",
                         {"region": "critical-Ising-line", "U": U})
