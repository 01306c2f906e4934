"""
Moebius maps of the Riemann sphere and their action on couplings.

The physical subgroup preserves both the unit circle and the real line.  It is
generated by the inversion ``z -> 1/z`` and the boosts

    z' = (z cosh zeta + sinh zeta) / (z sinh zeta + cosh zeta).

On Laurent polynomials of degree ``L`` an element ``V = [[a, b], [c, d]]`` acts by

    (T_V u)(z) = z^{-L} (d z - b)^{L} (a - c z)^{L} u((d z - b)/(a - c z)),

whose matrix ``t_{mn}`` in the monomial basis maps couplings as
``A'_l = sum_m t_{lm} A_m`` (same for ``B``).  The roots of the new symbol are the
images ``V z`` of the old ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, fsum

import numpy as np

from .chain import CouplingSet, _readonly, dispersion, make_coupling_set
from .errors import ConstraintError, DomainError

DET_TOL = 1e-12


@dataclass(frozen=True)
class MoebiusElement:
    """``[[a, b], [c, d]]`` with ``ad - bc = 1``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1) >= DET_TOL * max(1.0, abs(self.a * self.d), abs(self.b * self.c)):
            raise DomainError(f"determinant ad - bc = {det} differs from 1")

    @classmethod
    def from_matrix(cls, M) -> "MoebiusElement":
        M = np.asarray(M)
        return cls(*(complex(x) for x in M.ravel()))

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        return MoebiusElement.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(self.d, -self.b, -self.c, self.a)


def so11(zeta: float) -> MoebiusElement:
    """Boost with rapidity ``zeta``; fixes ``z = +1`` and ``z = -1``."""
    ch, sh = np.cosh(zeta), np.sinh(zeta)
    return MoebiusElement(ch, sh, sh, ch)


def inversion() -> MoebiusElement:
    """``z -> 1/z`` as the unimodular matrix ``[[0, i], [i, 0]]``."""
    return MoebiusElement(0, 1j, 1j, 0)


def identity() -> MoebiusElement:
    return MoebiusElement(1, 0, 0, 1)


def apply_point(V: MoebiusElement, z):
    """``(a z + b)/(c z + d)``; ``np.inf`` stands for the point at infinity."""
    z = np.asarray(z, dtype=complex)
    inf = np.isinf(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        num = V.a * z + V.b
        den = V.c * z + V.d
        out = np.where(den == 0, np.inf, num / np.where(den == 0, 1, den))
    lim = V.a / V.c if V.c != 0 else np.inf
    out = np.where(inf, lim, out)
    return out[()] if out.ndim == 0 else out


def boost_angle(zeta: float, theta):
    """Image angle ``theta'`` of ``e^{i theta}`` under ``so11(zeta)``, unwrapped near ``theta``."""
    theta = np.asarray(theta, dtype=float)
    zp = apply_point(so11(zeta), np.exp(1j * theta))
    return theta + np.angle(zp * np.exp(-1j * theta))


def boost_jacobian(zeta: float, theta):
    """``d theta'/d theta = 1/(sinh 2 zeta cos theta + cosh 2 zeta)``."""
    return 1.0 / (np.sinh(2 * zeta) * np.cos(theta) + np.cosh(2 * zeta))


@dataclass(frozen=True, eq=False)
class RepresentationMatrix:
    """``t[m + L, n + L] = t_{mn}`` for ``m, n = -L..L``."""

    L: int
    t: np.ndarray

    def entry(self, m: int, n: int) -> complex:
        return complex(self.t[m + self.L, n + self.L])


def representation_matrix(L: int, V: MoebiusElement) -> RepresentationMatrix:
    """
    Matrix elements of ``T_V`` on Laurent polynomials of degree ``L``::

        t_{mn} = sum_j C(L-n, j) C(L+n, L+m-j) (-1)^{n-m}
                 a^{L-n-j} c^j b^{n-m+j} d^{L+m-j}

    with ``max(0, m-n) <= j <= min(L-n, L+m)``.  Binomials are exact integers.
    ``t^{(V1 V2)} = t^{(V1)} t^{(V2)}``.
    """
    if L < 0:
        raise ValueError("L must be non-negative")
    real = all(abs(x.imag) == 0 for x in (V.a, V.b, V.c, V.d))
    a, b, c, d = ((x.real for x in (V.a, V.b, V.c, V.d)) if real else (V.a, V.b, V.c, V.d))
    boost = real and a == d and b == c
    t = np.zeros((2 * L + 1, 2 * L + 1), dtype=float if real else complex)
    for m in range(-L, L + 1):
        for n in range(-L, L + 1):
            js = range(max(0, m - n), min(L - n, L + m) + 1)
            if boost:
                # merged powers make t_{m,n} and t_{-m,-n} bitwise equal
                terms = [comb(L - n, j) * comb(L + n, L + m - j)
                         * a ** (2 * L + m - n - 2 * j) * b ** (n - m + 2 * j) for j in js]
            else:
                terms = [comb(L - n, j) * comb(L + n, L + m - j)
                         * a ** (L - n - j) * c ** j * b ** (n - m + j) * d ** (L + m - j)
                         for j in js]
            if real:
                s = fsum(terms)
            else:
                s = complex(fsum(z.real for z in terms), fsum(z.imag for z in terms))
            t[m + L, n + L] = (-1) ** ((n - m) % 2) * s
    return RepresentationMatrix(L, t)


def _admissible_kind(V: MoebiusElement, tol: float = 1e-12) -> str:
    vals = np.array([V.a, V.b, V.c, V.d])
    if np.all(np.abs(vals.imag) <= tol) and abs(V.a - V.d) <= tol and abs(V.b - V.c) <= tol \
            and V.a.real > 0:
        return "boost"
    if abs(V.a) <= tol and abs(V.d) <= tol and abs(V.b - V.c) <= tol \
            and abs(V.b.real) <= tol and abs(abs(V.b) - 1) <= tol:
        return "inversion"
    raise ConstraintError("only boosts so11(zeta) and the inversion preserve the coupling "
                          "symmetries A_{-l} = A_l, B_{-l} = -B_l")


def transform_couplings(c: CouplingSet, V: MoebiusElement) -> CouplingSet:
    """
    New couplings ``A' = t A``, ``B' = t B`` for a boost or the inversion.

    The inversion returns ``A'_l = A_l``, ``B'_l = -B_l`` (the overall sign
    ``(-1)^L`` of ``T_V`` is projective and dropped).

    Raises
    ------
    ConstraintError
        If ``V`` lies outside the admissible subgroup.
    """
    kind = _admissible_kind(V)
    if kind == "inversion":
        return make_coupling_set(c.L, c.A, -np.asarray(c.B))
    t = np.real(representation_matrix(c.L, V).t)
    A = t @ c.A
    B = t @ c.B
    A = (A + A[::-1]) / 2
    B = (B - B[::-1]) / 2
    return CouplingSet(c.L, _readonly(A), _readonly(B))


def check_dispersion_homogeneity(c: CouplingSet, zeta: float, grid=256) -> float:
    """
    ``max |Lambda'(theta') - (d theta'/d theta)^L Lambda(theta)|`` over a grid.

    ``grid`` is either a number of equispaced samples or an array of angles.
    """
    theta = (2 * np.pi * np.arange(grid) / grid) if np.isscalar(grid) else np.asarray(grid, float)
    cp = transform_couplings(c, so11(zeta))
    lhs = dispersion(cp, boost_angle(zeta, theta))
    rhs = boost_jacobian(zeta, theta) ** c.L * dispersion(c, theta)
    return float(np.max(np.abs(lhs - rhs)))


def flow_fixed_points(L: int) -> list[dict]:
    """
    Curves ``w^2 = (z - 1)^{4L - 2j} (z + 1)^{2j}`` left fixed by every boost.

    All branch points sit at ``+-1``, so each curve is critical; only
    ``j = 0`` is stable.
    """
    return [{"j": j, "exponents": (4 * L - 2 * j, 2 * j), "critical": True, "stable": j == 0}
            for j in range(2 * L + 1)]
