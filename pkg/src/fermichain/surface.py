"""
Hyperelliptic curve ``w^2 = P(z) = z^{2L} (Theta + Xi)(Theta - Xi)`` of a gapped chain.

The ``4L`` roots of ``P`` are the zeros (``eps = +1``) and poles (``eps = -1``)
of ``g^2 = (Theta + Xi)/(Theta - Xi)``.  They are ordered with the ``2L`` roots
inside the unit disc first; cut ``rho`` joins roots ``2 rho`` and ``2 rho + 1``
(0-based) for ``rho = 0 .. g`` with ``g = 2L - 1``.

Geometry
--------
Cuts and cycle paths are drawn as straight segments in one of two pictures:
the *inner* picture is the ``z`` plane restricted to the unit disc, the
*outer* picture is the ``zeta = 1/z`` plane, again restricted to the disc.
Outer-picture segments are circular arcs outside the unit circle in ``z``, so
no cut ever crosses the circle.  The roots, read in order, form one polyline
(cut, connector, cut, ...).  The single connector that crosses the circle is
routed through a point ``u`` on it.

``a_r`` encircles cut ``r`` on the reference sheet.  ``b_r`` is the sum of the
connector cycles ``c_1 .. c_r``, where ``c_k`` runs along connector ``k`` on the
reference sheet and back on the other one.  Its integral is twice the
connector integral, and the chain encloses roots ``1 .. 2r`` (0-based).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import roots_jacobi

from .chain import SymbolData, _as_symbol
from .errors import CriticalModelError, GeometryError, NonGenericCurveError

ON_CIRCLE_TOL = 1e-8
COLLISION_TOL = 1e-8
QUARTET_TOL = 1e-8
CONDITION_LIMIT = 1e12


# ---------------------------------------------------------------------------
# curve and branch points
# ---------------------------------------------------------------------------

def _factor_coeffs(s: SymbolData, sign: int) -> np.ndarray:
    """Ascending coefficients of ``z^L (Theta + sign * Xi)``."""
    return np.asarray(s.theta_poly, float) + sign * np.asarray(s.xi_poly, float)


def curve_polynomial(s) -> np.ndarray:
    """Ascending real coefficients of ``P(z)`` (length ``4L + 1``)."""
    s = _as_symbol(s)
    return np.polynomial.polynomial.polymul(_factor_coeffs(s, +1), _factor_coeffs(s, -1))


def _polished_roots(coeffs: np.ndarray, steps: int = 4) -> np.ndarray:
    P = np.polynomial.Polynomial(coeffs)
    dP = P.deriv()
    z = P.roots().astype(complex)
    for _ in range(steps):
        d = dP(z)
        ok = d != 0
        z = np.where(ok, z - P(z) / np.where(ok, d, 1.0), z)
    return z


@dataclass(frozen=True, eq=False)
class BranchData:
    """
    Ordered branch points with their zero/pole labels.

    Attributes
    ----------
    roots : ndarray of complex, shape (4L,)
        Inside-the-disc roots first.
    epsilon : ndarray of int, shape (4L,)
        ``+1`` for zeros of ``g^2``, ``-1`` for poles.
    L : int
    leading : float
        Coefficient of ``z^{4L}`` in ``P``.
    """

    roots: np.ndarray
    epsilon: np.ndarray
    L: int
    leading: float

    @property
    def genus(self) -> int:
        return 2 * self.L - 1

    def inside(self) -> np.ndarray:
        return self.roots[:2 * self.L]

    def outside(self) -> np.ndarray:
        return self.roots[2 * self.L:]

    def reordered(self, perm) -> "BranchData":
        perm = np.asarray(perm)
        return replace(self, roots=self.roots[perm].copy(), epsilon=self.epsilon[perm].copy())


def _default_inside_order(zs: np.ndarray) -> np.ndarray:
    # larger modulus first, then upper half plane first
    return np.lexsort((-zs.imag.round(12), -np.abs(zs).round(12)))


def branch_data(s, *, order: str = "auto") -> BranchData:
    """
    Find, classify and order the roots of ``P``.

    Parameters
    ----------
    order : {"auto", "inverse"}
        ``"inverse"`` places ``1/z_j`` at position ``2L + j`` for the inside
        roots in their default order (the layout used for the XY chain);
        ``"auto"`` does the same for ``L = 1`` and otherwise searches the
        inside permutations for the most robust cycle geometry.

    Raises
    ------
    GeometryError
        If ``deg P < 4L`` (branch point at infinity).
    NonGenericCurveError
        If two roots coincide.
    CriticalModelError
        If a root lies on the unit circle.
    """
    s = _as_symbol(s)
    L = s.L
    P = curve_polynomial(s)
    lead = float(P[-1])
    scale = float(np.max(np.abs(P)))
    if abs(lead) <= 1e-14 * scale:
        raise GeometryError("deg P < 4L: branch point at infinity unsupported "
                            "(e.g. the XY line gamma = 1)")
    zeros = _polished_roots(_factor_coeffs(s, +1))
    poles = _polished_roots(_factor_coeffs(s, -1))
    roots = np.concatenate([zeros, poles])
    eps = np.concatenate([np.ones(zeros.size, int), -np.ones(poles.size, int)])
    if roots.size != 4 * L:
        raise GeometryError(f"expected {4 * L} roots, found {roots.size}")
    mod = np.abs(roots)
    if np.any(np.abs(1.0 - mod) < ON_CIRCLE_TOL):
        raise CriticalModelError("critical model: a branch point lies on the unit circle")
    for i, j in itertools.combinations(range(roots.size), 2):
        if abs(roots[i] - roots[j]) < COLLISION_TOL * max(1.0, abs(roots[i])):
            raise NonGenericCurveError(
                f"non-generic curve: branch points {roots[i]:.6g} and {roots[j]:.6g} coincide")
    inside = np.nonzero(mod < 1)[0]
    if inside.size != 2 * L:
        raise GeometryError(f"expected {2 * L} roots inside the unit circle, found {inside.size}")
    inside = inside[_default_inside_order(roots[inside])]
    # outside roots as inverses of the inside ones, in the same order
    outside = []
    remaining = set(np.nonzero(mod > 1)[0].tolist())
    for i in inside:
        target = 1.0 / roots[i]
        j = min(remaining, key=lambda k: abs(roots[k] - target))
        outside.append(j)
        remaining.remove(j)
    perm = np.concatenate([inside, outside])
    b = BranchData(roots[perm].copy(), eps[perm].copy(), L, lead)
    check_branch_invariants(b, P)
    if order == "auto" and L > 1:
        b = _best_ordering(b)
    elif order not in ("auto", "inverse"):
        raise ValueError(f"unknown order policy {order!r}")
    return b


def check_branch_invariants(b: BranchData, P: np.ndarray | None = None) -> None:
    """Quartet closure, eps consistency and (optionally) root residuals."""
    z = b.roots
    tol = lambda w: QUARTET_TOL * max(1.0, abs(w))
    for zj, ej in zip(z, b.epsilon):
        k_conj = np.argmin(np.abs(z - np.conj(zj)))
        k_inv = np.argmin(np.abs(z - 1.0 / zj))
        if abs(z[k_conj] - np.conj(zj)) > tol(zj) or abs(z[k_inv] - 1.0 / zj) > tol(1.0 / zj):
            raise GeometryError(f"quartet closure fails at root {zj:.6g}")
        if b.epsilon[k_conj] != ej or b.epsilon[k_inv] != -ej:
            raise GeometryError(f"zero/pole labels inconsistent at root {zj:.6g}")
    if int(np.sum(b.epsilon)) != 0:
        raise GeometryError("zero and pole counts differ")
    if P is not None:
        Pz = np.polynomial.polynomial.polyval(z, P)
        res = np.abs(Pz) / (abs(b.leading) * np.maximum(1.0, np.abs(z)) ** (4 * b.L))
        if np.any(res > 1e-10):
            raise GeometryError(f"root residual {res.max():.2e} exceeds 1e-10")


def cross_ratio_points(z1, z2, z3, z4):
    """``(z1, z2; z3, z4) = (z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))``."""
    return (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3))


def cross_ratio(b: BranchData) -> float:
    """Cross ratio of the four ordered branch points of a genus-1 curve."""
    if b.genus != 1:
        raise GeometryError("cross ratio is only defined here for genus 1")
    x = cross_ratio_points(*b.roots)
    if abs(x.imag) > 1e-8 * max(1.0, abs(x)):
        raise GeometryError(f"cross ratio {x} is not real")
    return float(x.real)


def characteristics(b: BranchData) -> tuple[np.ndarray, np.ndarray]:
    """
    Half-integer characteristics from the labels::

        mu_r = (eps[2r] + eps[2r+1]) / 4,   nu_r = sum(eps[1 : 2r+1]) / 4,   r = 1..g
    """
    e = b.epsilon.astype(float)
    g = b.genus
    mu = np.array([(e[2 * r] + e[2 * r + 1]) / 4 for r in range(1, g + 1)])
    nu = np.array([e[1:2 * r + 1].sum() / 4 for r in range(1, g + 1)])
    return mu, nu


def e_vector(L: int) -> np.ndarray:
    return np.concatenate([np.zeros(L - 1), np.ones(L)])


def _same_side(b: BranchData, j1: int, j2: int) -> bool:
    half = 2 * b.L
    return (j1 < half) == (j2 < half)


def transpose_roots(b: BranchData, j1: int, j2: int) -> BranchData:
    """
    Exchange branch points ``j1`` and ``j2`` (0-based) on the same side of the circle.

    Raises
    ------
    GeometryError
        For a transposition across the unit circle.
    """
    n = b.roots.size
    if not (0 <= j1 < n and 0 <= j2 < n):
        raise IndexError("branch point index out of range")
    if not _same_side(b, j1, j2):
        raise GeometryError("transposition across the unit circle changes the determinant")
    perm = np.arange(n)
    perm[[j1, j2]] = perm[[j2, j1]]
    return b.reordered(perm)


def transposed_characteristics(b: BranchData, j1: int, j2: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Characteristic update for a same-side transposition, written as shifts.

    With 1-based labels ``j = 2 r + 1 + u`` (``u`` in {0, 1}) and
    ``delta = eps_{j2} - eps_{j1}``, ``mu`` moves by ``+delta/4`` at ``r1`` and
    ``-delta/4`` at ``r2``; ``nu_r`` moves by ``delta/4`` for
    ``r1 + u1 <= r <= r2 - 1 + u2``.  Requires ``j1, j2 >= 1`` (0-based),
    i.e. the first root is not involved.
    """
    if not _same_side(b, j1, j2):
        raise GeometryError("transposition across the unit circle")
    j1, j2 = sorted((j1, j2))
    if j1 == 0:
        raise ValueError("update rule does not cover the first branch point")
    mu, nu = characteristics(b)
    mu, nu = mu.copy(), nu.copy()
    delta = b.epsilon[j2] - b.epsilon[j1]
    r1, u1 = divmod(j1, 2)
    r2, u2 = divmod(j2, 2)
    g = b.genus
    if 1 <= r1 <= g:
        mu[r1 - 1] += delta / 4
    if 1 <= r2 <= g:
        mu[r2 - 1] -= delta / 4
    for r in range(max(1, r1 + u1), min(g, r2 - 1 + u2) + 1):
        nu[r - 1] += delta / 4
    return mu, nu


# ---------------------------------------------------------------------------
# cycle geometry
# ---------------------------------------------------------------------------

def _seg_dist(p1, p2, q1, q2) -> float:
    """Euclidean distance between segments [p1, p2] and [q1, q2] in the plane."""
    def cross(a, b):
        return a.real * b.imag - a.imag * b.real

    d1, d2 = p2 - p1, q2 - q1
    den = cross(d1, d2)
    if den != 0:
        t = cross(q1 - p1, d2) / den
        u = cross(q1 - p1, d1) / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            return 0.0

    def pt_seg(x, a, b):
        ab = b - a
        L2 = abs(ab) ** 2
        t = 0.0 if L2 == 0 else min(1.0, max(0.0, ((x - a) * np.conj(ab)).real / L2))
        return abs(x - (a + t * ab))

    return min(pt_seg(p1, q1, q2), pt_seg(p2, q1, q2), pt_seg(q1, p1, p2), pt_seg(q2, p1, p2))


def _polyline_clearance(pts) -> float:
    """Smallest distance between non-adjacent segments of an open polyline."""
    segs = list(zip(pts[:-1], pts[1:]))
    best = np.inf
    for i, j in itertools.combinations(range(len(segs)), 2):
        if j == i + 1:
            # adjacent: distance from far endpoints to the other segment
            a, b = segs[i]
            c, d = segs[j]
            best = min(best, _seg_dist(a, a, c, d), _seg_dist(d, d, a, b))
        else:
            best = min(best, _seg_dist(*segs[i], *segs[j]))
    return best


@dataclass(frozen=True)
class CycleLayout:
    """Polylines of the two pictures and the crossing point ``u`` on the unit circle."""

    inner: np.ndarray
    outer: np.ndarray
    crossing: complex
    clearance: float


def _layout_for(b: BranchData, n_angles: int = 96) -> CycleLayout:
    L = b.L
    inner_pts = list(b.roots[:2 * L])
    outer_pts = list(1.0 / b.roots[2 * L:])
    base = min(_polyline_clearance(inner_pts) if len(inner_pts) > 2 else np.inf,
               _polyline_clearance(outer_pts) if len(outer_pts) > 2 else np.inf)
    best = None
    angles = 2 * np.pi * (np.arange(n_angles) + 0.5) / n_angles
    for phi in angles:
        u = np.exp(1j * phi)
        c_in = _polyline_clearance(inner_pts + [u])
        c_out = _polyline_clearance([np.conj(u)] + outer_pts)
        c = min(base, c_in, c_out)
        if best is None or c > best[0] + 1e-12:
            best = (c, u)
    c, u = best
    return CycleLayout(np.array(inner_pts + [u]), np.array([np.conj(u)] + outer_pts), u, c)


def _best_ordering(b: BranchData) -> BranchData:
    L = b.L
    inside = b.roots[:2 * L]
    best = None
    for perm in itertools.permutations(range(2 * L)):
        perm = np.array(perm)
        full = np.concatenate([perm, 2 * L + perm])
        cand = b.reordered(full)
        pts_in = list(cand.roots[:2 * L])
        pts_out = list(1.0 / cand.roots[2 * L:])
        c = min(_polyline_clearance(pts_in), _polyline_clearance(pts_out))
        if best is None or c > best[0] + 1e-12:
            best = (c, cand)
    del inside
    return best[1]


# ---------------------------------------------------------------------------
# reference sheet of sqrt(P)
# ---------------------------------------------------------------------------

def _J(z, p, q):
    """``sqrt((z-p)(z-q))`` with its cut on the segment [p, q], ~ z at infinity."""
    m = (p + q) / 2
    r = (q - p) / 2
    d = z - m
    return d * np.sqrt(1 - (r / d) ** 2)


def _Jinv(x, p, q):
    """``x * _J(1/x, p, q)``, regular at ``x = 0``; cut where ``1/x`` lies on [p, q]."""
    m = (p + q) / 2
    r = (q - p) / 2
    d = 1 - m * x
    return d * np.sqrt(1 - (r * x / d) ** 2)


class _Sheet:
    """Reference branch of ``w = sqrt(P)`` analytic off the cuts."""

    def __init__(self, b: BranchData):
        self.L = b.L
        self.sqrt_lead = np.sqrt(complex(b.leading))
        z = b.roots
        L = b.L
        self.inner_cuts = [(z[2 * rho], z[2 * rho + 1]) for rho in range(L)]
        self.outer_cuts = [(z[2 * rho], z[2 * rho + 1]) for rho in range(L, 2 * L)]
        self.outer_pref = [np.sqrt(p * q) for p, q in self.outer_cuts]

    def w(self, z, skip: int | None = None):
        """``sqrt(P(z))``; ``skip`` drops the factor belonging to that cut."""
        out = self.sqrt_lead * np.ones_like(np.asarray(z, dtype=complex))
        for rho, (p, q) in enumerate(self.inner_cuts):
            if rho != skip:
                out = out * _J(z, p, q)
        for k, (p, q) in enumerate(self.outer_cuts):
            if self.L + k != skip:
                out = out * self.outer_pref[k] * _Jinv(z, 1 / p, 1 / q)
        return out

    def w_tilde(self, zeta, skip: int | None = None):
        """``zeta^{2L} sqrt(P(1/zeta))``, regular at ``zeta = 0``."""
        out = self.sqrt_lead * np.ones_like(np.asarray(zeta, dtype=complex))
        for rho, (p, q) in enumerate(self.inner_cuts):
            if rho != skip:
                out = out * _Jinv(zeta, p, q)
        for k, (p, q) in enumerate(self.outer_cuts):
            if self.L + k != skip:
                out = out * self.outer_pref[k] * _J(zeta, 1 / p, 1 / q)
        return out


def _powers(x, exps):
    return np.asarray(x)[None, :] ** np.asarray(exps)[:, None]


def _a_periods(sheet: _Sheet, n: int) -> np.ndarray:
    """``A[r, k] = int_{a_r} z^k dz / w`` for cuts ``r = 1..g`` and ``k = 0..g-1``."""
    L = sheet.L
    g = 2 * L - 1
    phi = 2 * np.pi * np.arange(n) / n
    t = np.exp(1j * phi)
    A = np.empty((g, g), dtype=complex)
    k = np.arange(g)
    for r in range(1, g + 1):
        if r < L:
            p, q = sheet.inner_cuts[r]
            z = (p + q) / 2 + (q - p) / 2 * (t + 1 / t) / 2
            vals = _powers(z, k) / sheet.w(z, skip=r)
            A[r - 1] = 1j * vals.mean(axis=1) * 2 * np.pi
        else:
            p, q = sheet.outer_cuts[r - L]
            P_, Q_ = 1 / p, 1 / q
            zeta = (P_ + Q_) / 2 + (Q_ - P_) / 2 * (t + 1 / t) / 2
            vals = _powers(zeta, 2 * L - 2 - k) / (sheet.w_tilde(zeta, skip=r) * sheet.outer_pref[r - L])
            A[r - 1] = -1j * vals.mean(axis=1) * 2 * np.pi
    return A


def _segment_integral(sheet: _Sheet, a, c, picture: str, n: int, singular: str = "both") -> np.ndarray:
    """
    ``int z^k dz / w`` along a straight segment of one picture, ``k = 0..g-1``.

    ``singular`` names the endpoints carrying a square-root singularity:
    "both" (Gauss-Chebyshev), "start" or "end" (Gauss-Jacobi).
    """
    L = sheet.L
    g = 2 * L - 1
    k = np.arange(g)
    if singular == "both":
        s = np.cos((2 * np.arange(1, n + 1) - 1) * np.pi / (2 * n))
        wts = np.full(n, np.pi / n)
        reg = np.sqrt(1 - s * s)
    elif singular == "start":
        s, wts = roots_jacobi(n, 0.0, -0.5)
        reg = np.sqrt(1 + s)
    elif singular == "end":
        s, wts = roots_jacobi(n, -0.5, 0.0)
        reg = np.sqrt(1 - s)
    else:
        raise ValueError(singular)
    half = (c - a) / 2
    x = (a + c) / 2 + half * s
    if picture == "inner":
        vals = _powers(x, k) * (half * reg) / sheet.w(x)
    else:
        vals = -_powers(x, 2 * L - 2 - k) * (half * reg) / sheet.w_tilde(x)
    return vals @ wts


def _connector_integrals(sheet: _Sheet, b: BranchData, layout: CycleLayout, n: int) -> np.ndarray:
    """``C[k-1, :] = int`` along connector ``k`` (root ``2k-1`` to root ``2k``, 0-based)."""
    L = b.L
    g = b.genus
    z = b.roots
    C = np.empty((g, g), dtype=complex)
    for kk in range(1, g + 1):
        i0, i1 = 2 * kk - 1, 2 * kk
        if i1 < 2 * L:
            C[kk - 1] = _segment_integral(sheet, z[i0], z[i1], "inner", n)
        elif i0 >= 2 * L:
            C[kk - 1] = _segment_integral(sheet, 1 / z[i0], 1 / z[i1], "outer", n)
        else:
            u = layout.crossing
            C[kk - 1] = (_segment_integral(sheet, z[i0], u, "inner", n, "start")
                         + _segment_integral(sheet, np.conj(u), 1 / z[i1], "outer", n, "end"))
    return C


@dataclass(frozen=True, eq=False)
class SurfaceGeometry:
    """
    Period data and theta characteristics of a branch configuration.

    ``cuts`` lists the root pairs joined by each cut (``None`` when the
    geometry was built from a closed-form modulus).
    """

    period_matrix: np.ndarray
    mu: np.ndarray
    nu: np.ndarray
    e_vector: np.ndarray
    cuts: tuple | None = None
    branch: BranchData | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def genus(self) -> int:
        return self.period_matrix.shape[0]


def _periods(b: BranchData, n: int):
    sheet = _Sheet(b)
    layout = _layout_for(b)
    A = _a_periods(sheet, 2 * n)
    C = _connector_integrals(sheet, b, layout, n)
    B = 2 * np.cumsum(C, axis=0)
    return A, B, layout


def period_matrix(b: BranchData, quadrature_order: int | None = None, *,
                  tol: float = 1e-12, max_order: int = 4096) -> SurfaceGeometry:
    """
    Normalized period matrix ``Pi = B A^{-1}`` with characteristics attached.

    Parameters
    ----------
    quadrature_order : int, optional
        Nodes per connector (the a-cycles use twice as many).  When omitted the
        order is doubled from 32 until ``Pi`` changes by less than ``tol``.

    Raises
    ------
    GeometryError
        If the cycle layout degenerates, the a-period matrix is ill-conditioned
        (condition number above 1e12), or ``Pi`` fails symmetry / positivity.
    """
    layout = _layout_for(b)
    if layout.clearance < 1e-9:
        raise GeometryError("cuts and cycle paths intersect for this ordering; "
                            "rearrange the cuts (reorder the roots)")

    def compute(n):
        A, B, _ = _periods(b, n)
        cond = np.linalg.cond(A)
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise GeometryError(f"a-period matrix ill-conditioned (cond={cond:.2e}); "
                                "try a different cut arrangement")
        return np.linalg.solve(A.T, B.T).T, cond

    if quadrature_order is not None:
        Pi, cond = compute(int(quadrature_order))
        change = None
        n = int(quadrature_order)
    else:
        n = 32
        Pi, cond = compute(n)
        change = np.inf
        while n < max_order:
            n *= 2
            Pi_new, cond = compute(n)
            change = float(np.max(np.abs(Pi_new - Pi)))
            Pi = Pi_new
            if change < tol:
                break
    sym = float(np.max(np.abs(Pi - Pi.T)))
    if np.all(np.linalg.eigvalsh((Pi.imag + Pi.imag.T) / 2) < 0):
        Pi = -Pi
    Pi = (Pi + Pi.T) / 2
    if sym > 1e-8:
        raise GeometryError(f"period matrix not symmetric (defect {sym:.2e})")
    if np.min(np.linalg.eigvalsh(Pi.imag)) <= 0:
        raise GeometryError("imaginary part of the period matrix is not positive definite")
    mu, nu = characteristics(b)
    cuts = tuple((complex(b.roots[2 * r]), complex(b.roots[2 * r + 1])) for r in range(b.genus + 1))
    return SurfaceGeometry(Pi, mu, nu, e_vector(b.L), cuts, b,
                           {"quadrature_order": n, "last_change": change, "condition": float(cond),
                            "symmetry_defect": sym, "clearance": layout.clearance,
                            "crossing_point": complex(layout.crossing)})


def surface(s, quadrature_order: int | None = None) -> SurfaceGeometry:
    """Branch data and period matrix of a symbol in one call."""
    return period_matrix(branch_data(s), quadrature_order)


def surface_report(geom: SurfaceGeometry) -> str:
    """JSON description of the geometry: roots, labels, cuts, periods and characteristics."""
    b = geom.branch
    cpx = lambda z: [float(np.real(z)), float(np.imag(z))]
    data = {
        "genus": geom.genus,
        "roots": [cpx(z) for z in b.roots] if b is not None else None,
        "epsilon": b.epsilon.tolist() if b is not None else None,
        "ordering": "inside-first",
        "cuts": [[cpx(p), cpx(q)] for p, q in geom.cuts] if geom.cuts else None,
        "period_matrix": {"real": geom.period_matrix.real.tolist(),
                          "imag": geom.period_matrix.imag.tolist()},
        "mu": geom.mu.tolist(),
        "nu": geom.nu.tolist(),
        "e_vector": geom.e_vector.tolist(),
        "diagnostics": {k: (cpx(v) if isinstance(v, complex) else v)
                        for k, v in geom.diagnostics.items()},
    }
    return json.dumps(data, indent=2)
