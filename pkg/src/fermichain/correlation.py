"""
Ground-state correlation matrix of an interval and its exact Renyi entropies.

For an interval of ``|X|`` contiguous sites the correlation matrix ``V_X`` is
``2|X| x 2|X|`` and block Toeplitz, with ``(n, m)`` block

    (1/N) sum_k M_k exp(i theta_k (n - m)),    M_k = [[F, G], [-G, -F]] / Lambda

on a ring of ``N`` modes.  Its eigenvalues ``v`` give

    S_alpha = 1/2 sum_v f_alpha(1, v).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .chain import CRITICAL_GAP, SymbolData, _as_symbol, dispersion
from .errors import CriticalModelError, DomainError, NumericIntegrityError

ALPHA_ONE_TOL = 1e-8
HERMITIAN_TOL = 1e-12
SPECTRUM_BAND = 1e-10

METHODS = ("exact-eigen", "theta-asymptotic", "xy-closed-form")


@dataclass(frozen=True)
class EntropyResult:
    """Entropy value (nats) together with how it was obtained."""

    alpha: float
    interval_length: int | None
    value: float
    method: str
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    interval_length: int
    entries: np.ndarray
    mode_count: int

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def block(self, n: int, m: int) -> np.ndarray:
        return self.entries[2 * n:2 * n + 2, 2 * m:2 * m + 2]


def default_mode_count(interval_length: int) -> int:
    return max(2 ** 13, 64 * interval_length)


def build_correlation_matrix(s: SymbolData, interval_length: int,
                             mode_count: int | None = None, *,
                             allow_near_critical: bool = False) -> CorrelationMatrix:
    """
    Assemble ``V_X`` from the discrete Fourier sums of the symbol.

    Parameters
    ----------
    s : SymbolData or CouplingSet
    interval_length : int
        Number of sites ``|X|`` in the interval.
    mode_count : int, optional
        Ring size ``N``; defaults to ``max(2**13, 64 |X|)``.  Must be at
        least ``8 |X|``.
    allow_near_critical : bool
        For gapless models: sample the half-shifted modes
        ``theta_k = 2 pi (k + 1/2)/N``, which avoids the zero modes at
        ``theta = 0, pi``, and accept small ``Lambda_k``.  Accuracy then
        degrades with ``1/N``.

    Raises
    ------
    CriticalModelError
        If some ``Lambda_k`` is below the threshold (the message names ``theta_k``).
    """
    s = _as_symbol(s)
    X = int(interval_length)
    if X < 1:
        raise DomainError("interval_length must be positive")
    N = default_mode_count(X) if mode_count is None else int(mode_count)
    if N < 8 * X:
        raise DomainError(f"mode_count {N} below 8*|X| = {8 * X}")
    shift = 0.5 if allow_near_critical else 0.0
    theta = 2 * np.pi * (np.arange(N) + shift) / N
    lam = dispersion(s, theta)
    floor = 0.0 if allow_near_critical else CRITICAL_GAP
    bad = np.nonzero(lam <= floor)[0]
    if bad.size:
        raise CriticalModelError(
            f"dispersion vanishes (Lambda={lam[bad[0]]:.3e}) at theta_k={theta[bad[0]]:.17g}; "
            "the model is critical at this resolution")
    F = s.F(theta)
    G = s.G(theta)
    # ifft(x)[d] = (1/N) sum_k x_k exp(+i theta_k d)
    m11 = np.fft.ifft(F / lam)
    m12 = np.fft.ifft(G / lam)
    sd = np.subtract.outer(np.arange(X), np.arange(X))
    d = sd % N
    phase = np.exp(1j * np.pi * shift * 2 * sd / N)
    V = np.empty((2 * X, 2 * X), dtype=complex)
    V[0::2, 0::2] = phase * m11[d]
    V[0::2, 1::2] = phase * m12[d]
    V[1::2, 0::2] = -phase * m12[d]
    V[1::2, 1::2] = -phase * m11[d]
    return CorrelationMatrix(X, V, N)


def f_alpha(x, y, alpha: float):
    """
    ``1/(1-alpha) log[((x+y)/2)^alpha + ((x-y)/2)^alpha]``.

    At ``alpha = 1`` the binary-entropy form
    ``-p log p - q log q`` with ``p, q = (x +- y)/2`` is used; it coincides with
    the limit for ``x = 1``.  Works elementwise on arrays and on complex ``y``
    with principal powers.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    x = np.asarray(x)
    y = np.asarray(y)
    p = (x + y) / 2
    q = (x - y) / 2
    if abs(alpha - 1.0) < ALPHA_ONE_TOL:
        if not (np.iscomplexobj(p) or np.iscomplexobj(q)):
            if np.any(p < 0) or np.any(q < 0):
                raise DomainError("alpha=1 requires |y| <= x")
            with np.errstate(divide="ignore", invalid="ignore"):
                tp = np.where(p > 0, -p * np.log(np.where(p > 0, p, 1.0)), 0.0)
                tq = np.where(q > 0, -q * np.log(np.where(q > 0, q, 1.0)), 0.0)
            return tp + tq
        return -p * np.log(p) - q * np.log(q)
    if not (np.iscomplexobj(p) or np.iscomplexobj(q)):
        if alpha == int(alpha):
            arg = p ** int(alpha) + q ** int(alpha)
        elif np.any((p < 0) | (q < 0)):
            raise DomainError("f_alpha argument outside its real domain")
        else:
            arg = p ** alpha + q ** alpha
        if np.any(arg <= 0):
            raise DomainError("f_alpha argument must be positive")
        return np.log(arg) / (1.0 - alpha)
    return np.log(p ** alpha + q ** alpha) / (1.0 - alpha)


def df_alpha_dy(y, alpha: float):
    """Derivative of ``f_alpha(1, y)`` with respect to ``y``."""
    y = np.asarray(y)
    p = (1 + y) / 2
    q = (1 - y) / 2
    if abs(alpha - 1.0) < ALPHA_ONE_TOL:
        return 0.5 * np.log(q / p)
    return 0.5 * alpha / (1.0 - alpha) * (p ** (alpha - 1) - q ** (alpha - 1)) / (p ** alpha + q ** alpha)


def clamp_spectrum(v: np.ndarray, band: float = SPECTRUM_BAND) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if np.any(np.abs(v) > 1.0 + band):
        worst = v[np.argmax(np.abs(v))]
        raise NumericIntegrityError(f"correlation eigenvalue {worst!r} outside [-1, 1]")
    return np.clip(v, -1.0, 1.0)


def entropy_from_spectrum(v, alpha: float) -> float:
    v = clamp_spectrum(v)
    return float(0.5 * np.sum(f_alpha(1.0, v, alpha)))


def entropy_from_correlations(V: CorrelationMatrix, alpha: float) -> EntropyResult:
    """
    Exact Renyi entropy ``1/2 sum_l f_alpha(1, v_l)`` over the spectrum of ``V``.

    Raises
    ------
    NumericIntegrityError
        If ``V`` is not Hermitian within ``1e-12`` or has eigenvalues outside
        ``[-1-1e-10, 1+1e-10]``.
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    M = V.entries
    herm = float(np.max(np.abs(M - M.conj().T)))
    if herm > HERMITIAN_TOL:
        raise NumericIntegrityError(f"correlation matrix not Hermitian (defect {herm:.2e})")
    v = np.linalg.eigvalsh(M)
    value = entropy_from_spectrum(v, alpha)
    return EntropyResult(
        alpha=float(alpha), interval_length=V.interval_length, value=max(value, 0.0),
        method="exact-eigen",
        diagnostics={"N": V.mode_count, "hermiticity_defect": herm,
                     "pairing_defect": float(np.max(np.abs(np.sort(v) + np.sort(v)[::-1])))})


def exact_entropy(s, interval_length: int, alpha: float = 1.0,
                  mode_count: int | None = None, **kwargs) -> EntropyResult:
    """Convenience wrapper: build ``V_X`` and return its exact entropy."""
    V = build_correlation_matrix(s, interval_length, mode_count, **kwargs)
    return entropy_from_correlations(V, alpha)


def exact_log_det(s, lam: complex, interval_length: int,
                  mode_count: int | None = None) -> complex:
    """``log det(lam I - V_X)`` as a sum of principal logarithms over the spectrum."""
    V = build_correlation_matrix(s, interval_length, mode_count)
    v = V.eigenvalues()
    return complex(np.sum(np.log(complex(lam) - v)))


def eigenvalues_csv(V: CorrelationMatrix) -> str:
    """Sorted spectrum as ``index,eigenvalue`` CSV for auditing."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "eigenvalue"])
    for i, v in enumerate(np.sort(V.eigenvalues())):
        w.writerow([i, f"{v:.17g}"])
    return buf.getvalue()
