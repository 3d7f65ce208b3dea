"""Fejér–Riesz factorization and coefficient sign-change certificates.

Convention: w(t) = Σ_{n=-N}^{N} c_n e^{int} with c_n = Σ_j d_j conj(d_{j+n}),
so w(t) = |Σ_j conj(d_j) e^{ijt}|².
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Sequence

import numpy as np

from .errors import NotNonnegative, OddUnitCircleMultiplicity, ZeroLeading

HAS_SIGN_CHANGE = "HasSignChange"
INCONCLUSIVE = "Inconclusive"
PAIR_TOL = 1e-7


@dataclass(frozen=True)
class TrigPoly:
    """Coefficients c_0..c_N; c_{-n} = conj(c_n) is implied (real-valued w)."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def full(self) -> np.ndarray:
        """c_{-N}..c_N as a complex array."""
        c = np.asarray(self.coeffs, dtype=complex)
        return np.concatenate([np.conj(c[:0:-1]), c])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        c = np.asarray(self.coeffs, dtype=complex)
        n = np.arange(len(c))
        terms = np.exp(1j * np.multiply.outer(t, n)) * c
        return np.real(terms[..., 0]) + 2 * np.real(terms[..., 1:].sum(axis=-1))

    def to_json(self) -> dict:
        return {"coeffs": [[float(np.real(c)), float(np.imag(c))] for c in self.coeffs]}


@dataclass(frozen=True)
class SpectralFactor:
    d: np.ndarray
    residual: float

    def to_json(self) -> dict:
        return {"d": [[float(x.real), float(x.imag)] for x in self.d], "residual": self.residual}


def autocorrelation(d: Sequence[complex]) -> TrigPoly:
    """c_n = Σ_{j=0}^{N-n} d_j conj(d_{n+j}) for n = 0..N."""
    d = np.asarray(d, dtype=complex)
    if d.size == 0:
        raise ValueError("d must be nonempty")
    N = d.size - 1
    c = [complex(np.dot(d[: N - n + 1], np.conj(d[n:]))) for n in range(N + 1)]
    return TrigPoly(tuple(c))


def _coeff_error(d: np.ndarray, c: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(autocorrelation(d).coeffs) - c)))


def _polish(d: np.ndarray, c: np.ndarray, steps: int = 8) -> np.ndarray:
    """Gauss–Newton refinement of autocorrelation(d) = c in real coordinates."""
    N = d.size - 1
    x = np.concatenate([d.real, d.imag])

    def residual(x):
        dd = x[: N + 1] + 1j * x[N + 1:]
        r = np.asarray(autocorrelation(dd).coeffs) - c
        return np.concatenate([r.real, r.imag[1:]])

    best = x, np.max(np.abs(residual(x)))
    for _ in range(steps):
        r = residual(x)
        J = np.empty((r.size, x.size))
        h = 1e-7 * max(1.0, np.max(np.abs(x)))
        for k in range(x.size):
            e = np.zeros_like(x)
            e[k] = h
            J[:, k] = (residual(x + e) - residual(x - e)) / (2 * h)
        step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        x = x + step
        err = np.max(np.abs(residual(x)))
        if err < best[1]:
            best = x, err
        if err < 1e-14 * max(1.0, np.max(np.abs(c))):
            break
    x = best[0]
    return x[: N + 1] + 1j * x[N + 1:]


def fejer_riesz_factor(c: TrigPoly | Sequence[complex], tol: float = 1e-8) -> SpectralFactor:
    """Outer factor d of a nonnegative trigonometric polynomial.

    Roots of z^N w(z) come in pairs ρ, 1/conj(ρ); the member inside the
    closed unit disc is kept, unit-circle roots with half multiplicity.
    """
    c = c if isinstance(c, TrigPoly) else TrigPoly(tuple(c))
    coeffs = np.asarray(c.coeffs, dtype=complex)
    N = c.degree
    grid = 2 * np.pi * np.arange(max(16 * N, 16)) / max(16 * N, 16)
    w = c(grid)
    scale = np.abs(coeffs).sum()
    k = int(np.argmin(w))
    if w[k] < -tol * max(scale, 1.0):
        raise NotNonnegative(float(grid[k]), float(w[k]))
    if coefficient_sign_change_test(c) == HAS_SIGN_CHANGE:
        cert = find_sign_change(c, max(8 * N, 4096))
        if cert is not None:
            raise NotNonnegative(cert.t_minus, cert.w_minus)
    if N == 0:
        if coeffs[0].real < 0:
            raise NotNonnegative(0.0, float(coeffs[0].real))
        return SpectralFactor(np.array([np.sqrt(coeffs[0].real)], dtype=complex), 0.0)
    # z^N w(z) = Σ_{n=-N}^{N} c_n z^{n+N}; numpy.roots wants highest degree first.
    roots = np.roots(c.full()[::-1])
    inside = roots[np.abs(roots) < 1 - PAIR_TOL]
    on_circle = roots[np.abs(np.abs(roots) - 1) <= PAIR_TOL]
    if on_circle.size % 2:
        raise OddUnitCircleMultiplicity(f"{on_circle.size} roots on the unit circle")
    on_circle = on_circle[np.argsort(np.angle(on_circle))][::2]
    selected = np.concatenate([inside, on_circle])
    if selected.size != N:
        raise OddUnitCircleMultiplicity(f"selected {selected.size} roots for degree {N}")
    h = np.poly(selected)[::-1]  # increasing powers, monic
    d = np.conj(h)
    d = d * np.sqrt(coeffs[0].real / np.sum(np.abs(d) ** 2))
    # companion-matrix roots lose digits on clustered roots; refine toward machine precision
    if _coeff_error(d, coeffs) > 1e-13 * max(scale, 1.0):
        d = _polish(d, coeffs)
    return SpectralFactor(d, _coeff_error(d, coeffs))


def _is_exact(x) -> bool:
    return isinstance(x, (Integral, Fraction))


def coefficient_sign_change_test(c: TrigPoly | Sequence) -> str:
    """Sufficient coefficient condition for w to change sign."""
    coeffs = list(c.coeffs if isinstance(c, TrigPoly) else c)
    N = len(coeffs) - 1
    if coeffs[N] == 0:
        raise ZeroLeading("top coefficient c_N is zero")
    exact = all(_is_exact(x) for x in coeffs)
    lhs, rhs = 2 * abs(coeffs[N]), abs(coeffs[0])
    if exact:
        strict, equal = lhs > rhs, lhs == rhs
    else:
        tol = 1e-12 * max(1.0, float(rhs))
        strict, equal = lhs > rhs + tol, abs(lhs - rhs) <= tol
    if strict:
        return HAS_SIGN_CHANGE
    if equal and any(coeffs[n] != 0 for n in range(1, N)):
        return HAS_SIGN_CHANGE
    return INCONCLUSIVE


@dataclass(frozen=True)
class SignChangeCertificate:
    t_plus: float
    t_minus: float
    w_plus: float
    w_minus: float

    def to_json(self) -> dict:
        return dict(t_plus=self.t_plus, t_minus=self.t_minus,
                    w_plus=self.w_plus, w_minus=self.w_minus)


def find_sign_change(c: TrigPoly | Sequence, resolution: int) -> SignChangeCertificate | None:
    """Grid search for t_plus, t_minus with w(t_plus) > 0 > w(t_minus)."""
    c = c if isinstance(c, TrigPoly) else TrigPoly(tuple(c))
    if resolution < 8 * c.degree:
        raise ValueError("resolution below 8N")
    t = 2 * np.pi * np.arange(resolution) / resolution
    w = c(t)
    hi, lo = int(np.argmax(w)), int(np.argmin(w))
    if w[hi] > 0 > w[lo]:
        return SignChangeCertificate(float(t[hi]), float(t[lo]), float(w[hi]), float(w[lo]))
    return None
