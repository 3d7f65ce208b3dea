"""Antisymmetric patterns, difference sine polynomials and the κ-gap.

Angles t are in radians here; γ_r = 2πr/D.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.integrate import simpson

from . import cyclotomic as cyc
from .errors import BothZero, BudgetExceeded, DeltaMismatch, InvalidPattern

DEFAULT_GAP_FACTOR = 8
PROBE_BUDGET = 2 * 10 ** 9


@dataclass(frozen=True)
class OddPattern:
    """ε ∈ {-1,0,1}^D with ε_m = -ε_{D-m}, D even, not identically zero."""

    D: int
    eps: tuple[int, ...]

    def __post_init__(self):
        D, eps = self.D, tuple(int(x) for x in self.eps)
        object.__setattr__(self, "eps", eps)
        if D <= 0 or D % 2:
            raise InvalidPattern(f"D must be a positive even integer, got {D}", D=D)
        if len(eps) != D:
            raise InvalidPattern(f"pattern has length {len(eps)}, expected {D}", D=D)
        if any(x not in (-1, 0, 1) for x in eps):
            raise InvalidPattern("entries must lie in {-1, 0, 1}")
        for m in range(D):
            if eps[m] != -eps[(D - m) % D]:
                raise InvalidPattern(f"ε_{m} != -ε_{(D - m) % D}", index=m)
        if not any(eps):
            raise InvalidPattern("pattern is identically zero (always so for D = 2)", D=D)

    @property
    def odd_support(self) -> bool:
        """ε_m = ±1 at odd m and 0 at even m."""
        return all((x != 0) == (m % 2 == 1) for m, x in enumerate(self.eps))

    def delta(self, m: int) -> int:
        return -2 * self.eps[m % self.D]

    def to_json(self) -> dict:
        return {"D": self.D, "eps": list(self.eps), "odd_support": self.odd_support}


@dataclass(frozen=True)
class SinePoly:
    """Σ_k c_k sin(k t)."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, coeffs: dict) -> "SinePoly":
        merged: dict[int, int] = {}
        for k, c in coeffs.items():
            k, c = int(k), int(c)
            if k < 0:
                k, c = -k, -c
            if k:
                merged[k] = merged.get(k, 0) + c
        return cls(tuple(sorted((k, c) for k, c in merged.items() if c)))

    def is_zero(self) -> bool:
        return not self.terms

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for k, c in self.terms:
            out += c * np.sin(k * t)
        return out

    def to_json(self) -> dict:
        return {"terms": [[k, c] for k, c in self.terms]}


def build_a(pattern: OddPattern) -> SinePoly:
    """a(t) = 2 Σ_{m=0}^{D/2} ε_m sin(m t)."""
    if not isinstance(pattern, OddPattern):
        raise InvalidPattern("expected an OddPattern")
    return SinePoly.of({m: 2 * pattern.eps[m] for m in range(pattern.D // 2 + 1)})


@dataclass(frozen=True, order=True)
class DiffTerm:
    m: int
    p: int
    delta: int


@dataclass(frozen=True)
class DifferenceSinePoly:
    """Σ δ_m (sin m t - sin((m - p_m D) t))."""

    D: int
    terms: tuple[DiffTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            if t.m <= 0 or t.p <= 0:
                raise ValueError("m and p_m must be positive")
            if abs(t.m) < abs(t.m - t.p * self.D):
                raise ValueError(f"|m| < |m - p_m D| for m={t.m}, p={t.p}")

    @classmethod
    def from_pattern(cls, pattern: OddPattern, mp: Sequence[tuple[int, int]]) -> "DifferenceSinePoly":
        return cls(pattern.D, tuple(sorted(DiffTerm(int(m), int(p), pattern.delta(m)) for m, p in mp)))

    def check_deltas(self, pattern: OddPattern) -> None:
        for t in self.terms:
            if t.delta != pattern.delta(t.m):
                raise DeltaMismatch(f"δ_{t.m} = {t.delta}, expected {pattern.delta(t.m)}", m=t.m)

    @property
    def p(self) -> int:
        return max((t.p for t in self.terms), default=0)

    def as_sine(self) -> SinePoly:
        out: dict[int, int] = {}
        for t in self.terms:
            out[t.m] = out.get(t.m, 0) + t.delta
            k = t.m - t.p * self.D
            out[k] = out.get(k, 0) - t.delta
        return SinePoly.of(out)

    def is_zero(self) -> bool:
        return self.as_sine().is_zero()

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        for x in self.terms:
            out += x.delta * (np.sin(x.m * t) - np.sin((x.m - x.p * self.D) * t))
        return out

    def to_json(self) -> dict:
        return {"D": self.D, "terms": [[t.m, t.p, t.delta] for t in self.terms]}


def _trig(coeffs: dict, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for k, c in coeffs.items():
        out += c * np.exp(1j * k * t)
    return out


@dataclass(frozen=True)
class CjDecomposition:
    """s(t) = Im Σ_j C_j(t) e^{i n_j t} with C_j stored as {frequency: coefficient}."""

    D: int
    p: int
    gap_factor: float
    anchors: tuple[int, ...]
    groups: tuple[tuple[DiffTerm, ...], ...]
    C: tuple[dict, ...]

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for C, n in zip(self.C, self.anchors):
            out += _trig(C, t) * np.exp(1j * n * t)
        return out.imag

    def C_values(self, j: int, t):
        return _trig(self.C[j], t)

    def max_frequency(self) -> int:
        return max((abs(k + n) for C, n in zip(self.C, self.anchors) for k in C), default=0)

    def scale_ratios(self) -> list[float]:
        """Anchor gaps n_{j+1} - n_j divided by p."""
        return [(b - a) / self.p for a, b in zip(self.anchors, self.anchors[1:])]

    def to_json(self) -> dict:
        return {"D": self.D, "p": self.p, "gap_factor": self.gap_factor,
                "anchors": list(self.anchors), "scale_ratios": self.scale_ratios(),
                "groups": [[[t.m, t.p, t.delta] for t in g] for g in self.groups],
                "C": [[[k, int(c)] for k, c in sorted(C.items())] for C in self.C]}


def anchor(m_star: int, p: int, D: int) -> int:
    """Largest multiple of D strictly below m* - pD."""
    return ((m_star - p * D - 1) // D) * D


def group_and_decompose(s: DifferenceSinePoly, gap_factor: float = DEFAULT_GAP_FACTOR,
                        check_points: int = 256) -> CjDecomposition:
    """Split terms where consecutive m differ by more than T·p and build each C_j."""
    D, p = s.D, s.p
    terms = sorted(s.terms, key=lambda x: x.m)
    groups: list[list[DiffTerm]] = []
    for t in terms:
        if groups and t.m - groups[-1][-1].m <= gap_factor * p:
            groups[-1].append(t)
        else:
            groups.append([t])
    anchors, Cs = [], []
    for g in groups:
        n = anchor(g[0].m, p, D)
        C: dict[int, int] = {}
        for t in g:
            C[t.m - n] = C.get(t.m - n, 0) + t.delta
            k = t.m - t.p * D - n
            C[k] = C.get(k, 0) - t.delta
        anchors.append(n)
        Cs.append({k: c for k, c in C.items() if c})
    dec = CjDecomposition(D, p, gap_factor, tuple(anchors), tuple(tuple(g) for g in groups), tuple(Cs))
    pts = np.linspace(0, 2 * np.pi, check_points, endpoint=False) + 0.1234
    err = float(np.max(np.abs(dec(pts) - s(pts)), initial=0.0))
    if err > 1e-10 * max(1, len(terms)):
        raise ArithmeticError(f"decomposition mismatch {err:.3g}")
    return dec


# --------------------------------------------------------------------------
# Exact second-derivative identity


@dataclass(frozen=True)
class ParsevalIdentity:
    lhs: int
    rhs: int
    lhs_numeric: float

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"lhs": str(self.lhs), "rhs": str(self.rhs), "lhs_numeric": self.lhs_numeric,
                "holds": self.holds}


def im_second_derivative(C: dict, n: int, t) -> np.ndarray:
    """(Im C)''(t) for C(t) = Σ c_k e^{ikt}; n is unused and kept for symmetry."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    for k, c in C.items():
        out += -c * k * k * np.sin(k * t)
    return out


def derivative_parseval(pattern: OddPattern, dec: CjDecomposition, j: int | None = None) -> ParsevalIdentity:
    """Σ_r a(γ_r)·(Im C_j)''(γ_r) versus 2D² Σ_{δ_m≠0} p_m(2m - 2n_j - p_m D).

    The left side equals (D/2)·Σ_r X_r Y_r with
    X_r = Σ_k ε_k (ζ^{kr} - ζ^{-kr}) over 1 ≤ k < D/2 and
    Y_r = Σ_m δ_m w_m (ζ^{mr} - ζ^{-mr}), w_m = p_m(2m - 2n_j - p_m D),
    and is evaluated exactly in Z[ζ_D].
    """
    D = pattern.D
    if dec.D != D:
        raise DeltaMismatch("pattern and decomposition use different D")
    if j is None:
        if not dec.groups:
            return ParsevalIdentity(0, 0, 0.0)
        j = 0
    group, n = dec.groups[j], dec.anchors[j]
    for t in group:
        if t.delta != pattern.delta(t.m):
            raise DeltaMismatch(f"δ_{t.m} = {t.delta}, expected {pattern.delta(t.m)}", m=t.m)
    total = np.zeros(D, dtype=object)
    for r in range(D):
        X = cyc.element([(k * r, e) for k in range(1, D // 2) if (e := pattern.eps[k])]
                        + [(-k * r, -e) for k in range(1, D // 2) if (e := pattern.eps[k])], D)
        terms = []
        for t in group:
            w = t.delta * t.p * (2 * t.m - 2 * n - t.p * D)
            terms += [(t.m * r, w), (-t.m * r, -w)]
        Y = cyc.element(terms, D)
        total = total + cyc.multiply(X, Y, D)
    lhs = Fraction(D * cyc.as_integer(total, D), 2)
    if lhs.denominator != 1:
        raise ArithmeticError("left side is not an integer")
    rhs = 2 * D * D * sum(t.p * (2 * t.m - 2 * n - t.p * D) for t in group if t.delta)
    gammas = 2 * np.pi * np.arange(D) / D
    a = build_a(pattern)
    numeric = float(np.sum(a(gammas) * im_second_derivative(dec.C[j], n, gammas)))
    return ParsevalIdentity(int(lhs), rhs, numeric)


# --------------------------------------------------------------------------
# κ-gap search and the local estimates around γ_r


@dataclass(frozen=True)
class KappaGap:
    gamma: float
    gap: float
    best_r: int | None
    a_at_r: float | None
    c2_at_r: float | None
    region: tuple[float, float]

    def to_json(self) -> dict:
        return {"gamma": self.gamma, "gap": self.gap, "best_r": self.best_r,
                "a_at_r": self.a_at_r, "c2_at_r": self.c2_at_r, "region": list(self.region)}


def best_r(a: SinePoly, s: DifferenceSinePoly, gap_factor: float = DEFAULT_GAP_FACTOR):
    """r maximising a(γ_r)·(Im C_1)''(γ_r); returns (r, a(γ_r), (Im C_1)''(γ_r))."""
    dec = group_and_decompose(s, gap_factor)
    if not dec.groups:
        return None, None, None
    D = s.D
    gammas = 2 * np.pi * np.arange(D) / D
    av = a(gammas)
    cv = im_second_derivative(dec.C[0], dec.anchors[0], gammas)
    r = int(np.argmax(av * cv))
    return r, float(av[r]), float(cv[r])


def kappa_gap_search(a: SinePoly, s1: DifferenceSinePoly, s2: DifferenceSinePoly,
                     region: str = "full", resolution: int = 1 << 14, c: float = 0.5,
                     gap_factor: float = DEFAULT_GAP_FACTOR) -> KappaGap:
    """Maximise |a + s1| - |a - s2| on a grid over a period or over I(c) near γ_r."""
    if s1.is_zero() and s2.is_zero():
        raise BothZero("s1 and s2 are both identically zero")
    D = s1.D if s1.terms else s2.D
    combined = DifferenceSinePoly(D, tuple(sorted(s1.terms + s2.terms, key=lambda x: x.m)))
    r, a_r, c2_r = best_r(a, combined, gap_factor)
    if region == "full":
        lo, hi = 0.0, 2 * np.pi
        t = lo + (hi - lo) * np.arange(resolution) / resolution
    elif region == "local":
        if r is None:
            raise BothZero("no terms to localise around")
        g = 2 * np.pi * r / D
        p = combined.p
        lo, hi = g - c / p, g + c / p
        t = lo + (hi - lo) * (np.arange(resolution) + 0.5) / resolution
    else:
        raise ValueError(f"unknown region {region!r}")
    av = a(t)
    gap = np.abs(av + s1(t)) - np.abs(av - s2(t))
    k = int(np.argmax(gap))
    return KappaGap(float(t[k]), float(gap[k]), r, a_r, c2_r, (float(lo), float(hi)))


@dataclass(frozen=True)
class TruncationCheck:
    sup: float
    pointwise_bound: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.sup <= self.pointwise_bound + 1e-12 and self.pointwise_bound <= self.bound + 1e-12

    def to_json(self) -> dict:
        return {"sup": self.sup, "pointwise_bound": self.pointwise_bound, "bound": self.bound,
                "holds": self.holds}


def truncation_bound_check(s: DifferenceSinePoly, c: float, p: int, r: int,
                           resolution: int = 4096) -> TruncationCheck:
    """sup of |s| on (γ_r - c/p, γ_r + c/p) against Σ|δ_m|·D·c (= 2|Λ|Dc when |δ| = 2).

    The intermediate bound Σ|δ_m|·2|sin(p_m D u/(2p))| is taken at |u| = c.
    """
    D = s.D
    g = 2 * np.pi * r / D
    u = c * (2 * (np.arange(resolution) + 0.5) / resolution - 1)
    sup = float(np.max(np.abs(s(g + u / p)), initial=0.0))
    point = sum(abs(t.delta) * 2 * min(1.0, abs(math.sin(t.p * D * c / (2 * p))))
                for t in s.terms)
    bound = sum(abs(t.delta) for t in s.terms) * D * c
    return TruncationCheck(sup, float(point), float(bound))


@dataclass(frozen=True)
class IntervalMoments:
    first: float
    second: float
    predicted_second: float
    panels: int

    def to_json(self) -> dict:
        return {"first": self.first, "second": self.second,
                "predicted_second": self.predicted_second, "panels": self.panels}


def interval_moments(dec: CjDecomposition, interval: tuple[float, float],
                     panels_per_period: int = 64) -> IntervalMoments:
    """Simpson quadrature of ∫_I s and ∫_I s² and the prediction |I|·½Σ_j|C_j(γ)|²."""
    lo, hi = map(float, interval)
    width = hi - lo
    fmax = max(dec.max_frequency(), 1)
    panels = max(64, int(math.ceil(panels_per_period * width * fmax / (2 * np.pi))))
    panels += panels % 2
    t = np.linspace(lo, hi, panels + 1)
    v = dec(t)
    gamma = 0.5 * (lo + hi)
    pred = width * 0.5 * sum(abs(complex(dec.C_values(j, np.array([gamma]))[0])) ** 2
                             for j in range(len(dec.C)))
    return IntervalMoments(float(simpson(v, x=t)), float(simpson(v * v, x=t)), float(pred), panels)


# --------------------------------------------------------------------------
# Brute-force probe of the κ(k) question


@dataclass(frozen=True)
class KappaProbe:
    k: int
    M: int
    resolution: int
    polynomials: int
    kappa: float
    witness: tuple[SinePoly, SinePoly]
    kappa_excluding_negation: float | None
    witness_excluding_negation: tuple[SinePoly, SinePoly] | None

    def to_json(self) -> dict:
        def pair(w):
            return None if w is None else [w[0].to_json(), w[1].to_json()]
        return {"k": self.k, "M": self.M, "resolution": self.resolution,
                "polynomials": self.polynomials, "kappa": self.kappa, "witness": pair(self.witness),
                "kappa_excluding_negation": self.kappa_excluding_negation,
                "witness_excluding_negation": pair(self.witness_excluding_negation)}


def sine_polys(k: int, M: int) -> list[SinePoly]:
    """All Σ_{n∈Λ} ±sin(n t) with 1 ≤ |Λ| ≤ k and Λ ⊂ {1..M}."""
    out = []
    for size in range(1, k + 1):
        for support in itertools.combinations(range(1, M + 1), size):
            for signs in itertools.product((1, -1), repeat=size):
                out.append(SinePoly(tuple(zip(support, signs))))
    return out


def _probe_rows(args):
    absV, negation, lo, hi = args
    best = (np.inf, -1, -1)
    best_ex = (np.inf, -1, -1)
    for i in range(lo, hi):
        gaps = np.max(absV[i] - absV, axis=1)
        gaps[i] = np.inf
        j = int(np.argmin(gaps))
        if gaps[j] < best[0]:
            best = (float(gaps[j]), i, j)
        gaps[negation[i]] = np.inf
        j = int(np.argmin(gaps))
        if gaps[j] < best_ex[0]:
            best_ex = (float(gaps[j]), i, j)
    return best, best_ex


def kappa_probe(k: int, M: int, resolution: int = 4096, jobs: int = 1,
                budget: int = PROBE_BUDGET) -> KappaProbe:
    """min over ordered distinct pairs of max_t (|s1(t)| - |s2(t)|), t ∈ [0, 2π).

    Pairs s2 = -s1 make the gap 0; the minimum over pairs excluding them is
    reported alongside.
    """
    if k > 3 or M > 30 or k < 1 or M < 1:
        raise BudgetExceeded("probe needs 1 ≤ k ≤ 3 and 1 ≤ M ≤ 30", k=k, M=M)
    polys = sine_polys(k, M)
    P = len(polys)
    cost = P * P * resolution
    if cost > budget:
        raise BudgetExceeded(f"{P}² pairs × {resolution} points exceeds budget {budget}",
                             polynomials=P, resolution=resolution, budget=budget)
    t = 2 * np.pi * np.arange(resolution) / resolution
    absV = np.abs(np.array([p(t) for p in polys]))
    index = {p.terms: i for i, p in enumerate(polys)}
    negation = [index[tuple((n, -c) for n, c in p.terms)] for p in polys]
    step = max(1, -(-P // max(jobs, 1)))
    shards = [(absV, negation, lo, min(lo + step, P)) for lo in range(0, P, step)]
    if jobs > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_probe_rows, shards))
    else:
        parts = [_probe_rows(s) for s in shards]
    best = min((b for b, _ in parts), key=lambda x: (x[0], x[1], x[2]))
    best_ex = min((b for _, b in parts), key=lambda x: (x[0], x[1], x[2]))
    ex = None if best_ex[1] < 0 or not np.isfinite(best_ex[0]) else best_ex
    return KappaProbe(k, M, resolution, P, best[0], (polys[best[1]], polys[best[2]]),
                      None if ex is None else ex[0],
                      None if ex is None else (polys[ex[1]], polys[ex[2]]))
