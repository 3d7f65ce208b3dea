"""Generalized trigonometric sums with real frequencies and their local limits.

Throughout, e(x) = exp(2πix) and angles θ are measured in turns.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import cyclotomic as cyc
from .errors import (BadSupport, HypothesisFails, NotCancellation, NotNormalized,
                     UntaggedFrequency)

INFINITELY_MANY = "InfinitelyMany"
INCONCLUSIVE = "Inconclusive"
RATIONAL, IRRATIONAL, UNTAGGED = "rational", "irrational", "untagged"
EQ_TOL = 1e-12


def e(x):
    return np.exp(2j * np.pi * np.asarray(x, dtype=float))


# --------------------------------------------------------------------------
# Frequencies and sums


@dataclass(frozen=True)
class Frequency:
    """A real frequency with an arithmetic tag.

    Irrational frequencies are affine in a declared irrational symbol ξ,
    ρ = q0 + q1·ξ, so relations such as ρ + ρ' = 1 are decided exactly.
    Distinct symbols are taken to be rationally independent together with 1.
    """

    kind: str
    q0: Fraction = Fraction(0)
    q1: Fraction = Fraction(0)
    symbol: str | None = None
    xi: float = 0.0
    raw: float | None = None

    @classmethod
    def rational(cls, p, q=1) -> "Frequency":
        return cls(RATIONAL, Fraction(p) / Fraction(q))

    @classmethod
    def irrational(cls, symbol: str, xi: float, q1=1, q0=0) -> "Frequency":
        if Fraction(q1) == 0:
            raise ValueError("irrational frequency needs q1 != 0")
        return cls(IRRATIONAL, Fraction(q0), Fraction(q1), symbol, float(xi))

    @classmethod
    def untagged(cls, value: float) -> "Frequency":
        return cls(UNTAGGED, raw=float(value))

    @property
    def value(self) -> float:
        if self.kind == UNTAGGED:
            return self.raw
        return float(self.q0) + float(self.q1) * self.xi

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    def sums_to_one(self, other: "Frequency") -> bool:
        if self.kind != IRRATIONAL or other.kind != IRRATIONAL or self.symbol != other.symbol:
            return False
        return self.q1 + other.q1 == 0 and self.q0 + other.q0 == 1

    def to_json(self) -> dict:
        if self.kind == RATIONAL:
            return {"rational": str(self.q0)}
        if self.kind == IRRATIONAL:
            return {"irrational": {"symbol": self.symbol, "value": self.xi,
                                   "q0": str(self.q0), "q1": str(self.q1)}}
        return {"untagged": self.raw}

    @classmethod
    def from_json(cls, obj) -> "Frequency":
        if isinstance(obj, (int, float)):
            return cls.untagged(obj)
        if "rational" in obj:
            return cls.rational(Fraction(str(obj["rational"])))
        if "irrational" in obj:
            d = obj["irrational"]
            return cls.irrational(d["symbol"], d["value"], Fraction(str(d.get("q1", 1))),
                                  Fraction(str(d.get("q0", 0))))
        return cls.untagged(obj["untagged"])


@dataclass(frozen=True)
class GeneralizedTrigSum:
    """H(u) = a_0 + Σ_j (a_j e(ρ_j u) + conj(a_j) e(-ρ_j u))."""

    a0: float
    amplitudes: tuple[complex, ...]
    frequencies: tuple[Frequency, ...]

    def __post_init__(self):
        if len(self.amplitudes) != len(self.frequencies):
            raise ValueError("amplitudes and frequencies differ in length")

    @classmethod
    def from_im(cls, b: Sequence[complex], freqs: Sequence[Frequency]) -> "GeneralizedTrigSum":
        """Convert H(u) = Im Σ_j b_j e(ρ_j u); zero frequencies feed a_0."""
        a0, amps, fr = 0.0, [], []
        for bj, f in zip(b, freqs):
            bj = complex(bj)
            if f.kind == RATIONAL and f.q0 == 0:
                a0 += bj.imag
            else:
                amps.append(bj / 2j)
                fr.append(f)
        return cls(a0, tuple(amps), tuple(fr))

    @property
    def max_frequency(self) -> float:
        return max((abs(f.value) for f in self.frequencies), default=0.0)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.full(u.shape, float(self.a0))
        for a, f in zip(self.amplitudes, self.frequencies):
            out += 2 * np.real(a * e(f.value * u))
        return out

    def derivative_values(self, u):
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape)
        for a, f in zip(self.amplitudes, self.frequencies):
            out += 2 * np.real(2j * np.pi * f.value * a * e(f.value * u))
        return out

    def to_json(self) -> dict:
        return {"a0": self.a0,
                "terms": [{"amplitude": [a.real, a.imag], "frequency": f.to_json()}
                          for a, f in zip(self.amplitudes, self.frequencies)]}

    @classmethod
    def from_json(cls, obj: dict) -> "GeneralizedTrigSum":
        amps = tuple(complex(*t["amplitude"]) if isinstance(t["amplitude"], list)
                     else complex(t["amplitude"]) for t in obj["terms"])
        freqs = tuple(Frequency.from_json(t["frequency"]) for t in obj["terms"])
        return cls(float(obj.get("a0", 0.0)), amps, freqs)


def eval(H: GeneralizedTrigSum, u):
    return H(u)


def _check_normalized(H: GeneralizedTrigSum) -> None:
    vals = [f.value for f in H.frequencies]
    if not vals:
        raise NotNormalized("no oscillating terms")
    last = H.frequencies[-1]
    if last.kind != RATIONAL or last.q0 != 1:
        raise NotNormalized("top frequency must be exactly 1")
    if vals[0] <= 0 or any(b <= a for a, b in zip(vals, vals[1:])):
        raise NotNormalized("frequencies must satisfy 0 < ρ_1 < ... < ρ_l = 1")
    if H.amplitudes[-1] == 0:
        raise NotNormalized("a_l must be nonzero")


def signchange_criterion(H: GeneralizedTrigSum) -> str:
    """InfinitelyMany when 2|a_l| > |a_0|, or 2|a_l| ≥ |a_0| with a middle a_j ≠ 0."""
    _check_normalized(H)
    lhs, rhs = 2 * abs(H.amplitudes[-1]), abs(H.a0)
    tol = EQ_TOL * max(1.0, rhs)
    if lhs > rhs + tol:
        return INFINITELY_MANY
    if lhs >= rhs - tol and any(a != 0 for a in H.amplitudes[:-1]):
        return INFINITELY_MANY
    return INCONCLUSIVE


def _sign_changes(values: np.ndarray) -> np.ndarray:
    """Indices k where the nonzero sign pattern flips on arrival at sample k."""
    s = np.sign(values)
    nz = np.flatnonzero(s)
    flips = nz[1:][s[nz[1:]] != s[nz[:-1]]]
    return flips


def count_changes(H: GeneralizedTrigSum, window: tuple[float, float], resolution: int) -> int:
    """Grid sign changes located in the half-open window [u0, u1).

    The grid has ``resolution`` steps across the window plus one sample before
    u0, so a sign change exactly at u0 is counted and one at u1 is not.
    """
    u0, u1 = map(float, window)
    if u1 <= u0:
        raise ValueError("empty window")
    if resolution < 64 * (u1 - u0) * H.max_frequency:
        raise ValueError("resolution below 64·width·max frequency")
    h = (u1 - u0) / resolution
    u = u0 + h * np.arange(-1, resolution)
    return int(_sign_changes(H(u)).size)


# --------------------------------------------------------------------------
# Second moments along integer shifts


@dataclass(frozen=True)
class WeylMoments:
    mean: float
    second_moment: float
    predicted_irrational: float
    predicted_total: float
    lambda1: tuple[tuple[int, int], ...]
    lambda2: tuple[int, ...]

    def to_json(self) -> dict:
        return {"mean": self.mean, "second_moment": self.second_moment,
                "predicted_irrational": self.predicted_irrational,
                "predicted_total": self.predicted_total,
                "lambda1": [list(p) for p in self.lambda1], "lambda2": list(self.lambda2)}


def _require_tags(H: GeneralizedTrigSum) -> None:
    for j, f in enumerate(H.frequencies):
        if f.kind == UNTAGGED:
            raise UntaggedFrequency(f"term {j} has an untagged frequency", index=j)


def pair_sets(H: GeneralizedTrigSum) -> tuple[list[tuple[int, int]], list[int]]:
    """Split irrational terms into pairs with ρ + ρ' = 1 and the rest."""
    _require_tags(H)
    irr = [j for j, f in enumerate(H.frequencies) if f.kind == IRRATIONAL]
    used, pairs = set(), []
    for i, j in enumerate(irr):
        if j in used:
            continue
        for k in irr[i + 1:]:
            if k not in used and H.frequencies[j].sums_to_one(H.frequencies[k]):
                pairs.append((j, k))
                used.update((j, k))
                break
    return pairs, [j for j in irr if j not in used]


def rational_part(H: GeneralizedTrigSum) -> tuple[GeneralizedTrigSum, int]:
    """The rational-frequency part w_1 and its period p (lcm of denominators)."""
    _require_tags(H)
    idx = [j for j, f in enumerate(H.frequencies) if f.is_rational]
    period = 1
    for j in idx:
        period = math.lcm(period, H.frequencies[j].q0.denominator)
    w1 = GeneralizedTrigSum(H.a0, tuple(H.amplitudes[j] for j in idx),
                            tuple(H.frequencies[j] for j in idx))
    return w1, period


def weyl_moments(H: GeneralizedTrigSum, theta: float, n: int) -> WeylMoments:
    """Empirical first and second moments of H(θ+m), m = 1..n, and their limits.

    For the irrational part the limiting second moment is
    2·(Σ_{Λ2}|a_j|² + Σ_{Λ1}|a_j e(θ/2) + conj(a_j') e(-θ/2)|²); the total adds
    the mean of w_1(θ+m)² over one period of w_1 (cross terms average out).
    """
    pairs, rest = pair_sets(H)
    vals = H(theta + np.arange(1, n + 1))
    irr = 2 * sum(abs(H.amplitudes[j]) ** 2 for j in rest)
    for j, k in pairs:
        z = H.amplitudes[j] * e(theta / 2) + np.conj(H.amplitudes[k]) * e(-theta / 2)
        irr += 2 * abs(z) ** 2
    w1, p = rational_part(H)
    periodic = float(np.mean(w1(theta + np.arange(p)) ** 2))
    return WeylMoments(float(vals.mean()), float(np.mean(vals ** 2)), float(irr),
                       float(irr + periodic), tuple(pairs), tuple(rest))


@dataclass(frozen=True)
class Drift:
    period: int
    w1_value: float
    slope: float

    def to_json(self) -> dict:
        return {"period": self.period, "w1_value": self.w1_value, "slope": self.slope}


def periodic_drift(H: GeneralizedTrigSum, theta: float, n: int) -> Drift:
    """Slope (1/n)·Σ_{m≤n} H(θ + p·m) next to w_1(θ), p the period of w_1."""
    w1, p = rational_part(H)
    vals = H(theta + p * np.arange(1, n + 1))
    return Drift(p, float(w1(np.array([theta]))[0]), float(vals.sum() / n))


# --------------------------------------------------------------------------
# Families of block sums and their local profiles


@dataclass(frozen=True)
class SparseTrig:
    """B(θ) = Σ_k c_k e(f_k θ) with integer frequencies f_k."""

    freqs: tuple[int, ...]
    coeffs: tuple[complex, ...]

    @classmethod
    def of(cls, terms: dict) -> "SparseTrig":
        items = sorted((int(k), complex(v)) for k, v in terms.items() if v != 0)
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def dense(cls, coeffs: Sequence[complex], offset: int = 0) -> "SparseTrig":
        return cls.of({k + offset: c for k, c in enumerate(coeffs)})

    @property
    def degree(self) -> int:
        return max((abs(k) for k in self.freqs), default=0)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_dict(self) -> dict:
        out = {}
        for k, c in zip(self.freqs, self.coeffs):
            out[k] = out.get(k, 0) + c
        return {k: c for k, c in out.items() if c != 0}

    def __neg__(self) -> "SparseTrig":
        return SparseTrig(self.freqs, tuple(-c for c in self.coeffs))

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for k, c in zip(self.freqs, self.coeffs):
            out += c * e(k * theta)
        return out

    def to_json(self) -> dict:
        return {"freqs": list(self.freqs),
                "coeffs": [[complex(c).real, complex(c).imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "SparseTrig":
        def num(c):
            return complex(*c) if isinstance(c, list) else complex(c)
        if isinstance(obj, list):
            return cls.dense([num(c) for c in obj])
        return cls.of(dict(zip(obj["freqs"], map(num, obj["coeffs"]))))


@dataclass(frozen=True)
class FamilyInstance:
    N: int
    blocks: tuple[SparseTrig, ...]
    anchors: tuple[float, ...]

    @property
    def degree_bound(self) -> int:
        return max(b.degree for b in self.blocks)

    def __call__(self, theta):
        """H_N(θ) = Im Σ_j B_j(θ) e(r_j θ)."""
        theta = np.asarray(theta, dtype=float)
        total = np.zeros(theta.shape, dtype=complex)
        for B, r in zip(self.blocks, self.anchors):
            total += B(theta) * e(r * theta)
        return total.imag


@dataclass(frozen=True)
class FamilySpec:
    """A family N ↦ (B_j^{(N)}, r_j^{(N)}) with target ratios ρ_j = lim r_j/N."""

    rhos: tuple[float, ...]
    generator: Callable[[int], tuple[Sequence[SparseTrig], Sequence[float]]]
    name: str = "family"

    def at(self, N: int) -> FamilyInstance:
        blocks, anchors = self.generator(N)
        if len(blocks) != len(self.rhos) or len(anchors) != len(self.rhos):
            raise ValueError("generator must return one block and anchor per ρ_j")
        return FamilyInstance(N, tuple(blocks), tuple(float(r) for r in anchors))


@dataclass(frozen=True)
class LocalProfile:
    N: int
    gamma: float
    b: tuple[complex, ...]
    sup_error: float
    degree_bound: int

    def to_json(self) -> dict:
        return {"N": self.N, "gamma": self.gamma, "sup_error": self.sup_error,
                "degree_bound": self.degree_bound,
                "b": [[complex(x).real, complex(x).imag] for x in self.b]}


def local_profile(F: FamilySpec, N: int, gamma: float, C: float, grid: int = 2001) -> LocalProfile:
    """Compare H_N(γ + u/N) with Im Σ_j b_j e(ρ_j u) on an open u-grid in (-C, C)."""
    inst = F.at(N)
    b = tuple(complex(B(gamma) * e(r * gamma)) for B, r in zip(inst.blocks, inst.anchors))
    u = -C + (np.arange(grid) + 0.5) * (2 * C / grid)
    exact = inst(gamma + u / N)
    model = np.zeros(u.shape, dtype=complex)
    for bj, rho in zip(b, F.rhos):
        model += bj * e(rho * u)
    err = float(np.max(np.abs(exact - model.imag)))
    return LocalProfile(N, float(gamma), b, err, inst.degree_bound)


# --------------------------------------------------------------------------
# Oscillation of the large-scale function f_N


def block_anchors(rhos: Sequence[float], D: int, N: int) -> list[int]:
    """r_0 = 0 and r_j = largest multiple of D in the open interval (ρ_{j-1}N, ρ_j N)."""
    out = [0]
    for lo, hi in zip(rhos, rhos[1:]):
        r = math.ceil(hi * N / D - 1) * D
        if r <= lo * N:
            raise ValueError(f"no multiple of D in ({lo * N}, {hi * N})")
        out.append(r)
    return out


def _geometric(theta: np.ndarray, a: int, b: int, D: int) -> np.ndarray:
    """Σ_{k=a/D}^{b/D-1} e(θkD) = (e(θb) - e(θa)) / (e(θD) - 1), with its limit."""
    x = np.asarray(theta, dtype=float) * D
    frac = x - np.round(x)
    den = np.expm1(2j * np.pi * frac)
    num = e(theta * a) * np.expm1(2j * np.pi * np.asarray(theta, dtype=float) * (b - a))
    singular = np.abs(frac) < 1e-13
    safe = np.where(singular, 1.0, den)
    return np.where(singular, e(theta * a) * (b - a) / D, num / safe)


def f_N(blocks: Sequence[SparseTrig], anchors: Sequence[int], D: int, theta) -> np.ndarray:
    """Re( (e(θD) - 1)^{-1} Σ_j B_j(θ)(e(θ r_j) - e(θ r_{j-1})) )."""
    theta = np.asarray(theta, dtype=float)
    total = np.zeros(theta.shape, dtype=complex)
    for j, B in enumerate(blocks, start=1):
        total += B(theta) * _geometric(theta, anchors[j - 1], anchors[j], D)
    return total.real


@dataclass(frozen=True)
class HypothesisScan:
    m: int
    lhs: float
    rhs: float
    equality: bool
    holds: bool

    def to_json(self) -> dict:
        return {"m": self.m, "abs_B_l": self.lhs, "abs_Im_B_1": self.rhs,
                "equality": self.equality, "holds": self.holds}


def scan_hypothesis(blocks: Sequence[SparseTrig], D: int) -> list[HypothesisScan]:
    """Check |B_l(m/D)| ≥ |Im B_1(m/D)|, with the refinement on equality, for m mod D."""
    out = []
    for m in range(D):
        vals = [complex(B(m / D)) for B in blocks]
        lhs, rhs = abs(vals[-1]), abs(vals[0].imag)
        tol = EQ_TOL * max(1.0, lhs, rhs)
        eq = abs(lhs - rhs) <= tol
        differs = any(abs(vals[j + 1] - vals[j]) > tol for j in range(len(vals) - 1))
        holds = (lhs > rhs + tol) or (eq and differs)
        out.append(HypothesisScan(m, lhs, rhs, eq, holds))
    return out


@dataclass(frozen=True)
class Oscillation:
    N: int
    m: int
    level: float
    window: tuple[float, float]
    oscillations: int
    alternations: int
    scan: tuple[HypothesisScan, ...]

    def to_json(self) -> dict:
        return {"N": self.N, "m": self.m, "level": self.level, "window": list(self.window),
                "oscillations": self.oscillations, "alternations": self.alternations,
                "scan": [s.to_json() for s in self.scan]}


def _level_visits(values: np.ndarray, level: float) -> list[int]:
    """Alternating sequence of visits (+1 above level, -1 below -level)."""
    visits: list[int] = []
    for v in values:
        s = 1 if v > level else -1 if v < -level else 0
        if s and (not visits or visits[-1] != s):
            visits.append(s)
    return visits


def level_oscillation(blocks: Sequence[SparseTrig], rhos: Sequence[float], D: int, N: int,
                      c: float, C: float, per_unit: int = 64) -> Oscillation:
    """Count oscillations of f_N between -cN and cN on (m/D - C/N, m/D + C/N).

    m is the residue satisfying the hypothesis with the largest margin
    |B_l(m/D)| - |Im B_1(m/D)|.  An oscillation is a crossing from below -cN
    to above cN, counted from the first visit below -cN.
    """
    if len(blocks) != len(rhos) - 1:
        raise ValueError("need one block per interval (ρ_{j-1}, ρ_j)")
    scan = scan_hypothesis(blocks, D)
    ok = [s for s in scan if s.holds]
    if not ok:
        raise HypothesisFails("no residue m satisfies the hypothesis",
                              scan=[s.to_json() for s in scan])
    best = max(ok, key=lambda s: (s.lhs - s.rhs, -s.m))
    anchors = block_anchors(rhos, D, N)
    steps = int(2 * C * per_unit)
    u = -C + (np.arange(steps) + 0.5) * (2 * C / steps)
    vals = f_N(blocks, anchors, D, best.m / D + u / N)
    level = c * N
    visits = _level_visits(vals, level)
    alternations = max(len(visits) - 1, 0)
    first_low = visits.index(-1) if -1 in visits else len(visits)
    oscillations = (len(visits) - first_low) // 2
    window = (best.m / D - C / N, best.m / D + C / N)
    return Oscillation(N, best.m, level, window, oscillations, alternations, tuple(scan))


# --------------------------------------------------------------------------
# Cancellation case


@dataclass(frozen=True)
class CancellationReport:
    N: int
    roots: int
    max_abs: float

    def to_json(self) -> dict:
        return {"N": self.N, "roots": self.roots, "max_abs": self.max_abs}


def cancellation_roots(F: FamilySpec, N: int, tol: float = 1e-9) -> CancellationReport:
    """Verify G_N(n/N) = 0 for n = 1..N when B_l = -B_0 and middle blocks vanish.

    G_N(θ) = Im Σ_j B_j(θ) e(ρ_j N θ).
    """
    inst = F.at(N)
    B0, Bl = inst.blocks[0], inst.blocks[-1]
    if (-B0).as_dict() != Bl.as_dict():
        raise NotCancellation("B_l is not -B_0 coefficient-wise")
    if any(not B.is_zero() for B in inst.blocks[1:-1]):
        raise NotCancellation("a middle block is nonzero")
    theta = np.arange(1, N + 1) / N
    G = np.zeros(N, dtype=complex)
    for B, rho in zip(inst.blocks, F.rhos):
        G += B(theta) * e(rho * N * theta)
    worst = float(np.max(np.abs(G.imag)))
    if worst > tol:
        raise NotCancellation(f"|G_N(n/N)| reaches {worst:.3g}", max_abs=worst)
    return CancellationReport(N, N, worst)


# --------------------------------------------------------------------------
# Parseval identities for ±1 patterns


EVEN, ODD = "even", "odd"


@dataclass(frozen=True)
class ParsevalCheck:
    D: int
    case: str
    total: int
    via_coefficients: int
    target: Fraction
    im_total: Fraction
    im_bound: Fraction

    @property
    def holds(self) -> bool:
        return self.total == self.via_coefficients == self.target and self.im_total <= self.im_bound

    def to_json(self) -> dict:
        return {"D": self.D, "case": self.case, "total": self.total,
                "via_coefficients": self.via_coefficients, "target": str(self.target),
                "im_total": str(self.im_total), "im_bound": str(self.im_bound),
                "holds": self.holds}


def parseval_pattern_checks(eps: Sequence[int], case: str = EVEN) -> ParsevalCheck:
    """Exact Σ_m |A(ζ^m)|² and Σ_m |Im A(ζ^m)|² for A(z) = Σ ε_k z^k, ζ = e(1/D).

    Both sums are evaluated in Z[ζ_D] (reduced modulo the cyclotomic
    polynomial) and compared with D·Σ ε_k² and the target D² or D²/2.
    """
    eps = [int(x) for x in eps]
    D = len(eps)
    if D == 0:
        raise BadSupport("empty pattern")
    if case == EVEN:
        if any(x not in (-1, 1) for x in eps):
            raise BadSupport("even case needs every ε_m = ±1")
        target, im_bound = Fraction(D * D), Fraction(D * (D - 1))
    elif case == ODD:
        if D % 2:
            raise BadSupport("odd case needs D even", D=D)
        for k, x in enumerate(eps):
            if (k % 2 == 1 and x not in (-1, 1)) or (k % 2 == 0 and x != 0):
                raise BadSupport(f"odd case: bad ε_{k} = {x}", index=k)
        target, im_bound = Fraction(D * D, 2), Fraction(D * D, 2)
    else:
        raise ValueError(f"unknown case {case!r}")
    sq = np.zeros(D, dtype=object)
    diff_sq = np.zeros(D, dtype=object)
    for m in range(D):
        A = cyc.element(((k * m, x) for k, x in enumerate(eps)), D)
        A_bar = cyc.element(((-k * m, x) for k, x in enumerate(eps)), D)
        sq = sq + cyc.multiply(A, A_bar, D)
        d = A - A_bar
        diff_sq = diff_sq + cyc.multiply(d, d, D)
    total = cyc.as_integer(sq, D)
    # (Im A)² = -(A - conj A)²/4
    im_total = Fraction(-cyc.as_integer(diff_sq, D), 4)
    return ParsevalCheck(D, case, total, D * sum(x * x for x in eps), target, im_total, im_bound)
