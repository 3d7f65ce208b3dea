"""Reduced-size invariant suite run by ``littlewood selftest``."""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .asymptotics import parseval_pattern_checks
from .oddcase import (DifferenceSinePoly, OddPattern, derivative_parseval, group_and_decompose,
                      truncation_bound_check)
from .polycore import family_g, random_reciprocal
from .rootcount import (cosine_census, count_unimodular, oracle_sign_changes,
                        unimodular_via_monomial)
from .spectral import (HAS_SIGN_CHANGE, autocorrelation, coefficient_sign_change_test,
                       fejer_riesz_factor, find_sign_change)
from .structure import decompose, min_blocks_dp


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _census_vs_oracle(rng):
    for _ in range(60):
        P = random_reciprocal(int(rng.integers(1, 41)), rng)
        z, g = count_unimodular(P).odd_multiplicity_count, oracle_sign_changes(P, 1 << 14)
        if z != g:
            return False, f"{P.signs}: Sturm {z} vs grid {g}"
    return True, "60 polynomials agree"


def _census_vs_monomial(rng):
    for _ in range(20):
        P = random_reciprocal(int(rng.integers(1, 21)), rng)
        a, b = count_unimodular(P), unimodular_via_monomial(P)
        if a != b:
            return False, f"{P.signs}: {a} vs {b}"
    return True, "20 polynomials agree"


def _backends(rng):
    if "compiled" not in kernels.available():
        return True, "compiled backend unavailable; skipped"
    for _ in range(20):
        A = [int(x) for x in rng.integers(-3, 4, size=int(rng.integers(1, 30)))]
        if not any(A):
            continue
        with kernels.use_backend("python"):
            ref = kernels.sturm_tower(A)
        with kernels.use_backend("compiled"):
            got = kernels.sturm_tower(A)
        if ref != got:
            return False, f"towers differ for {A}"
    return True, "20 towers identical"


def _family_g(rng):
    for N in range(0, 31):
        d = cosine_census(family_g(N)).distinct
        if d > 2:
            return False, f"g_{N} has {d} roots"
    return True, "g_N, N ≤ 30, at most 2 roots"


def _parseval(rng):
    for _ in range(50):
        D = int(rng.integers(1, 17))
        eps = [int(x) for x in rng.choice([-1, 1], size=D)]
        if not parseval_pattern_checks(eps, "even").holds:
            return False, f"even {eps}"
        D2 = 2 * int(rng.integers(1, 9))
        eps = [int(rng.choice([-1, 1])) if m % 2 else 0 for m in range(D2)]
        if not parseval_pattern_checks(eps, "odd").holds:
            return False, f"odd {eps}"
    return True, "100 patterns exact"


def _fejer_riesz(rng):
    worst = 0.0
    for _ in range(20):
        N = int(rng.integers(0, 17))
        d = rng.uniform(-1, 1, N + 1) + 1j * rng.uniform(-1, 1, N + 1)
        worst = max(worst, fejer_riesz_factor(autocorrelation(d)).residual)
    return worst <= 1e-8, f"max residual {worst:.2e}"


def _sign_change_soundness(rng):
    for _ in range(100):
        N = int(rng.integers(1, 17))
        c = [int(x) for x in rng.integers(-5, 6, size=N + 1)]
        c[-1] = c[-1] or 1
        if coefficient_sign_change_test(c) == HAS_SIGN_CHANGE and find_sign_change(c, 1 << 12) is None:
            return False, f"no certificate for {c}"
    return True, "every positive certified"


def _structure(rng):
    for _ in range(50):
        n, D = int(rng.integers(1, 25)), int(rng.integers(1, 6))
        c = [int(x) for x in rng.choice([-1, 1], size=n)]
        for aligned in (True, False):
            if decompose(c, D, aligned).L != min_blocks_dp(c, D, aligned):
                return False, f"{c} D={D} aligned={aligned}"
    return True, "greedy = DP on 50 instances"


def _random_odd_pattern(rng) -> OddPattern:
    D = int(rng.choice([4, 8, 12]))
    eps = [0] * D
    for m in range(1, D // 2):
        eps[m] = int(rng.choice([-1, 0, 1]))
        eps[D - m] = -eps[m]
    if not any(eps):
        eps[1], eps[D - 1] = 1, -1
    return OddPattern(D, tuple(eps))


def _random_terms(rng, D: int, count: int) -> list[tuple[int, int]]:
    out = []
    for _ in range(count):
        p = int(rng.integers(1, 11))
        out.append((int(rng.integers(p * D // 2 + 1, p * D // 2 + 60)), p))
    return out


def _odd_identity(rng):
    for _ in range(20):
        pat = _random_odd_pattern(rng)
        s = DifferenceSinePoly.from_pattern(pat, _random_terms(rng, pat.D, int(rng.integers(1, 6))))
        dec = group_and_decompose(s)
        for j in range(len(dec.groups)):
            r = derivative_parseval(pat, dec, j)
            if not r.holds:
                return False, f"lhs {r.lhs} != rhs {r.rhs}"
        gammas = 2 * np.pi * np.arange(pat.D) / pat.D
        if np.max(np.abs(s(gammas))) > 1e-12 * max(1, len(s.terms)) * 1e3:
            return False, "difference polynomial does not vanish at γ_r"
    return True, "20 instances exact"


def _truncation(rng):
    for _ in range(50):
        pat = _random_odd_pattern(rng)
        s = DifferenceSinePoly.from_pattern(pat, _random_terms(rng, pat.D, int(rng.integers(1, 6))))
        c = float(rng.choice([0.2, 0.1, 0.05]))
        if not truncation_bound_check(s, c, s.p, int(rng.integers(0, pat.D))).holds:
            return False, f"bound violated for {s.terms}"
    return True, "50 instances within bound"


CHECKS: list[tuple[str, Callable]] = [
    ("census_vs_grid_oracle", _census_vs_oracle),
    ("census_vs_monomial_route", _census_vs_monomial),
    ("kernel_backends_agree", _backends),
    ("family_g_two_roots", _family_g),
    ("parseval_patterns", _parseval),
    ("fejer_riesz_round_trip", _fejer_riesz),
    ("sign_change_soundness", _sign_change_soundness),
    ("structure_greedy_vs_dp", _structure),
    ("odd_derivative_identity", _odd_identity),
    ("truncation_bound", _truncation),
]


def _corrupted_tower(original):
    def tower(coeffs):
        levels = original(coeffs)
        if not levels:
            return levels
        v_m1, v_0, v_1, z_m1, z_0, z_1 = levels[0]
        return [(v_m1 + 1, v_0, v_1, z_m1, z_0, z_1)] + list(levels[1:])
    return tower


@contextmanager
def injected_sturm_fault():
    """Temporarily corrupt the Sturm kernel so one extra root is reported."""
    original = kernels.sturm_tower
    kernels.sturm_tower = _corrupted_tower(original)
    try:
        yield
    finally:
        kernels.sturm_tower = original


def run(seed: int = 0, inject_fault: bool = False) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        rng = np.random.default_rng(seed)
        try:
            if inject_fault:
                with injected_sturm_fault():
                    ok, detail = fn(rng)
            else:
                ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, reported not raised
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
