"""Exact root counting on the unit circle and on real intervals.

Two independent exact routes are provided:

* :func:`count_unimodular` / :func:`cosine_census` work directly on the
  cosine coefficients, which are the Chebyshev-basis coefficients of
  F(x) with F(cos θ) = f(θ).  Sturm chains and repeated gcds are computed in
  the Chebyshev basis by the kernel in :mod:`littlewood.kernels`.
* :func:`count_real_roots` works in the monomial basis with square-free
  decomposition and rational bisection.

:func:`grid_sign_change_oracle` is a floating-point cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from . import kernels
from ._pykernels import primitive, trim
from .errors import NotReciprocal, ZeroPolynomial
from .polycore import (PARITY_ODD, CosinePoly, IntPoly, LittlewoodPoly,
                       cosine_coefficients, to_cosine)


@dataclass(frozen=True)
class ZCount:
    """Root census on the unit circle (or on a period [0, 2π) for θ)."""

    distinct: int
    with_multiplicity: int
    at_plus_one: int
    at_minus_one: int
    odd_multiplicity_count: int

    def to_json(self, degree: int | None = None, signs: str | None = None) -> dict:
        out = {"distinct": self.distinct, "mult": self.with_multiplicity,
               "z1": self.at_plus_one, "zm1": self.at_minus_one,
               "odd": self.odd_multiplicity_count}
        if degree is not None:
            out = {"degree": degree, "signs": signs, **out}
        return out


@dataclass(frozen=True)
class RealRoot:
    """A real root isolated in the closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction
    multiplicity: int

    @property
    def exact(self) -> bool:
        return self.lo == self.hi


# ---------------------------------------------------------------- Chebyshev route

def chebyshev_transform(f: CosinePoly) -> IntPoly:
    """Monomial F with F(cos θ) = f(θ), from T_{n+1} = 2x T_n - T_{n-1}."""
    out = [0] * max(len(f.coeffs), 1)
    t_prev, t_cur = [1], [1]
    for n, a in enumerate(f.coeffs):
        if n == 1:
            t_prev, t_cur = t_cur, [0, 1]
        elif n > 1:
            nxt = [0] + [2 * c for c in t_cur]
            for k, c in enumerate(t_prev):
                nxt[k] -= c
            t_prev, t_cur = t_cur, nxt
        if a:
            for k, c in enumerate(t_cur):
                out[k] += a * c
    return IntPoly(tuple(out))


def _cheb_derivative_at(A: Sequence[int], k: int, x: int) -> int:
    """F^{(k)}(x) for x = ±1, using T_n^{(k)}(1) = Π_{j<k} (n² - j²)/(2j + 1)."""
    total = Fraction(0)
    for n, a in enumerate(A):
        if not a or n < k:
            continue
        v = Fraction(1)
        for j in range(k):
            v *= Fraction(n * n - j * j, 2 * j + 1)
        if x == -1 and (n + k) % 2:
            v = -v
        total += a * v
    assert total.denominator == 1
    return int(total)


def _cheb_endpoint_multiplicity(A: Sequence[int], x: int) -> int:
    k = 0
    while _cheb_derivative_at(A, k, x) == 0:
        k += 1
    return k


def cheb_divide_linear(A: Sequence[int], c: int) -> list[int]:
    """Primitive integer Chebyshev coefficients of F/(x - c); must divide exactly.

    Uses x·T_k = (T_{k+1} + T_{k-1})/2 and x·T_0 = T_1, solved top-down.
    """
    m = len(A) - 1
    if m < 1:
        raise ValueError("cannot divide a constant")
    f = [Fraction(a) for a in A]
    g = [Fraction(0)] * (m + 1)
    if m == 1:
        g[0] = f[1]
    else:
        g[m - 1] = 2 * f[m]
        for j in range(m - 1, 1, -1):
            g[j - 1] = 2 * (f[j] + c * g[j]) - g[j + 1]
        g[0] = f[1] - g[2] / 2 + c * g[1]
    # constant term of (x - c)G must reproduce f_0
    if g[1] / 2 - c * g[0] != f[0]:
        raise ArithmeticError("x - c does not divide F")
    g = g[:m]
    den = 1
    for v in g:
        den = den * v.denominator // gcd(den, v.denominator)
    return primitive(trim([int(v * den) for v in g]))


def _interior_counts(A: Sequence[int]) -> list[int]:
    """Distinct roots in (-1, 1) of each repeated-gcd level of F = Σ A_n T_n.

    F must not vanish at ±1.
    """
    counts = []
    for v_m1, _, v_1, z_m1, _, z_1 in kernels.sturm_tower(A):
        if z_m1 or z_1:
            raise ArithmeticError("endpoint root reached the interior counter")
        counts.append(v_m1 - v_1)
    return counts


def _census(interior: list[int], mult_plus: int, mult_minus: int) -> ZCount:
    d0 = interior[0] if interior else 0
    return ZCount(
        distinct=2 * d0 + (mult_plus > 0) + (mult_minus > 0),
        with_multiplicity=2 * sum(interior) + mult_plus + mult_minus,
        at_plus_one=mult_plus,
        at_minus_one=mult_minus,
        odd_multiplicity_count=2 * sum((-1) ** k * d for k, d in enumerate(interior))
        + mult_plus % 2 + mult_minus % 2,
    )


def cosine_census(f: CosinePoly) -> ZCount:
    """Census of the roots of f(θ) on [0, 2π).

    ``at_plus_one`` and ``at_minus_one`` are the multiplicities of the roots
    at θ = 0 and θ = π as functions of θ (twice the multiplicity in x).
    """
    A = list(f.coeffs)
    if not A:
        raise ZeroPolynomial("zero cosine polynomial")
    k_plus = _cheb_endpoint_multiplicity(A, 1)
    k_minus = _cheb_endpoint_multiplicity(A, -1)
    for _ in range(k_plus):
        A = cheb_divide_linear(A, 1)
    for _ in range(k_minus):
        A = cheb_divide_linear(A, -1)
    return _census(_interior_counts(A), 2 * k_plus, 2 * k_minus)


def _divide_by_linear(c: list[int], root: int) -> tuple[list[int], int]:
    """Synthetic division by (z - root); returns quotient and remainder."""
    q = [0] * (len(c) - 1)
    acc = 0
    for i in range(len(c) - 1, 0, -1):
        acc = acc * root + c[i]
        q[i - 1] = acc
    return q, acc * root + c[0]


def _strip_root(c: list[int], root: int) -> tuple[list[int], int]:
    k = 0
    while len(c) > 1:
        q, r = _divide_by_linear(c, root)
        if r != 0:
            break
        c, k = q, k + 1
    return c, k


def count_unimodular(P: IntPoly | LittlewoodPoly) -> ZCount:
    """Exact census of the roots of a reciprocal integer polynomial on |z| = 1."""
    c = list(P.coeffs)
    if not c or not any(c):
        raise ZeroPolynomial("zero polynomial")
    if c != c[::-1]:
        raise NotReciprocal("coefficients are not palindromic")
    # The endpoint factors are palindromic with the right parities, so the
    # quotient is palindromic of even degree with no root at ±1.
    c, m_plus = _strip_root(c, 1)
    c, m_minus = _strip_root(c, -1)
    if len(c) == 1:
        return _census([], m_plus, m_minus)
    A, parity = cosine_coefficients(c)
    assert parity != PARITY_ODD
    return _census(_interior_counts(A), m_plus, m_minus)


def count_signs(signs: str) -> ZCount:
    from .polycore import parse_signs

    return count_unimodular(parse_signs(signs))


# ---------------------------------------------------------------- monomial route

def _mono_prem(A: list[int], B: list[int]) -> list[int]:
    """Primitive pseudo-remainder with a positive multiplier."""
    A = list(A)
    db = len(B) - 1
    lb = B[-1]
    while A and len(A) - 1 >= db:
        k = len(A) - 1 - db
        la = A[-1]
        g = gcd(lb, la)
        mb, ml = abs(lb) // g, la // g
        if lb < 0:
            ml = -ml
        A = [mb * a for a in A]
        for j, b in enumerate(B):
            A[j + k] -= ml * b
        A = primitive(trim(A))
    return A


def _mono_derivative(A: list[int]) -> list[int]:
    return trim([k * a for k, a in enumerate(A)][1:])


def _mono_gcd(A: list[int], B: list[int]) -> list[int]:
    A, B = primitive(trim(list(A))), primitive(trim(list(B)))
    while B:
        A, B = B, _mono_prem(A, B)
    if A and A[-1] < 0:
        A = [-a for a in A]
    return A


def _mono_divexact(A: list[int], B: list[int]) -> list[int]:
    """Primitive integer multiple of A/B (B must divide A over Q)."""
    rem = [Fraction(a) for a in A]
    q = [Fraction(0)] * (len(A) - len(B) + 1)
    for k in range(len(q) - 1, -1, -1):
        coef = rem[k + len(B) - 1] / B[-1]
        q[k] = coef
        for j, b in enumerate(B):
            rem[j + k] -= coef * b
    if any(rem):
        raise ArithmeticError("inexact division")
    den = 1
    for v in q:
        den = den * v.denominator // gcd(den, v.denominator)
    return primitive(trim([int(v * den) for v in q]))


def _squarefree_factors(F: list[int]) -> list[tuple[list[int], int]]:
    """F = c·Π f_i^i with f_i square-free and pairwise coprime.

    With G_0 = F, G_k = gcd(G_{k-1}, G_{k-1}') and S_k = G_k / G_{k+1}, the
    roots of S_k are those of multiplicity > k, so f_i = S_{i-1} / S_i.
    Every step is scale-invariant, which keeps primitive parts safe.
    """
    tower = [primitive(trim(list(F)))]
    while len(tower[-1]) > 1:
        tower.append(_mono_gcd(tower[-1], _mono_derivative(tower[-1])))
    radicals = [_mono_divexact(tower[k], tower[k + 1]) for k in range(len(tower) - 1)]
    radicals.append([1])
    out = []
    for i in range(1, len(radicals)):
        f = _mono_divexact(radicals[i - 1], radicals[i])
        if len(f) > 1:
            out.append((f, i))
    return out


def _sub(A: list[int], B: list[int]) -> list[int]:
    n = max(len(A), len(B))
    A = A + [0] * (n - len(A))
    B = B + [0] * (n - len(B))
    return trim([x - y for x, y in zip(A, B)])


@dataclass(frozen=True)
class SturmChain:
    """Primitive Sturm chain of an integer polynomial (monomial basis)."""

    polys: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, F: Sequence[int]) -> "SturmChain":
        p0 = primitive(trim(list(F)))
        if not p0:
            raise ZeroPolynomial("zero polynomial")
        chain = [p0]
        p1 = primitive(_mono_derivative(p0))
        if p1:
            chain.append(p1)
            while True:
                r = _mono_prem(chain[-2], chain[-1])
                if not r:
                    break
                chain.append(primitive([-x for x in r]))
        return cls(tuple(tuple(p) for p in chain))

    def variations(self, x: Fraction) -> int:
        v, last = 0, 0
        for p in self.polys:
            val = _eval(p, x)
            s = (val > 0) - (val < 0)
            if s:
                if last and s != last:
                    v += 1
                last = s
        return v

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in (a, b] of a square-free chain head."""
        return self.variations(a) - self.variations(b)


def _eval(p: Sequence[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _isolate(chain: SturmChain, head: Sequence[int], a: Fraction, b: Fraction):
    """Isolating intervals for the roots of a square-free ``head`` in [a, b]."""
    out = []
    if _eval(head, a) == 0:
        out.append((a, a))
    stack = [(a, b, chain.count(a, b))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((hi, hi) if _eval(head, hi) == 0 else (lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid, chain.count(lo, mid)))
        stack.append((mid, hi, chain.count(mid, hi)))
    return sorted(out)


def count_real_roots(F: IntPoly, a, b) -> list[RealRoot]:
    """All distinct real roots of F in [a, b] with exact multiplicities."""
    coeffs = list(F.coeffs)
    if not coeffs:
        raise ZeroPolynomial("zero polynomial")
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("empty interval")
    factors = _squarefree_factors(coeffs)
    if not factors:
        return []
    squarefree = [1]
    for f, _ in factors:
        squarefree = _mono_mul(squarefree, f)
    chain = SturmChain.of(squarefree)
    factor_chains = [(SturmChain.of(f), f, i) for f, i in factors]
    roots = []
    for lo, hi in _isolate(chain, squarefree, a, b):
        for fchain, f, i in factor_chains:
            if lo == hi:
                hit = _eval(f, lo) == 0
            else:
                hit = fchain.count(lo, hi) > 0
            if hit:
                roots.append(RealRoot(lo, hi, i))
                break
    return roots


def _mono_mul(A: list[int], B: list[int]) -> list[int]:
    out = [0] * (len(A) + len(B) - 1)
    for i, x in enumerate(A):
        for j, y in enumerate(B):
            out[i + j] += x * y
    return out


def unimodular_via_monomial(P: IntPoly | LittlewoodPoly) -> ZCount:
    """Census computed through the monomial route; used as a cross-check."""
    c = list(P.coeffs)
    if c != c[::-1]:
        raise NotReciprocal("coefficients are not palindromic")
    c, m_plus = _strip_root(c, 1)
    c, m_minus = _strip_root(c, -1)
    if len(c) == 1:
        return _census([], m_plus, m_minus)
    A, _ = cosine_coefficients(c)
    F = chebyshev_transform(CosinePoly(A))
    roots = [r for r in count_real_roots(F, -1, 1) if not (r.exact and abs(r.lo) == 1)]
    top = max((r.multiplicity for r in roots), default=0)
    interior = [sum(1 for r in roots if r.multiplicity > k) for k in range(top)]
    return _census(interior, m_plus, m_minus)


# ---------------------------------------------------------------- grid oracle

def grid_sign_change_oracle(f: CosinePoly, resolution: int, tol: float = 1e-10) -> int:
    """Cyclic sign changes of f on the uniform grid 2πk/resolution.

    Values within ``tol·Σ|A_n|`` of zero are skipped.
    """
    if resolution < 4 * (f.degree + 1):
        raise ValueError(f"resolution {resolution} below 4·(degree+1)")
    return kernels.cosine_grid_sign_changes(f.coeffs, resolution, tol)


def oracle_sign_changes(P: LittlewoodPoly, resolution: int, tol: float = 1e-10) -> int:
    """Grid estimate of the odd-multiplicity unimodular roots of P.

    For odd degree θ ∈ [0, 2π) covers the circle twice through z = e^{2iθ},
    so the grid count is halved.
    """
    n = grid_sign_change_oracle(to_cosine(P), resolution, tol)
    return n // 2 if P.degree % 2 else n
