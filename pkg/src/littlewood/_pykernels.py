"""Pure-Python reference kernels.

Polynomials here are lists of ints in the Chebyshev basis: ``A[n]`` is the
coefficient of T_n.  The compiled module ``_kernels`` implements the same two
entry points, :func:`sturm_tower` and :func:`cosine_grid_sign_changes`, and
must return identical results.
"""
from __future__ import annotations

from math import gcd

import numpy as np


def trim(A: list[int]) -> list[int]:
    while A and A[-1] == 0:
        A.pop()
    return A


def primitive(A: list[int]) -> list[int]:
    g = 0
    for a in A:
        g = gcd(g, a)
        if g == 1:
            return A
    if g > 1:
        return [a // g for a in A]
    return A


def cheb_derivative(A: list[int]) -> list[int]:
    """Derivative in the Chebyshev basis, via d_{k-1} = d_{k+1} + 2k a_k."""
    n = len(A) - 1
    if n <= 0:
        return []
    d = [0] * (n + 2)
    for k in range(n, 0, -1):
        d[k - 1] = d[k + 1] + 2 * k * A[k]
    d[0] //= 2
    return trim(d[:n])


def cheb_times_2T(k: int, B: list[int], size: int) -> list[int]:
    """Coefficients of 2·T_k·B, using 2 T_k T_j = T_{k+j} + T_{|k-j|}."""
    out = [0] * size
    for j, b in enumerate(B):
        if b:
            out[j + k] += b
            out[abs(j - k)] += b
    return out


def cheb_prem(A: list[int], B: list[int]) -> list[int]:
    """Primitive pseudo-remainder of A by B with positive multipliers only."""
    A = list(A)
    db = len(B) - 1
    while A and len(A) - 1 >= db:
        da = len(A) - 1
        TB = cheb_times_2T(da - db, B, da + 1)
        t = TB[da]
        la = A[da]
        g = gcd(t, la)
        mt, ml = abs(t) // g, la // g
        if t < 0:
            ml = -ml
        A = trim([mt * a - ml * x for a, x in zip(A, TB)])
        A = primitive(A)
    return A


def cheb_values(A: list[int]) -> tuple[int, int, int]:
    """Exact values at x = -1, 0, 1."""
    at_m1 = sum(a if n % 2 == 0 else -a for n, a in enumerate(A))
    at_0 = sum(A[n] if n % 4 == 0 else -A[n] for n in range(0, len(A), 2))
    return at_m1, at_0, sum(A)


def _variations(signs: list[int]) -> int:
    v, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                v += 1
            last = s
    return v


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def sturm_tower(coeffs) -> list[tuple[int, int, int, int, int, int]]:
    """Sturm data for the repeated-gcd tower of a Chebyshev-basis polynomial.

    Level k is G_k with G_0 = F and G_k = gcd(G_{k-1}, G_{k-1}').  For each
    non-constant level the tuple holds the Sturm sign variations at x = -1, 0,
    1 followed by flags for G_k vanishing at those points.
    """
    G = primitive(trim([int(a) for a in coeffs]))
    levels = []
    while len(G) >= 2:
        p0, p1 = G, primitive(cheb_derivative(G))
        vals = [cheb_values(p0), cheb_values(p1)]
        while True:
            r = cheb_prem(p0, p1)
            if not r:
                break
            p0, p1 = p1, primitive([-x for x in r])
            vals.append(cheb_values(p1))
        zeros = vals[0]
        levels.append((
            _variations([_sign(v[0]) for v in vals]),
            _variations([_sign(v[1]) for v in vals]),
            _variations([_sign(v[2]) for v in vals]),
            int(zeros[0] == 0), int(zeros[1] == 0), int(zeros[2] == 0),
        ))
        G = p1
    return levels


def cosine_grid_sign_changes(A, resolution: int, tol: float) -> int:
    """Cyclic sign changes of Σ A_n cos nθ on the grid θ_k = 2πk/R.

    Values with |f| ≤ tol·Σ|A_n| count as zero and are skipped.
    """
    a = np.asarray(A, dtype=float)
    if a.size == 0:
        return 0
    thresh = tol * np.abs(a).sum()
    n = np.arange(a.size)
    signs = []
    chunk = max(1, 2**20 // a.size)
    for start in range(0, resolution, chunk):
        theta = 2 * np.pi * np.arange(start, min(resolution, start + chunk)) / resolution
        vals = np.cos(np.multiply.outer(theta, n)) @ a
        s = np.sign(vals)
        s[np.abs(vals) <= thresh] = 0
        signs.append(s[s != 0])
    s = np.concatenate(signs) if signs else np.empty(0)
    if s.size < 2:
        return 0
    return int(np.count_nonzero(s[1:] != s[:-1]) + (s[-1] != s[0]))
