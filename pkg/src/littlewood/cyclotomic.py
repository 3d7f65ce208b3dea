"""Exact arithmetic in Z[ζ_D], ζ_D = e^{2πi/D}.

Elements are integer vectors indexed by exponents mod D.  Products are cyclic
convolutions; the canonical form is the remainder modulo the cyclotomic
polynomial Φ_D, so an element is a rational integer exactly when its
canonical form is constant.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        coef, r = divmod(a[k + len(b) - 1], b[-1])
        assert r == 0
        q[k] = coef
        for j, x in enumerate(b):
            a[j + k] -= coef * x
    assert not any(a)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Φ_n from x^n - 1 = Π_{d | n} Φ_d."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def reduce(vec, D: int) -> tuple[int, ...]:
    """Canonical representative of Σ vec[k] ζ^k, of degree < φ(D)."""
    phi = cyclotomic_polynomial(D)
    a = [int(x) for x in vec]
    deg = len(phi) - 1
    for k in range(len(a) - 1, deg - 1, -1):
        c = a[k]
        if c:
            for j, x in enumerate(phi):
                a[k - deg + j] -= c * x
    out = a[:deg]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def as_integer(vec, D: int) -> int:
    """The rational integer represented by vec; raises if it is not one."""
    r = reduce(vec, D)
    if len(r) > 1:
        raise ArithmeticError(f"element {r} of Z[ζ_{D}] is not rational")
    return r[0] if r else 0


def element(terms, D: int) -> np.ndarray:
    """Σ coef·ζ^{exp} from (exponent, coefficient) pairs."""
    v = np.zeros(D, dtype=object)
    for e, c in terms:
        v[e % D] += c
    return v


def multiply(a: np.ndarray, b: np.ndarray, D: int) -> np.ndarray:
    full = np.convolve(a, b)
    out = full[:D].copy()
    out[: len(full) - D] += full[D:]
    return out
