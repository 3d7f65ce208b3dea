"""Polynomial value types and the reciprocal-to-cosine conversions.

A reciprocal polynomial of degree N restricted to the unit circle is, up to a
unimodular factor, a real cosine polynomial:

* even N:  P(e^{iθ}) = e^{iθN/2} f(θ)  with  f = a_{N/2} + 2 Σ a_{N/2+n} cos nθ
* odd N:   P(e^{2iθ}) = e^{iNθ} f(θ)  with  f = 2 Σ a_{(N-1)/2+n} cos((2n-1)θ)

All types are frozen dataclasses holding tuples of Python ints, so they are
hashable and exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyInput, InvalidCharacter, NotReciprocal

PARITY_ALL = "all"
PARITY_ODD = "odd"


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def json_int(x: int):
    """Integers beyond the exact double range are written as decimal strings."""
    return x if abs(x) < 2**53 else str(x)


@dataclass(frozen=True)
class IntPoly:
    """Exact integer polynomial, coefficients in increasing degree.

    The zero polynomial has ``coeffs == ()`` and degree -1.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPoly":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero() or other.is_zero():
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def is_reciprocal(self) -> bool:
        c = self.coeffs
        return bool(c) and c == c[::-1]

    def to_json(self) -> dict:
        return {"kind": "int", "coeffs": [json_int(c) for c in self.coeffs], "parity": None}


@dataclass(frozen=True)
class LittlewoodPoly:
    """Polynomial with every coefficient in {-1, +1}."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if not c:
            raise EmptyInput("a Littlewood polynomial needs at least one coefficient")
        for i, x in enumerate(c):
            if x not in (-1, 1):
                raise ValueError(f"coefficient {x} at position {i} is not ±1")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def signs(self) -> str:
        return "".join("+" if c > 0 else "-" for c in self.coeffs)

    def is_reciprocal(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def as_intpoly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def __neg__(self) -> "LittlewoodPoly":
        return LittlewoodPoly(tuple(-c for c in self.coeffs))

    def to_json(self) -> dict:
        return {"kind": "littlewood", "coeffs": list(self.coeffs), "parity": None}


@dataclass(frozen=True)
class CosinePoly:
    """Real cosine polynomial A_0 + Σ A_n cos nθ with integer coefficients.

    Odd-parity polynomials keep the full vector with zeros at even indices.
    """

    coeffs: tuple[int, ...]
    parity: str = PARITY_ALL

    def __post_init__(self):
        c = _trim(self.coeffs)
        if self.parity not in (PARITY_ALL, PARITY_ODD):
            raise ValueError(f"unknown parity {self.parity!r}")
        if self.parity == PARITY_ODD and any(c[n] for n in range(0, len(c), 2)):
            raise ValueError("odd-parity cosine polynomial has a nonzero even coefficient")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, theta):
        """Evaluate at scalar or array θ."""
        theta = np.asarray(theta, dtype=float)
        n = np.arange(len(self.coeffs))
        a = np.array(self.coeffs, dtype=float)
        if a.size == 0:
            return np.zeros_like(theta)
        return np.cos(np.multiply.outer(theta, n)) @ a

    def l1_norm(self) -> int:
        return sum(abs(a) for a in self.coeffs)

    def to_json(self) -> dict:
        return {"kind": "cosine", "coeffs": [json_int(c) for c in self.coeffs],
                "parity": self.parity}


@dataclass(frozen=True)
class QPoly:
    """Half-polynomial built from the upper half of a reciprocal polynomial.

    ``parity == "all"`` for even source degree (every q_n = ±1) and ``"odd"``
    for odd source degree (support on odd exponents only).
    """

    coeffs: tuple[int, ...]
    parity: str
    source_degree: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def reconstruct(self, theta):
        """Value of the source P at e^{iθ} (even) or e^{2iθ} (odd)."""
        theta = np.asarray(theta, dtype=float)
        z = np.exp(1j * theta)
        N = self.source_degree
        if self.parity == PARITY_ALL:
            middle = self.coeffs[0]
            return np.exp(1j * theta * N / 2) * np.real(2 * self(z) - middle)
        return 2 * np.exp(1j * theta * N) * np.real(self(z))

    def to_json(self) -> dict:
        return {"kind": "q", "coeffs": list(self.coeffs), "parity": self.parity}


def parse_signs(s: str) -> LittlewoodPoly:
    """Parse an ASCII string of '+' and '-' into a Littlewood polynomial."""
    if not s:
        raise EmptyInput("empty sign string")
    coeffs = []
    for i, ch in enumerate(s):
        if ch == "+":
            coeffs.append(1)
        elif ch == "-":
            coeffs.append(-1)
        else:
            raise InvalidCharacter(i, ch)
    return LittlewoodPoly(tuple(coeffs))


def _require_reciprocal(coeffs: Sequence[int]) -> None:
    if tuple(coeffs) != tuple(coeffs)[::-1]:
        raise NotReciprocal("coefficients are not palindromic")


def cosine_coefficients(coeffs: Sequence[int]) -> tuple[tuple[int, ...], str]:
    """Cosine-form coefficients of a palindromic integer coefficient vector."""
    _require_reciprocal(coeffs)
    N = len(coeffs) - 1
    if N % 2 == 0:
        h = N // 2
        A = [coeffs[h]] + [2 * coeffs[h + n] for n in range(1, h + 1)]
        return tuple(A), PARITY_ALL
    h = (N - 1) // 2
    A = [0] * (N + 1)
    for n in range(1, (N + 1) // 2 + 1):
        A[2 * n - 1] = 2 * coeffs[h + n]
    return tuple(A), PARITY_ODD


def to_cosine(P: LittlewoodPoly | IntPoly) -> CosinePoly:
    """Real cosine form of a reciprocal polynomial on the unit circle."""
    A, parity = cosine_coefficients(P.coeffs)
    return CosinePoly(A, parity)


def build_Q(P: LittlewoodPoly) -> QPoly:
    """Upper-half polynomial Q with P recoverable as 2 Re Q minus a middle term."""
    c = P.coeffs
    _require_reciprocal(c)
    N = len(c) - 1
    if N % 2 == 0:
        h = N // 2
        return QPoly(tuple(c[h:]), PARITY_ALL, N)
    h = (N - 1) // 2
    q = [0] * (N + 1)
    for n in range(1, (N + 1) // 2 + 1):
        q[2 * n - 1] = c[h + n]
    return QPoly(tuple(q), PARITY_ODD, N)


def littlewood_from_Q(q: Sequence[int], parity: str) -> LittlewoodPoly:
    """Inverse of :func:`build_Q`: rebuild the reciprocal source polynomial."""
    q = [int(x) for x in q]
    if parity == PARITY_ALL:
        upper = q
        return LittlewoodPoly(tuple(upper[::-1] + upper[1:]))
    N = len(q) - 1
    if N % 2 == 0:
        raise ValueError("odd-parity Q must have odd degree")
    upper = [q[2 * n - 1] for n in range(1, (N + 1) // 2 + 1)]
    return LittlewoodPoly(tuple(upper[::-1] + upper))


def family_g(N: int) -> CosinePoly:
    """cos θ + Σ_{j=0}^{N} (-1)^j cos((2j+1)θ)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    A = [0] * (2 * N + 2)
    A[1] = 1
    for j in range(N + 1):
        A[2 * j + 1] += (-1) ** j
    return CosinePoly(tuple(A), PARITY_ODD)


def family_h(m: int) -> CosinePoly:
    """Σ_{n=0}^{2m} (-1)^n cos((2n+1)θ)."""
    if m < 0:
        raise ValueError("m must be non-negative")
    A = [0] * (4 * m + 2)
    for n in range(2 * m + 1):
        A[2 * n + 1] = (-1) ** n
    return CosinePoly(tuple(A), PARITY_ODD)


def eval_circle(P: IntPoly | LittlewoodPoly, theta: float) -> complex:
    """Σ coeffs[n] e^{inθ} in double precision."""
    z = complex(np.cos(theta), np.sin(theta))
    acc = 0j
    for c in reversed(P.coeffs):
        acc = acc * z + c
    return acc


def random_reciprocal(N: int, rng: np.random.Generator) -> LittlewoodPoly:
    """Uniform random reciprocal Littlewood polynomial of degree N."""
    half = rng.choice((-1, 1), size=N // 2 + 1).tolist()
    if N % 2 == 0:
        coeffs = half + half[-2::-1]
    else:
        coeffs = half + half[::-1]
    return LittlewoodPoly(tuple(coeffs))


def poly_from_json(obj: dict):
    kind = obj.get("kind")
    coeffs = tuple(int(c) for c in obj["coeffs"])
    if kind == "littlewood":
        return LittlewoodPoly(coeffs)
    if kind == "cosine":
        return CosinePoly(coeffs, obj.get("parity") or PARITY_ALL)
    if kind == "int":
        return IntPoly(coeffs)
    if kind == "q":
        raise ValueError("Q polynomials are derived values; serialize the source instead")
    raise ValueError(f"unknown polynomial kind {kind!r}")


def as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
