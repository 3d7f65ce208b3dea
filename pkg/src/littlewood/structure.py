"""Partitioning coefficient sequences into D-periodic blocks.

A block [s, e) is D-periodic when c[n] = c[n - D] for every n in [s + D, e).
Periodicity is inherited by sub-intervals, so extending each block as far as
possible (greedy) yields the minimum number of blocks; :func:`min_blocks_dp`
is the dynamic-programming oracle for that claim.

Reconstruction identities are verified with exact :class:`IntPoly`
arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import LengthMismatch, NotAligned
from .polycore import IntPoly, json_int


@dataclass(frozen=True)
class Block:
    start: int
    end: int
    pattern: tuple[int, ...]

    def __len__(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class BlockDecomposition:
    D: int
    blocks: tuple[Block, ...]
    aligned: bool

    @property
    def L(self) -> int:
        return len(self.blocks)

    def reconstruct(self) -> list[int]:
        return [b.pattern[n % self.D] for b in self.blocks for n in range(b.start, b.end)]

    def to_json(self) -> dict:
        return {"D": self.D, "aligned": self.aligned, "L": self.L,
                "blocks": [{"start": b.start, "end": b.end, "pattern": list(b.pattern)}
                           for b in self.blocks]}


def _run_end(c: Sequence[int], s: int, D: int) -> int:
    """Largest e such that [s, e) is D-periodic."""
    e = min(s + D, len(c))
    while e < len(c) and c[e] == c[e - D]:
        e += 1
    return e


def _pattern(c: Sequence[int], s: int, e: int, D: int) -> tuple[int, ...]:
    p = [0] * D
    for n in range(s, e):
        p[n % D] = c[n]
    return tuple(p)


def decompose(coeffs: Sequence[int], D: int, aligned: bool = True) -> BlockDecomposition:
    """Greedy partition into maximal D-periodic blocks.

    In aligned mode every block except the last starts and ends at a multiple
    of D; each cut is placed at the latest admissible point.
    """
    if D < 1:
        raise ValueError("D must be positive")
    c = [int(x) for x in coeffs]
    if not c:
        raise ValueError("empty coefficient sequence")
    blocks, s = [], 0
    while s < len(c):
        e = _run_end(c, s, D)
        if aligned and e < len(c):
            e = (e // D) * D
        blocks.append(Block(s, e, _pattern(c, s, e, D)))
        s = e
    return BlockDecomposition(D, tuple(blocks), aligned)


def min_blocks_dp(coeffs: Sequence[int], D: int, aligned: bool = True) -> int:
    """Minimum number of D-periodic blocks by dynamic programming over cuts."""
    c = list(coeffs)
    n = len(c)

    def periodic(i: int, j: int) -> bool:
        return all(c[k] == c[k - D] for k in range(i + D, j))

    def cut_ok(k: int) -> bool:
        return not aligned or k % D == 0 or k == n

    best = [0] + [n + 1] * n
    for j in range(1, n + 1):
        if not cut_ok(j):
            continue
        for i in range(j):
            if cut_ok(i) and best[i] + 1 < best[j] and periodic(i, j):
                best[j] = best[i] + 1
    return best[n]


def period_profile(coeffs: Sequence[int], D_max: int) -> list[tuple[int, int]]:
    """Aligned block count L(D) for D = 1..D_max."""
    if D_max < 1:
        raise ValueError("D_max must be positive")
    return [(D, decompose(coeffs, D, aligned=True).L) for D in range(1, D_max + 1)]


def _monomial(k: int, coef: int = 1) -> IntPoly:
    return IntPoly((0,) * k + (coef,))


@dataclass(frozen=True)
class GeometricForm:
    """Q(z)(z^D - 1) = Σ_j A_j(z)(z^{r_j} - z^{r_{j-1}}) + E(z)(z^D - 1)."""

    D: int
    breakpoints: tuple[int, ...]
    patterns: tuple[tuple[int, ...], ...]
    residual: IntPoly

    @property
    def residual_terms(self) -> int:
        return sum(1 for c in self.residual.coeffs if c)

    def verify(self, coeffs: Sequence[int]) -> bool:
        zD1 = _monomial(self.D) - IntPoly((1,))
        lhs = IntPoly(tuple(coeffs)) * zD1
        rhs = self.residual * zD1
        for j, pat in enumerate(self.patterns, start=1):
            span = _monomial(self.breakpoints[j]) - _monomial(self.breakpoints[j - 1])
            rhs = rhs + IntPoly(pat) * span
        return lhs == rhs

    def to_json(self) -> dict:
        return {"D": self.D, "breakpoints": list(self.breakpoints),
                "patterns": [list(p) for p in self.patterns],
                "residual": [json_int(c) for c in self.residual.coeffs],
                "residual_terms": self.residual_terms}


def to_geometric(dec: BlockDecomposition, coeffs: Sequence[int]) -> GeometricForm:
    """Sum each aligned block as a geometric series in z^D.

    Breakpoints are the largest multiples of D not exceeding each block end;
    whatever the series miss (the tail after the last breakpoint) is the
    residual E.
    """
    if not dec.aligned:
        raise NotAligned("geometric form needs an aligned decomposition")
    D = dec.D
    c = [int(x) for x in coeffs]
    r = [0] + [(b.end // D) * D for b in dec.blocks]
    covered = [0] * len(c)
    for j, b in enumerate(dec.blocks, start=1):
        for n in range(r[j - 1], r[j]):
            covered[n] = b.pattern[n % D]
    residual = IntPoly(tuple(x - y for x, y in zip(c, covered)))
    form = GeometricForm(D, tuple(r), tuple(b.pattern for b in dec.blocks), residual)
    assert form.verify(c), "geometric reconstruction failed"
    return form


@dataclass(frozen=True)
class DeviationForm:
    """Q(z) = ε(z)(z^K - 1)/(z^D - 1) + Σ_j Σ_{m∈J_j} δ^{(j)}_{m mod D} z^m.

    K is the least multiple of D that is ≥ len(Q); positions beyond the last
    coefficient count as zeros, so a boundary block may reach past it.
    """

    D: int
    epsilon: tuple[int, ...]
    span: int
    length: int
    delta_blocks: tuple[Block, ...]
    delta_in_range: bool

    def delta_terms(self) -> IntPoly:
        out = [0] * self.span
        for b in self.delta_blocks:
            for m in range(b.start, b.end):
                out[m] = b.pattern[m % self.D]
        return IntPoly(tuple(out))

    def verify(self, coeffs: Sequence[int]) -> bool:
        zD1 = _monomial(self.D) - IntPoly((1,))
        lhs = IntPoly(tuple(coeffs)) * zD1
        rhs = IntPoly(self.epsilon) * (_monomial(self.span) - IntPoly((1,))) + self.delta_terms() * zD1
        return lhs == rhs

    def to_json(self) -> dict:
        return {"D": self.D, "epsilon": list(self.epsilon), "span": self.span,
                "length": self.length, "delta_in_range": self.delta_in_range,
                "delta_blocks": [{"start": b.start, "end": b.end, "pattern": list(b.pattern)}
                                 for b in self.delta_blocks]}


def to_deviation_form(coeffs: Sequence[int], D: int, eps: Sequence[int]) -> DeviationForm:
    """Describe coeffs as the ε-periodic sequence plus aligned deviation blocks.

    Consecutive length-D windows with the same nonzero deviation pattern are
    merged into one block.  ``delta_in_range`` reports whether every deviation
    at a real coefficient position lies in {-2ε_m, 0}.
    """
    eps = tuple(int(e) for e in eps)
    if len(eps) != D:
        raise LengthMismatch(f"pattern has length {len(eps)}, expected D={D}",
                             length=len(eps), D=D)
    c = [int(x) for x in coeffs]
    n = len(c)
    K = -(-n // D) * D
    dev = [(c[m] if m < n else 0) - eps[m % D] for m in range(K)]
    blocks: list[Block] = []
    for w in range(K // D):
        pat = tuple(dev[w * D:(w + 1) * D])
        if not any(pat):
            continue
        if blocks and blocks[-1].end == w * D and blocks[-1].pattern == pat:
            blocks[-1] = Block(blocks[-1].start, (w + 1) * D, pat)
        else:
            blocks.append(Block(w * D, (w + 1) * D, pat))
    in_range = all(dev[m] in (0, -2 * eps[m % D]) for m in range(n))
    form = DeviationForm(D, eps, K, n, tuple(blocks), in_range)
    assert form.verify(c), "deviation-form reconstruction failed"
    return form
