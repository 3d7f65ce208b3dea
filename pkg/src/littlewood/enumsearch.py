"""Exhaustive and sampled search over reciprocal Littlewood polynomials.

Representatives are taken modulo global negation: the first coefficient is
+1 and the next ⌊N/2⌋ coefficients run through a big-endian binary counter
('+' = 0), the rest following by symmetry.  Every scan computes both the
distinct and the with-multiplicity census in one pass.
"""
from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, StorageError
from .io import write_csv, write_json
from .polycore import LittlewoodPoly
from .rootcount import count_unimodular

DISTINCT = "distinct"
WITH_MULTIPLICITY = "with_multiplicity"
CONVENTIONS = (DISTINCT, WITH_MULTIPLICITY)
DEFAULT_BUDGET = 40
MAX_WITNESSES = 32


def representative_count(N: int) -> int:
    return 2 ** (N // 2)


def representative(N: int, index: int) -> LittlewoodPoly:
    """The index-th canonical representative of degree N."""
    h = N // 2
    half = [1] + [-1 if (index >> (h - j)) & 1 else 1 for j in range(1, h + 1)]
    tail = half[-2::-1] if N % 2 == 0 else half[::-1]
    return LittlewoodPoly(tuple(half + tail))


def enumerate_reciprocal(N: int) -> Iterator[LittlewoodPoly]:
    if N < 1:
        raise ValueError("N must be at least 1")
    for i in range(representative_count(N)):
        yield representative(N, i)


@dataclass
class SearchResult:
    degree: int
    convention: str
    minimum: int
    witnesses: list[str]
    witness_count: int
    histogram: dict[int, int]
    enumerated: int
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "convention": self.convention,
            "minimum": self.minimum,
            "witnesses": self.witnesses,
            "witness_count": self.witness_count,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "enumerated": self.enumerated,
        }


@dataclass
class _Partial:
    """Shard result for one convention; merging is associative."""

    hist: Counter = field(default_factory=Counter)
    minimum: int | None = None
    witnesses: list[int] = field(default_factory=list)
    witness_count: int = 0

    def add(self, value: int, index: int) -> None:
        self.hist[value] += 1
        if self.minimum is None or value < self.minimum:
            self.minimum, self.witnesses, self.witness_count = value, [index], 1
        elif value == self.minimum:
            self.witness_count += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(index)

    def merge(self, other: "_Partial") -> "_Partial":
        out = _Partial(self.hist + other.hist)
        mins = [p for p in (self, other) if p.minimum is not None]
        if not mins:
            return out
        out.minimum = min(p.minimum for p in mins)
        best = [p for p in mins if p.minimum == out.minimum]
        out.witnesses = sorted(i for p in best for i in p.witnesses)[:MAX_WITNESSES]
        out.witness_count = sum(p.witness_count for p in best)
        return out


def _scan(args: tuple[int, int, int]) -> dict[str, _Partial]:
    N, lo, hi = args
    parts = {c: _Partial() for c in CONVENTIONS}
    for i in range(lo, hi):
        z = count_unimodular(representative(N, i))
        parts[DISTINCT].add(z.distinct, i)
        parts[WITH_MULTIPLICITY].add(z.with_multiplicity, i)
    return parts


def _shards(N: int, parallelism: int) -> list[tuple[int, int, int]]:
    total = representative_count(N)
    prefix_bits = min(max(0, math.ceil(math.log2(max(parallelism, 1)))), N // 2)
    step = total >> prefix_bits
    return [(N, k * step, (k + 1) * step) for k in range(1 << prefix_bits)]


def dual_search(N: int, parallelism: int = 1, budget: int = DEFAULT_BUDGET) -> dict[str, SearchResult]:
    """Exhaustive census of degree N under both conventions."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if N > budget:
        raise BudgetExceeded(f"N={N} exceeds budget {budget}", N=N, budget=budget)
    start = time.perf_counter()
    shards = _shards(N, parallelism)
    if parallelism > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_scan, shards))
    else:
        results = [_scan(s) for s in shards]
    merged = {c: _Partial() for c in CONVENTIONS}
    for part in results:
        for c in CONVENTIONS:
            merged[c] = merged[c].merge(part[c])
    elapsed = time.perf_counter() - start
    return {
        c: SearchResult(
            degree=N,
            convention=c,
            minimum=p.minimum,
            witnesses=[representative(N, i).signs for i in p.witnesses],
            witness_count=p.witness_count,
            histogram=dict(sorted(p.hist.items())),
            enumerated=representative_count(N),
            wall_time=elapsed,
        )
        for c, p in merged.items()
    }


def min_roots(N: int, convention: str = WITH_MULTIPLICITY, parallelism: int = 1,
              budget: int = DEFAULT_BUDGET) -> SearchResult:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    return dual_search(N, parallelism, budget)[convention]


@dataclass(frozen=True)
class SampleMean:
    mean: float
    stderr: float
    samples: int


def average_roots(N: int, mode: str = "exhaustive", k: int = 1000, seed: int = 0,
                  budget: int = DEFAULT_BUDGET, parallelism: int = 1) -> Fraction | SampleMean:
    """Mean with-multiplicity root count over canonical representatives."""
    if mode == "exhaustive":
        res = dual_search(N, parallelism, budget)[WITH_MULTIPLICITY]
        total = sum(count * n for count, n in res.histogram.items())
        return Fraction(total, res.enumerated)
    if mode != "sample":
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, representative_count(N), size=k)
    vals = np.array([count_unimodular(representative(N, int(i))).with_multiplicity for i in idx],
                    dtype=float)
    stderr = float(vals.std(ddof=1) / np.sqrt(k)) if k > 1 else float("nan")
    return SampleMean(float(vals.mean()), stderr, k)


CSV_HEADER = ["N", "convention", "min", "enumerated", "witness", "histogram_json"]


def _row(res: SearchResult) -> dict:
    return {
        "N": res.degree,
        "convention": res.convention,
        "min": res.minimum,
        "enumerated": res.enumerated,
        "witness": res.witnesses[0],
        "witnesses": res.witnesses,
        "witness_count": res.witness_count,
        "histogram": {str(k): v for k, v in sorted(res.histogram.items())},
    }


def table_ZL(N_max: int, convention: str = WITH_MULTIPLICITY, out_dir: str | Path = "results",
             parallelism: int = 1, budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Compute and persist the Z_L(N) table for 1 ≤ N ≤ N_max.

    Existing rows in the stored JSON are re-derived and must agree, otherwise
    :class:`StorageError` is raised and nothing is overwritten.
    """
    if N_max > budget:
        raise BudgetExceeded(f"N_max={N_max} exceeds budget {budget}", N=N_max, budget=budget)
    out_dir = Path(out_dir)
    json_path = out_dir / f"zl_table_{convention}.json"
    stored = {}
    if json_path.exists():
        try:
            stored = {row["N"]: row for row in json.loads(json_path.read_text())["rows"]}
        except (ValueError, KeyError, TypeError) as exc:
            raise StorageError(f"unreadable table {json_path}: {exc}") from exc
    rows = []
    for N in range(1, max(N_max, max(stored, default=0)) + 1):
        row = _row(dual_search(N, parallelism, budget)[convention])
        old = stored.get(N)
        if old is not None and (old["min"], old["histogram"]) != (row["min"], row["histogram"]):
            raise StorageError(f"stored row for N={N} disagrees with recomputation", N=N)
        rows.append(row)
    write_json(json_path, {"convention": convention, "rows": rows})
    write_csv(out_dir / f"zl_table_{convention}.csv", CSV_HEADER, [
        [r["N"], r["convention"], r["min"], r["enumerated"], r["witness"],
         json.dumps(r["histogram"], sort_keys=True)] for r in rows])
    return rows
