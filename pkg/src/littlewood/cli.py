"""Command-line entry point: ``littlewood <subcommand> ...``.

Every run writes its result and a manifest into ``--out``.  Exit status is
0 on success, 1 on a domain error (JSON error record on stdout) and 2 on a
usage error.  Sign strings starting with '-' must follow ``--``, e.g.
``littlewood count -- -++-``.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import asymptotics as asy
from . import enumsearch, oddcase, selftest, spectral, structure
from .errors import DomainError
from .io import RunManifest, dumps, write_csv, write_json
from .polycore import build_Q, family_g, family_h, json_int, parse_signs
from .rootcount import cosine_census, count_unimodular, grid_sign_change_oracle, oracle_sign_changes

CONVENTION_FLAGS = {"mult": enumsearch.WITH_MULTIPLICITY, "distinct": enumsearch.DISTINCT}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--out", default=d("results"), help="results directory")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for all randomness")
    parser.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    parser.add_argument("--tol", type=float, default=d(None),
                        help="numeric tolerance (default: per subcommand)")
    parser.add_argument("--format", choices=["json", "csv"], default=d("json"))


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _fraction_json(x: Fraction) -> dict:
    return {"numerator": json_int(x.numerator), "denominator": json_int(x.denominator),
            "value": float(x)}


# --------------------------------------------------------------------------
# Subcommands.  Each returns (payload, csv) where csv is (header, rows) or None.


def cmd_count(a):
    P = parse_signs(a.signs)
    z = count_unimodular(P)
    out = z.to_json(P.degree, P.signs)
    if a.oracle:
        out["grid_sign_changes"] = oracle_sign_changes(P, a.oracle, a.tol or 1e-10)
    header = list(out)
    return out, (header, [[out[k] for k in header]])


def cmd_search(a):
    convention = CONVENTION_FLAGS[a.convention]
    last = a.to if a.to is not None else a.degree
    results = []
    for N in range(a.degree, last + 1):
        results.append(enumsearch.dual_search(N, a.jobs, a.budget)[convention].to_json())
    rows = [[r["degree"], r["convention"], r["minimum"], r["enumerated"], r["witnesses"][0],
             json.dumps(r["histogram"], sort_keys=True)] for r in results]
    return {"convention": convention, "results": results}, (enumsearch.CSV_HEADER, rows)


def cmd_avg(a):
    if a.mode == "exhaustive":
        mean = enumsearch.average_roots(a.degree, "exhaustive", budget=a.budget, parallelism=a.jobs)
        out = {"N": a.degree, "mode": "exhaustive", "mean": _fraction_json(mean),
               "bound": _fraction_json(Fraction(a.degree, 4)),
               "meets_bound": mean >= Fraction(a.degree, 4)}
    else:
        res = enumsearch.average_roots(a.degree, "sample", k=a.samples, seed=a.seed, budget=a.budget)
        out = {"N": a.degree, "mode": "sample", "mean": res.mean, "stderr": res.stderr,
               "samples": res.samples, "bound": a.degree / 4, "meets_bound": res.mean >= a.degree / 4}
    return out, None


def cmd_table(a):
    rows = {}
    for flag, conv in CONVENTION_FLAGS.items():
        rows[conv] = enumsearch.table_ZL(a.to, conv, a.out, a.jobs, a.budget)
    a.extra_outputs = [Path(a.out) / f"zl_table_{conv}.{ext}" for conv in rows for ext in ("json", "csv")]
    primary = CONVENTION_FLAGS[a.convention]
    return {"convention": primary, "rows": rows[primary],
            "other": {c: [[r["N"], r["min"]] for r in rs] for c, rs in rows.items() if c != primary}}, None


def cmd_structure(a):
    P = parse_signs(a.signs)
    seq = list(build_Q(P).coeffs) if a.sequence == "q" else list(P.coeffs)
    out = {"signs": P.signs, "sequence": a.sequence, "values": seq}
    if a.scan is not None:
        out["profile"] = [{"D": D, "L": L} for D, L in structure.period_profile(seq, a.scan)]
        return out, (["D", "L"], [[p["D"], p["L"]] for p in out["profile"]])
    dec = structure.decompose(seq, a.period, aligned=a.aligned)
    out["decomposition"] = dec.to_json()
    out["greedy_is_minimal"] = dec.L == structure.min_blocks_dp(seq, a.period, a.aligned)
    out["reconstructs"] = dec.reconstruct() == seq
    if a.aligned:
        form = structure.to_geometric(dec, seq)
        out["geometric"] = form.to_json()
        out["geometric_exact"] = form.verify(seq)
    return out, None


def cmd_factor(a):
    data = _read_json(a.coeffs)
    raw = data["coeffs"] if isinstance(data, dict) else data
    vals = [complex(*c) if isinstance(c, list) else complex(c) for c in raw]
    if isinstance(data, dict) and data.get("full"):
        if len(vals) % 2 == 0:
            raise UsageError("a full coefficient vector c_{-N}..c_N has odd length")
        vals = vals[len(vals) // 2:]
    c = spectral.TrigPoly(tuple(vals))
    tol = a.tol or 1e-8
    factor = spectral.fejer_riesz_factor(c, tol)
    out = factor.to_json()
    out["degree"] = c.degree
    out["tol"] = tol
    out["verdict"] = spectral.coefficient_sign_change_test(c) if vals[-1] != 0 else None
    return out, None


def _family_from_json(data):
    blocks = [asy.SparseTrig.from_json(b) for b in data["blocks"]]
    rhos = [float(Fraction(str(r))) for r in data["rhos"]]
    return blocks, rhos, int(data["D"])


def cmd_oscillate(a):
    blocks, rhos, D = _family_from_json(_read_json(a.spec))
    res = asy.level_oscillation(blocks, rhos, D, a.N, a.c, a.window)
    return res.to_json(), None


def cmd_weyl(a):
    H = asy.GeneralizedTrigSum.from_json(_read_json(a.spec))
    out = asy.weyl_moments(H, a.theta, a.n).to_json()
    out["criterion"] = asy.signchange_criterion(H) if a.criterion else None
    return out, None


def _parse_terms(text: str) -> list[tuple[int, int]]:
    out = []
    for item in filter(None, text.split(",")):
        m, _, p = item.partition(":")
        out.append((int(m), int(p or 1)))
    return out


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def cmd_oddcase(a):
    if a.mode == "identity":
        pat = oddcase.OddPattern(a.D, _parse_ints(a.eps))
        s = oddcase.DifferenceSinePoly.from_pattern(pat, _parse_terms(a.terms))
        dec = oddcase.group_and_decompose(s, a.gap)
        groups = [oddcase.derivative_parseval(pat, dec, j).to_json() for j in range(len(dec.groups))]
        return {"pattern": pat.to_json(), "decomposition": dec.to_json(), "groups": groups,
                "holds": all(g["holds"] for g in groups)}, None
    spec = _read_json(a.spec)
    pat = oddcase.OddPattern(int(spec["D"]), tuple(spec["eps"]))
    s1 = oddcase.DifferenceSinePoly.from_pattern(pat, [tuple(t) for t in spec.get("s1", [])])
    s2 = oddcase.DifferenceSinePoly.from_pattern(pat, [tuple(t) for t in spec.get("s2", [])])
    res = oddcase.kappa_gap_search(oddcase.build_a(pat), s1, s2, spec.get("region", "full"),
                                   int(spec.get("resolution", 1 << 14)), float(spec.get("c", 0.5)))
    return {"pattern": pat.to_json(), "result": res.to_json()}, None


def cmd_probe(a):
    return oddcase.kappa_probe(a.k, a.M, a.res, a.jobs).to_json(), None


def cmd_families(a):
    f = family_g(a.index) if a.family == "g" else family_h(a.index)
    out = {"family": a.family, "index": a.index, "cosine": f.to_json()}
    if a.count_roots:
        out["roots"] = cosine_census(f).distinct
    if a.resolution:
        out["grid_sign_changes"] = grid_sign_change_oracle(f, a.resolution, a.tol or 1e-10)
    return out, None


def cmd_selftest(a):
    results = selftest.run(a.seed, a.inject_fault)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}", file=sys.stderr)
    return {"checks": [r.to_json() for r in results],
            "passed": all(r.passed for r in results)}, None


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="littlewood", description="Unimodular roots of reciprocal Littlewood polynomials.")
    parser.add_argument("--version", action="version", version=__version__)
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        _global_flags(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    p = add("count", cmd_count, "root census of one sign string")
    p.add_argument("signs")
    p.add_argument("--oracle", type=int, default=0, help="also run the grid oracle at this resolution")

    for name, fn, text in [("search", cmd_search, "exhaustive minimum search"),
                           ("avg", cmd_avg, "average root count")]:
        p = add(name, fn, text)
        p.add_argument("--degree", type=int, required=True)
        p.add_argument("--budget", type=int, default=enumsearch.DEFAULT_BUDGET)
    sub.choices["search"].add_argument("--to", type=int)
    sub.choices["search"].add_argument("--convention", choices=list(CONVENTION_FLAGS), default="mult")
    sub.choices["avg"].add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    sub.choices["avg"].add_argument("--samples", type=int, default=1000)

    p = add("table", cmd_table, "persist the Z_L(N) tables")
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--convention", choices=list(CONVENTION_FLAGS), default="mult")
    p.add_argument("--budget", type=int, default=enumsearch.DEFAULT_BUDGET)

    p = add("structure", cmd_structure, "periodic block structure of Q (or the signs)")
    p.add_argument("signs")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--period", type=int)
    g.add_argument("--scan", type=int, metavar="D_MAX")
    p.add_argument("--aligned", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--sequence", choices=["q", "signs"], default="q")

    p = add("factor", cmd_factor, "Fejér–Riesz factorization of a nonnegative trig polynomial")
    p.add_argument("--coeffs", required=True, help="JSON file with c_0..c_N")

    p = add("oscillate", cmd_oscillate, "oscillation count of f_N near m/D")
    p.add_argument("--spec", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--window", type=float, default=10.0)

    p = add("weyl", cmd_weyl, "moments of H along integer shifts")
    p.add_argument("--spec", required=True)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--criterion", action="store_true", help="also evaluate the sign-change criterion")

    p = add("oddcase", cmd_oddcase, "odd-degree identities and κ-gap search")
    p.add_argument("mode", choices=["identity", "kappa"])
    p.add_argument("--D", type=int)
    p.add_argument("--eps")
    p.add_argument("--terms", default="", help='comma list of m:p, e.g. "5:1,9:1"')
    p.add_argument("--gap", type=float, default=oddcase.DEFAULT_GAP_FACTOR)
    p.add_argument("--spec")

    p = add("probe-kappa", cmd_probe, "brute-force κ(k) probe")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--res", type=int, default=4096)

    p = add("families", cmd_families, "the g_N and h_m cosine families")
    p.add_argument("family", choices=["g", "h"])
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--count-roots", action="store_true")
    p.add_argument("--resolution", type=int, default=0)

    p = add("selftest", cmd_selftest, "run the reduced invariant suite")
    p.add_argument("--inject-fault", action="store_true", help="corrupt the Sturm kernel (mutation test)")
    return parser


def _check_mode_args(a) -> None:
    if a.command == "oddcase":
        if a.mode == "identity" and (a.D is None or a.eps is None):
            raise UsageError("oddcase identity needs --D and --eps")
        if a.mode == "kappa" and a.spec is None:
            raise UsageError("oddcase kappa needs --spec")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        _check_mode_args(a)
    except UsageError as exc:
        print(f"littlewood: error: {exc}", file=sys.stderr)
        return 2
    params = {k: v for k, v in vars(a).items() if k not in ("func", "out")}
    params["out"] = str(a.out)
    start = time.perf_counter()
    try:
        payload, table = a.func(a)
    except UsageError as exc:
        print(f"littlewood: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ValueError, ArithmeticError) as exc:
        err = exc.to_json() if isinstance(exc, DomainError) else {
            "error": type(exc).__name__, "message": str(exc), "details": {}}
        print(dumps(err))
        return 1
    out_dir = Path(a.out)
    manifest = RunManifest(a.command, params, a.seed)
    name = a.command.replace("-", "_")
    if a.format == "csv" and table is not None:
        path = write_csv(out_dir / f"{name}.csv", *table)
    else:
        path = write_json(out_dir / f"{name}.json", payload)
    manifest.record(path)
    for extra in getattr(a, "extra_outputs", []):
        manifest.record(extra)
    manifest.wall_time = time.perf_counter() - start
    manifest.write(out_dir)
    print(dumps(payload))
    if a.command == "selftest" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
