import json
import subprocess
import sys

import pytest

from littlewood import cli
from littlewood.io import sha256_file


def test_count_example(run_cli, validate):
    code, out, results = run_cli("count", "+--+")
    assert code == 0
    assert (out["distinct"], out["mult"], out["z1"], out["zm1"]) == (2, 3, 2, 1)
    validate(out, "census")
    manifest = json.loads((results / "manifest_count.json").read_text())
    validate(manifest, "manifest")
    for path, digest in manifest["checksums"].items():
        assert sha256_file(path) == digest


def test_leading_minus_needs_separator(run_cli):
    code, out, _ = run_cli("count", "--oracle", "4096", "--", "-++-")
    assert code == 0 and out["signs"] == "-++-" and out["grid_sign_changes"] == out["odd"]


def test_families_example(run_cli, validate):
    code, out, _ = run_cli("families", "g", "--index", "0", "--count-roots")
    assert code == 0 and out["roots"] == 2
    validate(out, "families")


@pytest.mark.parametrize("argv", [["nonsense"], ["count"], ["count", "+", "--bogus"],
                                  ["oddcase", "identity"], ["structure", "+++"]])
def test_usage_errors_exit_2(run_cli, argv):
    assert run_cli(*argv)[0] == 2


def test_domain_error_exit_1(run_cli, validate):
    code, out, _ = run_cli("count", "+x")
    assert code == 1 and out["error"] == "InvalidCharacter"
    validate(out, "error")
    code, out, _ = run_cli("count", "++-")
    assert code == 1 and out["error"] == "NotReciprocal"


def test_search_json_and_csv(run_cli, validate):
    code, out, _ = run_cli("search", "--degree", "7", "--to", "8")
    assert code == 0 and [r["minimum"] for r in out["results"]] == [3, 2]
    validate(out, "search")
    code, _, results = run_cli("--format", "csv", "search", "--degree", "3", "--convention", "distinct")
    lines = (results / "search.csv").read_text().splitlines()
    assert lines[0] == "N,convention,min,enumerated,witness,histogram_json"
    assert lines[1].startswith("3,distinct,2,2,")


def test_avg(run_cli, validate):
    code, out, _ = run_cli("avg", "--degree", "6")
    assert code == 0 and out["meets_bound"] and out["mean"]["value"] == 4.0
    validate(out, "avg")
    code, out, _ = run_cli("--seed", "5", "avg", "--degree", "20", "--mode", "sample", "--samples", "40")
    validate(out, "avg")


def test_table_records_every_output(run_cli, validate):
    code, out, results = run_cli("table", "--to", "5")
    validate(out, "table")
    manifest = json.loads((results / "manifest_table.json").read_text())
    assert len(manifest["outputs"]) == 5
    assert out["other"]["distinct"][2] == [3, 2]


def test_structure(run_cli, validate):
    code, out, _ = run_cli("structure", "+++-+-+-+++", "--period", "2")
    assert code == 0 and out["reconstructs"] and out["greedy_is_minimal"] and out["geometric_exact"]
    validate(out, "structure")
    code, out, _ = run_cli("structure", "+++-+-+-+++", "--scan", "4", "--no-aligned")
    assert [p["D"] for p in out["profile"]] == [1, 2, 3, 4]


def test_factor(run_cli, validate, tmp_path):
    spec = tmp_path / "c.json"
    spec.write_text(json.dumps({"coeffs": [5, 2]}))
    code, out, _ = run_cli("factor", "--coeffs", str(spec))
    assert code == 0 and out["residual"] < 1e-8
    validate(out, "factor")
    spec.write_text(json.dumps({"coeffs": [[1, 0], [1, 0]]}))
    code, out, _ = run_cli("factor", "--coeffs", str(spec))
    assert code == 1 and out["error"] == "NotNonnegative"
    assert run_cli("factor", "--coeffs", str(tmp_path / "missing.json"))[0] == 2


def test_oscillate_and_weyl(run_cli, validate, tmp_path):
    fam = tmp_path / "family.json"
    fam.write_text(json.dumps({"D": 2, "rhos": [0, 1], "blocks": [[1, 1]]}))
    code, out, _ = run_cli("oscillate", "--spec", str(fam), "--N", "4096", "--c", "0.05", "--window", "20")
    assert code == 0 and out["oscillations"] == 5
    validate(out, "oscillate")
    H = tmp_path / "H.json"
    H.write_text(json.dumps({"a0": 1, "terms": [
        {"amplitude": [1, 0], "frequency": {"rational": "1"}}]}))
    code, out, _ = run_cli("weyl", "--spec", str(H), "--n", "1000", "--criterion")
    assert code == 0 and out["criterion"] == "InfinitelyMany"
    validate(out, "weyl")


def test_oddcase(run_cli, validate, tmp_path):
    code, out, _ = run_cli("oddcase", "identity", "--D", "4", "--eps", "0,1,0,-1", "--terms", "5:1")
    assert code == 0 and out["groups"][0]["lhs"] == "192" and out["holds"]
    validate(out, "oddcase_identity")
    spec = tmp_path / "k.json"
    spec.write_text(json.dumps({"D": 4, "eps": [0, 1, 0, -1], "s1": [[5, 1]], "resolution": 2048}))
    code, out, _ = run_cli("oddcase", "kappa", "--spec", str(spec))
    assert code == 0 and out["result"]["gap"] > 0
    validate(out, "oddcase_kappa")
    code, out, _ = run_cli("oddcase", "identity", "--D", "2", "--eps", "0,0")
    assert code == 1 and out["error"] == "InvalidPattern"


def test_probe(run_cli, validate):
    code, out, _ = run_cli("probe-kappa", "--k", "1", "--M", "3", "--res", "1024")
    assert code == 0 and out["polynomials"] == 6
    validate(out, "probe_kappa")
    assert run_cli("probe-kappa", "--k", "4", "--M", "3")[0] == 1


def test_selftest(run_cli, validate):
    code, out, _ = run_cli("selftest")
    assert code == 0 and out["passed"]
    validate(out, "selftest")
    code, out, _ = run_cli("selftest", "--inject-fault")
    assert code == 1
    failed = {c["name"] for c in out["checks"] if not c["passed"]}
    assert "census_vs_grid_oracle" in failed


def test_reruns_are_byte_identical(run_cli):
    _, _, results = run_cli("--seed", "9", "avg", "--degree", "18", "--mode", "sample", "--samples", "30")
    first = (results / "avg.json").read_bytes()
    run_cli("--seed", "9", "avg", "--degree", "18", "--mode", "sample", "--samples", "30")
    assert (results / "avg.json").read_bytes() == first


def test_no_environment_dependence(tmp_path):
    cmd = [sys.executable, "-m", "littlewood.cli", "--out", str(tmp_path), "count", "+--+"]
    base = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    bare = subprocess.run(cmd, capture_output=True, text=True, check=True,
                          env={"PATH": "/usr/bin:/bin"}).stdout
    assert base == bare


def test_global_flags_after_subcommand(run_cli):
    code, out, results = run_cli("count", "+++", "--seed", "4")
    manifest = json.loads((results / "manifest_count.json").read_text())
    assert code == 0 and manifest["seed"] == 4


def test_parser_lists_all_subcommands():
    sub = next(a for a in cli.build_parser()._actions if a.dest == "command")
    assert set(sub.choices) == {"count", "search", "avg", "table", "structure", "factor", "oscillate",
                                "weyl", "oddcase", "probe-kappa", "families", "selftest"}


def test_input_schemas_accept_examples():
    import jsonschema
    from conftest import load_schema
    jsonschema.validate({"D": 2, "rhos": [0, "1/2", 1], "blocks": [[1, [0, 1]], {"freqs": [0, 3], "coeffs": [1, -1]}]},
                        load_schema("family_input"))
    jsonschema.validate({"a0": 0.5, "terms": [
        {"amplitude": [1, 0], "frequency": {"irrational": {"symbol": "phi", "value": 0.618}}},
        {"amplitude": 2, "frequency": {"rational": "1"}}]}, load_schema("trigsum_input"))
