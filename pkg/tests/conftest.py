from __future__ import annotations

import json
import sys
from importlib import resources

import jsonschema
import pytest

from littlewood import cli


def load_schema(name: str) -> dict:
    return json.loads(resources.files("littlewood").joinpath("schemas", f"{name}.json").read_text())


@pytest.fixture
def run_cli(tmp_path, capsys):
    """Run the CLI in-process; returns (exit code, parsed stdout or None, out dir)."""
    out = tmp_path / "results"

    def run(*argv: str):
        code = cli.main(["--out", str(out), *argv])
        text = capsys.readouterr().out
        try:
            payload = json.loads(text) if text.strip() else None
        except ValueError:
            payload = None
        return code, payload, out

    return run


@pytest.fixture
def validate():
    def check(payload, name: str) -> None:
        jsonschema.validate(payload, load_schema(name))
    return check


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(module.REPORT):
        terminalreporter.write_line(module.REPORT[k])
