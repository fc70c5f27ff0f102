from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from graph_ideals.cli import EXIT_ERROR, EXIT_NOT_COVERED, EXIT_OK, main, run

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def g(name):
    return str(DATA / name)


def cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "graph_ideals.cli", *argv], capture_output=True, text=True
    )


def test_classify_triangle():
    status, report, text = run(["classify", "--family", "I", "--char", "0", g("triangle.g")])
    assert status == EXIT_OK
    assert report["result"]["status"] == "CI" and report["result"]["witness"] == "odd cycle"
    assert "status: CI (odd cycle)" in text


def test_invariants_kite_json():
    status, report, text = run(["invariants", "--family", "I", "--char", "0", "--output", "json", g("kite.g")])
    data = json.loads(text)
    assert status == EXIT_OK
    assert data["result"]["pd"] == 5 and data["result"]["is_CM"] is True


def test_scan_text():
    status, _, text = run(["scan", "--nmax", "5", "--checks", "ci-height"])
    assert status == EXIT_OK and "0 violations" in text


def test_top_level_keys():
    _, report, _ = run(["primes", "--output", "json", g("triangle.g")])
    assert {"command", "graph", "family", "field", "result", "provenance"} <= set(report)
    assert report["schema_version"] == 1


@pytest.mark.parametrize(
    "argv, code",
    [
        (["classify", "--family", "I", "--char", "2", "triangle_pendant.g"], EXIT_NOT_COVERED),
        (["classify", "--family", "Pi", "--char", "2", "triangle.g"], EXIT_NOT_COVERED),
        (["classify", "--family", "J", "triangle.g"], EXIT_NOT_COVERED),
        (["syzygy", "c4.g"], EXIT_NOT_COVERED),
        (["primes", "--family", "Pi", "triangle.g"], EXIT_NOT_COVERED),
        (["classify", "duplicate.g"], EXIT_ERROR),
        (["classify", "missing.g"], EXIT_ERROR),
        (["classify", "--char", "4", "triangle.g"], EXIT_ERROR),
        (["classify", "--char", "5", "--sqrt-minus-one", "no", "triangle.g"], EXIT_ERROR),
        (["classify", "--char", "3", "--sqrt-minus-one", "yes", "triangle.g"], EXIT_ERROR),
        (["classify", "--family", "X", "triangle.g"], EXIT_ERROR),
        (["scan", "--nmax", "3", "--checks", "bogus"], EXIT_ERROR),
        (["scan", "--nmax", "9"], EXIT_ERROR),
        (["classify", "--char", "5", "--sqrt-minus-one", "yes", "triangle.g"], EXIT_OK),
        (["verify", "claw.g"], EXIT_OK),
        (["oracle", "--primes", "2,3,101", "claw.g"], EXIT_OK),
    ],
)
def test_exit_codes(argv, code, capsys):
    argv = [g(a) if a.endswith(".g") else a for a in argv]
    assert main(argv) == code
    if code == EXIT_ERROR:
        assert "error" in capsys.readouterr().err


def test_argparse_usage_error_exits_one():
    assert cli("classify").returncode == EXIT_ERROR
    assert cli("frobnicate", g("triangle.g")).returncode == EXIT_ERROR


def test_parse_error_message_names_line(capsys):
    main(["classify", g("duplicate.g")])
    assert "line 3" in capsys.readouterr().err


VERB_ARGS = [
    ["classify", "--family", "I", g("triangle.g")],
    ["invariants", "--family", "L", "--char", "101", g("claw.g")],
    ["primes", "--family", "I", g("triangle.g")],
    ["primes", "--family", "L", "--char", "3", g("p3.g")],
    ["syzygy", "--family", "L", g("claw.g")],
    ["sym", "--family", "L", g("p3.g")],
    ["verify", "--family", "I", g("kite.g")],
    ["oracle", "--family", "I", "--primes", "3", g("triangle_pendant.g")],
    ["scan", "--nmax", "4", "--checks", "ci-height,aci-height"],
    ["classify", "--family", "J", g("triangle.g")],
]


@pytest.mark.parametrize("argv", VERB_ARGS, ids=lambda a: "-".join(Path(x).stem for x in a[:1] + a[-1:]))
def test_json_round_trip(argv):
    _, report, text = run(argv + ["--output", "json"])
    assert json.loads(text) == report


def test_output_is_byte_deterministic():
    argv = ["invariants", "--family", "I", "--output", "json", g("kite.g")]
    first, second = cli(*argv), cli(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_stdin_input(monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("3 3\n1 2\n2 3\n1 3\n"))
    status, report, _ = run(["classify", "-"])
    assert status == EXIT_OK and report["graph"]["encoding"] == "3:1-2,1-3,2-3"


GOLDEN_CASES = {
    "classify_triangle": ["classify", "--family", "I", "--char", "0", g("triangle.g")],
    "invariants_kite": ["invariants", "--family", "I", "--char", "0", g("kite.g")],
    "primes_triangle_parity": ["primes", "--family", "I", g("triangle.g")],
    "syzygy_claw": ["syzygy", "--family", "L", g("claw.g")],
    "sym_p3": ["sym", "--family", "L", g("p3.g")],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    _, _, text = run(GOLDEN_CASES[name] + ["--output", "json"])
    path = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")
