import io
import json
import subprocess
import sys

import pytest

from sctkit.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, parse_invocation, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_group_info_json():
    code, out, _ = call("group", "info", "D4")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["order"] == 8 and data["nilpotent"] is True
    assert sorted(data["degrees"]) == [1, 1, 1, 1, 2]


def test_enumerate_counts():
    code, out, _ = call("sct", "enumerate", "C4")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 3


def test_validate_accepts_and_rejects():
    code, out, _ = call("sct", "validate", "C6", "--classes", "[[0],[3],[2,5],[1,4]]")
    assert code == EXIT_OK and json.loads(out)["valid"] is True
    code, out, _ = call("sct", "validate", "C6", "--classes", "[[0],[1],[2,3,4,5]]")
    data = json.loads(out)
    assert code == EXIT_FAIL
    assert data["valid"] is False and data["axiom"] == "inverse-closure"


def test_classes_from_file(tmp_path):
    path = tmp_path / "k.json"
    path.write_text("[[0],[3],[2,5],[1,4]]")
    code, out, _ = call("sct", "center", "C6", "--classes", str(path))
    assert code == EXIT_OK
    assert json.loads(out)["center"]["members"] == [0, 3]


def test_nilpotent_and_series():
    code, out, _ = call("sct", "nilpotent", "C6", "--classes", "[[0],[3],[2,5],[1,4]]")
    assert code == EXIT_OK and json.loads(out)["nilpotent"] is True
    code, out, _ = call("sct", "series", "C6", "--classes", "[[0],[3],[2,5],[1,4]]", "--kind", "chief")
    assert code == EXIT_OK
    assert "6" in out and "2" in out


def test_theory_selection_by_name():
    code, out, _ = call("sct", "nilpotent", "S3", "--theory", "max")
    assert code == EXIT_OK and json.loads(out)["nilpotent"] is False
    code, _, err = call("sct", "nilpotent", "S3", "--theory", "99")
    assert code == EXIT_USAGE and err


def test_join_meet_and_commutator():
    code, out, _ = call("sct", "join", "C4", "--classes", "[[0],[1,3],[2]]", "--classes", "[[0],[1],[2],[3]]")
    assert code == EXIT_OK
    assert json.loads(out)["classes"] == [[0], [1, 3], [2]]
    code, out, _ = call("sct", "meet", "C4", "--classes", "[[0],[1,3],[2]]", "--classes", "[[0],[1,2,3]]")
    assert code == EXIT_OK
    assert json.loads(out)["classes"] == [[0], [1, 3], [2]]
    code, out, _ = call("sct", "commutator", "S3", "--theory", "min")
    assert code == EXIT_OK and json.loads(out)["commutator"]["order"] == 3


def test_pcore_and_reports():
    code, out, _ = call("sct", "pcore", "C6", "--classes", "[[0],[3],[2,5],[1,4]]", "-p", "2")
    assert code == EXIT_OK and json.loads(out)["core"]["members"] == [0, 3]
    for kind in ("divisibility", "column", "coherence"):
        code, out, _ = call("sct", "report", kind, "D4", "--theory", "0")
        data = json.loads(out)
        assert code == EXIT_OK and data["failures"] == 0 and data["entries"]


def test_algebra_commands():
    code, out, _ = call("alg", "sct", "ut:3:2")
    assert code == EXIT_OK
    data = json.loads(out)
    assert sorted(data["degrees"]) == [1, 1, 1, 1, 4]
    code, out, _ = call("alg", "series", "ut:3:2")
    assert code == EXIT_OK and json.loads(out)["failures"] == 0
    code, out, _ = call("alg", "builtin", "ut", "--n", "3", "--q", "2")
    assert code == EXIT_OK and json.loads(out)["dim"] == 3
    code, _, err = call("alg", "sct", "ut:3:6")
    assert code == EXIT_USAGE and "UnsupportedField" in err


def test_suite_runs_and_table_format():
    code, out, _ = call("suite", "run", "example", "--format", "table")
    assert code == EXIT_OK
    assert out.rstrip().endswith("10 passed, 0 failed")
    code, out, _ = call("suite", "run", "lattice", "--empty")
    assert code == EXIT_OK and json.loads(out)["entries"] == []


def test_bad_corpus_item_becomes_failure():
    code, out, _ = call("suite", "run", "axioms", "C3", "no-such-group")
    data = json.loads(out)
    assert code == EXIT_FAIL
    assert [e["check"] for e in data["entries"] if e["status"] == "fail"] == ["input"]


def test_suite_output_is_deterministic():
    a = call("suite", "run", "nilpotence", "C6", "D4")[1]
    b = call("suite", "run", "nilpotence", "C6", "D4")[1]
    assert a == b


def test_usage_errors_name_the_token():
    code, _, err = call("sct", "--bogus")
    assert code == EXIT_USAGE and "--bogus" in err
    code, _, err = call("frobnicate")
    assert code == EXIT_USAGE and "frobnicate" in err
    code, _, err = call("sct", "validate", "C6")
    assert code == EXIT_USAGE


def test_invocation_record():
    inv = parse_invocation(["sct", "series", "C6", "--theory", "min", "--kind", "upper", "--format", "table"])
    assert inv.command == "sct series"
    assert inv.inputs == ["C6"]
    assert inv.fmt == "table" and inv.flags["kind"] == "upper"


def test_figures_written(tmp_path):
    code, _, _ = call("sct", "enumerate", "D4", "--figures", str(tmp_path))
    assert code == EXIT_OK
    code, _, _ = call("suite", "run", "example", "--figures", str(tmp_path))
    assert code == EXIT_OK
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "lattice.png" in names and "suite-example.png" in names
    assert all((tmp_path / n).read_bytes()[:4] == b"\x89PNG" for n in names)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sctkit.cli", "group", "info", "C3", "--format", "table"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.split()[:2] == ["order", "3"]
