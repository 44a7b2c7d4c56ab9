import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sctkit.characters import character_table
from sctkit.library import builtin_group
from sctkit.plotting import plot_lattice, plot_report, plot_series, plot_theory
from sctkit.report import Report, emit_report
from sctkit.structure import lower_central_series, upper_central_series
from sctkit.suites import SUITES, run_suite
from sctkit.theory import enumerate_scts, minimal_sct


def test_report_counts_and_json():
    rep = Report("demo")
    rep.add("a", "first", True, "x", {3, 1, 2})
    rep.add("a", "first", False, "y", Fraction(1, 2))
    rep.add("b", "second", True, "z")
    assert rep.passes == 2 and rep.failures == 1 and not rep.ok
    assert rep.counts_by_check() == {"a": (1, 1), "b": (1, 0)}
    data = json.loads(emit_report(rep))
    assert data["failures"] == 1 and data["passed"] == 2
    assert data["entries"][0]["witness"] == [1, 2, 3]
    assert data["entries"][1]["witness"] == "1/2"


def test_table_format():
    rep = Report("demo")
    rep.add("zeta", "z", True, "s1")
    rep.add("alpha", "a", False, "s2", [1])
    lines = emit_report(rep, "table").splitlines()
    assert lines[0].split()[:2] == ["check", "status"]
    assert lines[1].startswith("alpha") and lines[2].startswith("zeta")
    assert lines[-1] == "1 passed, 1 failed"
    with pytest.raises(ValueError):
        emit_report(rep, "xml")


@given(st.lists(st.tuples(st.sampled_from("abc"), st.booleans()), max_size=20))
def test_counts_add_up(rows):
    rep = Report()
    for check, ok in rows:
        rep.add(check, "", ok, "s")
    assert rep.passes + rep.failures == len(rows)
    assert sum(p + f for p, f in rep.counts_by_check().values()) == len(rows)
    assert rep.ok == all(ok for _, ok in rows)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nonsense")
    assert "algebra" in SUITES


@pytest.mark.parametrize("name,corpus", [("axioms", ["C4"]), ("divisibility", ["S3"]), ("nilpotence", ["Q8"])])
def test_small_suites_pass(name, corpus):
    rep = run_suite(name, corpus)
    assert rep.ok and rep.entries


def test_plots_are_reproducible(tmp_path):
    G = builtin_group("D4")
    scts = enumerate_scts(character_table(G))
    S = minimal_sct(character_table(G))
    rep = run_suite("example")
    paths = [
        plot_report(rep, str(tmp_path / "r.png")),
        plot_theory(S, str(tmp_path / "t.png")),
        plot_series({"lower": lower_central_series(S).orders, "upper": upper_central_series(S).orders}, str(tmp_path / "s.png")),
        plot_lattice(scts, str(tmp_path / "l.png")),
    ]
    first = [open(p, "rb").read() for p in paths]
    plot_lattice(scts, str(tmp_path / "l.png"))
    assert open(paths[3], "rb").read() == first[3]
    assert all(b[:4] == b"\x89PNG" for b in first)
