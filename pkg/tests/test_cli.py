import io
import subprocess
import sys

import pytest
from conftest import FIXTURES, fixture_names

from evstruct.cli import main


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out)
    return code, out.getvalue()


def fx(name):
    return FIXTURES / f"{name}.model"


def test_validate():
    assert run("validate", fx("dces_example")) == (0, "valid dces\n")


def test_validate_failures(capsys):
    code, _ = run("validate", fx("invalid/dces_condition4"))
    assert code == 2 and "condition 4" in capsys.readouterr().err
    assert run("validate", fx("invalid/undeclared_event"))[0] == 2
    assert run("validate", fx("invalid/syntax_error"))[0] == 2
    assert run("validate", FIXTURES / "missing.model")[0] == 3


def test_configs_counts():
    assert run("configs", fx("ies_example"), "--count") == (0, "states: 6\nedges: 6\n")
    assert run("configs", fx("empty"), "--count") == (0, "states: 1\nedges: 0\n")


def test_configs_ternary_conflict():
    code, text = run("configs", fx("ternary_conflict"))
    assert code == 0
    states = [ln for ln in text.splitlines() if ln.startswith("state ")]
    assert len(states) == 7
    assert "state {a b c}" not in states


def test_configs_formats_are_deterministic():
    for flag in ("--dot", "--json", "--text"):
        assert run("configs", fx("dces_example"), flag) == run("configs", fx("dces_example"), flag)
    assert run("configs", fx("or_causality"), "--dot")[1].startswith("digraph configurations {")


def test_translate_rces_via_ea():
    code, text = run("translate", fx("rces_example"), "--to", "cdes", "--via", "ea")
    assert code == 0
    assert "entry a : ({}|{}) ({b}|{a}) ({c}|{}) ({b c}|{})" in text
    assert text.endswith("// equivalence: verified\n")


def test_translate_pes_direct():
    code, text = run("translate", fx("pes_example"), "--to", "cdes", "--via", "direct")
    assert code == 0 and "entry b : ({}|{a})" in text


def test_translate_ges_to_ies():
    code, text = run("translate", fx("adding_dependencies_ges"), "--to", "ies")
    assert code == 0 and "inh {b} c {a}\n" in text


def test_translate_hypothesis_failure(capsys):
    assert run("translate", fx("fullness_counterexample"), "--via", "ea")[0] == 2
    assert "DanglingEvent" in capsys.readouterr().err
    assert run("translate", fx("pes_example"), "--to", "ies")[0] == 2


def test_equiv():
    assert run("equiv", fx("rces_example"), fx("resolvable_conflicts")) == (0, "equivalent\n")


def test_equiv_fig4_against_or_causality():
    assert run("equiv", fx("ies_or_causality"), fx("or_causality")) == (0, "equivalent\n")


def test_not_equivalent_prints_witness():
    code, text = run("equiv", fx("resolvable_conflicts_automaton"), fx("removing_dependencies"))
    assert code == 1 and text.startswith("not equivalent: ")


def test_props():
    assert "faithful: false\n" in run("props", fx("faithfulness_counterexample"))[1]
    assert "full: false\n" in run("props", fx("fullness_counterexample"))[1]
    text = run("props", fx("rpes_example"))[1]
    assert "partial-order: true" in text


@pytest.mark.parametrize("name", [n for n in fixture_names() if n != "fullness_counterexample"])
def test_props_simple_and_complete(name):
    text = run("props", fx(name))[1]
    assert "simple: true\n" in text and "complete: true\n" in text


def test_enabled_reports_conflict_separately():
    assert run("enabled", fx("or_causality"), "b", "--at", "a") == (
        1, "enabled at {a}: true\nconflict-free: false\n")
    assert run("enabled", fx("or_causality"), "c", "--at", "a")[0] == 0
    assert run("enabled", fx("pes_example"), "a")[0] == 2


@pytest.mark.parametrize("name", fixture_names())
def test_oracle_agrees(name):
    assert run("oracle", fx(name)) == (0, "agree\n")


def test_oracle_cap():
    assert run("oracle", fx("dces_example"), "--max-events", "3")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "evstruct", "validate", str(fx("empty"))],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "valid cdes\n"
