from __future__ import annotations

import matplotlib.figure
import pytest

from flagsem import props
from flagsem.formulas import parse_formula
from flagsem.plotting import draw_report, draw_structure
from flagsem.proofnets import is_correct, unique_matching


@pytest.mark.parametrize("suite", ["before", "flag", "nomonad", "hyper", "nets"])
def test_suites_pass(suite):
    results = props.run_suite(suite, props.Config(max_depth=2))
    assert results and all(r.ok for r in results), [r.line() for r in results if not r.ok]
    assert all(r.cases > 0 for r in results)


def test_functor_suite_shallow():
    results = props.run_suite("functor", props.Config(max_depth=2))
    assert all(r.ok for r in results)


def test_unknown_suite_and_bad_config():
    with pytest.raises(KeyError):
        props.run_suite("nope")
    with pytest.raises(ValueError):
        props.Config(max_depth=0)
    with pytest.raises(ValueError):
        props.Config(catalog="huge")


def test_failure_records_first_witness():
    check = props._Check("demo")
    check(True)
    check(False, "first")
    check(False, "second")
    r = check.result()
    assert not r.ok and r.cases == 3 and r.line() == "demo\tFAIL\tfirst"


def test_small_spaces_are_all_relations():
    assert [len([s for s in props.small_spaces(3) if len(s.web) == n]) for n in (1, 2, 3)] == [1, 2, 8]


def test_drawings_return_figures_or_paths(tmp_path):
    pi = unique_matching(parse_formula(props.CHORDLESS[0]))
    v = is_correct(pi)
    fig = draw_structure(pi.dicograph, pi.sorted_links(), v.circuit.vertices)
    assert isinstance(fig, matplotlib.figure.Figure)
    path = draw_structure(pi.dicograph, pi.sorted_links(), path=tmp_path / "s.png")
    assert path.stat().st_size > 0
    out = draw_report(props.run_suite("nomonad"), "t", tmp_path / "sub" / "r.png")
    assert out.exists()
