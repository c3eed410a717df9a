import pytest

from inqlab.modules.constructions import read_dimacs
from inqlab.schemas.inqbq import InfoModel
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team
from inqlab.services import demos
from inqlab.services import evaluation

def test_formula_signature_merges_extra_symbols(structure, signature):
    assert evaluation.formula_signature(structure) == signature
    assert evaluation.formula_signature(structure, "R/0").predicates["R"] == 0
    with pytest.raises(ValueError):
        evaluation.formula_signature(structure, "P/2")
    with pytest.raises(ValueError):
        evaluation.formula_signature(structure, "; d/0")

def test_evaluate_team_timing(structure):
    team = Team(vars=("x",), rows=((0,),))
    assert evaluation.evaluate_team(structure, team, "P(x)").elapsed_ms is None
    verdict = evaluation.evaluate_team(structure, team, "P(x)", fast=True, timing=True)
    assert verdict.supports
    assert verdict.stats.flat_shortcuts == 1
    assert verdict.elapsed_ms >= 0

def test_evaluate_state_defaults_to_full_state():
    model = InfoModel(
        worlds=2,
        domain=1,
        interpretation=[{"domain": 1, "predicates": {"P": [[0]]}}, {"domain": 1, "predicates": {"P": [[0]]}}],
    )
    verdict = evaluation.evaluate_state(model, "forall x. P(x)")
    assert verdict.supports
    assert verdict.state == 0b11
    assert verdict.worlds == [0, 1]

def test_finiteness_demo_on_three_elements():
    """
    Test the profile counts over all 512 teams on three elements.
    """
    demo = demos.finiteness_demo(3)
    assert demo.psi_finiteness and not demo.psi_neg_infinity
    assert demo.teams == 512
    assert demo.functions == 64
    assert demo.injective == 64
    assert demo.dom_full == 343
    assert demo.ran_full == 343
    assert demo.injective_total_non_surjective == 0
    assert demo.mismatches == 0

def test_paper_text():
    response = demos.paper_text("conp_phi")
    assert response.signature == "C/1, V/1"
    with pytest.raises(ValueError):
        demos.paper_text("nope")

def test_reduce_3sat_report():
    report = demos.reduce_3sat(read_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n"), source="two.cnf")
    assert report.source == "two.cnf"
    assert report.agree
    assert report.check.satisfiable

def test_translate_check_report():
    report = demos.translate_check(max_worlds=1, max_domain=2)
    assert report.agree
    assert [result.models_checked for result in report.results] == [10, 10, 10]

def test_finiteness_demo_with_reference_evaluator():
    """
    Test that the profile fields match the reference evaluator on every team over two elements.
    """
    demo = demos.finiteness_demo(2, fast=False)
    assert demo.evaluator == "reference"
    assert demo.psi_finiteness and not demo.psi_neg_infinity
    assert demo.teams == 16
    assert demo.mismatches == 0

@pytest.mark.slow
def test_finiteness_demo_with_reference_evaluator_on_three_elements():
    demo = demos.finiteness_demo(3, fast=False)
    assert demo.psi_finiteness and not demo.psi_neg_infinity
    assert demo.teams == 512
    assert demo.mismatches == 0

def test_evaluate_team_rejects_rows_outside_domain(structure):
    with pytest.raises(ValueError):
        evaluation.evaluate_team(structure, Team(vars=("x",), rows=((7,),)), "iexists y. y = x")

def test_evaluate_team_infers_arity_of_empty_predicate():
    """
    Test that a predicate with an empty table takes its arity from the formula.
    """
    empty = Structure(domain=2, predicates={"P": []})
    verdict = evaluation.evaluate_team(empty, Team(vars=("x",), rows=((0,), (1,))), "~P(x)")
    assert verdict.supports
    assert verdict.structure is None and verdict.team is None

def test_failing_verdict_carries_structure_and_team(structure):
    team = Team(vars=("x",), rows=((0,), (1,)))
    verdict = evaluation.evaluate_team(structure, team, "P(x)")
    assert not verdict.supports
    assert verdict.structure == structure
    assert verdict.team == team

def test_evaluate_state_rejects_assignment_outside_domain():
    model = InfoModel(
        worlds=1,
        domain=1,
        interpretation=[{"domain": 1, "predicates": {"P": [[0]]}}],
    )
    with pytest.raises(ValueError):
        evaluation.evaluate_state(model, "P(x)", assignment={"x": 3})
