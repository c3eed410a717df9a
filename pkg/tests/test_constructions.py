import pydantic
import pytest

from inqlab.modules import parser
from inqlab.modules.constructions import PaperFormula
from inqlab.modules.constructions import check_reduction
from inqlab.modules.constructions import compactness_witness
from inqlab.modules.constructions import deterministic_cnf_instances
from inqlab.modules.constructions import empty_structure
from inqlab.modules.constructions import encode_3sat
from inqlab.modules.constructions import extract_assignment
from inqlab.modules.constructions import linear_order
from inqlab.modules.constructions import load_dimacs
from inqlab.modules.constructions import paper_formula
from inqlab.modules.constructions import paper_signature
from inqlab.modules.constructions import read_dimacs
from inqlab.modules.constructions import sat_oracle
from inqlab.modules.constructions import satisfying_assignment
from inqlab.modules.evaluator import find_falsifying_subteam
from inqlab.modules.evaluator import satisfies
from inqlab.modules.structures import maximal_team
from inqlab.modules.syntax import Implies
from inqlab.modules.syntax import free_vars
from inqlab.modules.syntax import well_formed
from inqlab.schemas.constructions import CnfInstance
from inqlab.schemas.structures import Team

UNSATISFIABLE = """c every combination of p1 and p2 is ruled out
p cnf 2 4
1 1 2 0
1 1 -2 0
-1 -1 2 0
-1 -1 -2 0
"""

def clause(*literals: int) -> tuple[tuple[int, bool], ...]:
    return tuple((abs(literal) - 1, literal > 0) for literal in literals)

def test_paper_formulas_are_well_formed():
    for name in PaperFormula:
        assert well_formed(paper_formula(name), paper_signature(name)) == []
    assert free_vars(paper_formula(PaperFormula.PHI_XY)) == {"x", "y"}
    assert free_vars(paper_formula(PaperFormula.CONP_PHI)) == {"x", "y", "z"}
    assert not free_vars(paper_formula(PaperFormula.PSI_FINITENESS))

def test_unknown_paper_formula():
    with pytest.raises(ValueError) as error:
        paper_formula("psi")
    assert "phi_xy" in str(error.value)

@pytest.mark.parametrize("domain_size", [1, 2, 3])
def test_bounded_predecessors_on_finite_linear_orders(domain_size):
    """
    Test that every point of a finite linear order has finitely many predecessors.
    """
    formula = paper_formula(PaperFormula.BOUNDED_PREDECESSORS)
    assert satisfies(linear_order(domain_size), formula, fast=True)
    if domain_size <= 2:
        assert satisfies(linear_order(domain_size), formula)

def test_linear_order():
    assert linear_order(2).predicates["leq"] == frozenset({(0, 0), (0, 1), (1, 1)})

@pytest.mark.parametrize("domain_size", [3, 5])
def test_compactness_witness(domain_size):
    """
    Test that at_least_n for n up to the domain size and the finiteness sentence hold together.
    """
    witness = compactness_witness(domain_size)
    assert witness.at_least == {n: True for n in range(1, domain_size + 1)}
    assert witness.psi_finiteness
    assert witness.jointly_satisfiable

@pytest.mark.parametrize("domain_size", [1, 2, 3])
def test_phi_xy_has_no_falsifying_subteam_on_finite_domains(domain_size):
    """
    Test that no team over a finite domain supports the antecedent of phi_xy without its consequent.
    Every team over (x, y) is a sub-team of the maximal one, so searching it covers them all.
    """
    phi = paper_formula(PaperFormula.PHI_XY)
    assert isinstance(phi, Implies)
    structure = empty_structure(domain_size)
    team = maximal_team(("x", "y"), domain_size)
    assert find_falsifying_subteam(structure, team, phi.antecedent, phi.consequent, fast=True) is None
    if domain_size <= 2:
        assert find_falsifying_subteam(structure, team, phi.antecedent, phi.consequent) is None

def test_read_dimacs():
    instance = read_dimacs(UNSATISFIABLE)
    assert instance.variable_count == 2
    assert instance.clauses[1] == clause(1, 1, -2)
    assert read_dimacs(instance.to_dimacs()) == instance

def test_read_dimacs_stops_at_percent_line():
    instance = read_dimacs("p cnf 3 1\n1 -2 3 0\n%\n0\n")
    assert instance.clauses == (clause(1, -2, 3),)

def test_read_dimacs_widens_variable_count():
    assert read_dimacs("p cnf 1 1\n1 2 3 0\n").variable_count == 3

@pytest.mark.parametrize("text", [
    "1 2 3 0\n",
    "p cnf 3 1\n1 2 3 0\np cnf\n",
    "p dnf 3 1\n1 2 3 0\n",
    "p cnf 3 1\n1 2 x 0\n",
    "p cnf 3 1\n1 2 0\n",
    "p cnf 3 1\n1 2 3\n",
    "c only a comment\n",
])
def test_read_dimacs_errors(text):
    with pytest.raises(ValueError):
        read_dimacs(text)

def test_load_dimacs(tmp_path):
    path = tmp_path / "unsat.cnf"
    path.write_text(UNSATISFIABLE)
    assert len(load_dimacs(path).clauses) == 4

def test_cnf_instance_validation():
    with pytest.raises(pydantic.ValidationError):
        CnfInstance(variable_count=1, clauses=(clause(1, 2, 3),))
    with pytest.raises(pydantic.ValidationError):
        CnfInstance(variable_count=3, clauses=(clause(1, 2),))

def test_sat_oracle():
    assert satisfying_assignment(CnfInstance(variable_count=3, clauses=(clause(1, 1, 1),))) == {0: True, 1: False, 2: False}
    assert not sat_oracle(read_dimacs(UNSATISFIABLE))
    with pytest.raises(ValueError):
        sat_oracle(CnfInstance(variable_count=25, clauses=(clause(1, 2, 3),)))

def test_encode_3sat_layout():
    """
    Test the domain blocks and the (z, u, x, y) rows of a one-clause encoding.
    """
    output = encode_3sat(CnfInstance(variable_count=3, clauses=(clause(1, -2, 3),)))
    assert output.clause_elements == (0,)
    assert output.position_elements == (1, 2, 3)
    assert output.variable_elements == {0: 4, 1: 5, 2: 6}
    assert output.parity_elements == (7, 8)
    assert output.structure.domain_size == 9
    assert output.team.vars == ("z", "u", "x", "y")
    assert output.team.rows == ((0, 1, 4, 8), (0, 2, 5, 7), (0, 3, 6, 8))
    assert output.formula_text == parser.render(paper_formula(PaperFormula.CONP_PHI))

def test_encode_3sat_rejects_empty_instance():
    with pytest.raises(ValueError):
        encode_3sat(CnfInstance(variable_count=1, clauses=()))

def test_extract_assignment():
    output = encode_3sat(CnfInstance(variable_count=3, clauses=(clause(1, -2, 3),)))
    assert extract_assignment(output, Team(vars=output.team.vars, rows=output.team.rows[:2])) == {0: True, 1: False}
    clash = Team(vars=output.team.vars, rows=((0, 1, 4, 8), (0, 2, 4, 7)))
    with pytest.raises(ValueError):
        extract_assignment(output, clash)

def test_reduction_on_unsatisfiable_instance():
    check = check_reduction(read_dimacs(UNSATISFIABLE))
    assert check.supports
    assert not check.satisfiable
    assert check.agree
    assert check.assignment is None

def test_reduction_extracts_a_satisfying_assignment():
    instance = CnfInstance(variable_count=3, clauses=(clause(1, 2, 3), clause(-1, -2, -3), clause(1, -2, -2)))
    check = check_reduction(instance)
    assert not check.supports
    assert check.satisfiable
    assert check.agree
    assert check.assignment_satisfies

def test_deterministic_instances():
    instances = deterministic_cnf_instances()
    assert len(instances) == 240
    assert len({instance.clauses for instance in instances}) == 240
    assert instances == deterministic_cnf_instances()
    with pytest.raises(ValueError):
        deterministic_cnf_instances(variables=2)

def test_reduction_agrees_with_sat_oracle():
    """
    Test the fast evaluator on every instance of the fixed set, and the reference
    evaluator on the single-clause instances.
    """
    for instance in deterministic_cnf_instances():
        check = check_reduction(instance)
        assert check.agree, instance.to_dimacs()
        assert check.assignment_satisfies is not False
        if len(instance.clauses) == 1:
            assert check_reduction(instance, fast=False) == check
