import pytest

from inqlab.modules.constructions import PaperFormula
from inqlab.modules.constructions import paper_formula
from inqlab.modules.syntax import And
from inqlab.modules.syntax import App
from inqlab.modules.syntax import Atom
from inqlab.modules.syntax import Bottom
from inqlab.modules.syntax import DerivedForm
from inqlab.modules.syntax import DerivedTag
from inqlab.modules.syntax import Eq
from inqlab.modules.syntax import ForAll
from inqlab.modules.syntax import IDisj
from inqlab.modules.syntax import IExists
from inqlab.modules.syntax import Implies
from inqlab.modules.syntax import RangeAll
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import classical_exists
from inqlab.modules.syntax import conjunction
from inqlab.modules.syntax import dependence
from inqlab.modules.syntax import depth
from inqlab.modules.syntax import desugar
from inqlab.modules.syntax import free_vars
from inqlab.modules.syntax import fresh_variable
from inqlab.modules.syntax import in_clant_fragment
from inqlab.modules.syntax import in_rex_fragment
from inqlab.modules.syntax import is_classical
from inqlab.modules.syntax import is_flat_fragment
from inqlab.modules.syntax import is_inqbt
from inqlab.modules.syntax import make_paper_sugar
from inqlab.modules.syntax import neg
from inqlab.modules.syntax import question
from inqlab.modules.syntax import signature_of
from inqlab.modules.syntax import top
from inqlab.modules.syntax import value_question
from inqlab.modules.syntax import value_question_iexists
from inqlab.modules.syntax import well_formed
from inqlab.schemas.syntax import Signature

x, y = Var("x"), Var("y")

def test_value_question_uses_least_fresh_variable():
    """
    Test that λy expands to ∀v0 ?(v0 = y).
    """
    equation = Eq(Var("v0"), y)
    assert value_question(y) == ForAll("v0", IDisj(equation, Implies(equation, Bottom())))

def test_value_question_avoids_term_variables():
    """
    Test that the bound variable skips names occurring in the term.
    """
    formula = value_question(Var("v0"))
    assert isinstance(formula, ForAll)
    assert formula.var == "v1"
    assert value_question_iexists(Var("v0")) == IExists("v1", Eq(Var("v1"), Var("v0")))

def test_fresh_variable_enumeration():
    assert fresh_variable([]) == "v0"
    assert fresh_variable({"v0", "v1", "x"}) == "v2"

def test_dependence_without_determiners_is_value_question():
    """
    Test that dep(;y) is λy and dep(x;y) is λx → λy.
    """
    assert dependence([], y) == value_question(y)
    assert dependence([x], y) == Implies(value_question(x), value_question(y))

def test_dependence_conjoins_determiners_left_nested():
    formula = dependence([x, y], Var("z"))
    assert formula.antecedent == And(value_question(x), value_question(y))

def test_empty_conjunction_is_top():
    assert conjunction([]) == top() == Implies(Bottom(), Bottom())

def test_classical_exists_is_double_negation():
    body = Atom("P", (x,))
    assert classical_exists("x", body) == neg(ForAll("x", neg(body)))

def test_make_paper_sugar_and_desugar_agree():
    """
    Test that the sugar constructors and DerivedForm expansion build the same core formulas.
    """
    body = Atom("P", (x,))
    assert make_paper_sugar("QuestionMark", [body]) == question(body)
    assert make_paper_sugar(DerivedTag.VALUE_QUESTION, ["y"]) == value_question(y)
    assert make_paper_sugar("DepAtom", [["x"], "y"]) == dependence([x], y)
    assert desugar(DerivedForm(DerivedTag.NOT, (body,))) == neg(body)
    assert desugar(DerivedForm(DerivedTag.QUESTION_MARK, (DerivedForm(DerivedTag.NOT, (body,)),))) == question(neg(body))

def test_make_paper_sugar_rejects_other_tags():
    with pytest.raises(ValueError):
        make_paper_sugar("Not", [Atom("P", (x,))])
    with pytest.raises(ValueError):
        make_paper_sugar("DepAtom", ["x", "y"])

def test_free_vars_respects_binders():
    formula = And(ForAll("x", Atom("Q", (x, y))), RangeAll("y", Atom("P", (y,))))
    assert free_vars(formula) == {"y"}
    assert free_vars(value_question(App("c"))) == frozenset()

def test_depth():
    assert depth(Bottom()) == 1
    assert depth(ForAll("x", And(Bottom(), Bottom()))) == 3

def test_well_formed_reports_arity_and_unknown_symbols():
    """
    Test that diagnostics carry the AST path of the offending node.
    """
    signature = Signature(predicates={"P": 2})
    formula = And(Atom("P", (x,)), Atom("R", (x,)))
    diagnostics = well_formed(formula, signature)
    assert [diagnostic.path for diagnostic in diagnostics] == [("left",), ("right",)]
    assert "expects 2" in diagnostics[0].message
    assert well_formed(Atom("P", (x, y)), signature) == []

def test_well_formed_rejects_binding_a_constant():
    signature = Signature(functions={"c": 0})
    diagnostics = well_formed(ForAll("c", Bottom()), signature)
    assert diagnostics[0].path == ("var",)

def test_signature_of_collects_symbols():
    formula = Implies(Atom("P", (App("f", (x,)),)), Eq(App("c"), y))
    assert signature_of(formula) == Signature(predicates={"P": 1}, functions={"f": 1, "c": 0})

def test_signature_of_rejects_conflicting_arities():
    with pytest.raises(ValueError):
        signature_of(And(Atom("P", (x,)), Atom("P", (x, y))))

def test_fragment_predicates():
    """
    Test the language and fragment predicates on small formulas.
    """
    flat = RangeAll("x", Atom("P", (x,)))
    assert is_flat_fragment(flat) and not is_inqbt(flat) and not is_classical(flat)
    assert is_classical(ForAll("x", Atom("P", (x,))))
    assert not is_flat_fragment(question(Atom("P", (x,))))
    assert is_inqbt(dependence([x], y))

def test_phi_ab_is_in_neither_translatable_fragment():
    """
    Test that φ(a,b) has a non-classical antecedent and an ∃i outside every antecedent.
    """
    formula = paper_formula(PaperFormula.PHI_AB)
    assert not in_clant_fragment(formula)
    assert not in_rex_fragment(formula)

def test_fragment_membership_positive_cases():
    assert in_clant_fragment(Implies(Atom("P", (x,)), question(Atom("P", (y,)))))
    assert in_rex_fragment(Implies(IExists("x", Atom("P", (x,))), Bottom()))
