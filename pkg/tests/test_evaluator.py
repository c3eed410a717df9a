import pytest

from inqlab.modules import parser
from inqlab.modules.constructions import PaperFormula
from inqlab.modules.constructions import at_least_n
from inqlab.modules.constructions import empty_structure
from inqlab.modules.constructions import paper_formula
from inqlab.modules.evaluator import denote
from inqlab.modules.evaluator import dep_profile
from inqlab.modules.evaluator import find_falsifying_subteam
from inqlab.modules.evaluator import satisfies
from inqlab.modules.evaluator import supports
from inqlab.modules.evaluator import supports_fast
from inqlab.modules.evaluator import supports_fast_with_stats
from inqlab.modules.evaluator import tarski
from inqlab.modules.structures import CapExceededError
from inqlab.modules.structures import enumerate_teams
from inqlab.modules.syntax import App
from inqlab.modules.syntax import Atom
from inqlab.modules.syntax import Bottom
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import top
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team

NO_FAST_PATHS = EvalConfig(enable_fast_paths=False)

@pytest.fixture
def small_structure() -> Structure:
    return Structure(domain=2, predicates={"P": [[0]], "Q": [[0, 1], [1, 1]]}, functions={"c": {"()": 1}})

def xs(*values: int) -> Team:
    return Team(vars=("x",), rows=tuple((value,) for value in values))

def xys(*rows: tuple[int, int]) -> Team:
    return Team(vars=("x", "y"), rows=rows)

@pytest.mark.parametrize("text, team, expected", [
    ("P(x)", xs(0), True),
    ("P(x)", xs(0, 1), False),
    ("?P(x)", xs(0, 1), False),
    ("?P(x)", xs(1, 2), True),
    ("lam x", xs(1), True),
    ("lam x", xs(0, 1), False),
    ("lam c", xs(0, 1, 2), True),
    ("forall x. P(x)", xs(0), False),
    ("[y] ~Q(x, y)", xs(2), True),
    ("iexists y. Q(x, y)", xs(0, 1), False),
    ("iexists y. (y = x)", xs(0, 1), False),
    ("iexists y. (y = x)", xs(1), True),
    ("x != c", xs(0, 1), True),
    ("bot", xs(), True),
    ("bot", xs(0), False),
])
def test_support_clauses(structure, signature, text, team, expected):
    """
    Test individual support clauses with both evaluators.
    """
    formula = parser.parse(text, signature)
    assert supports(structure, team, formula) is expected
    assert supports_fast(structure, team, formula) is expected

@pytest.mark.parametrize("rows, expected", [
    (((0, 1), (1, 2)), True),
    (((0, 1), (0, 1), (1, 1)), True),
    (((0, 1), (0, 2)), False),
])
def test_dependence_atom(structure, rows, expected):
    formula = parser.parse("dep(x;y)")
    team = xys(*rows)
    assert supports(structure, team, formula) is expected
    assert supports(structure, team, formula, NO_FAST_PATHS) is expected
    assert supports_fast(structure, team, formula) is expected
    assert supports_fast(structure, team, formula, NO_FAST_PATHS) is expected

@pytest.mark.parametrize("text", [
    "?P(x)",
    "dep(x;y)",
    "dep(y;x)",
    "lam y",
    "lam c",
    "P(x) ior Q(x, y)",
    "(P(x) ior P(y)) -> ?Q(x, y)",
    "iexists z. (z = y & P(z))",
    "[z](Q(x, z) -> ?P(z))",
    "forall z. ?Q(z, y)",
    "~~(P(x) ior P(y))",
    "(?P(x) -> ?P(y)) -> dep(x;y)",
])
def test_fast_evaluator_agrees_with_reference(small_structure, text):
    """
    Test that both evaluators, with and without fast paths, agree on every team over (x,y).
    """
    formula = parser.parse(text, parser.parse_signature("P/1, Q/2; c/0"))
    for team in enumerate_teams(("x", "y"), 2):
        expected = supports(small_structure, team, formula)
        assert supports(small_structure, team, formula, NO_FAST_PATHS) is expected
        assert supports_fast(small_structure, team, formula) is expected
        assert supports_fast(small_structure, team, formula, NO_FAST_PATHS) is expected

def test_empty_team_supports_everything(structure, signature):
    for text in ("bot", "forall x. P(x)", "?P(c) -> bot", "iexists x. bot"):
        assert supports(structure, Team(), parser.parse(text, signature))

def test_fast_path_statistics(structure):
    """
    Test that the closed forms fire only when fast paths are enabled.
    """
    team = xys((0, 1), (1, 2))
    question = parser.parse("?P(x)", parser.parse_signature("P/1"))

    verdict, stats = supports_fast_with_stats(structure, team, question)
    assert not verdict
    assert stats.path == "fast"
    assert stats.question_shortcuts == 1

    verdict, stats = supports_fast_with_stats(structure, team, question, NO_FAST_PATHS)
    assert not verdict
    assert stats.question_shortcuts == 0
    assert stats.implication_searches > 0

    _, stats = supports_fast_with_stats(structure, team, parser.parse("dep(x;y)"))
    assert stats.dependence_shortcuts == 1

    _, stats = supports_fast_with_stats(structure, team, parser.parse("P(x) -> P(y)", parser.parse_signature("P/1")))
    assert stats.flat_shortcuts == 1

def test_memo_budget(structure):
    """
    Test that a zero byte budget disables the memo table without changing verdicts.
    """
    team = xys((0, 1), (1, 2))
    formula = parser.parse("?P(x) -> dep(x;y)", parser.parse_signature("P/1"))
    verdict, stats = supports_fast_with_stats(structure, team, formula, EvalConfig(memo_limit=0))
    assert verdict == supports(structure, team, formula)
    assert stats.memo_full
    assert stats.memo_entries == 0

def test_subteam_caps(structure):
    team = xs(0, 1)
    formula = parser.parse("?P(x) -> ?P(x)", parser.parse_signature("P/1"))
    with pytest.raises(CapExceededError):
        supports(structure, team, formula, EvalConfig(naive_subteam_cap=1))
    with pytest.raises(CapExceededError):
        supports_fast(structure, team, formula, EvalConfig(fast_subteam_cap=1))

def test_missing_free_variable_is_an_error(structure):
    with pytest.raises(ValueError):
        supports(structure, xs(0), parser.parse("x = y"))
    with pytest.raises(ValueError):
        supports_fast(structure, xs(0), parser.parse("x = y"))

def test_satisfies_requires_a_sentence(structure):
    with pytest.raises(ValueError):
        satisfies(structure, parser.parse("x = x"))
    assert satisfies(structure, parser.parse("forall x. x = x"))

@pytest.mark.parametrize("domain_size", [1, 2, 3, 4])
def test_finiteness_sentences_on_finite_structures(domain_size):
    """
    Test that the finiteness sentence holds and its negation fails on every finite structure.
    """
    structure = empty_structure(domain_size)
    psi = paper_formula(PaperFormula.PSI_FINITENESS)
    neg_psi = paper_formula(PaperFormula.PSI_NEG_INFINITY)
    assert satisfies(structure, psi, fast=True)
    assert not satisfies(structure, neg_psi, fast=True)
    if domain_size <= 2:
        assert satisfies(structure, psi)
        assert not satisfies(structure, neg_psi)

@pytest.mark.slow
def test_finiteness_sentences_with_reference_evaluator_on_three_elements():
    structure = empty_structure(3)
    assert satisfies(structure, paper_formula(PaperFormula.PSI_FINITENESS))
    assert not satisfies(structure, paper_formula(PaperFormula.PSI_NEG_INFINITY))

@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("domain_size", [1, 2, 3, 4, 5])
def test_at_least_n(n, domain_size):
    """
    Test that at_least_n holds exactly on domains with at least n elements.
    """
    structure = empty_structure(domain_size)
    formula = at_least_n(n)
    assert satisfies(structure, formula) == (domain_size >= n)
    assert satisfies(structure, formula, fast=True) == (domain_size >= n)
    assert tarski(structure, {}, formula) == (domain_size >= n)

def test_tarski(structure, signature):
    assert tarski(structure, {"x": 0}, parser.parse("P(x)", signature))
    assert not tarski(structure, {}, parser.parse("forall x. P(x)", signature))
    assert tarski(structure, {}, parser.parse("exists x. Q(x, c)", signature))
    with pytest.raises(ValueError):
        tarski(structure, {"x": 0}, parser.parse("?P(x)", signature))
    with pytest.raises(ValueError):
        tarski(structure, {}, parser.parse("P(x)", signature))

def test_denote(structure):
    assert denote(structure, {"x": 1}, Var("x")) == 1
    assert denote(structure, {}, App("c")) == 2
    with pytest.raises(ValueError):
        denote(structure, {}, Var("x"))
    with pytest.raises(ValueError):
        denote(structure, {}, App("d"))

@pytest.mark.parametrize("rows, profile", [
    (((0, 1), (1, 0)), (True, True, True, True)),
    (((0, 0), (1, 0)), (True, False, True, False)),
    (((0, 0), (0, 1)), (False, True, False, True)),
    ((), (True, True, False, False)),
])
def test_dep_profile(rows, profile):
    result = dep_profile(empty_structure(2), xys(*rows))
    assert (result.is_function, result.is_injective, result.dom_is_full, result.ran_is_full) == profile

@pytest.mark.parametrize("fast", [False, True])
def test_find_falsifying_subteam(structure, fast):
    """
    Test that the witness is the least falsifying sub-team in mask order.
    """
    team = xs(0, 1, 2)
    consequent = Atom("P", (Var("x"),))
    witness = find_falsifying_subteam(structure, team, top(), consequent, fast=fast)
    assert witness is not None
    assert witness.rows == ((1,),)
    assert find_falsifying_subteam(structure, xs(0), top(), consequent, fast=fast) is None

def test_find_falsifying_subteam_respects_cap(structure):
    with pytest.raises(CapExceededError):
        find_falsifying_subteam(structure, xs(0, 1, 2), top(), Bottom(), EvalConfig(naive_subteam_cap=2))

def test_denote_outside_function_table():
    structure = Structure(domain=2, functions={"f": {"(0)": 1, "(1)": 0}})
    assert denote(structure, {"x": 1}, App("f", (Var("x"),))) == 0
    with pytest.raises(ValueError):
        denote(structure, {"x": 5}, App("f", (Var("x"),)))

@pytest.mark.parametrize("text", ["P(x)", "iexists y. y = x", "?P(x) -> P(x)"])
def test_team_outside_domain_is_rejected(structure, signature, text):
    """
    Test that both evaluators refuse a team holding elements the structure does not have.
    """
    formula = parser.parse(text, signature)
    team = xs(0, 7)
    with pytest.raises(ValueError):
        supports(structure, team, formula)
    with pytest.raises(ValueError):
        supports_fast(structure, team, formula)

def test_falsifying_subteam_outside_domain_is_rejected(structure, signature):
    with pytest.raises(ValueError):
        find_falsifying_subteam(structure, xs(3), top(), parser.parse("P(x)", signature))
