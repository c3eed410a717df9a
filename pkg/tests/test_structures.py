import json
import random

import pydantic
import pytest
from hypothesis import given
from hypothesis import strategies as st

from inqlab.modules.structures import CapExceededError
from inqlab.modules.structures import check_structure
from inqlab.modules.structures import check_team
from inqlab.modules.structures import count_structures
from inqlab.modules.structures import dump_json
from inqlab.modules.structures import enumerate_structures
from inqlab.modules.structures import enumerate_teams
from inqlab.modules.structures import extend_all
from inqlab.modules.structures import extend_const
from inqlab.modules.structures import load_structure
from inqlab.modules.structures import load_team
from inqlab.modules.structures import maximal_team
from inqlab.modules.structures import random_team
from inqlab.modules.structures import relation_team
from inqlab.modules.structures import restrict
from inqlab.modules.structures import structure_signature
from inqlab.modules.structures import subteam
from inqlab.modules.structures import subteams
from inqlab.modules.structures import team_relation
from inqlab.modules.structures import untyped_predicates
from inqlab.schemas.structures import EnumerationBounds
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team
from inqlab.schemas.syntax import Signature

def test_structure_reads_function_keys(structure):
    """
    Test that function tables use "(d1,...,dk)" keys on the wire and tuples in memory.
    """
    assert structure.functions["c"] == {(): 2}
    assert structure.predicates["Q"] == frozenset({(0, 1), (1, 2)})

    binary = Structure(domain=2, functions={"f": {"(0,0)": 1, "(0,1)": 0, "(1,0)": 0, "(1,1)": 1}})
    assert binary.functions["f"][(0, 1)] == 0
    assert json.loads(dump_json(binary))["functions"]["f"]["(0,1)"] == 0

def test_structure_dump_is_canonical(structure):
    dumped = json.loads(dump_json(structure))
    assert dumped == {"domain": 3, "predicates": {"P": [[0]], "Q": [[0, 1], [1, 2]]}, "functions": {"c": {"()": 2}}}
    assert Structure.model_validate_json(dump_json(structure)) == structure

@pytest.mark.parametrize("payload", [
    {"domain": 0},
    {"domain": 2, "predicates": {"P": [[2]]}},
    {"domain": 2, "predicates": {"P": [[0], [0, 1]]}},
    {"domain": 2, "predicates": {"=": [[0, 0]]}},
    {"domain": 2, "functions": {"f": {"(0)": 1}}},
    {"domain": 2, "functions": {"c": {"()": 5}}},
    {"domain": 2, "predicates": {"c": [[0]]}, "functions": {"c": {"()": 0}}},
    {"domain": 2, "functions": {"c": {"0": 0}}},
])
def test_structure_validation_errors(payload):
    with pytest.raises(pydantic.ValidationError):
        Structure.model_validate(payload)

def test_team_rows_are_sorted_and_deduplicated():
    team = Team(vars=("x",), rows=((1,), (0,), (1,)))
    assert team.rows == ((0,), (1,))
    assert team.size == 2
    assert team.assignments() == [{"x": 0}, {"x": 1}]

@pytest.mark.parametrize("payload", [
    {"vars": ["x", "x"]},
    {"vars": ["x"], "rows": [[0, 1]]},
    {"vars": ["x"], "rows": [[-1]]},
])
def test_team_validation_errors(payload):
    with pytest.raises(pydantic.ValidationError):
        Team.model_validate(payload)

def test_extend_const_adds_or_overwrites():
    team = Team(vars=("x",), rows=((0,), (1,)))
    extended = extend_const(team, "y", 2, 3)
    assert extended.vars == ("x", "y")
    assert extended.rows == ((0, 2), (1, 2))
    assert extend_const(team, "x", 0, 3).rows == ((0,),)

def test_extend_rejects_elements_outside_domain():
    team = Team(vars=("x",), rows=((0,),))
    with pytest.raises(ValueError):
        extend_const(team, "y", 3, 3)
    with pytest.raises(ValueError):
        extend_all(team, "y", [0, 4], 3)

def test_extend_all_is_the_union_of_constant_extensions():
    team = Team(vars=("x",), rows=((0,), (1,)))
    extended = extend_all(team, "y", [1, 0], 2)
    assert extended.rows == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert extend_all(Team(vars=("x",)), "y", [0, 1], 2).rows == ()

def test_restrict_keeps_team_order():
    team = Team(vars=("x", "y", "z"), rows=((0, 1, 2), (0, 2, 2)))
    restricted = restrict(team, ["z", "x"])
    assert restricted.vars == ("x", "z")
    assert restricted.rows == ((0, 2),)
    with pytest.raises(ValueError):
        restrict(team, ["w"])

def test_team_relation_follows_requested_order():
    team = Team(vars=("x", "y"), rows=((0, 1), (0, 2)))
    relation = team_relation(team, ["y", "x"])
    assert relation.arity == 2
    assert relation.tuples == frozenset({(1, 0), (2, 0)})
    with pytest.raises(ValueError):
        team_relation(team, ["z"])

@given(st.sets(st.tuples(st.integers(0, 2), st.integers(0, 2))))
def test_relation_team_inverts_team_relation(rows):
    team = Team(vars=("x", "y"), rows=tuple(rows))
    assert relation_team(team_relation(team, ("x", "y")), ("x", "y")) == team

def test_relation_team_rejects_arity_mismatch():
    relation = team_relation(Team(vars=("x",), rows=((0,),)), ["x"])
    with pytest.raises(ValueError):
        relation_team(relation, ["x", "y"])

def test_subteam_masks_select_sorted_rows():
    team = Team(vars=("x",), rows=((2,), (0,), (1,)))
    assert list(subteams(team)) == list(range(8))
    assert subteam(team, 0b101).rows == ((0,), (2,))
    assert subteam(team, 0).rows == ()

def test_subteams_respects_cap():
    team = Team(vars=("x",), rows=((0,), (1,)))
    with pytest.raises(CapExceededError):
        list(subteams(team, cap=1))

def test_maximal_team():
    assert maximal_team(("x", "y"), 2).rows == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert maximal_team((), 3).rows == ((),)

def test_enumerate_teams_counts():
    """
    Test that there are 2^(n^k) teams over k variables on a domain of size n.
    """
    assert len(list(enumerate_teams(("x",), 2))) == 4
    assert len(list(enumerate_teams(("x", "y"), 2))) == 16
    assert len(list(enumerate_teams((), 3))) == 2
    with pytest.raises(CapExceededError):
        list(enumerate_teams(("x", "y"), 2, EnumerationBounds(max_team_rows=3)))

def test_enumerate_structures_counts(signature):
    """
    Test that P/1, Q/2, c/0 at size 2 gives 2^2 * 2^4 * 2 structures, all distinct.
    """
    assert count_structures(signature, 2) == 128
    structures = list(enumerate_structures(signature, 2))
    assert len(structures) == 128
    assert len({dump_json(structure) for structure in structures}) == 128

def test_enumerate_structures_bounds(signature):
    with pytest.raises(CapExceededError):
        list(enumerate_structures(signature, 2, EnumerationBounds(max_structures=100)))
    with pytest.raises(ValueError):
        list(enumerate_structures(signature, 0))

def test_structure_signature_and_check(structure, signature):
    assert structure_signature(structure) == signature
    check_structure(structure, signature)
    with pytest.raises(ValueError):
        check_structure(structure, Signature(functions={"d": 0}))
    with pytest.raises(ValueError):
        check_structure(structure, Signature(predicates={"P": 2}))

def test_structure_signature_with_empty_table():
    """
    Test that an empty predicate table enters the signature only with a declared arity.
    """
    structure = Structure(domain=2, predicates={"P": [], "Q": [[0, 1]]})
    assert untyped_predicates(structure) == {"P"}
    assert structure_signature(structure) == Signature(predicates={"Q": 2})
    assert structure_signature(structure, Signature(predicates={"P": 1})) == Signature(predicates={"P": 1, "Q": 2})

def test_check_team_rejects_rows_outside_domain(structure):
    check_team(structure, Team(vars=("x", "y"), rows=((0, 2), (2, 1))))
    with pytest.raises(ValueError) as error:
        check_team(structure, Team(vars=("x", "y"), rows=((0, 3),)))
    assert "outside the domain" in str(error.value)

def test_random_team_is_seeded_and_bounded():
    first = random_team(("x", "y"), 3, random.Random(7), max_rows=4)
    second = random_team(("x", "y"), 3, random.Random(7), max_rows=4)
    assert first == second
    assert first.size <= 4
    assert all(0 <= value < 3 for row in first.rows for value in row)

def test_load_structure_and_team(tmp_path, structure):
    model_path = tmp_path / "model.json"
    model_path.write_text(dump_json(structure))
    team_path = tmp_path / "team.json"
    team_path.write_text(json.dumps({"vars": ["x"], "rows": [[1], [0]]}))

    assert load_structure(model_path) == structure
    assert load_team(team_path).rows == ((0,), (1,))
