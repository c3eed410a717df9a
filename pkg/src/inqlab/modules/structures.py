"""
Teams, team operations and exhaustive enumeration of small structures and teams.

Rows of a team are kept sorted, so bit i of a sub-team mask always selects
`team.rows[i]`. The row-level helpers prefixed with an underscore work on bare
(vars, rows) pairs and are shared with the evaluators, which cannot afford a
pydantic validation per intermediate team.
"""

import itertools
import random
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Sequence
from pathlib import Path

import pydantic
from loguru import logger

from inqlab.schemas.structures import EnumerationBounds
from inqlab.schemas.structures import Relation
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team
from inqlab.schemas.syntax import Signature

Rows = tuple[tuple[int, ...], ...]

class CapExceededError(RuntimeError):
    """
    An enumeration would exceed its configured cap or exhaustiveness bound.
    """

def _make_team(vars: tuple[str, ...], rows: Iterable[tuple[int, ...]]) -> Team:
    return Team.model_construct(vars=vars, rows=tuple(sorted(set(rows))))

def extend_rows(vars: tuple[str, ...], rows: Rows, var: str, values: Sequence[int]) -> tuple[tuple[str, ...], Rows]:
    if var in vars:
        index = vars.index(var)
        extended = {row[:index] + (value,) + row[index + 1:] for row in rows for value in values}
        return vars, tuple(sorted(extended))
    extended = {row + (value,) for row in rows for value in values}
    return vars + (var,), tuple(sorted(extended))

def _check_elements(values: Iterable[int], domain_size: int) -> None:
    for value in values:
        if not 0 <= value < domain_size:
            raise ValueError(f"Element {value} is outside the domain 0..{domain_size - 1}")

def extend_const(team: Team, var: str, value: int, domain_size: int) -> Team:
    """
    X[x↦d]: overwrite (or add) x with the constant d in every row.

    Raises:
        ValueError: If d is outside the domain
    """
    _check_elements((value,), domain_size)
    vars, rows = extend_rows(team.vars, team.rows, var, (value,))
    return _make_team(vars, rows)

def extend_all(team: Team, var: str, values: Iterable[int], domain_size: int) -> Team:
    """
    X[x↦A]: the union of X[x↦d] over d in A.
    With A the whole domain this is the team the [x] quantifier evaluates on.

    Raises:
        ValueError: If an element of A is outside the domain
    """
    values = sorted(set(values))
    _check_elements(values, domain_size)
    vars, rows = extend_rows(team.vars, team.rows, var, values)
    return _make_team(vars, rows)

def restrict(team: Team, keep: Iterable[str]) -> Team:
    """
    Restrict every row to the given variables, keeping the team's variable order.

    Raises:
        ValueError: If a variable is not in the team
    """
    keep = set(keep)
    unknown = keep - set(team.vars)
    if unknown:
        raise ValueError(f"Cannot restrict to variables not in the team: {sorted(unknown)}")
    positions = [index for index, var in enumerate(team.vars) if var in keep]
    vars = tuple(team.vars[index] for index in positions)
    return _make_team(vars, (tuple(row[index] for index in positions) for row in team.rows))

def _positions(team: Team, vars: Sequence[str]) -> list[int]:
    try:
        return [team.vars.index(var) for var in vars]
    except ValueError:
        missing = [var for var in vars if var not in team.vars]
        raise ValueError(f"Variables {missing} are not in the team {list(team.vars)}") from None

def team_relation(team: Team, vars: Sequence[str]) -> Relation:
    """
    X[x1,...,xn]: the relation of value tuples the team assigns to the variables.
    """
    positions = _positions(team, vars)
    return Relation.model_construct(
        arity=len(positions),
        tuples=frozenset(tuple(row[index] for index in positions) for row in team.rows),
    )

def relation_team(relation: Relation, vars: Sequence[str]) -> Team:
    """
    Inverse of `team_relation` for teams whose variables are exactly `vars`.

    Raises:
        ValueError: If the arity of the relation differs from the number of variables
    """
    vars = tuple(vars)
    if relation.arity != len(vars):
        raise ValueError(f"Relation of arity {relation.arity} cannot be read over {len(vars)} variable(s)")
    return Team(vars=vars, rows=tuple(relation.tuples))

def subteams(team: Team, cap: int = 20) -> Iterator[int]:
    """
    Yield the masks of all sub-teams in increasing order.

    Raises:
        CapExceededError: If the team has more than `cap` rows
    """
    if team.size > cap:
        raise CapExceededError(f"Team has {team.size} rows, more than the sub-team cap of {cap}")
    yield from range(1 << team.size)

def subteam(team: Team, mask: int) -> Team:
    return Team.model_construct(
        vars=team.vars,
        rows=tuple(row for index, row in enumerate(team.rows) if mask >> index & 1),
    )

def singleton_empty_team() -> Team:
    """
    {∅}: the team holding only the empty assignment, used to evaluate sentences.
    """
    return Team.model_construct(vars=(), rows=((),))

def maximal_team(vars: Sequence[str], domain_size: int) -> Team:
    """
    X_D: every assignment of domain elements to the variables.
    """
    vars = tuple(vars)
    return Team.model_construct(vars=vars, rows=tuple(itertools.product(range(domain_size), repeat=len(vars))))

def structure_signature(structure: Structure, declared: Signature | None = None) -> Signature:
    """
    Signature read off the tables. An empty predicate table carries no arity, so
    such a predicate is included only when `declared` names it.
    """
    declared = declared or Signature()
    predicates = {name: len(next(iter(table))) for name, table in structure.predicates.items() if table}
    for name in untyped_predicates(structure):
        if name in declared.predicates:
            predicates[name] = declared.predicates[name]
    functions = {name: len(next(iter(table))) for name, table in structure.functions.items()}
    return Signature(predicates=predicates, functions=functions)

def untyped_predicates(structure: Structure) -> frozenset[str]:
    """
    Predicates interpreted by an empty table, whose arity must come from elsewhere.
    """
    return frozenset(name for name, table in structure.predicates.items() if not table)

def check_team(structure: Structure, team: Team) -> None:
    """
    Raises:
        ValueError: If a team row holds an element outside the structure's domain
    """
    for row in team.rows:
        if any(value >= structure.domain_size for value in row):
            raise ValueError(f"Team row {list(row)} lies outside the domain {{0..{structure.domain_size - 1}}}")

def check_structure(structure: Structure, signature: Signature) -> None:
    """
    Check that the structure interprets every symbol of the signature with the right arity.
    A predicate without a table is read as empty.

    Raises:
        ValueError: On a missing function table or an arity mismatch
    """
    for name, arity in signature.predicates.items():
        for row in structure.predicates.get(name, ()):
            if len(row) != arity:
                raise ValueError(f"Predicate {name!r} has arity {arity} but its table holds {row}")
    for name, arity in signature.functions.items():
        table = structure.functions.get(name)
        if table is None:
            raise ValueError(f"Structure does not interpret function symbol {name!r}")
        if any(len(key) != arity for key in table):
            raise ValueError(f"Function {name!r} has arity {arity} but its table disagrees")

def _table_choices(signature: Signature, domain_size: int) -> list[tuple[str, str, list]]:
    choices = []
    for name, arity in sorted(signature.predicates.items()):
        points = list(itertools.product(range(domain_size), repeat=arity))
        tables = [frozenset(point for index, point in enumerate(points) if mask >> index & 1) for mask in range(1 << len(points))]
        choices.append(("predicate", name, tables))
    for name, arity in sorted(signature.functions.items()):
        points = list(itertools.product(range(domain_size), repeat=arity))
        tables = [dict(zip(points, values)) for values in itertools.product(range(domain_size), repeat=len(points))]
        choices.append(("function", name, tables))
    return choices

def count_structures(signature: Signature, domain_size: int) -> int:
    total = 1
    for name, arity in signature.predicates.items():
        total *= 2 ** (domain_size ** arity)
    for name, arity in signature.functions.items():
        total *= domain_size ** (domain_size ** arity)
    return total

def enumerate_structures(signature: Signature, domain_size: int, bounds: EnumerationBounds | None = None) -> Iterator[Structure]:
    """
    Enumerate every structure over the signature with the given domain size.

    Symbols are varied in sorted order (predicates first, functions second), the
    last symbol fastest, so the stream is deterministic and restartable.

    Raises:
        CapExceededError: If the number of structures exceeds the bound
    """
    bounds = bounds or EnumerationBounds()
    if domain_size < 1:
        raise ValueError("Domain size must be positive")
    total = count_structures(signature, domain_size)
    if total > bounds.max_structures:
        raise CapExceededError(f"{total} structures over {signature.key()} at size {domain_size} exceed the bound {bounds.max_structures}")
    logger.debug(f"Enumerating {total} structures of size {domain_size}")
    choices = _table_choices(signature, domain_size)
    for combination in itertools.product(*(tables for _, _, tables in choices)):
        predicates = {}
        functions = {}
        for (kind, name, _), table in zip(choices, combination):
            if kind == "predicate":
                predicates[name] = table
            else:
                functions[name] = table
        yield Structure.model_construct(domain=domain_size, predicates=predicates, functions=functions)

def enumerate_teams(vars: Sequence[str], domain_size: int, bounds: EnumerationBounds | None = None) -> Iterator[Team]:
    """
    Enumerate all 2^(n^|vars|) teams over the variables, as sub-teams of X_D in mask order.

    Raises:
        CapExceededError: If X_D has more rows than the bound allows
    """
    bounds = bounds or EnumerationBounds()
    full = maximal_team(vars, domain_size)
    if full.size > bounds.max_team_rows:
        raise CapExceededError(f"Maximal team has {full.size} rows, more than the bound {bounds.max_team_rows}")
    for mask in range(1 << full.size):
        yield subteam(full, mask)

def random_structure(signature: Signature, domain_size: int, rng: random.Random) -> Structure:
    predicates = {}
    functions = {}
    for name, arity in sorted(signature.predicates.items()):
        points = itertools.product(range(domain_size), repeat=arity)
        predicates[name] = frozenset(point for point in points if rng.random() < 0.5)
    for name, arity in sorted(signature.functions.items()):
        points = itertools.product(range(domain_size), repeat=arity)
        functions[name] = {point: rng.randrange(domain_size) for point in points}
    return Structure.model_construct(domain=domain_size, predicates=predicates, functions=functions)

def random_team(vars: Sequence[str], domain_size: int, rng: random.Random, max_rows: int | None = None) -> Team:
    """
    A uniformly random sub-team of X_D, optionally thinned to at most `max_rows` rows.
    """
    full = maximal_team(vars, domain_size)
    rows = [row for row in full.rows if rng.random() < 0.5]
    if max_rows is not None and len(rows) > max_rows:
        rows = rng.sample(rows, max_rows)
    return _make_team(full.vars, rows)

def load_structure(path: str | Path) -> Structure:
    """
    Raises:
        pydantic.ValidationError: If the file does not match the model format
        OSError: If the file cannot be read
    """
    return Structure.model_validate_json(Path(path).read_text())

def load_team(path: str | Path) -> Team:
    return Team.model_validate_json(Path(path).read_text())

def dump_json(model: pydantic.BaseModel) -> str:
    """
    Canonical JSON of a structure, team or relation; equal models give identical text.
    """
    return model.model_dump_json(by_alias=True)
