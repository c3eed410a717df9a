import itertools
from typing import Any

import pydantic

def parse_tuple_key(key: str | tuple | list) -> tuple[int, ...]:
    """
    Parse a function-table key such as "(0,1)", "(2)" or "()" into a tuple of ints.
    """
    if isinstance(key, tuple | list):
        return tuple(int(item) for item in key)
    text = key.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"Function table key must look like '(d1,...,dk)', got {key!r}")
    return tuple(int(piece) for piece in text[1:-1].split(",") if piece.strip())

def format_tuple_key(key: tuple[int, ...]) -> str:
    return "(" + ",".join(str(item) for item in key) + ")"

class Structure(pydantic.BaseModel):
    """
    Finite first-order structure with domain {0, ..., n-1}.
    Constants are 0-ary functions whose table has the single key "()".
    """
    domain_size: int = pydantic.Field(alias="domain", gt=0)
    predicates: dict[str, frozenset[tuple[int, ...]]] = pydantic.Field(default_factory=dict)
    functions: dict[str, dict[tuple[int, ...], int]] = pydantic.Field(default_factory=dict)

    model_config = pydantic.ConfigDict(frozen=True, populate_by_name=True)

    @pydantic.field_validator("functions", mode="before")
    @classmethod
    def _parse_function_keys(cls, value: Any) -> Any:
        if not isinstance(value, dict):
            return value
        return {
            name: {parse_tuple_key(key): result for key, result in table.items()} if isinstance(table, dict) else table
            for name, table in value.items()
        }

    @pydantic.model_validator(mode="after")
    def _check_tables(self) -> "Structure":
        n = self.domain_size
        for name, table in self.predicates.items():
            if name == "=":
                raise ValueError("Identity is interpreted as meta-language identity and cannot be tabled")
            if len({len(row) for row in table}) > 1:
                raise ValueError(f"Predicate {name!r} mixes tuple lengths")
            for row in table:
                if any(not 0 <= value < n for value in row):
                    raise ValueError(f"Predicate {name!r} has tuple {row} outside the domain")
        for name, table in self.functions.items():
            if name in self.predicates:
                raise ValueError(f"Symbol {name!r} is both a predicate and a function")
            arities = {len(key) for key in table}
            if len(arities) != 1:
                raise ValueError(f"Function {name!r} must have a non-empty table of one arity")
            (arity,) = arities
            expected = set(itertools.product(range(n), repeat=arity))
            if set(table) != expected:
                raise ValueError(f"Function {name!r} is not total on the domain")
            if any(not 0 <= value < n for value in table.values()):
                raise ValueError(f"Function {name!r} takes values outside the domain")
        return self

    @pydantic.field_serializer("predicates")
    def _dump_predicates(self, predicates: dict[str, frozenset[tuple[int, ...]]]) -> dict[str, list[list[int]]]:
        return {name: [list(row) for row in sorted(predicates[name])] for name in sorted(predicates)}

    @pydantic.field_serializer("functions")
    def _dump_functions(self, functions: dict[str, dict[tuple[int, ...], int]]) -> dict[str, dict[str, int]]:
        return {
            name: {format_tuple_key(key): functions[name][key] for key in sorted(functions[name])}
            for name in sorted(functions)
        }

class Team(pydantic.BaseModel):
    """
    Set of assignments over a common ordered variable list.
    Rows are kept sorted and deduplicated; bit i of a sub-team mask selects rows[i].
    """
    vars: tuple[str, ...] = ()
    rows: tuple[tuple[int, ...], ...] = ()

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.field_validator("vars")
    @classmethod
    def _unique_vars(cls, value: tuple[str, ...]) -> tuple[str, ...]:
        if len(set(value)) != len(value):
            raise ValueError(f"Duplicate team variables in {value}")
        return value

    @pydantic.field_validator("rows")
    @classmethod
    def _canonical_rows(cls, value: tuple[tuple[int, ...], ...], info: pydantic.ValidationInfo) -> tuple[tuple[int, ...], ...]:
        width = len(info.data.get("vars", ()))
        for row in value:
            if len(row) != width:
                raise ValueError(f"Row {row} does not match the {width} team variable(s)")
            if any(item < 0 for item in row):
                raise ValueError(f"Row {row} contains a negative element")
        return tuple(sorted(set(value)))

    @property
    def size(self) -> int:
        return len(self.rows)

    def assignments(self) -> list[dict[str, int]]:
        return [dict(zip(self.vars, row)) for row in self.rows]

class Relation(pydantic.BaseModel):
    arity: int = pydantic.Field(ge=0)
    tuples: frozenset[tuple[int, ...]] = frozenset()

    model_config = pydantic.ConfigDict(frozen=True)

    @pydantic.model_validator(mode="after")
    def _check_arity(self) -> "Relation":
        for row in self.tuples:
            if len(row) != self.arity:
                raise ValueError(f"Tuple {row} does not have arity {self.arity}")
            if any(item < 0 for item in row):
                raise ValueError(f"Tuple {row} contains a negative element")
        return self

    @pydantic.field_serializer("tuples")
    def _dump_tuples(self, tuples: frozenset[tuple[int, ...]]) -> list[list[int]]:
        return [list(row) for row in sorted(tuples)]

class EnumerationBounds(pydantic.BaseModel):
    max_structures: int = pydantic.Field(1 << 20, description="Largest number of structures an enumeration may produce")
    max_team_rows: int = pydantic.Field(20, description="Largest maximal team (n^|vars| rows) whose power set may be enumerated")
