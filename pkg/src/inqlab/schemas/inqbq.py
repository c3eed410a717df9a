import itertools
from typing import Any

import pydantic

from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import format_tuple_key
from inqlab.schemas.structures import parse_tuple_key

class InfoModel(pydantic.BaseModel):
    """
    First-order information model (W, D, I) with identity read as identity.
    World w is interpreted by `interpretation[w]`; every world interprets the same symbols.
    """
    world_count: int = pydantic.Field(alias="worlds", gt=0)
    domain_size: int = pydantic.Field(alias="domain", gt=0)
    interpretation: tuple[Structure, ...]

    model_config = pydantic.ConfigDict(frozen=True, populate_by_name=True)

    @pydantic.model_validator(mode="after")
    def _check_worlds(self) -> "InfoModel":
        if len(self.interpretation) != self.world_count:
            raise ValueError(f"Expected {self.world_count} world interpretation(s), got {len(self.interpretation)}")
        for world, structure in enumerate(self.interpretation):
            if structure.domain_size != self.domain_size:
                raise ValueError(f"World {world} has domain {structure.domain_size}, the model has {self.domain_size}")
        first = self.interpretation[0]
        for world, structure in enumerate(self.interpretation[1:], start=1):
            if set(structure.predicates) != set(first.predicates) or set(structure.functions) != set(first.functions):
                raise ValueError(f"World {world} interprets different symbols than world 0")
        return self

class State(pydantic.BaseModel):
    """
    Information state: bit w of `mask` selects world w.
    """
    mask: int = pydantic.Field(ge=0)
    world_count: int = pydantic.Field(gt=0)

    model_config = {"frozen": True}

    @pydantic.model_validator(mode="after")
    def _check_mask(self) -> "State":
        if self.mask >> self.world_count:
            raise ValueError(f"State mask {self.mask} selects worlds beyond {self.world_count - 1}")
        return self

    def worlds(self) -> tuple[int, ...]:
        return tuple(world for world in range(self.world_count) if self.mask >> world & 1)

class TwoSortedStructure(pydantic.BaseModel):
    """
    Relational encoding M* with a world sort and an entity sort.
    The first slot of every table is a world.
    """
    world_count: int = pydantic.Field(alias="worlds", gt=0)
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
    def _check_sorts(self) -> "TwoSortedStructure":
        def in_bounds(row: tuple[int, ...]) -> bool:
            return bool(row) and 0 <= row[0] < self.world_count and all(0 <= item < self.domain_size for item in row[1:])

        for name, table in self.predicates.items():
            if not all(in_bounds(row) for row in table):
                raise ValueError(f"Predicate {name!r} has a tuple outside W x D^n")
        for name, table in self.functions.items():
            arities = {len(key) for key in table}
            if len(arities) != 1:
                raise ValueError(f"Function {name!r} must have a non-empty table of one arity")
            (arity,) = arities
            expected = {(world,) + rest for world in range(self.world_count)
                        for rest in itertools.product(range(self.domain_size), repeat=arity - 1)}
            if arity == 0 or set(table) != expected:
                raise ValueError(f"Function {name!r} is not total on W x D^n")
            if any(not 0 <= value < self.domain_size for value in table.values()):
                raise ValueError(f"Function {name!r} takes values outside the entity domain")
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

class FullModelScan(pydantic.BaseModel):
    domain_size: int
    world_count: int
    states_scanned: int
    formula_satisfied: bool = pydantic.Field(description="Verdict of phi(a,b) at the full state")
    falsifying_relations: list[int] = pydantic.Field(default_factory=list, description="Masks of states whose R_s is an injective, total, non-surjective function")

class TranslationResult(pydantic.BaseModel):
    inqbq: str
    first_order: str
    models_checked: int = 0
    agreements: int = 0
    first_disagreement: InfoModel | None = None

    @property
    def agrees(self) -> bool:
        return self.models_checked == self.agreements
