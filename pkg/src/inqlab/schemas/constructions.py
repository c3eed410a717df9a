from typing import Any

import pydantic

from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team

Literal = tuple[int, bool]

class CnfInstance(pydantic.BaseModel):
    """
    3-CNF formula; a literal is (variable index, polarity) with True for a positive literal.
    """
    variable_count: int = pydantic.Field(gt=0)
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    model_config = {"frozen": True}

    @pydantic.model_validator(mode="after")
    def _check_indices(self) -> "CnfInstance":
        for clause in self.clauses:
            for index, _ in clause:
                if not 0 <= index < self.variable_count:
                    raise ValueError(f"Literal variable {index} is outside 0..{self.variable_count - 1}")
        return self

    def variables(self) -> list[int]:
        """
        Variables that occur in some clause, in increasing order.
        """
        return sorted({index for clause in self.clauses for index, _ in clause})

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.variable_count} {len(self.clauses)}"]
        for clause in self.clauses:
            lines.append(" ".join(str(index + 1 if positive else -(index + 1)) for index, positive in clause) + " 0")
        return "\n".join(lines) + "\n"

class ReductionOutput(pydantic.BaseModel):
    """
    Structure, team and formula encoding a 3-CNF instance.

    Domain blocks, in order: one element per clause, the three position markers,
    one element per occurring variable, then the parity elements for 0 and 1.
    """
    structure: Structure
    team: Team
    formula: Any = pydantic.Field(exclude=True, description="The fixed implication of the reduction, as a core formula")
    formula_text: str
    clause_elements: tuple[int, ...]
    position_elements: tuple[int, int, int]
    variable_elements: dict[int, int] = pydantic.Field(description="Variable index -> domain element")
    parity_elements: tuple[int, int] = pydantic.Field(description="Elements standing for 0 and for 1")

    model_config = {"frozen": True}

class ReductionCheck(pydantic.BaseModel):
    clauses: int
    variables: int
    supports: bool
    satisfiable: bool
    agree: bool
    assignment: dict[int, bool] | None = pydantic.Field(None, description="Assignment extracted from the falsifying sub-team")
    assignment_satisfies: bool | None = None

class CompactnessWitness(pydantic.BaseModel):
    domain_size: int
    at_least: dict[int, bool]
    psi_finiteness: bool
    jointly_satisfiable: bool
