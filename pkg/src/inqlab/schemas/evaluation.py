from typing import Literal

import pydantic

from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.evaluator import EvalStats
from inqlab.schemas.inqbq import InfoModel
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team

class EvalRequest(pydantic.BaseModel):
    structure: Structure
    team: Team
    formula: str = pydantic.Field(description="Formula text, sugar allowed")
    signature: str | None = pydantic.Field(None, description="Extra symbols as 'P/1, Q/2; f/1, c/0', for predicates with empty tables")
    fast: bool = pydantic.Field(False, description="Use the fast evaluator instead of the reference one")
    config: EvalConfig = pydantic.Field(default_factory=EvalConfig)

    @pydantic.model_validator(mode="after")
    def _team_within_domain(self) -> "EvalRequest":
        for row in self.team.rows:
            if any(value >= self.structure.domain_size for value in row):
                raise ValueError(f"Team row {list(row)} lies outside the domain {{0..{self.structure.domain_size - 1}}}")
        return self

class Verdict(pydantic.BaseModel):
    """
    Support verdict plus what it takes to replay it: the formula as parsed and,
    when support fails, the structure and team it failed on together with the
    least falsifying sub-team of a failed implication.
    """
    formula: str
    supports: bool
    evaluator: Literal["reference", "fast"]
    stats: EvalStats
    witness: Team | None = pydantic.Field(None, description="Sub-team supporting the antecedent but not the consequent")
    structure: Structure | None = pydantic.Field(None, description="Structure of a failing verdict, in model-file format")
    team: Team | None = pydantic.Field(None, description="Team of a failing verdict, in team-file format")
    elapsed_ms: float | None = pydantic.Field(None, description="Wall-clock time, only when timing was requested")

class InqbqEvalRequest(pydantic.BaseModel):
    model: InfoModel
    formula: str
    state: int | None = pydantic.Field(None, ge=0, description="Bit mask of worlds; the full state when omitted")
    assignment: dict[str, int] = pydantic.Field(default_factory=dict, description="Values of the free variables")
    config: EvalConfig = pydantic.Field(default_factory=EvalConfig)

class InqbqVerdict(pydantic.BaseModel):
    formula: str
    state: int
    worlds: list[int]
    supports: bool
    elapsed_ms: float | None = None
