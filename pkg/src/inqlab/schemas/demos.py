from typing import Literal

import pydantic

from inqlab.schemas.constructions import ReductionCheck
from inqlab.schemas.inqbq import TranslationResult

class PaperFormulaResponse(pydantic.BaseModel):
    name: str
    formula: str
    signature: str

class FinitenessDemo(pydantic.BaseModel):
    """
    Statistics of R = Y[x,y] over every team Y over (x,y) on a structure of size n,
    and how often each profile field disagrees with the evaluator verdict it stands for.
    """
    domain_size: int
    psi_finiteness: bool
    psi_neg_infinity: bool
    teams: int
    evaluator: Literal["reference", "fast"] = "fast"
    functions: int = 0
    injective: int = 0
    dom_full: int = 0
    ran_full: int = 0
    injective_total_non_surjective: int = 0
    mismatches: int = 0

class ReductionReport(pydantic.BaseModel):
    source: str = pydantic.Field(description="Name of the DIMACS input")
    check: ReductionCheck

    @property
    def agree(self) -> bool:
        return self.check.agree

class TranslationReport(pydantic.BaseModel):
    max_worlds: int
    max_domain: int
    results: list[TranslationResult]

    @property
    def agree(self) -> bool:
        return all(result.agrees for result in self.results)
