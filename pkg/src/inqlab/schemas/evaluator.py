from typing import Literal

import pydantic

class EvalConfig(pydantic.BaseModel):
    naive_subteam_cap: int = pydantic.Field(20, ge=0, description="Largest team on which the reference evaluator enumerates sub-teams")
    fast_subteam_cap: int = pydantic.Field(32, ge=0, description="Largest team on which the fast evaluator searches implication sub-teams")
    enable_fast_paths: bool = pydantic.Field(True, description="Use flat short-circuits and closed forms for ?a, lam t and dependence atoms")
    memo_limit: int = pydantic.Field(64 * 1024 * 1024, ge=0, description="Approximate byte budget of the fast evaluator's memo table")

    model_config = {"frozen": True}

class DepProfile(pydantic.BaseModel):
    """
    Shape of the relation R = Y[x,y] read off a team.
    """
    is_function: bool = pydantic.Field(description="Every x-value has at most one y-value")
    is_injective: bool = pydantic.Field(description="Every y-value has at most one x-value")
    dom_is_full: bool = pydantic.Field(description="dom(R) is the whole domain")
    ran_is_full: bool = pydantic.Field(description="ran(R) is the whole domain")

class EvalStats(pydantic.BaseModel):
    path: Literal["reference", "fast"] = "fast"
    memo_hits: int = 0
    memo_misses: int = 0
    memo_entries: int = 0
    memo_bytes: int = 0
    memo_full: bool = pydantic.Field(False, description="The byte budget ran out and later results were recomputed")
    flat_shortcuts: int = 0
    question_shortcuts: int = 0
    value_question_shortcuts: int = 0
    dependence_shortcuts: int = 0
    implication_searches: int = 0
    antecedent_checks: int = 0
    consequent_checks: int = 0
