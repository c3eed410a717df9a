from typing import Literal

import pydantic

from inqlab.schemas.inqbq import InfoModel
from inqlab.schemas.inqbq import State
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team

Tier = Literal["exhaustive", "randomized"]

class SuiteConfig(pydantic.BaseModel):
    max_domain: int = pydantic.Field(2, gt=0, description="Largest domain of the exhaustive tier")
    max_vars: int = pydantic.Field(2, gt=0, le=4, description="Number of free variables used by the corpus, taken from x, y, z, u")
    max_formula_depth: int = pydantic.Field(2, gt=0, description="Depth bound of the generated corpus")
    random_seed: int = pydantic.Field(0, ge=0, description="Global seed; item i of the randomized tier uses its own derived seed")
    sample_count: int = pydantic.Field(10_000, gt=0, description="Draws of the randomized tier")
    random_domain: int = pydantic.Field(3, gt=0, description="Domain size of the randomized tier")
    random_max_rows: int = pydantic.Field(5, gt=0, description="Largest team drawn by the randomized tier")
    max_worlds: int = pydantic.Field(2, gt=0, description="Largest number of worlds for the information-state suite")
    max_counterexamples: int = pydantic.Field(5, ge=0, description="Counterexamples kept per property")

    model_config = {"frozen": True}

class Counterexample(pydantic.BaseModel):
    """
    Replayable violation: the structure and team files plus the formula text feed `inqlab eval` directly.
    """
    property: str
    tier: Tier
    formula: str
    structure: Structure | None = None
    team: Team | None = None
    info_model: InfoModel | None = None
    state: State | None = None
    detail: str = ""

class PropertyTally(pydantic.BaseModel):
    checked: int = 0
    violated: int = 0

class SuiteReport(pydantic.BaseModel):
    tiers: list[Tier] = pydantic.Field(default_factory=list)
    properties: dict[str, PropertyTally] = pydantic.Field(default_factory=dict)
    counterexamples: list[Counterexample] = pydantic.Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(tally.violated == 0 for tally in self.properties.values())

    def tally(self, name: str, violated: bool) -> PropertyTally:
        entry = self.properties.setdefault(name, PropertyTally())
        entry.checked += 1
        entry.violated += int(violated)
        return entry

    def merge(self, other: "SuiteReport") -> "SuiteReport":
        """
        Combine two reports. Counts add up, tiers are united and counterexamples
        concatenated, so merging is associative.
        """
        properties = {}
        for name in sorted(set(self.properties) | set(other.properties)):
            left = self.properties.get(name, PropertyTally())
            right = other.properties.get(name, PropertyTally())
            properties[name] = PropertyTally(checked=left.checked + right.checked, violated=left.violated + right.violated)
        return SuiteReport(
            tiers=sorted(set(self.tiers) | set(other.tiers)),
            properties=properties,
            counterexamples=self.counterexamples + other.counterexamples,
        )

class FlatnessResult(pydantic.BaseModel):
    """
    Outcome of a bounded flatness check. `flat` is only a statement about the
    enumerated structures, teams and states, never a proof.
    """
    formula: str
    flat: bool
    checked: int = 0
    witness: Counterexample | None = None

class EquivalenceResult(pydantic.BaseModel):
    left: str
    right: str
    equivalent: bool
    checked: int = 0
    witness: Counterexample | None = None
