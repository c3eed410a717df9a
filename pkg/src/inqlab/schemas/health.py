import pydantic

class HealthResponse(pydantic.BaseModel):
    status: str
    service: str = "inqlab"
    evaluators: list[str] = pydantic.Field(default_factory=lambda: ["reference", "fast"])
