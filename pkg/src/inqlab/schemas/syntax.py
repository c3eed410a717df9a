import pydantic

class Signature(pydantic.BaseModel):
    """
    Non-logical vocabulary of a first-order language.
    Constants are 0-ary functions; identity is built in and never listed.
    """
    predicates: dict[str, int] = pydantic.Field(default_factory=dict, description="Predicate symbol -> arity")
    functions: dict[str, int] = pydantic.Field(default_factory=dict, description="Function symbol -> arity (0 for constants)")

    model_config = {"frozen": True}

    @pydantic.model_validator(mode="after")
    def _check_symbols(self) -> "Signature":
        shared = set(self.predicates) & set(self.functions)
        if shared:
            raise ValueError(f"Symbols declared both as predicate and function: {sorted(shared)}")
        for table in (self.predicates, self.functions):
            if "=" in table:
                raise ValueError("Identity '=' is built in and cannot be declared")
            for name, arity in table.items():
                if arity < 0:
                    raise ValueError(f"Negative arity for symbol {name}")
        return self

    def constants(self) -> list[str]:
        return sorted(name for name, arity in self.functions.items() if arity == 0)

    def key(self) -> tuple[tuple[tuple[str, int], ...], tuple[tuple[str, int], ...]]:
        """
        Hashable canonical form, usable as a cache key.
        """
        return tuple(sorted(self.predicates.items())), tuple(sorted(self.functions.items()))

    def merge(self, other: "Signature") -> "Signature":
        """
        Union of two signatures.

        Raises:
            ValueError: If a symbol is declared with two different arities
        """
        predicates = dict(self.predicates)
        functions = dict(self.functions)
        for name, arity in other.predicates.items():
            if predicates.get(name, arity) != arity:
                raise ValueError(f"Conflicting arities for predicate {name}")
            predicates[name] = arity
        for name, arity in other.functions.items():
            if functions.get(name, arity) != arity:
                raise ValueError(f"Conflicting arities for function {name}")
            functions[name] = arity
        return Signature(predicates=predicates, functions=functions)

class Diagnostic(pydantic.BaseModel):
    path: tuple[str | int, ...] = pydantic.Field(description="Position in the AST as a sequence of field names and indices")
    message: str
