"""
Two-sorted classical first-order sentences over relational encodings M*.

Sort `w` ranges over worlds and sort `e` over entities. This AST is separate
from the InqBT/InqBQ formulas; the two only meet in the translation table in
`inqlab.modules.inqbq`.
"""

import enum
from collections.abc import Mapping
from dataclasses import dataclass

from inqlab.schemas.inqbq import TwoSortedStructure

class Sort(str, enum.Enum):
    WORLD = "w"
    ENTITY = "e"

class SortError(ValueError):
    pass

@dataclass(frozen=True, slots=True)
class SVar:
    name: str
    sort: Sort

@dataclass(frozen=True, slots=True)
class SApp:
    """
    f*(w, d1, ..., dn); the result is always an entity.
    """
    symbol: str
    args: tuple["STerm", ...]

STerm = SVar | SApp

@dataclass(frozen=True, slots=True)
class SAtom:
    predicate: str
    args: tuple[STerm, ...]

@dataclass(frozen=True, slots=True)
class SEq:
    left: STerm
    right: STerm

@dataclass(frozen=True, slots=True)
class SNot:
    body: "Sentence"

@dataclass(frozen=True, slots=True)
class SAnd:
    left: "Sentence"
    right: "Sentence"

@dataclass(frozen=True, slots=True)
class SOr:
    left: "Sentence"
    right: "Sentence"

@dataclass(frozen=True, slots=True)
class SImplies:
    antecedent: "Sentence"
    consequent: "Sentence"

@dataclass(frozen=True, slots=True)
class SForAll:
    var: SVar
    body: "Sentence"

@dataclass(frozen=True, slots=True)
class SExists:
    var: SVar
    body: "Sentence"

Sentence = SAtom | SEq | SNot | SAnd | SOr | SImplies | SForAll | SExists

def _term_sort(structure: TwoSortedStructure, term: STerm, bound: Mapping[str, Sort]) -> Sort:
    if isinstance(term, SVar):
        if term.name not in bound:
            raise ValueError(f"Free variable {term.name!r} in a sentence")
        if bound[term.name] is not term.sort:
            raise SortError(f"Variable {term.name!r} is bound with sort {bound[term.name].value}, used with sort {term.sort.value}")
        return term.sort
    table = structure.functions.get(term.symbol)
    if table is None:
        raise SortError(f"Unknown function symbol {term.symbol!r}")
    _check_slots(structure, term.symbol, len(next(iter(table))), term.args, bound)
    return Sort.ENTITY

def _check_slots(structure: TwoSortedStructure, symbol: str, arity: int | None, args: tuple[STerm, ...], bound: Mapping[str, Sort]) -> None:
    if arity is not None and arity != len(args):
        raise SortError(f"{symbol!r} expects {arity} argument(s), got {len(args)}")
    for index, arg in enumerate(args):
        expected = Sort.WORLD if index == 0 else Sort.ENTITY
        actual = _term_sort(structure, arg, bound)
        if actual is not expected:
            raise SortError(f"Argument {index} of {symbol!r} must have sort {expected.value}, got {actual.value}")

def sort_check(structure: TwoSortedStructure, sentence: Sentence, bound: Mapping[str, Sort] | None = None) -> None:
    """
    Raises:
        SortError: On an ill-sorted application, equation or variable use
        ValueError: On a free variable
    """
    bound = dict(bound or {})
    match sentence:
        case SAtom(predicate=predicate, args=args):
            if predicate not in structure.predicates:
                raise SortError(f"Unknown predicate symbol {predicate!r}")
            table = structure.predicates[predicate]
            arity = len(next(iter(table))) if table else None
            if not args:
                raise SortError(f"Predicate {predicate!r} needs a world argument")
            _check_slots(structure, predicate, arity, args, bound)
        case SEq(left=left, right=right):
            if _term_sort(structure, left, bound) is not _term_sort(structure, right, bound):
                raise SortError("Equation between terms of different sorts")
        case SNot(body=body):
            sort_check(structure, body, bound)
        case SAnd(left=left, right=right) | SOr(left=left, right=right):
            sort_check(structure, left, bound)
            sort_check(structure, right, bound)
        case SImplies(antecedent=antecedent, consequent=consequent):
            sort_check(structure, antecedent, bound)
            sort_check(structure, consequent, bound)
        case SForAll(var=var, body=body) | SExists(var=var, body=body):
            sort_check(structure, body, {**bound, var.name: var.sort})
        case _:
            raise TypeError(f"Not a two-sorted sentence: {sentence!r}")

def _value(structure: TwoSortedStructure, env: Mapping[str, int], term: STerm) -> int:
    if isinstance(term, SVar):
        return env[term.name]
    return structure.functions[term.symbol][tuple(_value(structure, env, arg) for arg in term.args)]

def _holds(structure: TwoSortedStructure, env: dict[str, int], sentence: Sentence) -> bool:
    match sentence:
        case SAtom(predicate=predicate, args=args):
            return tuple(_value(structure, env, arg) for arg in args) in structure.predicates.get(predicate, frozenset())
        case SEq(left=left, right=right):
            return _value(structure, env, left) == _value(structure, env, right)
        case SNot(body=body):
            return not _holds(structure, env, body)
        case SAnd(left=left, right=right):
            return _holds(structure, env, left) and _holds(structure, env, right)
        case SOr(left=left, right=right):
            return _holds(structure, env, left) or _holds(structure, env, right)
        case SImplies(antecedent=antecedent, consequent=consequent):
            return not _holds(structure, env, antecedent) or _holds(structure, env, consequent)
        case SForAll(var=var, body=body) | SExists(var=var, body=body):
            carrier = structure.world_count if var.sort is Sort.WORLD else structure.domain_size
            results = (_holds(structure, {**env, var.name: value}, body) for value in range(carrier))
            return all(results) if isinstance(sentence, SForAll) else any(results)
    raise TypeError(f"Not a two-sorted sentence: {sentence!r}")

def fo2_eval(structure: TwoSortedStructure, sentence: Sentence) -> bool:
    """
    Tarskian truth of a two-sorted sentence.

    Args:
        structure: Relational encoding with world and entity carriers
        sentence: Closed, well-sorted sentence over the encoded signature

    Returns:
        Whether the sentence is true in the structure

    Raises:
        SortError: If the sentence is ill-sorted
        ValueError: If the sentence has free variables
    """
    sort_check(structure, sentence)
    return _holds(structure, {}, sentence)

def _render_term(term: STerm) -> str:
    if isinstance(term, SVar):
        return term.name
    return f"{term.symbol}({', '.join(_render_term(arg) for arg in term.args)})"

def render_fo2(sentence: Sentence) -> str:
    match sentence:
        case SAtom(predicate=predicate, args=args):
            return f"{predicate}({', '.join(_render_term(arg) for arg in args)})"
        case SEq(left=left, right=right):
            return f"{_render_term(left)} = {_render_term(right)}"
        case SNot(body=body):
            return f"~{render_fo2(body)}"
        case SAnd(left=left, right=right):
            return f"({render_fo2(left)} & {render_fo2(right)})"
        case SOr(left=left, right=right):
            return f"({render_fo2(left)} | {render_fo2(right)})"
        case SImplies(antecedent=antecedent, consequent=consequent):
            return f"({render_fo2(antecedent)} -> {render_fo2(consequent)})"
        case SForAll(var=var, body=body):
            return f"forall {var.name}:{var.sort.value}. {render_fo2(body)}"
        case SExists(var=var, body=body):
            return f"exists {var.name}:{var.sort.value}. {render_fo2(body)}"
    raise TypeError(f"Not a two-sorted sentence: {sentence!r}")
