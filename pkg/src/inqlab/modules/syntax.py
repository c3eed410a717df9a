"""
Abstract syntax of InqBT, InqBT+[x] and InqBQ.

One AST serves all three languages: a formula carries no language tag and
membership is decided by the predicate functions at the bottom of this module.
Terms and formulas are frozen dataclasses, so they are hashable values that can
be shared freely between workers.
"""

import enum
import itertools
import re
from collections.abc import Iterable
from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass

from inqlab.schemas.syntax import Diagnostic
from inqlab.schemas.syntax import Signature

KEYWORDS: frozenset[str] = frozenset({"bot", "forall", "exists", "iexists", "lam", "dep", "ior"})
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

@dataclass(frozen=True, slots=True)
class Var:
    name: str

@dataclass(frozen=True, slots=True)
class App:
    symbol: str
    args: tuple["Term", ...] = ()

Term = Var | App

@dataclass(frozen=True, slots=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term

@dataclass(frozen=True, slots=True)
class Bottom:
    pass

@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"

@dataclass(frozen=True, slots=True)
class IDisj:
    left: "Formula"
    right: "Formula"

@dataclass(frozen=True, slots=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"

@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    body: "Formula"

@dataclass(frozen=True, slots=True)
class IExists:
    var: str
    body: "Formula"

@dataclass(frozen=True, slots=True)
class RangeAll:
    var: str
    body: "Formula"

Formula = Atom | Eq | Bottom | And | IDisj | Implies | ForAll | IExists | RangeAll
Quantifier = ForAll | IExists | RangeAll
Binary = And | IDisj | Implies

class DerivedTag(str, enum.Enum):
    NOT = "Not"
    COR = "COr"
    IFF = "Iff"
    CEXISTS = "CExists"
    QUESTION_MARK = "QuestionMark"
    VALUE_QUESTION = "ValueQuestion"
    DEP_ATOM = "DepAtom"

@dataclass(frozen=True, slots=True)
class DerivedForm:
    """
    A surface abbreviation awaiting expansion by `desugar`.

    Argument shapes per tag:
        NOT, QUESTION_MARK: (formula,)
        COR, IFF: (formula, formula)
        CEXISTS: (variable name, formula)
        VALUE_QUESTION: (term,)
        DEP_ATOM: (sequence of terms, term)
    Formula arguments may themselves be DerivedForm values.
    """
    tag: DerivedTag
    args: tuple

def term_vars(term: Term) -> frozenset[str]:
    if isinstance(term, Var):
        return frozenset((term.name,))
    result: set[str] = set()
    for arg in term.args:
        result |= term_vars(arg)
    return frozenset(result)

def fresh_variable(avoid: Iterable[str]) -> str:
    """
    Least name in the enumeration v0, v1, ... that does not occur in `avoid`.
    """
    taken = set(avoid)
    for index in itertools.count():
        name = f"v{index}"
        if name not in taken:
            return name
    raise AssertionError("unreachable")

def top() -> Formula:
    return Implies(Bottom(), Bottom())

def neg(formula: Formula) -> Formula:
    return Implies(formula, Bottom())

def neq(left: Term, right: Term) -> Formula:
    return neg(Eq(left, right))

def conjunction(formulas: Iterable[Formula]) -> Formula:
    """
    Left-nested conjunction; the empty conjunction is ⊥→⊥.
    """
    items = list(formulas)
    if not items:
        return top()
    result = items[0]
    for item in items[1:]:
        result = And(result, item)
    return result

def classical_or(left: Formula, right: Formula) -> Formula:
    return neg(And(neg(left), neg(right)))

def iff(left: Formula, right: Formula) -> Formula:
    return And(Implies(left, right), Implies(right, left))

def classical_exists(var: str, body: Formula) -> Formula:
    return neg(ForAll(var, neg(body)))

def question(formula: Formula) -> Formula:
    return IDisj(formula, neg(formula))

def value_question(term: Term) -> Formula:
    """
    λt := ∀v ?(v = t) with v the least fresh name for t.
    """
    var = fresh_variable(term_vars(term))
    return ForAll(var, question(Eq(Var(var), term)))

def value_question_iexists(term: Term) -> Formula:
    """
    The alternative value question ∃i v (v = t); equivalent to `value_question`.
    """
    var = fresh_variable(term_vars(term))
    return IExists(var, Eq(Var(var), term))

def dependence(determiners: Sequence[Term], target: Term) -> Formula:
    """
    =(t1…tn, t) := λt1 ∧ … ∧ λtn → λt; with no determiners it is λt.
    """
    if not determiners:
        return value_question(target)
    return Implies(conjunction(value_question(term) for term in determiners), value_question(target))

def _as_term(value) -> Term:
    if isinstance(value, str):
        return Var(value)
    if isinstance(value, Var | App):
        return value
    raise ValueError(f"Expected a term, got {value!r}")

def make_paper_sugar(kind: DerivedTag | str, args: Sequence) -> Formula:
    """
    Build the core formula for a value question, dependence atom or question mark.

    Args:
        kind: ValueQuestion, DepAtom or QuestionMark
        args: (term,) for ValueQuestion; (determiner terms, target term) for DepAtom;
              (formula,) for QuestionMark. Bare strings are read as variables.

    Returns:
        The desugared core formula

    Raises:
        ValueError: If kind is not one of the three or args do not match its shape
    """
    kind = DerivedTag(kind)
    args = tuple(args)
    if kind is DerivedTag.VALUE_QUESTION:
        if len(args) != 1:
            raise ValueError("ValueQuestion takes exactly one term")
        return value_question(_as_term(args[0]))
    if kind is DerivedTag.DEP_ATOM:
        if len(args) != 2 or isinstance(args[0], str | Var | App):
            raise ValueError("DepAtom takes a sequence of determiner terms and a target term")
        return dependence([_as_term(item) for item in args[0]], _as_term(args[1]))
    if kind is DerivedTag.QUESTION_MARK:
        if len(args) != 1:
            raise ValueError("QuestionMark takes exactly one formula")
        return question(_core(args[0]))
    raise ValueError(f"{kind.value} is not a sugar kind")

def _core(value) -> Formula:
    if isinstance(value, DerivedForm):
        return desugar(value)
    if isinstance(value, Formula):
        return value
    raise ValueError(f"Expected a formula, got {value!r}")

def desugar(value: DerivedForm | Formula) -> Formula:
    """
    Expand derived forms into core syntax. Core formulas are returned unchanged.

    Raises:
        ValueError: If the arguments of a derived form do not match its tag
    """
    if not isinstance(value, DerivedForm):
        return _core(value)
    args = value.args
    match value.tag:
        case DerivedTag.NOT:
            (body,) = args
            return neg(_core(body))
        case DerivedTag.COR:
            left, right = args
            return classical_or(_core(left), _core(right))
        case DerivedTag.IFF:
            left, right = args
            return iff(_core(left), _core(right))
        case DerivedTag.CEXISTS:
            var, body = args
            if not isinstance(var, str):
                raise ValueError("CExists binds a variable name")
            return classical_exists(var, _core(body))
        case DerivedTag.QUESTION_MARK | DerivedTag.VALUE_QUESTION | DerivedTag.DEP_ATOM:
            return make_paper_sugar(value.tag, args)
    raise ValueError(f"Unknown derived tag {value.tag}")

def free_vars(formula: Formula) -> frozenset[str]:
    match formula:
        case Atom(args=args):
            result: frozenset[str] = frozenset()
            for arg in args:
                result |= term_vars(arg)
            return result
        case Eq(left=left, right=right):
            return term_vars(left) | term_vars(right)
        case Bottom():
            return frozenset()
        case And(left=left, right=right) | IDisj(left=left, right=right):
            return free_vars(left) | free_vars(right)
        case Implies(antecedent=antecedent, consequent=consequent):
            return free_vars(antecedent) | free_vars(consequent)
        case ForAll(var=var, body=body) | IExists(var=var, body=body) | RangeAll(var=var, body=body):
            return free_vars(body) - {var}
    raise TypeError(f"Not a formula: {formula!r}")

def children(formula: Formula) -> tuple[Formula, ...]:
    match formula:
        case And(left=left, right=right) | IDisj(left=left, right=right):
            return left, right
        case Implies(antecedent=antecedent, consequent=consequent):
            return antecedent, consequent
        case ForAll(body=body) | IExists(body=body) | RangeAll(body=body):
            return (body,)
    return ()

def subformulas(formula: Formula) -> Iterator[Formula]:
    """
    Pre-order walk over all subformula occurrences.
    """
    stack = [formula]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))

def depth(formula: Formula) -> int:
    return 1 + max((depth(child) for child in children(formula)), default=0)

def is_legal_variable(name: str) -> bool:
    return IDENTIFIER.fullmatch(name) is not None and name not in KEYWORDS

def _term_diagnostics(term: Term, signature: Signature, path: tuple) -> list[Diagnostic]:
    if isinstance(term, Var):
        if not is_legal_variable(term.name):
            return [Diagnostic(path=path, message=f"Illegal variable name {term.name!r}")]
        if term.name in signature.functions or term.name in signature.predicates:
            return [Diagnostic(path=path, message=f"Variable {term.name!r} clashes with a declared symbol")]
        return []
    found: list[Diagnostic] = []
    arity = signature.functions.get(term.symbol)
    if arity is None:
        found.append(Diagnostic(path=path, message=f"Unknown function symbol {term.symbol!r}"))
    elif arity != len(term.args):
        found.append(Diagnostic(path=path, message=f"Function {term.symbol!r} expects {arity} argument(s), got {len(term.args)}"))
    for index, arg in enumerate(term.args):
        found.extend(_term_diagnostics(arg, signature, path + ("args", index)))
    return found

def well_formed(formula: Formula, signature: Signature) -> list[Diagnostic]:
    """
    Check symbols, arities and bound-variable names against a signature.

    Args:
        formula: Core formula to check
        signature: Vocabulary the formula should be written in

    Returns:
        Diagnostics with AST paths; empty if and only if the formula is well formed
    """
    found: list[Diagnostic] = []

    def visit(node: Formula, path: tuple) -> None:
        match node:
            case Atom(predicate=predicate, args=args):
                arity = signature.predicates.get(predicate)
                if arity is None:
                    found.append(Diagnostic(path=path, message=f"Unknown predicate symbol {predicate!r}"))
                elif arity != len(args):
                    found.append(Diagnostic(path=path, message=f"Predicate {predicate!r} expects {arity} argument(s), got {len(args)}"))
                for index, arg in enumerate(args):
                    found.extend(_term_diagnostics(arg, signature, path + ("args", index)))
            case Eq(left=left, right=right):
                found.extend(_term_diagnostics(left, signature, path + ("left",)))
                found.extend(_term_diagnostics(right, signature, path + ("right",)))
            case Bottom():
                pass
            case And(left=left, right=right) | IDisj(left=left, right=right):
                visit(left, path + ("left",))
                visit(right, path + ("right",))
            case Implies(antecedent=antecedent, consequent=consequent):
                visit(antecedent, path + ("antecedent",))
                visit(consequent, path + ("consequent",))
            case ForAll(var=var, body=body) | IExists(var=var, body=body) | RangeAll(var=var, body=body):
                if not is_legal_variable(var) or var in signature.functions or var in signature.predicates:
                    found.append(Diagnostic(path=path + ("var",), message=f"Illegal bound variable {var!r}"))
                visit(body, path + ("body",))
            case _:
                found.append(Diagnostic(path=path, message=f"Not a core formula: {node!r}"))

    visit(formula, ())
    return found

def signature_of(formula: Formula) -> Signature:
    """
    The smallest signature in which the formula is well formed.

    Raises:
        ValueError: If one symbol occurs with two different arities
    """
    predicates: dict[str, int] = {}
    functions: dict[str, int] = {}

    def note(table: dict[str, int], name: str, arity: int) -> None:
        if table.setdefault(name, arity) != arity:
            raise ValueError(f"Symbol {name!r} used with arities {table[name]} and {arity}")

    def visit_term(term: Term) -> None:
        if isinstance(term, App):
            note(functions, term.symbol, len(term.args))
            for arg in term.args:
                visit_term(arg)

    for node in subformulas(formula):
        if isinstance(node, Atom):
            note(predicates, node.predicate, len(node.args))
            for arg in node.args:
                visit_term(arg)
        elif isinstance(node, Eq):
            visit_term(node.left)
            visit_term(node.right)
    return Signature(predicates=predicates, functions=functions)

def is_inqbt(formula: Formula) -> bool:
    """
    True when the formula belongs to InqBT (and InqBQ): no [x] anywhere.
    """
    return not any(isinstance(node, RangeAll) for node in subformulas(formula))

def is_flat_fragment(formula: Formula) -> bool:
    """
    True for {⩾, ∃i}-free formulas; these may still contain [x].
    """
    return not any(isinstance(node, IDisj | IExists) for node in subformulas(formula))

def is_classical(formula: Formula) -> bool:
    return not any(isinstance(node, IDisj | IExists | RangeAll) for node in subformulas(formula))

def in_clant_fragment(formula: Formula) -> bool:
    """
    Classical-antecedent fragment: every implication has a classical antecedent.
    """
    return all(is_classical(node.antecedent) for node in subformulas(formula) if isinstance(node, Implies))

def in_rex_fragment(formula: Formula) -> bool:
    """
    Restricted-existential fragment: every ∃i occurs inside some implication antecedent.
    """
    def visit(node: Formula, in_antecedent: bool) -> bool:
        if isinstance(node, IExists) and not in_antecedent:
            return False
        if isinstance(node, Implies):
            return visit(node.antecedent, True) and visit(node.consequent, in_antecedent)
        return all(visit(child, in_antecedent) for child in children(node))

    return visit(formula, False)
