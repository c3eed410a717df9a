"""
Concrete ASCII syntax for formulas, terms and signatures.

Precedence, loosest to tightest: `->` (right-assoc), `ior`, `|`, `&`, then the
prefix operators `~`, `?`, `forall x.`, `exists x.`, `iexists x.`, `[x]`.
Derived operators are expanded while parsing, so `parse` always returns core
syntax, and `render` never reintroduces sugar.
"""

import contextvars
import functools
from collections.abc import Iterable

import pydantic
import pyparsing as pp

from inqlab.modules.syntax import App
from inqlab.modules.syntax import And
from inqlab.modules.syntax import Atom
from inqlab.modules.syntax import Bottom
from inqlab.modules.syntax import Eq
from inqlab.modules.syntax import ForAll
from inqlab.modules.syntax import Formula
from inqlab.modules.syntax import IDENTIFIER
from inqlab.modules.syntax import IDisj
from inqlab.modules.syntax import IExists
from inqlab.modules.syntax import Implies
from inqlab.modules.syntax import KEYWORDS
from inqlab.modules.syntax import RangeAll
from inqlab.modules.syntax import Term
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import classical_exists
from inqlab.modules.syntax import classical_or
from inqlab.modules.syntax import dependence
from inqlab.modules.syntax import neg
from inqlab.modules.syntax import neq
from inqlab.modules.syntax import question
from inqlab.modules.syntax import subformulas
from inqlab.modules.syntax import value_question
from inqlab.modules.syntax import well_formed
from inqlab.schemas.syntax import Signature

pp.ParserElement.enable_packrat()

# id(node) -> (node, loc) for the nodes built by the current `parse` call
_LOCATIONS: contextvars.ContextVar[dict[int, tuple[object, int]] | None] = contextvars.ContextVar("locations", default=None)

class SourceSpan(pydantic.BaseModel):
    start: int = pydantic.Field(ge=0, description="Byte offset of the first offending byte")
    end: int = pydantic.Field(ge=0, description="Byte offset one past the offending bytes")

    @pydantic.model_validator(mode="after")
    def _ordered(self) -> "SourceSpan":
        if self.start > self.end:
            raise ValueError("span start must not exceed its end")
        return self

class FormulaParseError(ValueError):
    """
    Syntax, unknown-symbol or arity error, located in the input text.
    """

    def __init__(self, message: str, text: str, span: SourceSpan, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.text = text
        self.span = span
        self.line = line
        self.column = column

def _byte_offset(text: str, loc: int) -> int:
    return len(text[:loc].encode("utf-8"))

def _token_end(text: str, loc: int) -> int:
    match = IDENTIFIER.match(text, loc)
    if match:
        return match.end()
    return min(loc + 1, len(text))

def _error_at(text: str, loc: int, message: str) -> FormulaParseError:
    loc = min(loc, len(text))
    span = SourceSpan(start=_byte_offset(text, loc), end=_byte_offset(text, _token_end(text, loc)))
    return FormulaParseError(message, text, span, pp.lineno(loc, text), pp.col(loc, text))

def _located(node, loc: int):
    locations = _LOCATIONS.get()
    if locations is not None:
        locations[id(node)] = (node, loc)
    return node

def _fold_left(builder):
    def action(tokens):
        items = tokens[0]
        result = items[0]
        for operand in items[2::2]:
            result = builder(result, operand)
        return result
    return action

def _fold_right(builder):
    def action(tokens):
        operands = list(tokens[0][0::2])
        result = operands[-1]
        for operand in reversed(operands[:-1]):
            result = builder(operand, result)
        return result
    return action

def _prefix_node(op, body) -> Formula:
    if isinstance(op, str):
        return neg(body) if op == "~" else question(body)
    kind, var = op[0], op[1]
    if kind == "forall":
        return ForAll(var, body)
    if kind == "exists":
        return classical_exists(var, body)
    if kind == "iexists":
        return IExists(var, body)
    return RangeAll(var, body)

def _prefix_action(s, loc, tokens):
    return _located(_prefix_node(tokens[0][0], tokens[0][1]), loc)

@functools.lru_cache(maxsize=64)
def _grammar(signature_key, open_predicates: frozenset[str] = frozenset()) -> tuple[pp.ParserElement, pp.ParserElement]:
    predicates = dict(signature_key[0])
    functions = dict(signature_key[1])

    lpar, rpar, comma, semi, dot, rbrack = map(pp.Suppress, "(),;.]")
    keyword = pp.MatchFirst([pp.Keyword(word) for word in sorted(KEYWORDS)])
    ident = ~keyword + pp.Word(pp.alphas + "_", pp.alphanums + "_")

    term = pp.Forward()
    arguments = pp.Group(lpar + pp.Opt(term + pp.ZeroOrMore(comma + term)) + rpar)

    def term_action(s, loc, tokens):
        name = tokens[0]
        if len(tokens) > 1:
            args = tuple(tokens[1])
            if name not in functions:
                raise pp.ParseException(s, loc, f"{name!r} is not a function symbol")
            if functions[name] != len(args):
                raise pp.ParseFatalException(s, loc, f"Function {name!r} expects {functions[name]} argument(s), got {len(args)}")
            return _located(App(name, args), loc)
        if name in functions:
            if functions[name] != 0:
                raise pp.ParseFatalException(s, loc, f"Function {name!r} expects {functions[name]} argument(s), got 0")
            return _located(App(name, ()), loc)
        if name in predicates or name in open_predicates:
            raise pp.ParseException(s, loc, f"Predicate {name!r} used as a term")
        return _located(Var(name), loc)

    term <<= (ident + pp.Opt(arguments)).set_parse_action(term_action)

    def predicate_action(s, loc, tokens):
        name = tokens[0]
        args = tuple(tokens[1]) if len(tokens) > 1 else ()
        if name in open_predicates:
            return _located(Atom(name, args), loc)
        if name not in predicates:
            if name in functions:
                raise pp.ParseFatalException(s, loc, f"Function symbol {name!r} used as a formula")
            raise pp.ParseFatalException(s, loc, f"Unknown predicate symbol {name!r}")
        if predicates[name] != len(args):
            raise pp.ParseFatalException(s, loc, f"Predicate {name!r} expects {predicates[name]} argument(s), got {len(args)}")
        return _located(Atom(name, args), loc)

    def equality_action(s, loc, tokens):
        left, op, right = tokens
        return _located(Eq(left, right) if op == "=" else neq(left, right), loc)

    def dependence_action(s, loc, tokens):
        return _located(dependence(tuple(tokens[1]), tokens[2]), loc)

    bottom = pp.Keyword("bot").set_parse_action(lambda: Bottom())
    lam = (pp.Keyword("lam") + term).set_parse_action(lambda s, loc, tokens: _located(value_question(tokens[1]), loc))
    dep = (pp.Keyword("dep") + lpar + pp.Group(pp.Opt(term + pp.ZeroOrMore(comma + term))) + semi + term + rpar).set_parse_action(dependence_action)
    equality = (term + pp.one_of("= !=") + term).set_parse_action(equality_action)
    predicate = (ident + pp.Opt(arguments)).set_parse_action(predicate_action)
    atom = bottom | lam | dep | equality | predicate

    def binder_action(s, loc, tokens):
        var = tokens[0][1]
        if var in functions or var in predicates or var in open_predicates:
            raise pp.ParseFatalException(s, loc, f"Cannot bind declared symbol {var!r}")

    quantifier = pp.Group((pp.Keyword("forall") | pp.Keyword("exists") | pp.Keyword("iexists")) + ident + dot)
    range_prefix = pp.Group(pp.Literal("[") + ident + rbrack)
    binder = (quantifier | range_prefix).add_parse_action(binder_action)
    prefix = binder | pp.Literal("~") | pp.Literal("?")

    formula = pp.infix_notation(atom, [
        (prefix, 1, pp.OpAssoc.RIGHT, _prefix_action),
        (pp.Literal("&"), 2, pp.OpAssoc.LEFT, _fold_left(And)),
        (pp.Literal("|"), 2, pp.OpAssoc.LEFT, _fold_left(classical_or)),
        (pp.Keyword("ior"), 2, pp.OpAssoc.LEFT, _fold_left(IDisj)),
        (pp.Literal("->"), 2, pp.OpAssoc.RIGHT, _fold_right(Implies)),
    ])
    return formula, term

def _run(element: pp.ParserElement, text: str):
    try:
        return element.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as error:
        raise _error_at(text, error.loc, error.msg) from None

def _first_arities(formula: Formula, names: frozenset[str]) -> Signature:
    predicates: dict[str, int] = {}
    for node in subformulas(formula):
        if isinstance(node, Atom) and node.predicate in names:
            predicates.setdefault(node.predicate, len(node.args))
    return Signature(predicates=predicates)

def _locate(formula: Formula, path: tuple, locations: dict[int, tuple[object, int]]) -> int:
    # Deepest node on the path that a parse action saw; 0 when there is none.
    node, loc = formula, 0
    entry = locations.get(id(node))
    if entry is not None and entry[0] is node:
        loc = entry[1]
    for step in path:
        node = node[step] if isinstance(step, int) else getattr(node, step)
        if isinstance(node, str):
            break
        entry = locations.get(id(node))
        if entry is not None and entry[0] is node:
            loc = entry[1]
    return loc

def parse(text: str, signature: Signature | None = None, open_predicates: Iterable[str] = ()) -> Formula:
    """
    Parse a formula of InqBT+[x] / InqBQ.

    Args:
        text: Formula source text
        signature: Vocabulary used to resolve symbols (empty by default)
        open_predicates: Predicates not in the signature whose arity is fixed by
            their first occurrence in the text

    Returns:
        The core formula, already desugared and well formed

    Raises:
        FormulaParseError: On syntax errors, unknown symbols and arity mismatches
    """
    signature = signature or Signature()
    open_key = frozenset(open_predicates) - set(signature.predicates)
    formula_element, _ = _grammar(signature.key(), open_key)
    locations: dict[int, tuple[object, int]] = {}
    token = _LOCATIONS.set(locations)
    try:
        formula = _run(formula_element, text)
    finally:
        _LOCATIONS.reset(token)
    if open_key:
        signature = signature.merge(_first_arities(formula, open_key))
    diagnostics = well_formed(formula, signature)
    if diagnostics:
        raise _error_at(text, _locate(formula, diagnostics[0].path, locations), diagnostics[0].message)
    return formula

def parse_term(text: str, signature: Signature | None = None) -> Term:
    signature = signature or Signature()
    _, term_element = _grammar(signature.key())
    return _run(term_element, text)

def parse_signature(text: str) -> Signature:
    """
    Parse a signature written as `P/1, Q/2; f/1, c/0`.
    Predicates come before the semicolon, functions after it; either part may be empty.

    Raises:
        FormulaParseError: On malformed entries
    """
    entry = pp.Group(pp.Word(pp.alphas + "_", pp.alphanums + "_") + pp.Suppress("/") + pp.common.integer)
    entries = pp.Group(pp.Opt(entry + pp.ZeroOrMore(pp.Suppress(",") + entry)))
    grammar = entries + pp.Opt(pp.Suppress(";") + entries)
    try:
        parsed = grammar.parse_string(text, parse_all=True)
    except pp.ParseBaseException as error:
        raise _error_at(text, error.loc, error.msg) from None
    predicates = {name: arity for name, arity in parsed[0]}
    functions = {name: arity for name, arity in parsed[1]} if len(parsed) > 1 else {}
    try:
        return Signature(predicates=predicates, functions=functions)
    except pydantic.ValidationError as error:
        raise _error_at(text, 0, str(error.errors()[0]["msg"])) from None

def render_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if not term.args:
        return term.symbol
    return f"{term.symbol}({', '.join(render_term(arg) for arg in term.args)})"

_IMPLIES, _IDISJ, _COR, _AND, _PREFIX, _ATOM = range(1, 7)

def _render(node: Formula, context: int) -> str:
    match node:
        case Atom(predicate=predicate, args=args):
            text = predicate if not args else f"{predicate}({', '.join(render_term(arg) for arg in args)})"
            level = _ATOM
        case Eq(left=left, right=right):
            text, level = f"{render_term(left)} = {render_term(right)}", _ATOM
        case Bottom():
            text, level = "bot", _ATOM
        case And(left=left, right=right):
            text, level = f"{_render(left, _AND)} & {_render(right, _PREFIX)}", _AND
        case IDisj(left=left, right=right):
            text, level = f"{_render(left, _IDISJ)} ior {_render(right, _COR)}", _IDISJ
        case Implies(antecedent=antecedent, consequent=consequent):
            text, level = f"{_render(antecedent, _IDISJ)} -> {_render(consequent, _IMPLIES)}", _IMPLIES
        case ForAll(var=var, body=body):
            text, level = f"forall {var}. {_render(body, _PREFIX)}", _PREFIX
        case IExists(var=var, body=body):
            text, level = f"iexists {var}. {_render(body, _PREFIX)}", _PREFIX
        case RangeAll(var=var, body=body):
            text, level = f"[{var}]{_render(body, _PREFIX)}", _PREFIX
        case _:
            raise TypeError(f"Not a core formula: {node!r}")
    return f"({text})" if level < context else text

def render(formula: Formula) -> str:
    """
    Canonical text of a core formula; `parse(render(φ), Σ) == φ`.
    """
    return _render(formula, 0)

def render_signature(signature: Signature) -> str:
    """
    Inverse of `parse_signature`, with symbols in sorted order.
    """
    predicates = ", ".join(f"{name}/{arity}" for name, arity in sorted(signature.predicates.items()))
    functions = ", ".join(f"{name}/{arity}" for name, arity in sorted(signature.functions.items()))
    return f"{predicates}; {functions}" if functions else predicates
