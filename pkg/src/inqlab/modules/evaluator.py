"""
Support of InqBT+[x] formulas over finite structures and teams.

`supports` is the reference evaluator: every support clause is applied
literally and implications enumerate all sub-teams. `supports_fast` decides the
same relation with a memo table keyed on the free-variable projection of the
team, per-row evaluation of {⩾, ∃i}-free subformulas, closed forms for ?α, λt
and dependence atoms, and an implication search that only visits sub-teams
supporting the antecedent.
"""

from collections.abc import Mapping
from dataclasses import dataclass

from loguru import logger

from inqlab.modules.structures import CapExceededError
from inqlab.modules.structures import Rows
from inqlab.modules.structures import check_team
from inqlab.modules.structures import extend_rows
from inqlab.modules.structures import singleton_empty_team
from inqlab.modules.structures import subteam
from inqlab.modules.structures import team_relation
from inqlab.modules.syntax import And
from inqlab.modules.syntax import Atom
from inqlab.modules.syntax import Bottom
from inqlab.modules.syntax import Eq
from inqlab.modules.syntax import ForAll
from inqlab.modules.syntax import Formula
from inqlab.modules.syntax import IDisj
from inqlab.modules.syntax import IExists
from inqlab.modules.syntax import Implies
from inqlab.modules.syntax import RangeAll
from inqlab.modules.syntax import Term
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import free_vars
from inqlab.modules.syntax import is_classical
from inqlab.modules.syntax import is_flat_fragment
from inqlab.modules.syntax import term_vars
from inqlab.schemas.evaluator import DepProfile
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.evaluator import EvalStats
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team

def denote(structure: Structure, env: Mapping[str, int], term: Term) -> int:
    """
    Value of a term under an assignment.

    Raises:
        ValueError: If a variable is unassigned, a function symbol is not interpreted or
            an argument lies outside the domain
    """
    if isinstance(term, Var):
        try:
            return env[term.name]
        except KeyError:
            raise ValueError(f"Variable {term.name!r} is not assigned") from None
    table = structure.functions.get(term.symbol)
    if table is None:
        raise ValueError(f"Structure does not interpret function symbol {term.symbol!r}")
    args = tuple(denote(structure, env, arg) for arg in term.args)
    try:
        return table[args]
    except KeyError:
        raise ValueError(f"Function {term.symbol!r} is not defined at {list(args)}") from None

def flat_truth(structure: Structure, env: Mapping[str, int], formula: Formula) -> bool:
    # Tarskian truth for {⩾, ∃i}-free formulas, reading [x] as ∀x.
    match formula:
        case Atom(predicate=predicate, args=args):
            values = tuple(denote(structure, env, arg) for arg in args)
            return values in structure.predicates.get(predicate, frozenset())
        case Eq(left=left, right=right):
            return denote(structure, env, left) == denote(structure, env, right)
        case Bottom():
            return False
        case And(left=left, right=right):
            return flat_truth(structure, env, left) and flat_truth(structure, env, right)
        case Implies(antecedent=antecedent, consequent=consequent):
            return not flat_truth(structure, env, antecedent) or flat_truth(structure, env, consequent)
        case ForAll(var=var, body=body) | RangeAll(var=var, body=body):
            scope = dict(env)
            for value in range(structure.domain_size):
                scope[var] = value
                if not flat_truth(structure, scope, body):
                    return False
            return True
    raise ValueError(f"Formula is not {{⩾, ∃i}}-free: {formula!r}")

def _row_truth(structure: Structure, vars: tuple[str, ...], row: tuple[int, ...], formula: Formula) -> bool:
    return flat_truth(structure, dict(zip(vars, row)), formula)

def tarski(structure: Structure, assignment: Mapping[str, int], formula: Formula) -> bool:
    """
    Classical truth of a formula of the classical fragment.

    Args:
        structure: Finite structure
        assignment: Values of (at least) the free variables
        formula: {⩾, ∃i, [x]}-free formula

    Returns:
        Whether the formula is true in the structure under the assignment

    Raises:
        ValueError: If the formula is not classical or a free variable is unassigned
    """
    if not is_classical(formula):
        raise ValueError("Tarskian truth is only defined for classical formulas")
    missing = free_vars(formula) - set(assignment)
    if missing:
        raise ValueError(f"Assignment does not cover free variables {sorted(missing)}")
    return flat_truth(structure, assignment, formula)

def _check_inputs(structure: Structure, team: Team, formula: Formula) -> None:
    check_team(structure, team)
    missing = free_vars(formula) - set(team.vars)
    if missing:
        raise ValueError(f"Free variables {sorted(missing)} are not in the team's domain {list(team.vars)}")

def _select(rows: Rows, mask: int) -> Rows:
    return tuple(row for index, row in enumerate(rows) if mask >> index & 1)

def _reference(structure: Structure, config: EvalConfig, vars: tuple[str, ...], rows: Rows, formula: Formula) -> bool:
    domain = range(structure.domain_size)
    match formula:
        case Atom() | Eq():
            return all(_row_truth(structure, vars, row, formula) for row in rows)
        case Bottom():
            return not rows
        case And(left=left, right=right):
            return _reference(structure, config, vars, rows, left) and _reference(structure, config, vars, rows, right)
        case IDisj(left=left, right=right):
            return _reference(structure, config, vars, rows, left) or _reference(structure, config, vars, rows, right)
        case Implies(antecedent=antecedent, consequent=consequent):
            if len(rows) > config.naive_subteam_cap:
                raise CapExceededError(f"Implication over {len(rows)} rows exceeds the reference cap of {config.naive_subteam_cap}")
            for mask in range(1 << len(rows)):
                sub = _select(rows, mask)
                if _reference(structure, config, vars, sub, antecedent) and not _reference(structure, config, vars, sub, consequent):
                    return False
            return True
        case ForAll(var=var, body=body):
            return all(_reference(structure, config, *extend_rows(vars, rows, var, (value,)), body) for value in domain)
        case IExists(var=var, body=body):
            return any(_reference(structure, config, *extend_rows(vars, rows, var, (value,)), body) for value in domain)
        case RangeAll(var=var, body=body):
            return _reference(structure, config, *extend_rows(vars, rows, var, tuple(domain)), body)
    raise TypeError(f"Not a core formula: {formula!r}")

def supports(structure: Structure, team: Team, formula: Formula, config: EvalConfig | None = None) -> bool:
    """
    Reference support relation M ⊨_X φ.

    Args:
        structure: Finite structure
        team: Team whose variables cover the free variables of the formula
        formula: Core formula of InqBT+[x]
        config: Caps; defaults to EvalConfig()

    Returns:
        Whether the team supports the formula

    Raises:
        CapExceededError: If an implication is reached on a team larger than naive_subteam_cap
        ValueError: If a free variable is missing from the team or a row lies outside the domain
    """
    config = config or EvalConfig()
    _check_inputs(structure, team, formula)
    return _reference(structure, config, team.vars, team.rows, formula)

def _match_value_question(formula: Formula) -> Term | None:
    match formula:
        case ForAll(var=var, body=IDisj(left=Eq(left=Var(name=bound), right=term) as equality,
                                        right=Implies(antecedent=negated, consequent=Bottom()))):
            if bound == var and negated == equality and var not in term_vars(term):
                return term
    return None

def _match_question(formula: Formula) -> Formula | None:
    match formula:
        case IDisj(left=body, right=Implies(antecedent=negated, consequent=Bottom())):
            if negated == body and is_flat_fragment(body):
                return body
    return None

def _conjuncts(formula: Formula) -> list[Formula]:
    if isinstance(formula, And):
        return _conjuncts(formula.left) + _conjuncts(formula.right)
    return [formula]

def _match_dependence(formula: Formula) -> tuple[tuple[Term, ...], Term] | None:
    if not isinstance(formula, Implies):
        return None
    target = _match_value_question(formula.consequent)
    if target is None:
        return None
    determiners = [_match_value_question(conjunct) for conjunct in _conjuncts(formula.antecedent)]
    if any(term is None for term in determiners):
        return None
    return tuple(determiners), target

@dataclass(slots=True)
class _NodeInfo:
    node: Formula
    free: tuple[str, ...]
    flat: bool
    kind: str = ""
    data: tuple = ()

class _FastEvaluator:
    def __init__(self, structure: Structure, config: EvalConfig):
        self.structure = structure
        self.config = config
        self.fast = config.enable_fast_paths
        self.stats = EvalStats(path="fast")
        self._infos: dict[int, _NodeInfo] = {}
        self._memo: dict[tuple, bool] = {}

    def info(self, node: Formula) -> _NodeInfo:
        info = self._infos.get(id(node))
        if info is None:
            info = _NodeInfo(node=node, free=tuple(sorted(free_vars(node))), flat=is_flat_fragment(node))
            if (term := _match_value_question(node)) is not None:
                info.kind, info.data = "value_question", (term,)
            elif (body := _match_question(node)) is not None:
                info.kind, info.data = "question", (body,)
            elif (dependence := _match_dependence(node)) is not None:
                info.kind, info.data = "dependence", dependence
            self._infos[id(node)] = info
        return info

    def evaluate(self, formula: Formula, vars: tuple[str, ...], rows: Rows) -> bool:
        if not rows:
            return True
        info = self.info(formula)
        if self.fast and info.flat:
            self.stats.flat_shortcuts += 1
            return all(_row_truth(self.structure, vars, row, formula) for row in rows)
        positions = [vars.index(var) for var in info.free]
        key = (id(formula), frozenset(tuple(row[index] for index in positions) for row in rows))
        cached = self._memo.get(key)
        if cached is not None:
            self.stats.memo_hits += 1
            return cached
        self.stats.memo_misses += 1
        result = self._compute(info, vars, rows)
        self._store(key, result, len(key[1]) * (len(positions) + 1))
        return result

    def _store(self, key: tuple, result: bool, cells: int) -> None:
        cost = 96 + 8 * cells
        if self.stats.memo_bytes + cost > self.config.memo_limit:
            if not self.stats.memo_full:
                logger.debug(f"Memo budget of {self.config.memo_limit} bytes exhausted after {self.stats.memo_entries} entries, recomputing from here on")
                self.stats.memo_full = True
            return
        self._memo[key] = result
        self.stats.memo_entries += 1
        self.stats.memo_bytes += cost

    def _compute(self, info: _NodeInfo, vars: tuple[str, ...], rows: Rows) -> bool:
        structure = self.structure
        if self.fast and info.kind:
            envs = [dict(zip(vars, row)) for row in rows]
            if info.kind == "question":
                self.stats.question_shortcuts += 1
                return len({flat_truth(structure, env, info.data[0]) for env in envs}) <= 1
            if info.kind == "value_question":
                self.stats.value_question_shortcuts += 1
                return len({denote(structure, env, info.data[0]) for env in envs}) <= 1
            self.stats.dependence_shortcuts += 1
            determiners, target = info.data
            seen: dict[tuple[int, ...], int] = {}
            for env in envs:
                value = denote(structure, env, target)
                if seen.setdefault(tuple(denote(structure, env, term) for term in determiners), value) != value:
                    return False
            return True

        domain = range(structure.domain_size)
        match info.node:
            case Atom() | Eq():
                return all(_row_truth(structure, vars, row, info.node) for row in rows)
            case Bottom():
                return False
            case And(left=left, right=right):
                return self.evaluate(left, vars, rows) and self.evaluate(right, vars, rows)
            case IDisj(left=left, right=right):
                return self.evaluate(left, vars, rows) or self.evaluate(right, vars, rows)
            case Implies(antecedent=antecedent, consequent=consequent):
                return self.falsifier(antecedent, consequent, vars, rows) is None
            case ForAll(var=var, body=body):
                return all(self.evaluate(body, *extend_rows(vars, rows, var, (value,))) for value in domain)
            case IExists(var=var, body=body):
                return any(self.evaluate(body, *extend_rows(vars, rows, var, (value,))) for value in domain)
            case RangeAll(var=var, body=body):
                return self.evaluate(body, *extend_rows(vars, rows, var, tuple(domain)))
        raise TypeError(f"Not a core formula: {info.node!r}")

    def falsifier(self, antecedent: Formula, consequent: Formula, vars: tuple[str, ...], rows: Rows) -> int | None:
        """
        Mask of the first maximal antecedent-supporting sub-team, in depth-first
        order over increasing row indices, that fails the consequent.
        """
        size = len(rows)
        if size > self.config.fast_subteam_cap:
            raise CapExceededError(f"Implication over {size} rows exceeds the fast cap of {self.config.fast_subteam_cap}")
        self.stats.implication_searches += 1
        full = (1 << size) - 1

        if self.fast and self.info(antecedent).flat:
            # the rows satisfying a flat antecedent form its only maximal supporting sub-team
            mask = sum(1 << index for index, row in enumerate(rows) if _row_truth(self.structure, vars, row, antecedent))
            self.stats.consequent_checks += 1
            return None if self.evaluate(consequent, vars, _select(rows, mask)) else mask

        supported: dict[int, bool] = {0: True}

        def holds(mask: int) -> bool:
            known = supported.get(mask)
            if known is None:
                self.stats.antecedent_checks += 1
                known = supported[mask] = self.evaluate(antecedent, vars, _select(rows, mask))
            return known

        def fails_consequent(mask: int) -> bool:
            self.stats.consequent_checks += 1
            return not self.evaluate(consequent, vars, _select(rows, mask))

        if holds(full):
            return full if fails_consequent(full) else None

        def visit(mask: int, start: int) -> int | None:
            for index in range(start, size):
                bigger = mask | 1 << index
                if holds(bigger):
                    found = visit(bigger, index + 1)
                    if found is not None:
                        return found
            if any(not mask >> index & 1 and holds(mask | 1 << index) for index in range(size)):
                return None
            return mask if fails_consequent(mask) else None

        return visit(0, 0)

def supports_fast_with_stats(structure: Structure, team: Team, formula: Formula, config: EvalConfig | None = None) -> tuple[bool, EvalStats]:
    """
    Fast support check, returning the verdict together with memo and shortcut counters.

    Raises:
        CapExceededError: If an implication search meets a team larger than fast_subteam_cap
        ValueError: If a free variable is missing from the team or a row lies outside the domain
    """
    config = config or EvalConfig()
    _check_inputs(structure, team, formula)
    evaluator = _FastEvaluator(structure, config)
    verdict = evaluator.evaluate(formula, team.vars, team.rows)
    return verdict, evaluator.stats

def supports_fast(structure: Structure, team: Team, formula: Formula, config: EvalConfig | None = None) -> bool:
    return supports_fast_with_stats(structure, team, formula, config)[0]

def satisfies(structure: Structure, sentence: Formula, config: EvalConfig | None = None, fast: bool = False) -> bool:
    """
    M ⊨ σ: support by the team holding only the empty assignment.

    Raises:
        ValueError: If the formula has free variables
    """
    free = free_vars(sentence)
    if free:
        raise ValueError(f"Not a sentence, free variables: {sorted(free)}")
    check = supports_fast if fast else supports
    return check(structure, singleton_empty_team(), sentence, config)

def dep_profile(structure: Structure, team: Team, x: str = "x", y: str = "y") -> DepProfile:
    """
    Read off whether R = Y[x,y] is a function, injective, total and surjective.

    Raises:
        ValueError: If x or y is not a team variable
    """
    relation = team_relation(team, (x, y)).tuples
    sources = {pair[0] for pair in relation}
    targets = {pair[1] for pair in relation}
    domain = set(range(structure.domain_size))
    return DepProfile(
        is_function=len(sources) == len(relation),
        is_injective=len(targets) == len(relation),
        dom_is_full=sources == domain,
        ran_is_full=targets == domain,
    )

def find_falsifying_subteam(
    structure: Structure,
    team: Team,
    antecedent: Formula,
    consequent: Formula,
    config: EvalConfig | None = None,
    fast: bool = False,
) -> Team | None:
    """
    Find a sub-team supporting the antecedent but not the consequent.

    Candidates are tried in increasing mask order, so the witness is the least
    falsifying mask whichever evaluator is used.

    Args:
        structure: Finite structure
        team: Team to search
        antecedent: Formula the witness must support
        consequent: Formula the witness must fail
        config: Caps; naive_subteam_cap bounds the search
        fast: Evaluate candidates with the fast evaluator

    Returns:
        The witness sub-team, or None when the team supports antecedent → consequent

    Raises:
        CapExceededError: If the team has more rows than naive_subteam_cap
    """
    config = config or EvalConfig()
    implication = Implies(antecedent, consequent)
    _check_inputs(structure, team, implication)
    if team.size > config.naive_subteam_cap:
        raise CapExceededError(f"Team has {team.size} rows, more than the sub-team cap of {config.naive_subteam_cap}")
    if fast:
        evaluator = _FastEvaluator(structure, config)
        if evaluator.evaluate(implication, team.vars, team.rows):
            return None
        check = evaluator.evaluate
    else:
        def check(formula: Formula, vars: tuple[str, ...], rows: Rows) -> bool:
            return _reference(structure, config, vars, rows, formula)

    for mask in range(1 << team.size):
        rows = _select(team.rows, mask)
        if check(antecedent, team.vars, rows) and not check(consequent, team.vars, rows):
            return subteam(team, mask)
    return None
