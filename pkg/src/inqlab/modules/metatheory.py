"""
Property suites for the structural facts of team and state semantics.

Every suite runs on two tiers. The exhaustive tier enumerates all structures
over {P/1, Q/2, c} up to `max_domain` and every team over the corpus variables;
the randomized tier draws `sample_count` (structure, team, formula) triples at
`random_domain` from per-item seeds derived from `random_seed`, so any single
item can be replayed without running the ones before it.
"""

import functools
import itertools
import random
from collections.abc import Callable
from collections.abc import Iterator
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

from loguru import logger

from inqlab.modules import parser
from inqlab.modules.constructions import PaperFormula
from inqlab.modules.constructions import paper_formula
from inqlab.modules.evaluator import flat_truth
from inqlab.modules.evaluator import satisfies
from inqlab.modules.evaluator import supports
from inqlab.modules.evaluator import supports_fast
from inqlab.modules.evaluator import tarski
from inqlab.modules.inqbq import enumerate_info_models
from inqlab.modules.inqbq import state_supports
from inqlab.modules.structures import CapExceededError
from inqlab.modules.structures import enumerate_structures
from inqlab.modules.structures import extend_const
from inqlab.modules.structures import maximal_team
from inqlab.modules.structures import random_structure
from inqlab.modules.structures import random_team
from inqlab.modules.structures import restrict
from inqlab.modules.structures import singleton_empty_team
from inqlab.modules.structures import subteam
from inqlab.modules.syntax import And
from inqlab.modules.syntax import App
from inqlab.modules.syntax import Atom
from inqlab.modules.syntax import Bottom
from inqlab.modules.syntax import Eq
from inqlab.modules.syntax import ForAll
from inqlab.modules.syntax import Formula
from inqlab.modules.syntax import IDisj
from inqlab.modules.syntax import IExists
from inqlab.modules.syntax import Implies
from inqlab.modules.syntax import RangeAll
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import dependence
from inqlab.modules.syntax import free_vars
from inqlab.modules.syntax import fresh_variable
from inqlab.modules.syntax import is_classical
from inqlab.modules.syntax import is_flat_fragment
from inqlab.modules.syntax import is_inqbt
from inqlab.modules.syntax import neg
from inqlab.modules.syntax import question
from inqlab.modules.syntax import signature_of
from inqlab.modules.syntax import subformulas
from inqlab.modules.syntax import value_question
from inqlab.modules.syntax import value_question_iexists
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.inqbq import InfoModel
from inqlab.schemas.inqbq import State
from inqlab.schemas.metatheory import Counterexample
from inqlab.schemas.metatheory import EquivalenceResult
from inqlab.schemas.metatheory import FlatnessResult
from inqlab.schemas.metatheory import SuiteConfig
from inqlab.schemas.metatheory import SuiteReport
from inqlab.schemas.metatheory import Tier
from inqlab.schemas.structures import EnumerationBounds
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team
from inqlab.schemas.syntax import Signature

CORPUS_SIGNATURE = Signature(predicates={"P": 1, "Q": 2}, functions={"c": 0})
STATE_SIGNATURE = Signature(predicates={"P": 1}, functions={"c": 0})
VARIABLE_POOL = ("x", "y", "z", "u")
SEED_STRIDE = 1_000_003

# Support on a team never depends on the fast paths; the state suite turns them
# off so that flatness is checked clause by clause.
_STATE_CONFIG = EvalConfig(enable_fast_paths=False)

def corpus_variables(cfg: SuiteConfig) -> tuple[str, ...]:
    return VARIABLE_POOL[:cfg.max_vars]

def _atoms(variables: Sequence[str]) -> list[Formula]:
    atoms: list[Formula] = [Atom("P", (Var(var),)) for var in variables]
    atoms.append(Atom("P", (App("c"),)))
    if len(variables) >= 2:
        first, second = Var(variables[0]), Var(variables[1])
        atoms.append(Atom("Q", (first, second)))
        atoms.append(Eq(first, second))
    atoms.append(Bottom())
    return atoms

def _named(variables: Sequence[str]) -> list[Formula]:
    x, y = Var("x"), Var("y")
    candidates = [
        paper_formula(PaperFormula.PHI_XY),
        dependence([x], y),
        value_question(y),
        question(Atom("P", (App("c"),))),
        question(Atom("P", (x,))),
    ]
    return [formula for formula in candidates if free_vars(formula) <= set(variables)]

def formula_corpus(cfg: SuiteConfig) -> Iterator[Formula]:
    """
    Deterministic stream of core formulas up to `max_formula_depth`, followed by the named formulas.

    Level 1 is the atom pool: P(v) for every corpus variable, P(c), Q(x,y) and x=y
    when there are two variables, and ⊥. Level k+1 applies ∀v, ∃i v and [v] to
    level k and combines level k with level 1 under ∧, ⩾ and → in both orders.
    Duplicates are dropped at their second occurrence.
    """
    variables = corpus_variables(cfg)
    seen: set[Formula] = set()

    def unseen(items: Sequence[Formula]) -> list[Formula]:
        fresh = []
        for item in items:
            if item not in seen:
                seen.add(item)
                fresh.append(item)
        return fresh

    base = unseen(_atoms(variables))
    yield from base
    level = base
    for _ in range(cfg.max_formula_depth - 1):
        candidates: list[Formula] = [
            binder(var, body) for body in level for var in variables for binder in (ForAll, IExists, RangeAll)
        ]
        for operator in (And, IDisj, Implies):
            for deep in level:
                for atom in base:
                    candidates.append(operator(deep, atom))
                    candidates.append(operator(atom, deep))
        level = unseen(candidates)
        yield from level
    yield from unseen(_named(variables))

def minimize_team(team: Team, still_violates: Callable[[Team], bool]) -> Team:
    """
    Greedy row-removal minimisation: drop rows one at a time for as long as the
    violation survives, re-checking after every removal.

    Raises:
        ValueError: If the starting team does not violate the property
    """
    if not still_violates(team):
        raise ValueError("The starting team does not exhibit the violation")
    current = team
    shrinking = True
    while shrinking:
        shrinking = False
        full = (1 << current.size) - 1
        for index in range(current.size):
            candidate = subteam(current, full & ~(1 << index))
            if still_violates(candidate):
                current = candidate
                shrinking = True
                break
    return current

def _without_row(team: Team, index: int) -> Team:
    return subteam(team, ((1 << team.size) - 1) & ~(1 << index))

def _persistency_violated(structure: Structure, team: Team, formula: Formula, config: EvalConfig) -> bool:
    if not supports(structure, team, formula, config):
        return False
    return any(not supports(structure, _without_row(team, index), formula, config) for index in range(team.size))

def _dummy_variable(formula: Formula, team: Team) -> str:
    bound = {node.var for node in subformulas(formula) if isinstance(node, ForAll | IExists | RangeAll)}
    return fresh_variable(set(team.vars) | bound)

def _locality_violated(structure: Structure, team: Team, formula: Formula, value: int, config: EvalConfig) -> bool:
    verdict = supports(structure, team, formula, config)
    restricted = restrict(team, free_vars(formula))
    padded = extend_const(team, _dummy_variable(formula, team), value, structure.domain_size)
    return supports(structure, restricted, formula, config) != verdict or supports(structure, padded, formula, config) != verdict

def _pointwise(structure: Structure, team: Team, formula: Formula) -> bool:
    return all(tarski(structure, assignment, formula) for assignment in team.assignments())

def _flatness_violated(structure: Structure, team: Team, formula: Formula, config: EvalConfig) -> bool:
    return supports(structure, team, formula, config) != _pointwise(structure, team, formula)

def _range_violated(structure: Structure, team: Team, var: str, body: Formula, config: EvalConfig) -> bool:
    return supports(structure, team, RangeAll(var, body), config) != supports(structure, team, ForAll(var, body), config)

def _agreement_violated(structure: Structure, team: Team, formula: Formula, config: EvalConfig) -> bool:
    return supports(structure, team, formula, config) != supports_fast(structure, team, formula, config)

def _closures(formula: Formula) -> list[Formula]:
    """
    Universal, range and inquisitive-existential closures; a sentence is its own closure.
    """
    free = sorted(free_vars(formula))
    if not free:
        return [formula]
    closures = []
    for binder in (ForAll, RangeAll, IExists):
        sentence = formula
        for var in reversed(free):
            sentence = binder(var, sentence)
        closures.append(sentence)
    return closures

def _record(
    report: SuiteReport,
    cfg: SuiteConfig,
    name: str,
    tier: Tier,
    violated: bool,
    formula: Formula,
    structure: Structure | None = None,
    team: Team | None = None,
    still_violates: Callable[[Team], bool] | None = None,
    **extra,
) -> None:
    tally = report.tally(name, violated)
    if not violated:
        return
    text = parser.render(formula)
    logger.warning(f"{name} violated on the {tier} tier by {text}")
    if sum(1 for item in report.counterexamples if item.property == name) >= cfg.max_counterexamples:
        return
    if team is not None and still_violates is not None:
        team = minimize_team(team, still_violates)
    report.counterexamples.append(
        Counterexample(property=name, tier=tier, formula=text, structure=structure, team=team, detail=f"violation {tally.violated}", **extra)
    )

@dataclass(frozen=True, slots=True)
class _Table:
    structure: Structure
    team: Team
    formula: Formula
    verdicts: tuple[bool, ...]

def _exhaustive_structures(cfg: SuiteConfig) -> Iterator[Structure]:
    for domain_size in range(1, cfg.max_domain + 1):
        yield from enumerate_structures(CORPUS_SIGNATURE, domain_size)

@functools.lru_cache(maxsize=4)
def _exhaustive_tables(cfg: SuiteConfig, config: EvalConfig) -> tuple[_Table, ...]:
    """
    Reference verdicts of every corpus formula on every sub-team of the maximal
    team, per enumerated structure. Shared by the exhaustive suites of one run.
    """
    variables = corpus_variables(cfg)
    corpus = list(formula_corpus(cfg))
    bounds = EnumerationBounds()
    tables = []
    for structure in _exhaustive_structures(cfg):
        team = maximal_team(variables, structure.domain_size)
        if team.size > bounds.max_team_rows:
            raise CapExceededError(f"Maximal team has {team.size} rows, more than the bound {bounds.max_team_rows}")
        for formula in corpus:
            verdicts = tuple(supports(structure, subteam(team, mask), formula, config) for mask in range(1 << team.size))
            tables.append(_Table(structure, team, formula, verdicts))
    logger.info(f"Computed {len(tables)} verdict tables over {len(corpus)} formulas")
    return tuple(tables)

@dataclass(frozen=True, slots=True)
class _Sample:
    index: int
    rng: random.Random
    structure: Structure
    team: Team
    formula: Formula

def _samples(cfg: SuiteConfig, corpus: Sequence[Formula]) -> Iterator[_Sample]:
    variables = corpus_variables(cfg)
    for index in range(cfg.sample_count):
        rng = random.Random(cfg.random_seed * SEED_STRIDE + index)
        structure = random_structure(CORPUS_SIGNATURE, cfg.random_domain, rng)
        team = random_team(variables, cfg.random_domain, rng, max_rows=cfg.random_max_rows)
        yield _Sample(index, rng, structure, team, rng.choice(corpus))

def _masks_within(mask: int) -> Iterator[int]:
    bit = 1
    while bit <= mask:
        if mask & bit:
            yield mask & ~bit
        bit <<= 1

def check_persistency(cfg: SuiteConfig, tier: Tier = "exhaustive", config: EvalConfig | None = None) -> SuiteReport:
    """
    Every supported team keeps support after removing any one row. By induction this
    covers all sub-teams.
    """
    config = config or EvalConfig()
    report = SuiteReport(tiers=[tier])
    logger.info(f"Persistency suite, {tier} tier")

    if tier == "exhaustive":
        for table in _exhaustive_tables(cfg, config):
            for mask, verdict in enumerate(table.verdicts):
                if not verdict:
                    continue
                violated = any(not table.verdicts[smaller] for smaller in _masks_within(mask))
                _record(report, cfg, "persistency", tier, violated, table.formula, table.structure, subteam(table.team, mask),
                        lambda team, table=table: _persistency_violated(table.structure, team, table.formula, config))
        return report

    for sample in _samples(cfg, list(formula_corpus(cfg))):
        violated = _persistency_violated(sample.structure, sample.team, sample.formula, config)
        _record(report, cfg, "persistency", tier, violated, sample.formula, sample.structure, sample.team,
                lambda team, sample=sample: _persistency_violated(sample.structure, team, sample.formula, config))
    return report

def check_empty_locality_flatness(cfg: SuiteConfig, tier: Tier = "exhaustive", config: EvalConfig | None = None) -> SuiteReport:
    """
    Three properties in one sweep: the empty team supports everything; support only
    depends on the free variables (restriction to them and padding with a dummy
    variable keep the verdict); classical formulas are supported exactly when they
    are true at every row.
    """
    config = config or EvalConfig()
    report = SuiteReport(tiers=[tier])
    logger.info(f"Empty team, locality and flatness suite, {tier} tier")

    if tier == "exhaustive":
        for table in _exhaustive_tables(cfg, config):
            structure, formula = table.structure, table.formula
            _record(report, cfg, "empty_team", tier, not table.verdicts[0], formula, structure, subteam(table.team, 0))
            classical = is_classical(formula)
            for mask, verdict in enumerate(table.verdicts):
                team = subteam(table.team, mask)
                value = mask % structure.domain_size
                _record(report, cfg, "locality", tier, _locality_violated(structure, team, formula, value, config), formula, structure, team,
                        lambda team, table=table, value=value: _locality_violated(table.structure, team, table.formula, value, config))
                if classical:
                    _record(report, cfg, "classical_flatness", tier, verdict != _pointwise(structure, team, formula), formula, structure, team,
                            lambda team, table=table: _flatness_violated(table.structure, team, table.formula, config))
        return report

    for sample in _samples(cfg, list(formula_corpus(cfg))):
        structure, formula = sample.structure, sample.formula
        empty = Team.model_construct(vars=sample.team.vars, rows=())
        _record(report, cfg, "empty_team", tier, not supports(structure, empty, formula, config), formula, structure, empty)
        value = sample.rng.randrange(structure.domain_size)
        _record(report, cfg, "locality", tier, _locality_violated(structure, sample.team, formula, value, config), formula, structure, sample.team,
                lambda team, sample=sample, value=value: _locality_violated(sample.structure, team, sample.formula, value, config))
        if is_classical(formula):
            _record(report, cfg, "classical_flatness", tier, _flatness_violated(structure, sample.team, formula, config), formula, structure, sample.team,
                    lambda team, sample=sample: _flatness_violated(sample.structure, team, sample.formula, config))
    return report

def check_range_universal(cfg: SuiteConfig, tier: Tier = "exhaustive", config: EvalConfig | None = None) -> SuiteReport:
    """
    [x]α and ∀xα have the same support for every {⩾, ∃i}-free α.
    """
    config = config or EvalConfig()
    report = SuiteReport(tiers=[tier])
    variables = corpus_variables(cfg)
    logger.info(f"Range quantifier suite, {tier} tier")

    if tier == "exhaustive":
        for table in _exhaustive_tables(cfg, config):
            if not is_flat_fragment(table.formula):
                continue
            for var in variables:
                for mask in range(1 << table.team.size):
                    team = subteam(table.team, mask)
                    violated = _range_violated(table.structure, team, var, table.formula, config)
                    _record(report, cfg, "range_universal", tier, violated, RangeAll(var, table.formula), table.structure, team,
                            lambda team, table=table, var=var: _range_violated(table.structure, team, var, table.formula, config))
        return report

    flat = [formula for formula in formula_corpus(cfg) if is_flat_fragment(formula)]
    for sample in _samples(cfg, flat):
        var = sample.rng.choice(variables)
        violated = _range_violated(sample.structure, sample.team, var, sample.formula, config)
        _record(report, cfg, "range_universal", tier, violated, RangeAll(var, sample.formula), sample.structure, sample.team,
                lambda team, sample=sample, var=var: _range_violated(sample.structure, team, var, sample.formula, config))
    return report

def check_sentence_negation(cfg: SuiteConfig, tier: Tier = "exhaustive", config: EvalConfig | None = None) -> SuiteReport:
    """
    Sentences behave classically under ¬: M ⊨ ¬σ exactly when M ⊭ σ. Sentences are the
    closures of corpus formulas under ∀, [x] and ∃i.

    The randomized tier evaluates with the fast evaluator, whose agreement with the
    reference evaluator is its own suite.
    """
    config = config or EvalConfig()
    report = SuiteReport(tiers=[tier])
    corpus = list(formula_corpus(cfg))
    logger.info(f"Sentence negation suite, {tier} tier")
    empty = singleton_empty_team()

    if tier == "exhaustive":
        sentences = list(dict.fromkeys(sentence for formula in corpus for sentence in _closures(formula)))
        for structure in _exhaustive_structures(cfg):
            for sentence in sentences:
                violated = satisfies(structure, neg(sentence), config) == satisfies(structure, sentence, config)
                _record(report, cfg, "sentence_negation", tier, violated, sentence, structure, empty)
        return report

    for sample in _samples(cfg, corpus):
        sentence = sample.rng.choice(_closures(sample.formula))
        violated = satisfies(sample.structure, neg(sentence), config, fast=True) == satisfies(sample.structure, sentence, config, fast=True)
        _record(report, cfg, "sentence_negation", tier, violated, sentence, sample.structure, empty)
    return report

def check_evaluator_agreement(cfg: SuiteConfig, tier: Tier = "exhaustive", config: EvalConfig | None = None) -> SuiteReport:
    """
    The fast evaluator returns the reference verdict on every checked team.
    """
    config = config or EvalConfig()
    report = SuiteReport(tiers=[tier])
    logger.info(f"Evaluator agreement suite, {tier} tier")

    if tier == "exhaustive":
        for table in _exhaustive_tables(cfg, config):
            for mask, verdict in enumerate(table.verdicts):
                team = subteam(table.team, mask)
                violated = supports_fast(table.structure, team, table.formula, config) != verdict
                _record(report, cfg, "evaluator_agreement", tier, violated, table.formula, table.structure, team,
                        lambda team, table=table: _agreement_violated(table.structure, team, table.formula, config))
        return report

    for sample in _samples(cfg, list(formula_corpus(cfg))):
        violated = _agreement_violated(sample.structure, sample.team, sample.formula, config)
        _record(report, cfg, "evaluator_agreement", tier, violated, sample.formula, sample.structure, sample.team,
                lambda team, sample=sample: _agreement_violated(sample.structure, team, sample.formula, config))
    return report

def _within(signature: Signature, outer: Signature) -> bool:
    return all(outer.predicates.get(name) == arity for name, arity in signature.predicates.items()) and all(
        outer.functions.get(name) == arity for name, arity in signature.functions.items()
    )

def _state_formulas(cfg: SuiteConfig) -> list[Formula]:
    return [formula for formula in formula_corpus(cfg) if is_inqbt(formula) and _within(signature_of(formula), STATE_SIGNATURE)]

def _assignments(formula: Formula, domain_size: int) -> list[dict[str, int]]:
    free = sorted(free_vars(formula))
    return [dict(zip(free, values)) for values in itertools.product(range(domain_size), repeat=len(free))]

def _check_states(report: SuiteReport, cfg: SuiteConfig, tier: Tier, model: InfoModel, formula: Formula) -> None:
    classical = is_classical(formula)
    for assignment in _assignments(formula, model.domain_size):
        verdicts = [
            state_supports(model, State.model_construct(mask=mask, world_count=model.world_count), formula, assignment, _STATE_CONFIG)
            for mask in range(1 << model.world_count)
        ]

        def record(name: str, violated: bool, mask: int) -> None:
            state = State.model_construct(mask=mask, world_count=model.world_count)
            _record(report, cfg, name, tier, violated, formula, info_model=model, state=state)

        record("inqbq_empty_state", not verdicts[0], 0)
        for mask, verdict in enumerate(verdicts):
            if verdict:
                record("inqbq_persistency", any(not verdicts[smaller] for smaller in _masks_within(mask)), mask)
            if classical:
                pointwise = all(
                    flat_truth(model.interpretation[world], assignment, formula)
                    for world in range(model.world_count) if mask >> world & 1
                )
                record("inqbq_classical_flatness", verdict != pointwise, mask)

def check_inqbq_properties(cfg: SuiteConfig, tier: Tier = "exhaustive", config: EvalConfig | None = None) -> SuiteReport:
    """
    Persistency, the empty state and flatness of classical formulas at the level of
    information states, over models of the signature {P/1, c} with up to `max_worlds`
    worlds. Support is computed clause by clause, without the flat shortcut.
    """
    report = SuiteReport(tiers=[tier])
    formulas = _state_formulas(cfg)
    logger.info(f"Information state suite, {tier} tier, {len(formulas)} formulas")

    if tier == "exhaustive":
        for world_count in range(1, cfg.max_worlds + 1):
            for domain_size in range(1, cfg.max_domain + 1):
                for model in enumerate_info_models(STATE_SIGNATURE, world_count, domain_size):
                    for formula in formulas:
                        _check_states(report, cfg, tier, model, formula)
        return report

    world_count = cfg.max_worlds + 1
    for index in range(cfg.sample_count):
        rng = random.Random(cfg.random_seed * SEED_STRIDE + index)
        worlds = tuple(random_structure(STATE_SIGNATURE, cfg.random_domain, rng) for _ in range(world_count))
        model = InfoModel.model_construct(worlds=world_count, domain=cfg.random_domain, interpretation=worlds)
        _check_states(report, cfg, tier, model, rng.choice(formulas))
    return report

def check_value_question_forms(cfg: SuiteConfig, config: EvalConfig | None = None) -> SuiteReport:
    """
    The two definitions of the value question, ∀v ?(v = t) and ∃i v (v = t), agree
    for a variable and for a constant.
    """
    report = SuiteReport(tiers=["exhaustive"])
    for term in (Var("x"), App("c")):
        result = equivalent_up_to(value_question(term), value_question_iexists(term), cfg, config)
        report.tally("value_question_forms", not result.equivalent)
        if result.witness is not None:
            report.counterexamples.append(result.witness)
    return report

def equivalent_up_to(left: Formula, right: Formula, cfg: SuiteConfig, config: EvalConfig | None = None) -> EquivalenceResult:
    """
    Bounded equivalence: same support on every team over the joint free variables,
    in every structure over the joint signature up to `max_domain`.

    Returns:
        The result; on a difference, the first witness in enumeration order

    Raises:
        CapExceededError: If the structures or teams exceed the enumeration bounds
    """
    config = config or EvalConfig()
    signature = signature_of(left).merge(signature_of(right))
    variables = sorted(free_vars(left) | free_vars(right))
    bounds = EnumerationBounds()
    result = EquivalenceResult(left=parser.render(left), right=parser.render(right), equivalent=True)
    for domain_size in range(1, cfg.max_domain + 1):
        full = maximal_team(variables, domain_size)
        if full.size > bounds.max_team_rows:
            raise CapExceededError(f"Maximal team has {full.size} rows, more than the bound {bounds.max_team_rows}")
        for structure in enumerate_structures(signature, domain_size, bounds):
            for mask in range(1 << full.size):
                team = subteam(full, mask)
                result.checked += 1
                if supports(structure, team, left, config) != supports(structure, team, right, config):
                    result.equivalent = False
                    result.witness = Counterexample(
                        property="equivalence", tier="exhaustive", formula=f"{result.left} <-> {result.right}",
                        structure=structure, team=team,
                    )
                    return result
    return result

def is_flat_up_to(formula: Formula, cfg: SuiteConfig, config: EvalConfig | None = None) -> FlatnessResult:
    """
    Bounded flatness check: support on a team (or state) coincides with support
    at each of its singletons.

    Teams are checked first, over the formula's own signature and free variables.
    A constant denotes the same element throughout a team, so formulas such as
    ?P(c) are flat on teams; for InqBT formulas the check continues over
    information states with up to `max_worlds` worlds, where constants may vary.

    Returns:
        flat=True when no violation exists within the bounds, otherwise the first witness
    """
    config = config or EvalConfig()
    signature = signature_of(formula)
    variables = sorted(free_vars(formula))
    text = parser.render(formula)
    result = FlatnessResult(formula=text, flat=True)
    for domain_size in range(1, cfg.max_domain + 1):
        full = maximal_team(variables, domain_size)
        for structure in enumerate_structures(signature, domain_size):
            verdicts = [supports(structure, subteam(full, mask), formula, config) for mask in range(1 << full.size)]
            for mask, verdict in enumerate(verdicts):
                result.checked += 1
                singletons = all(verdicts[1 << index] for index in range(full.size) if mask >> index & 1)
                if verdict != singletons:
                    result.flat = False
                    result.witness = Counterexample(property="flatness", tier="exhaustive", formula=text,
                                                    structure=structure, team=subteam(full, mask))
                    return result
    if not is_inqbt(formula):
        return result
    for world_count in range(2, cfg.max_worlds + 1):
        for domain_size in range(1, cfg.max_domain + 1):
            for model in enumerate_info_models(signature, world_count, domain_size):
                for assignment in _assignments(formula, domain_size):
                    verdicts = [
                        state_supports(model, State.model_construct(mask=mask, world_count=world_count), formula, assignment, _STATE_CONFIG)
                        for mask in range(1 << world_count)
                    ]
                    for mask, verdict in enumerate(verdicts):
                        result.checked += 1
                        singletons = all(verdicts[1 << world] for world in range(world_count) if mask >> world & 1)
                        if verdict != singletons:
                            result.flat = False
                            result.witness = Counterexample(
                                property="flatness", tier="exhaustive", formula=text, info_model=model,
                                state=State.model_construct(mask=mask, world_count=world_count),
                                detail=f"assignment {assignment}",
                            )
                            return result
    return result

SUITES: dict[str, Callable[[SuiteConfig, Tier, EvalConfig | None], SuiteReport]] = {
    "persistency": check_persistency,
    "empty_locality_flatness": check_empty_locality_flatness,
    "range_universal": check_range_universal,
    "sentence_negation": check_sentence_negation,
    "evaluator_agreement": check_evaluator_agreement,
    "inqbq": check_inqbq_properties,
}

def run_suites(
    cfg: SuiteConfig,
    tier: Literal["exhaustive", "randomized", "all"] = "exhaustive",
    config: EvalConfig | None = None,
    only: Sequence[str] | None = None,
) -> SuiteReport:
    """
    Run the property suites on the requested tier(s) and merge their reports.

    Args:
        cfg: Corpus and tier bounds
        tier: exhaustive, randomized or all
        config: Evaluator caps
        only: Names from SUITES to restrict the run to

    Raises:
        ValueError: If `only` names an unknown suite
    """
    config = config or EvalConfig()
    names = list(only) if only else list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError(f"Unknown suite(s) {unknown}; expected some of {list(SUITES)}")
    tiers: list[Tier] = ["exhaustive", "randomized"] if tier == "all" else [tier]
    report = SuiteReport()
    for current in tiers:
        for name in names:
            report = report.merge(SUITES[name](cfg, current, config))
        if current == "exhaustive" and not only:
            report = report.merge(check_value_question_forms(cfg, config))
    logger.info(f"Suites finished: {'pass' if report.passed else 'FAIL'}")
    return report

def render_report_table(report: SuiteReport) -> str:
    """
    Markdown summary of a report, one row per property.
    """
    markdown = "## Property suites\n\n"
    markdown += f"**Tiers:** {', '.join(report.tiers) or '-'} | **Result:** {'PASS' if report.passed else 'FAIL'}\n\n"
    markdown += "| Property | Checked | Violated |\n"
    markdown += "|----------|---------|----------|\n"
    for name in sorted(report.properties):
        tally = report.properties[name]
        markdown += f"| `{name}` | {tally.checked} | {tally.violated} |\n"
    if report.counterexamples:
        markdown += "\n### Counterexamples\n\n"
        for item in report.counterexamples:
            markdown += f"- `{item.property}` ({item.tier}): `{item.formula}`\n"
    return markdown
