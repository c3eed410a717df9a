import time

from loguru import logger

from inqlab.modules import evaluator
from inqlab.modules import inqbq
from inqlab.modules import parser
from inqlab.modules.structures import check_structure
from inqlab.modules.structures import check_team
from inqlab.modules.structures import structure_signature
from inqlab.modules.structures import untyped_predicates
from inqlab.modules.syntax import Implies
from inqlab.schemas.evaluation import InqbqVerdict
from inqlab.schemas.evaluation import Verdict
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.evaluator import EvalStats
from inqlab.schemas.inqbq import InfoModel
from inqlab.schemas.inqbq import State
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team
from inqlab.schemas.syntax import Signature

def formula_signature(structure: Structure, extra: str | None = None) -> Signature:
    """
    Symbols a formula may use against `structure`: those read off its tables plus
    the optional extra declarations. Empty predicate tables get their arity from
    the declarations when they name them.

    Raises:
        FormulaParseError: If the extra declarations do not parse
        ValueError: If they clash with the tables
    """
    declared = parser.parse_signature(extra) if extra else Signature()
    signature = structure_signature(structure, declared).merge(declared)
    check_structure(structure, signature)
    return signature

def evaluate_team(
    structure: Structure,
    team: Team,
    formula_text: str,
    signature: str | None = None,
    fast: bool = False,
    config: EvalConfig | None = None,
    timing: bool = False,
) -> Verdict:
    """
    Parse a formula against a structure, decide support on a team and, when the
    formula is an implication that fails, look up the least falsifying sub-team.
    Predicates with an empty table that are not declared take their arity from
    the formula. A failing verdict carries the structure and team for replay.

    Args:
        structure: Finite structure
        team: Team covering the formula's free variables
        formula_text: Formula source, sugar allowed
        signature: Extra symbol declarations
        fast: Use the fast evaluator
        config: Evaluator caps
        timing: Include wall-clock time in the verdict

    Returns:
        Verdict with evaluator statistics and the witness, if any

    Raises:
        FormulaParseError: If the formula does not parse against the signature
        CapExceededError: If a sub-team enumeration exceeds its cap
        ValueError: If a free variable is missing from the team or a row lies outside the domain
    """
    config = config or EvalConfig()
    check_team(structure, team)
    formula = parser.parse(formula_text, formula_signature(structure, signature), untyped_predicates(structure))
    started = time.perf_counter()
    if fast:
        verdict, stats = evaluator.supports_fast_with_stats(structure, team, formula, config)
    else:
        verdict, stats = evaluator.supports(structure, team, formula, config), EvalStats(path="reference")

    witness = None
    if not verdict and isinstance(formula, Implies) and team.size <= config.naive_subteam_cap:
        witness = evaluator.find_falsifying_subteam(structure, team, formula.antecedent, formula.consequent, config, fast=fast)
    elapsed = (time.perf_counter() - started) * 1000
    logger.debug(f"{stats.path} evaluation of {formula_text!r} on {team.size} row(s): {verdict} in {elapsed:.1f} ms")
    return Verdict(
        formula=parser.render(formula),
        supports=verdict,
        evaluator=stats.path,
        stats=stats,
        witness=witness,
        structure=None if verdict else structure,
        team=None if verdict else team,
        elapsed_ms=round(elapsed, 3) if timing else None,
    )

def evaluate_state(
    model: InfoModel,
    formula_text: str,
    state: int | None = None,
    assignment: dict[str, int] | None = None,
    config: EvalConfig | None = None,
    timing: bool = False,
) -> InqbqVerdict:
    """
    Decide support of an InqBQ formula at an information state.

    Raises:
        FormulaParseError: If the formula does not parse against the model's symbols
        ValueError: If the state is out of range, the formula uses [x] or a free variable is unassigned
    """
    config = config or EvalConfig()
    signature = structure_signature(model.interpretation[0])
    untyped = set(untyped_predicates(model.interpretation[0]))
    for world in model.interpretation[1:]:
        signature = signature.merge(structure_signature(world))
        untyped |= untyped_predicates(world)
    formula = parser.parse(formula_text, signature, untyped)
    mask = (1 << model.world_count) - 1 if state is None else state
    information_state = State(mask=mask, world_count=model.world_count)
    started = time.perf_counter()
    verdict = inqbq.state_supports(model, information_state, formula, assignment, config)
    elapsed = (time.perf_counter() - started) * 1000
    return InqbqVerdict(
        formula=parser.render(formula),
        state=mask,
        worlds=list(information_state.worlds()),
        supports=verdict,
        elapsed_ms=round(elapsed, 3) if timing else None,
    )
