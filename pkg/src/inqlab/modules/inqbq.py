"""
InqBQ over first-order information models: support at information states,
the relations R_s, full models and the relational encoding M*.
"""

import itertools
from collections.abc import Iterator
from collections.abc import Mapping
from pathlib import Path

from loguru import logger

from inqlab.modules import parser
from inqlab.modules import twosorted
from inqlab.modules.constructions import PaperFormula
from inqlab.modules.constructions import paper_formula
from inqlab.modules.evaluator import flat_truth
from inqlab.modules.evaluator import denote
from inqlab.modules.structures import CapExceededError
from inqlab.modules.structures import count_structures
from inqlab.modules.structures import enumerate_structures
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
from inqlab.modules.syntax import free_vars
from inqlab.modules.syntax import is_flat_fragment
from inqlab.modules.syntax import is_inqbt
from inqlab.modules.syntax import question
from inqlab.modules.twosorted import SAtom
from inqlab.modules.twosorted import SApp
from inqlab.modules.twosorted import SExists
from inqlab.modules.twosorted import SForAll
from inqlab.modules.twosorted import SNot
from inqlab.modules.twosorted import SOr
from inqlab.modules.twosorted import SVar
from inqlab.modules.twosorted import Sentence
from inqlab.modules.twosorted import Sort
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.inqbq import FullModelScan
from inqlab.schemas.inqbq import InfoModel
from inqlab.schemas.inqbq import State
from inqlab.schemas.inqbq import TranslationResult
from inqlab.schemas.inqbq import TwoSortedStructure
from inqlab.schemas.structures import EnumerationBounds
from inqlab.schemas.structures import Relation
from inqlab.schemas.structures import Structure
from inqlab.schemas.syntax import Signature

def full_state(model: InfoModel) -> State:
    return State(mask=(1 << model.world_count) - 1, world_count=model.world_count)

def substates(state: State, cap: int = 20) -> Iterator[State]:
    """
    Yield every sub-state of `state`, in increasing mask order.

    Raises:
        CapExceededError: If the state has more than `cap` worlds
    """
    worlds = state.worlds()
    if len(worlds) > cap:
        raise CapExceededError(f"State has {len(worlds)} worlds, more than the sub-state cap of {cap}")
    for selection in range(1 << len(worlds)):
        mask = sum(1 << world for index, world in enumerate(worlds) if selection >> index & 1)
        yield State.model_construct(mask=mask, world_count=state.world_count)

def _holds(model: InfoModel, config: EvalConfig, worlds: tuple[int, ...], env: dict[str, int], formula: Formula) -> bool:
    if not worlds:
        return True
    if config.enable_fast_paths and is_flat_fragment(formula):
        # classical formulas are flat at state level
        return all(flat_truth(model.interpretation[world], env, formula) for world in worlds)
    domain = range(model.domain_size)
    match formula:
        case Atom() | Eq():
            return all(flat_truth(model.interpretation[world], env, formula) for world in worlds)
        case Bottom():
            return False
        case And(left=left, right=right):
            return _holds(model, config, worlds, env, left) and _holds(model, config, worlds, env, right)
        case IDisj(left=left, right=right):
            return _holds(model, config, worlds, env, left) or _holds(model, config, worlds, env, right)
        case Implies(antecedent=antecedent, consequent=consequent):
            if len(worlds) > config.naive_subteam_cap:
                raise CapExceededError(f"Implication over {len(worlds)} worlds exceeds the cap of {config.naive_subteam_cap}")
            for selection in range(1 << len(worlds)):
                sub = tuple(world for index, world in enumerate(worlds) if selection >> index & 1)
                if _holds(model, config, sub, env, antecedent) and not _holds(model, config, sub, env, consequent):
                    return False
            return True
        case ForAll(var=var, body=body):
            return all(_holds(model, config, worlds, {**env, var: value}, body) for value in domain)
        case IExists(var=var, body=body):
            return any(_holds(model, config, worlds, {**env, var: value}, body) for value in domain)
        case RangeAll():
            raise ValueError("[x] is not part of the InqBQ language")
    raise TypeError(f"Not a core formula: {formula!r}")

def state_supports(
    model: InfoModel,
    state: State,
    formula: Formula,
    assignment: Mapping[str, int] | None = None,
    config: EvalConfig | None = None,
) -> bool:
    """
    M, s ⊨_g φ.

    Atoms and identities must hold at every world of the state, relative to the
    world's interpretation of the terms. With fast paths enabled, {⩾, ∃i}-free
    subformulas are checked world by world instead of clause by clause.

    Args:
        model: Information model
        state: Information state of that model
        formula: InqBT formula (no [x])
        assignment: Values of the free variables
        config: naive_subteam_cap bounds sub-state enumeration at implications

    Returns:
        Whether the state supports the formula under the assignment

    Raises:
        ValueError: If the formula contains [x], a free variable is unassigned
            or outside the domain, or the state belongs to a model with another number of worlds
        CapExceededError: If an implication is reached on a state above the cap
    """
    config = config or EvalConfig()
    assignment = dict(assignment or {})
    if not is_inqbt(formula):
        raise ValueError("[x] is not part of the InqBQ language")
    missing = free_vars(formula) - set(assignment)
    if missing:
        raise ValueError(f"Assignment does not cover free variables {sorted(missing)}")
    outside = sorted(name for name, value in assignment.items() if not 0 <= value < model.domain_size)
    if outside:
        raise ValueError(f"Assignment puts {outside} outside the domain {{0..{model.domain_size - 1}}}")
    if state.world_count != model.world_count:
        raise ValueError(f"State over {state.world_count} worlds used with a model of {model.world_count} worlds")
    return _holds(model, config, state.worlds(), assignment, formula)

def info_satisfies(model: InfoModel, sentence: Formula, config: EvalConfig | None = None) -> bool:
    """
    M ⊨ σ: support at the state of all worlds.

    Raises:
        ValueError: If the formula has free variables or contains [x]
    """
    free = free_vars(sentence)
    if free:
        raise ValueError(f"Not a sentence, free variables: {sorted(free)}")
    return state_supports(model, full_state(model), sentence, config=config)

def state_relation(model: InfoModel, state: State, first: str = "a", second: str = "b") -> Relation:
    """
    R_s = {(a_w, b_w) | w in s}.

    Raises:
        ValueError: If the model does not interpret both constants
    """
    for name in (first, second):
        table = model.interpretation[0].functions.get(name)
        if table is None or () not in table:
            raise ValueError(f"Model does not interpret the constant {name!r}")
    pairs = {
        (denote(model.interpretation[world], {}, App(first)), denote(model.interpretation[world], {}, App(second)))
        for world in state.worlds()
    }
    return Relation.model_construct(arity=2, tuples=frozenset(pairs))

def load_info_model(path: str | Path) -> InfoModel:
    """
    Raises:
        pydantic.ValidationError: If the file does not match the information model format
        OSError: If the file cannot be read
    """
    return InfoModel.model_validate_json(Path(path).read_text())

def build_full_model(domain_size: int) -> InfoModel:
    """
    The model with worlds (i, j) in D^2, numbered i * n + j, where a is i and b is j.

    Raises:
        ValueError: If the domain size is not positive
    """
    if domain_size < 1:
        raise ValueError("Domain size must be positive")
    worlds = [
        Structure(domain=domain_size, functions={"a": {(): first}, "b": {(): second}})
        for first, second in itertools.product(range(domain_size), repeat=2)
    ]
    return InfoModel(worlds=len(worlds), domain=domain_size, interpretation=worlds)

def encode_relational(model: InfoModel) -> TwoSortedStructure:
    """
    M*: every predicate P becomes P* with (w, d...) in P* iff d... in I_w(P), and every
    function f becomes f* with f*(w, d...) = I_w(f)(d...). Starred names end in '*'.
    """
    predicates: dict[str, set[tuple[int, ...]]] = {}
    functions: dict[str, dict[tuple[int, ...], int]] = {}
    for world, structure in enumerate(model.interpretation):
        for name, table in structure.predicates.items():
            predicates.setdefault(f"{name}*", set()).update((world,) + row for row in table)
        for name, table in structure.functions.items():
            functions.setdefault(f"{name}*", {}).update({(world,) + key: value for key, value in table.items()})
    return TwoSortedStructure.model_construct(
        worlds=model.world_count,
        domain=model.domain_size,
        predicates={name: frozenset(rows) for name, rows in predicates.items()},
        functions=functions,
    )

def decode_relational(encoded: TwoSortedStructure) -> InfoModel:
    """
    Inverse of `encode_relational`.

    Raises:
        ValueError: If a symbol name does not end in '*'
    """
    for name in list(encoded.predicates) + list(encoded.functions):
        if not name.endswith("*"):
            raise ValueError(f"Encoded symbol {name!r} does not end in '*'")
    worlds = []
    for world in range(encoded.world_count):
        predicates = {
            name[:-1]: frozenset(row[1:] for row in table if row[0] == world)
            for name, table in encoded.predicates.items()
        }
        functions = {
            name[:-1]: {key[1:]: value for key, value in table.items() if key[0] == world}
            for name, table in encoded.functions.items()
        }
        worlds.append(Structure.model_construct(domain=encoded.domain_size, predicates=predicates, functions=functions))
    return InfoModel.model_construct(worlds=encoded.world_count, domain=encoded.domain_size, interpretation=tuple(worlds))

def enumerate_info_models(signature: Signature, world_count: int, domain_size: int, bounds: EnumerationBounds | None = None) -> Iterator[InfoModel]:
    """
    Every information model with the given numbers of worlds and elements.

    Raises:
        CapExceededError: If the number of models exceeds the bound
    """
    bounds = bounds or EnumerationBounds()
    total = count_structures(signature, domain_size) ** world_count
    if total > bounds.max_structures:
        raise CapExceededError(f"{total} information models exceed the bound {bounds.max_structures}")
    per_world = list(enumerate_structures(signature, domain_size, bounds))
    for worlds in itertools.product(per_world, repeat=world_count):
        yield InfoModel.model_construct(worlds=world_count, domain=domain_size, interpretation=worlds)

def _injective_total_non_surjective(relation: Relation, domain_size: int) -> bool:
    pairs = relation.tuples
    sources = {pair[0] for pair in pairs}
    targets = {pair[1] for pair in pairs}
    domain = set(range(domain_size))
    return len(sources) == len(pairs) == len(targets) and sources == domain and targets != domain

def scan_full_model(domain_size: int, config: EvalConfig | None = None) -> FullModelScan:
    """
    Evaluate phi(a,b) on the full model of size n and, independently, look for a state whose
    R_s is an injective, total, non-surjective function. On finite domains the verdict must
    be True and the list of such states empty.
    """
    model = build_full_model(domain_size)
    satisfied = info_satisfies(model, paper_formula(PaperFormula.PHI_AB), config)
    falsifying = []
    for state in substates(full_state(model), cap=max(model.world_count, 1)):
        if _injective_total_non_surjective(state_relation(model, state), domain_size):
            falsifying.append(state.mask)
    logger.info(f"Scanned {1 << model.world_count} states of the full model of size {domain_size}")
    return FullModelScan(
        domain_size=domain_size,
        world_count=model.world_count,
        states_scanned=1 << model.world_count,
        formula_satisfied=satisfied,
        falsifying_relations=falsifying,
    )

TRANSLATION_SIGNATURE = Signature(predicates={"P": 1}, functions={"a": 0})

def sample_translations() -> list[tuple[Formula, Sentence]]:
    """
    InqBQ sentences over {P/1, a} paired with two-sorted sentences over {P*, a*}
    that hold in M* exactly when the InqBQ sentence is supported in M.
    """
    w = SVar("w", Sort.WORLD)
    x = SVar("x", Sort.ENTITY)
    p_of_a = SAtom("P*", (w, SApp("a*", (w,))))
    everywhere = SForAll(w, p_of_a)
    p_a = Atom("P", (App("a"),))
    return [
        (p_a, everywhere),
        (question(p_a), SOr(everywhere, SForAll(w, SNot(p_of_a)))),
        (IExists("x", Atom("P", (Var("x"),))), SExists(x, SForAll(w, SAtom("P*", (w, x))))),
    ]

def check_translations(max_worlds: int = 2, max_domain: int = 2, config: EvalConfig | None = None) -> list[TranslationResult]:
    """
    Compare both sides of every translation pair on all information models over
    {P/1, a} with at most `max_worlds` worlds and `max_domain` elements.
    """
    results = [
        TranslationResult(inqbq=parser.render(formula), first_order=twosorted.render_fo2(sentence))
        for formula, sentence in sample_translations()
    ]
    pairs = sample_translations()
    for world_count in range(1, max_worlds + 1):
        for domain_size in range(1, max_domain + 1):
            for model in enumerate_info_models(TRANSLATION_SIGNATURE, world_count, domain_size):
                encoded = encode_relational(model)
                for result, (formula, sentence) in zip(results, pairs):
                    result.models_checked += 1
                    if info_satisfies(model, formula, config) == twosorted.fo2_eval(encoded, sentence):
                        result.agreements += 1
                    elif result.first_disagreement is None:
                        logger.warning(f"Translation of {result.inqbq} disagrees on a model with {world_count} world(s)")
                        result.first_disagreement = model
    return results
