from loguru import logger

from inqlab.modules import constructions
from inqlab.modules import inqbq
from inqlab.modules import parser
from inqlab.modules.evaluator import dep_profile
from inqlab.modules.evaluator import satisfies
from inqlab.modules.evaluator import supports
from inqlab.modules.evaluator import supports_fast
from inqlab.modules.structures import enumerate_teams
from inqlab.modules.syntax import IExists
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import dependence
from inqlab.modules.syntax import neq
from inqlab.schemas.constructions import CnfInstance
from inqlab.schemas.demos import FinitenessDemo
from inqlab.schemas.demos import PaperFormulaResponse
from inqlab.schemas.demos import ReductionReport
from inqlab.schemas.demos import TranslationReport
from inqlab.schemas.evaluator import EvalConfig

def paper_text(name: str) -> PaperFormulaResponse:
    """
    Raises:
        ValueError: If the name is unknown
    """
    formula = constructions.paper_formula(name)
    return PaperFormulaResponse(
        name=constructions.PaperFormula(name).value,
        formula=parser.render(formula),
        signature=parser.render_signature(constructions.paper_signature(name)),
    )

def finiteness_demo(domain_size: int, config: EvalConfig | None = None, fast: bool = True) -> FinitenessDemo:
    """
    Evaluate the finiteness sentence and its negation on the structure of size n
    over the empty signature, then read dep_profile off every team over (x,y) and
    compare each field with the evaluator's verdict on the formula it characterises:

    - function: dep(x;y)
    - injective: dep(y;x)
    - dom(R) = D: the team does not support ∃i u(u != x)
    - ran(R) = D: the team does not support ∃i z(z != y)

    The reference evaluator (`fast=False`) enumerates sub-teams literally and is
    only practical up to n = 3.

    Raises:
        ValueError: If the domain size is not positive
        CapExceededError: If there are too many teams to enumerate
    """
    if domain_size < 1:
        raise ValueError("Domain size must be positive")
    config = config or EvalConfig()
    structure = constructions.empty_structure(domain_size)
    check = supports_fast if fast else supports
    x, y = Var("x"), Var("y")
    characterisations = (
        ("is_function", dependence([x], y), True),
        ("is_injective", dependence([y], x), True),
        ("dom_is_full", IExists("u", neq(Var("u"), x)), False),
        ("ran_is_full", IExists("z", neq(Var("z"), y)), False),
    )
    demo = FinitenessDemo(
        domain_size=domain_size,
        psi_finiteness=satisfies(structure, constructions.paper_formula(constructions.PaperFormula.PSI_FINITENESS), config, fast=fast),
        psi_neg_infinity=satisfies(structure, constructions.paper_formula(constructions.PaperFormula.PSI_NEG_INFINITY), config, fast=fast),
        teams=0,
        evaluator="fast" if fast else "reference",
    )
    for team in enumerate_teams(("x", "y"), domain_size):
        demo.teams += 1
        profile = dep_profile(structure, team)
        demo.functions += profile.is_function
        demo.injective += profile.is_injective
        demo.dom_full += profile.dom_is_full
        demo.ran_full += profile.ran_is_full
        demo.injective_total_non_surjective += (
            profile.is_function and profile.is_injective and profile.dom_is_full and not profile.ran_is_full
        )
        for field, formula, positive in characterisations:
            if getattr(profile, field) != (check(structure, team, formula, config) == positive):
                demo.mismatches += 1
    logger.info(f"Finiteness demo at size {domain_size}: {demo.teams} teams, {demo.mismatches} mismatches")
    return demo

def reduce_3sat(instance: CnfInstance, source: str = "<input>", config: EvalConfig | None = None, fast: bool = True) -> ReductionReport:
    check = constructions.check_reduction(instance, config, fast=fast)
    if not check.agree:
        logger.warning(f"Reduction of {source} disagrees with the SAT oracle")
    return ReductionReport(source=source, check=check)

def translate_check(max_worlds: int = 2, max_domain: int = 2, config: EvalConfig | None = None) -> TranslationReport:
    results = inqbq.check_translations(max_worlds, max_domain, config)
    return TranslationReport(max_worlds=max_worlds, max_domain=max_domain, results=results)
