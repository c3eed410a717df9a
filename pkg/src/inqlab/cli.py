"""
Command-line front end.

Every subcommand prints one JSON document (or a short text rendering with
`--format text`) on stdout; logs go to stderr. Exit codes: 0 when the command
ran and nothing failed, 1 on a property violation or a verdict that disagrees
with its cross-check, 2 on usage, input, parse or schema errors.
"""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

import pydantic
from loguru import logger

from inqlab import utils
from inqlab.modules import constructions
from inqlab.modules import inqbq
from inqlab.modules import metatheory
from inqlab.modules.parser import FormulaParseError
from inqlab.modules.structures import CapExceededError
from inqlab.modules.structures import load_structure
from inqlab.modules.structures import load_team
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.metatheory import SuiteConfig
from inqlab.services import demos
from inqlab.services import evaluation

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

def _add_eval_config(parser: argparse.ArgumentParser) -> None:
    defaults = EvalConfig()
    parser.add_argument("--naive-cap", type=int, default=defaults.naive_subteam_cap, help="Sub-team cap of the reference evaluator")
    parser.add_argument("--fast-cap", type=int, default=defaults.fast_subteam_cap, help="Sub-team cap of the fast evaluator")
    parser.add_argument("--memo-limit", type=int, default=defaults.memo_limit, help="Byte budget of the fast evaluator's memo table")
    parser.add_argument("--no-fast-paths", action="store_true", help="Disable flat short-circuits and closed forms")

def _eval_config(args: argparse.Namespace) -> EvalConfig:
    return EvalConfig(
        naive_subteam_cap=args.naive_cap,
        fast_subteam_cap=args.fast_cap,
        memo_limit=args.memo_limit,
        enable_fast_paths=not args.no_fast_paths,
    )

def _assignment(items: Sequence[str]) -> dict[str, int]:
    assignment = {}
    for item in items:
        name, _, value = item.partition("=")
        if not name or not value.isdigit():
            raise ValueError(f"Expected NAME=ELEMENT, got {item!r}")
        assignment[name.strip()] = int(value)
    return assignment

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="inqlab", description="Model checking for team-based and inquisitive first-order logic")
    parser.add_argument("--format", choices=["json", "text"], default="json", help="Output format (default: json)")
    parser.add_argument("--timing", action="store_true", help="Include wall-clock timings in verdicts")
    parser.add_argument("--log-level", default="WARNING", help="Log level for stderr (default: WARNING)")
    commands = parser.add_subparsers(dest="command", required=True)

    command = commands.add_parser("eval", help="Decide support of a formula on a team")
    command.add_argument("--model", required=True, type=Path, help="Structure JSON file")
    command.add_argument("--team", required=True, type=Path, help="Team JSON file")
    command.add_argument("--formula", required=True, help="Formula text")
    command.add_argument("--signature", help="Extra symbols, e.g. 'P/1, Q/2; c/0'")
    command.add_argument("--fast", action="store_true", help="Use the fast evaluator")
    command.add_argument("--expect", choices=["true", "false"], help="Exit with 1 when the verdict differs")
    _add_eval_config(command)

    command = commands.add_parser("inqbq-eval", help="Decide support of an InqBQ formula at an information state")
    command.add_argument("--model", required=True, type=Path, help="Information model JSON file")
    command.add_argument("--formula", required=True, help="Formula text")
    command.add_argument("--state", type=int, help="Bit mask of worlds (default: all worlds)")
    command.add_argument("--assign", action="append", default=[], metavar="NAME=ELEMENT", help="Value of a free variable")
    command.add_argument("--expect", choices=["true", "false"], help="Exit with 1 when the verdict differs")
    _add_eval_config(command)

    command = commands.add_parser("paper", help="Print a named formula")
    command.add_argument("name", choices=[item.value for item in constructions.PaperFormula])

    command = commands.add_parser("finiteness-demo", help="Profile every team over (x,y) on a structure of size n")
    command.add_argument("--n", type=int, required=True, help="Domain size")
    command.add_argument("--reference", action="store_true", help="Use the reference evaluator instead of the fast one")
    _add_eval_config(command)

    command = commands.add_parser("reduce3sat", help="Encode a DIMACS 3-CNF instance and cross-check it with the SAT oracle")
    command.add_argument("--cnf", required=True, type=Path, help="DIMACS file")
    command.add_argument("--reference", action="store_true", help="Use the reference evaluator instead of the fast one")
    _add_eval_config(command)

    command = commands.add_parser("translate-check", help="Compare InqBQ sentences with their two-sorted translations")
    command.add_argument("--max-worlds", type=int, default=2)
    command.add_argument("--max-domain", type=int, default=2)

    defaults = SuiteConfig()
    command = commands.add_parser("suite", help="Run the property suites")
    command.add_argument("--tier", choices=["exhaustive", "randomized", "all"], default="exhaustive")
    command.add_argument("--only", action="append", choices=list(metatheory.SUITES), help="Run only this suite (repeatable)")
    command.add_argument("--max-domain", type=int, default=defaults.max_domain)
    command.add_argument("--max-vars", type=int, default=defaults.max_vars)
    command.add_argument("--depth", type=int, default=defaults.max_formula_depth)
    command.add_argument("--seed", type=int, default=defaults.random_seed)
    command.add_argument("--samples", type=int, default=defaults.sample_count)
    command.add_argument("--random-domain", type=int, default=defaults.random_domain)
    command.add_argument("--max-worlds", type=int, default=defaults.max_worlds)
    _add_eval_config(command)
    return parser

def _emit(model: pydantic.BaseModel, text: str, args: argparse.Namespace) -> None:
    print(text if args.format == "text" else model.model_dump_json(by_alias=True, indent=2))

def _flag(value: bool) -> str:
    return "true" if value else "false"

def _run_eval(args: argparse.Namespace) -> int:
    structure = load_structure(args.model)
    team = load_team(args.team)
    verdict = evaluation.evaluate_team(structure, team, args.formula, args.signature, args.fast, _eval_config(args), args.timing)
    text = f"supports={_flag(verdict.supports)} ({verdict.evaluator})"
    if verdict.witness is not None:
        text += f"\nwitness: {[list(row) for row in verdict.witness.rows]} over {list(verdict.witness.vars)}"
    _emit(verdict, text, args)
    if args.expect is not None and _flag(verdict.supports) != args.expect:
        return EXIT_FAILED
    return EXIT_OK

def _run_inqbq_eval(args: argparse.Namespace) -> int:
    model = inqbq.load_info_model(args.model)
    verdict = evaluation.evaluate_state(model, args.formula, args.state, _assignment(args.assign), _eval_config(args), args.timing)
    _emit(verdict, f"supports={_flag(verdict.supports)} at worlds {verdict.worlds}", args)
    if args.expect is not None and _flag(verdict.supports) != args.expect:
        return EXIT_FAILED
    return EXIT_OK

def _run_paper(args: argparse.Namespace) -> int:
    response = demos.paper_text(args.name)
    _emit(response, response.formula, args)
    return EXIT_OK

def _run_finiteness_demo(args: argparse.Namespace) -> int:
    demo = demos.finiteness_demo(args.n, _eval_config(args), fast=not args.reference)
    text = "\n".join([
        f"n={demo.domain_size} psi={_flag(demo.psi_finiteness)} not-psi={_flag(demo.psi_neg_infinity)}",
        f"teams={demo.teams} functions={demo.functions} injective={demo.injective} dom-full={demo.dom_full} ran-full={demo.ran_full}",
        f"injective-total-non-surjective={demo.injective_total_non_surjective} mismatches={demo.mismatches}",
    ])
    _emit(demo, text, args)
    failed = demo.mismatches or not demo.psi_finiteness or demo.psi_neg_infinity or demo.injective_total_non_surjective
    return EXIT_FAILED if failed else EXIT_OK

def _run_reduce3sat(args: argparse.Namespace) -> int:
    instance = constructions.load_dimacs(args.cnf)
    report = demos.reduce_3sat(instance, source=str(args.cnf), config=_eval_config(args), fast=not args.reference)
    check = report.check
    text = f"supports={_flag(check.supports)}, sat={_flag(check.satisfiable)}, {'AGREE' if check.agree else 'DISAGREE'}"
    if check.assignment is not None:
        text += f"\nassignment: {check.assignment} satisfies={_flag(bool(check.assignment_satisfies))}"
    _emit(report, text, args)
    return EXIT_OK if check.agree and check.assignment_satisfies is not False else EXIT_FAILED

def _run_translate_check(args: argparse.Namespace) -> int:
    report = demos.translate_check(args.max_worlds, args.max_domain)
    text = "\n".join(
        f"{'AGREE' if result.agrees else 'DISAGREE'} {result.agreements}/{result.models_checked}: {result.inqbq}  ~  {result.first_order}"
        for result in report.results
    )
    _emit(report, text, args)
    return EXIT_OK if report.agree else EXIT_FAILED

def _run_suite(args: argparse.Namespace) -> int:
    cfg = SuiteConfig(
        max_domain=args.max_domain,
        max_vars=args.max_vars,
        max_formula_depth=args.depth,
        random_seed=args.seed,
        sample_count=args.samples,
        random_domain=args.random_domain,
        max_worlds=args.max_worlds,
    )
    report = metatheory.run_suites(cfg, args.tier, _eval_config(args), only=args.only)
    _emit(report, metatheory.render_report_table(report), args)
    return EXIT_OK if report.passed else EXIT_FAILED

COMMANDS = {
    "eval": _run_eval,
    "inqbq-eval": _run_inqbq_eval,
    "paper": _run_paper,
    "finiteness-demo": _run_finiteness_demo,
    "reduce3sat": _run_reduce3sat,
    "translate-check": _run_translate_check,
    "suite": _run_suite,
}

def main(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name; sys.argv[1:] when None

    Returns:
        Exit code: 0 on success, 1 on a violation or mismatch, 2 on usage and input errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit:
        return int(exit.code or 0)
    try:
        utils.setup_loguru(args.log_level.upper(), sink=sys.stderr)
        return COMMANDS[args.command](args)
    except FormulaParseError as e:
        print(f"error: formula {e}", file=sys.stderr)
    except pydantic.ValidationError as e:
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"]) or "<root>"
            print(f"error: {e.title}: {location}: {error['msg']}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
    except (CapExceededError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
    logger.debug(f"{args.command} stopped with a usage error")
    return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
