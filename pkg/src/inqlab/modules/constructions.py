"""
Named formulas, the 3SAT encoding into team support, and the brute-force SAT oracle it is checked against.
"""

import enum
import itertools
import random
from collections.abc import Mapping
from collections.abc import Sequence
from pathlib import Path

from loguru import logger

from inqlab.modules import parser
from inqlab.modules.evaluator import find_falsifying_subteam
from inqlab.modules.evaluator import satisfies
from inqlab.modules.evaluator import supports
from inqlab.modules.evaluator import supports_fast
from inqlab.modules.syntax import Formula
from inqlab.modules.syntax import Var
from inqlab.modules.syntax import classical_exists
from inqlab.modules.syntax import conjunction
from inqlab.modules.syntax import neq
from inqlab.schemas.constructions import CnfInstance
from inqlab.schemas.constructions import CompactnessWitness
from inqlab.schemas.constructions import ReductionCheck
from inqlab.schemas.constructions import ReductionOutput
from inqlab.schemas.evaluator import EvalConfig
from inqlab.schemas.structures import Structure
from inqlab.schemas.structures import Team
from inqlab.schemas.syntax import Signature

SAT_ORACLE_MAX_VARIABLES = 24

class PaperFormula(str, enum.Enum):
    PHI_XY = "phi_xy"
    PSI_FINITENESS = "psi_finiteness"
    PSI_NEG_INFINITY = "psi_neg_infinity"
    PHI_AB = "phi_ab"
    BOUNDED_PREDECESSORS = "bounded_predecessors"
    CONP_PHI = "conp_phi"

_PHI_XY = "dep(x;y) & dep(y;x) & iexists z. z != y -> iexists u. u != x"

_PAPER_SOURCES: dict[PaperFormula, tuple[str, Signature]] = {
    PaperFormula.PHI_XY: (_PHI_XY, Signature()),
    PaperFormula.PSI_FINITENESS: (f"[x][y]({_PHI_XY})", Signature()),
    PaperFormula.PSI_NEG_INFINITY: (f"~[x][y]({_PHI_XY})", Signature()),
    PaperFormula.PHI_AB: (
        "dep(a;b) & dep(b;a) & iexists z. z != b -> iexists u. u != a",
        Signature(functions={"a": 0, "b": 0}),
    ),
    PaperFormula.BOUNDED_PREDECESSORS: (
        "forall z. [x][y](leq(x, z) & leq(y, z) & dep(x;y) & dep(y;x) & iexists u. (leq(u, z) & u != y)"
        " -> iexists t. (leq(t, z) & t != x))",
        Signature(predicates={"leq": 2}),
    ),
    PaperFormula.CONP_PHI: ("dep(x;y) -> iexists w. (C(w) & w != z)", Signature(predicates={"C": 1, "V": 1})),
}

def paper_signature(name: PaperFormula | str) -> Signature:
    return _PAPER_SOURCES[PaperFormula(name)][1]

def paper_formula(name: PaperFormula | str) -> Formula:
    """
    Build one of the named formulas.

    Args:
        name: phi_xy, psi_finiteness, psi_neg_infinity, phi_ab, bounded_predecessors or conp_phi

    Returns:
        The core formula

    Raises:
        ValueError: If the name is unknown
    """
    try:
        key = PaperFormula(name)
    except ValueError:
        raise ValueError(f"Unknown formula {name!r}; expected one of {[item.value for item in PaperFormula]}") from None
    text, signature = _PAPER_SOURCES[key]
    return parser.parse(text, signature)

def at_least_n(n: int) -> Formula:
    """
    ∃x1...∃xn of the conjunction of xi != xj over i < j (classical ∃).

    Raises:
        ValueError: If n < 1
    """
    if n < 1:
        raise ValueError("at_least_n needs n >= 1")
    names = [f"x{index}" for index in range(1, n + 1)]
    body = conjunction(neq(Var(left), Var(right)) for left, right in itertools.combinations(names, 2))
    for name in reversed(names):
        body = classical_exists(name, body)
    return body

def empty_structure(domain_size: int) -> Structure:
    return Structure(domain=domain_size)

def linear_order(domain_size: int) -> Structure:
    """
    The order 0 < 1 < ... < n-1, interpreting `leq` as <=.
    """
    return Structure(domain=domain_size, predicates={"leq": {(low, high) for low in range(domain_size) for high in range(low, domain_size)}})

def compactness_witness(domain_size: int, config: EvalConfig | None = None) -> CompactnessWitness:
    """
    Verdicts of at_least_n(1..n) and of the finiteness sentence on a structure of size n.
    Every finite subset of {at_least_n(k)} plus the finiteness sentence is satisfiable this way.
    """
    structure = empty_structure(domain_size)
    at_least = {n: satisfies(structure, at_least_n(n), config, fast=True) for n in range(1, domain_size + 1)}
    psi = satisfies(structure, paper_formula(PaperFormula.PSI_FINITENESS), config, fast=True)
    return CompactnessWitness(
        domain_size=domain_size,
        at_least=at_least,
        psi_finiteness=psi,
        jointly_satisfiable=psi and all(at_least.values()),
    )

def evaluate_cnf(instance: CnfInstance, assignment: Mapping[int, bool]) -> bool:
    """
    Raises:
        KeyError: If a variable of some clause is unassigned
    """
    return all(any(assignment[index] == positive for index, positive in clause) for clause in instance.clauses)

def satisfying_assignment(instance: CnfInstance) -> dict[int, bool] | None:
    """
    First satisfying assignment in lexicographic order (False before True), or None.

    Raises:
        ValueError: If the instance has more than 24 variables
    """
    if instance.variable_count > SAT_ORACLE_MAX_VARIABLES:
        raise ValueError(f"Brute force is limited to {SAT_ORACLE_MAX_VARIABLES} variables, got {instance.variable_count}")
    for values in itertools.product((False, True), repeat=instance.variable_count):
        assignment = dict(enumerate(values))
        if evaluate_cnf(instance, assignment):
            return assignment
    return None

def sat_oracle(instance: CnfInstance) -> bool:
    return satisfying_assignment(instance) is not None

def read_dimacs(text: str) -> CnfInstance:
    """
    Parse DIMACS CNF text whose clauses all have exactly three literals.

    Raises:
        ValueError: On a missing or malformed header, non-integer tokens,
            an unterminated clause or a clause that is not of width 3
    """
    variable_count = None
    declared_clauses = 0
    tokens: list[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {number}: malformed header {line!r}")
            variable_count, declared_clauses = int(parts[2]), int(parts[3])
            continue
        if variable_count is None:
            raise ValueError(f"line {number}: clause before the 'p cnf' header")
        try:
            tokens.extend(int(token) for token in line.split())
        except ValueError:
            raise ValueError(f"line {number}: non-integer literal in {line!r}") from None
    if variable_count is None:
        raise ValueError("Missing 'p cnf' header")

    clauses = []
    current: list[int] = []
    for token in tokens:
        if token != 0:
            current.append(token)
            continue
        if len(current) != 3:
            raise ValueError(f"Clause {len(clauses) + 1} has {len(current)} literal(s); only width 3 is supported")
        clauses.append(tuple((abs(literal) - 1, literal > 0) for literal in current))
        current = []
    if current:
        raise ValueError("Last clause is not terminated by 0")
    if len(clauses) != declared_clauses:
        logger.warning(f"Header declares {declared_clauses} clause(s), found {len(clauses)}")
    variable_count = max([variable_count] + [index + 1 for clause in clauses for index, _ in clause])
    return CnfInstance(variable_count=max(variable_count, 1), clauses=tuple(clauses))

def load_dimacs(path: str | Path) -> CnfInstance:
    return read_dimacs(Path(path).read_text())

def encode_3sat(instance: CnfInstance) -> ReductionOutput:
    """
    Encode a 3-CNF instance as a structure and a team over (z, u, x, y).

    Each clause i contributes three rows, one per position j, with z = clause i,
    u = position j, x = the literal's variable and y = 1 for a positive literal,
    0 for a negative one. The instance is unsatisfiable exactly when the team
    supports dep(x;y) -> iexists w. (C(w) & w != z).

    Raises:
        ValueError: If the instance has no clauses
    """
    if not instance.clauses:
        raise ValueError("Cannot encode an instance without clauses")
    clause_count = len(instance.clauses)
    clause_elements = tuple(range(clause_count))
    position_elements = (clause_count, clause_count + 1, clause_count + 2)
    variables = instance.variables()
    variable_elements = {index: clause_count + 3 + offset for offset, index in enumerate(variables)}
    parity_base = clause_count + 3 + len(variables)
    parity_elements = (parity_base, parity_base + 1)

    rows = [
        (clause_elements[clause_index], position_elements[position], variable_elements[index], parity_elements[int(positive)])
        for clause_index, clause in enumerate(instance.clauses)
        for position, (index, positive) in enumerate(clause)
    ]
    structure = Structure(
        domain=parity_base + 2,
        predicates={
            "V": {(element,) for element in variable_elements.values()},
            "C": {(element,) for element in clause_elements},
        },
    )
    formula = paper_formula(PaperFormula.CONP_PHI)
    return ReductionOutput(
        structure=structure,
        team=Team(vars=("z", "u", "x", "y"), rows=rows),
        formula=formula,
        formula_text=parser.render(formula),
        clause_elements=clause_elements,
        position_elements=position_elements,
        variable_elements=variable_elements,
        parity_elements=parity_elements,
    )

def extract_assignment(output: ReductionOutput, team: Team) -> dict[int, bool]:
    """
    Read the partial assignment f(p) = 1 iff some row has x = p and y = 1.

    Args:
        output: The reduction the team was taken from
        team: Sub-team of the reduction team that supports dep(x;y)

    Returns:
        Variable index -> truth value, for the variables occurring in the team

    Raises:
        ValueError: If the team gives some variable both parities
    """
    by_element = {element: index for index, element in output.variable_elements.items()}
    x_position, y_position = team.vars.index("x"), team.vars.index("y")
    assignment: dict[int, bool] = {}
    for row in team.rows:
        index = by_element[row[x_position]]
        value = row[y_position] == output.parity_elements[1]
        if assignment.setdefault(index, value) != value:
            raise ValueError(f"Sub-team violates dep(x;y): variable {index} takes both values")
    return assignment

def check_reduction(instance: CnfInstance, config: EvalConfig | None = None, fast: bool = True) -> ReductionCheck:
    """
    Evaluate the encoding of an instance and compare the verdict with the SAT oracle.
    When the team is not supported, the extracted assignment of the least falsifying
    sub-team is completed with False and checked against the clauses.
    """
    output = encode_3sat(instance)
    evaluate = supports_fast if fast else supports
    verdict = evaluate(output.structure, output.team, output.formula, config)
    satisfiable = sat_oracle(instance)
    assignment = None
    assignment_satisfies = None
    if not verdict:
        witness = find_falsifying_subteam(output.structure, output.team, output.formula.antecedent, output.formula.consequent, config, fast=fast)
        if witness is not None:
            assignment = extract_assignment(output, witness)
            completed = {index: assignment.get(index, False) for index in range(instance.variable_count)}
            assignment_satisfies = evaluate_cnf(instance, completed)
    return ReductionCheck(
        clauses=len(instance.clauses),
        variables=instance.variable_count,
        supports=verdict,
        satisfiable=satisfiable,
        agree=verdict != satisfiable,
        assignment=assignment,
        assignment_satisfies=assignment_satisfies,
    )

def _instance(variable_count: int, clauses: Sequence[Sequence[tuple[int, bool]]]) -> CnfInstance:
    return CnfInstance(variable_count=variable_count, clauses=tuple(tuple(clause) for clause in clauses))

def deterministic_cnf_instances(count: int = 240, seed: int = 0, variables: int = 3, max_clauses: int = 4) -> list[CnfInstance]:
    """
    A fixed instance set over at most `variables` variables and `max_clauses` clauses.

    Contains every single clause, the pure pairs (p|p|p) & (~p|~p|~p), the
    all-positive and all-negative instances, the four-clause covers of two
    variables (all unsatisfiable), then seeded random instances up to `count`.
    """
    if variables < 3:
        raise ValueError("The instance set needs at least three variables")
    literals = [(index, positive) for index in range(variables) for positive in (True, False)]
    instances: dict[tuple, CnfInstance] = {}

    def add(clauses: Sequence[Sequence[tuple[int, bool]]]) -> None:
        instance = _instance(variables, clauses)
        instances.setdefault(instance.clauses, instance)

    for clause in itertools.combinations_with_replacement(literals, 3):
        add([clause])
    for index in range(variables):
        add([[(index, True)] * 3, [(index, False)] * 3])
    for positive in (True, False):
        add([[(index, positive) for index in (0, 1, 2)], [(index, positive) for index in (2, 1, 0)]])
        add([[(index, positive)] * 3 for index in range(variables)])
    for first, second in itertools.combinations(range(variables), 2):
        add([[(first, p), (first, p), (second, q)] for p in (True, False) for q in (True, False)])

    rng = random.Random(seed)
    while len(instances) < count:
        clause_count = rng.randint(1, max_clauses)
        add([[rng.choice(literals) for _ in range(3)] for _ in range(clause_count)])
    return list(instances.values())[:count]
