"""
Command-line front end.

Exit status: 0 on success or a passing check, 1 on a failing check,
2 on input errors (malformed files, invalid options).
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from config.workbench_config import (
    OUTPUT_FORMATS, DEFAULT_FORMAT, DEFAULT_MAX_SEEDS, DEFAULT_MAX_DEPTH, DEFAULT_WALK_LENGTH,
    DEFAULT_PRNG_SEED, MAX_WORKERS, LOG_LEVEL, COEFFICIENT_SYSTEMS, SessionConfig
)
from src.quiver import is_acyclic, to_dot
from src.lift import lift_qp, relation_set, gamma_presentation, zigzags
from src.algebra.jacobian import build_frozen_jacobian, interior_check
from src.algebra.boundary import verify_phi, preprojective_check, pi_surjectivity, zigzag_redundancy
from src.homcheck import cy_certificate
from src.cluster.seed import Seed, initial_seed, mutate_sequence
from src.cluster.grading import grading_matrix, g_matrix, check_invariants
from src.cluster.exchange_graph import exchange_graph, matches_coefficient_free, random_walks
from src.utils import (
    canonical_json, save_json, load_input, load_seed, print_header, print_report, print_certificate,
    print_dimension_report, format_table, format_matrix, verdict
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


@dataclass
class CommandResult:
    """What a command produced: data for JSON, an optional DOT graph, and a table printer."""
    data: Dict
    passed: bool = True
    dot: Optional[str] = None
    printer: Optional[Callable[[Dict], None]] = None


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def cmd_lift(config: SessionConfig, args) -> CommandResult:
    Q, W, _ = load_input(config.input_path)
    L = lift_qp(Q, W)

    def show(data):
        print_header("LIFTED ICE QUIVER WITH POTENTIAL")
        print(f"\nVertices: {', '.join(L.quiver.vertices)}")
        print(f"Frozen vertices: {', '.join(v for v in L.quiver.vertices if L.ice.is_frozen_vertex(v))}")
        print("\nArrows:")
        print(format_table(["arrow", "tail", "head", "frozen"],
                           [[a.id, a.tail, a.head, verdict(L.ice.is_frozen_arrow(a.id))] for a in L.quiver.arrows]))
        print(f"\nW~ = {L.potential.render()}")

    return CommandResult(L.to_dict(), dot=L.to_dot(), printer=show)


def cmd_relations(config: SessionConfig, args) -> CommandResult:
    Q, W, _ = load_input(config.input_path)
    P = relation_set(lift_qp(Q, W))

    def show(data):
        print_header("RELATIONS OF THE FROZEN JACOBIAN ALGEBRA")
        for name, r in P.named():
            print(f"  {name} = {r.render()}")

    return CommandResult(P.to_dict(), dot=P.to_dot("relations"), printer=show)


def cmd_gamma(config: SessionConfig, args) -> CommandResult:
    Q, _, _ = load_input(config.input_path)
    G = gamma_presentation(Q)

    def show(data):
        print_header("BOUNDARY ALGEBRA PRESENTATION")
        print(f"\nVertices: {', '.join(G.quiver.vertices)}")
        print(format_table(["arrow", "tail", "head"], [[a.id, a.tail, a.head] for a in G.quiver.arrows]))
        print("\nRelations:")
        for name, r in G.named():
            print(f"  {name} = {r.render()}")

    return CommandResult(G.to_dict(), dot=to_dot(G.quiver, "gamma"), printer=show)


def cmd_dim(config: SessionConfig, args) -> CommandResult:
    Q, W, deg = load_input(config.input_path)
    fj = build_frozen_jacobian(Q, W, deg, config.bound)
    report = fj.algebra.dimension_report()
    report["certified"] = fj.certified
    report["grading"] = fj.grading.to_dict()
    return CommandResult(report, printer=print_dimension_report)


def cmd_check_cy(config: SessionConfig, args) -> CommandResult:
    Q, W, deg = load_input(config.input_path)
    certificate = cy_certificate(Q, W, deg, config.bound, config.workers)
    return CommandResult(certificate.to_dict(), passed=certificate.passed, printer=print_certificate)


def cmd_boundary_verify(config: SessionConfig, args) -> CommandResult:
    Q, W, deg = load_input(config.input_path)
    fj = build_frozen_jacobian(Q, W, deg, config.bound)
    data = {"preprojective": preprojective_check(fj.algebra, fj.lifted)}
    passed = data["preprojective"]
    if is_acyclic(Q) and W.is_zero():
        phi = verify_phi(Q, deg)
        data["phi"] = phi.to_dict()
        passed = passed and phi.passed
    else:
        data["phi"] = "skipped: needs an acyclic quiver with zero potential"

    def show(d):
        print_header("BOUNDARY ALGEBRA")
        print(f"\n  preprojective relation: {verdict(d['preprojective'])}")
        if isinstance(d["phi"], dict):
            phi_data = d["phi"]
            print(f"  Phi well defined:       {verdict(phi_data['well_defined'])}")
            print(f"  Phi surjective:         {verdict(phi_data['surjective'])}")
            print(f"  dimensions agree:       {verdict(phi_data['dimensions_match'])}")
            print(f"  corner dims by degree:  {phi_data['corner_dims']}")
            for line in phi_data["counterexamples"]:
                print(f"    {line}")
        else:
            print(f"  Phi: {d['phi']}")

    return CommandResult(data, passed=passed, printer=show)


def cmd_interior(config: SessionConfig, args) -> CommandResult:
    Q, W, deg = load_input(config.input_path)
    report = interior_check(Q, W, deg, config.bound)
    return CommandResult(report.to_dict(), passed=report.passed,
                         printer=lambda d: print_report("INTERIOR QUOTIENT", d))


def cmd_pi_check(config: SessionConfig, args) -> CommandResult:
    Q, W, deg = load_input(config.input_path)
    report = pi_surjectivity(Q, W, deg)
    return CommandResult(report.to_dict(), printer=lambda d: print_report("PREPROJECTIVE IMAGE", d))


def cmd_zigzags(config: SessionConfig, args) -> CommandResult:
    Q, _, deg = load_input(config.input_path)
    flags = dict(zigzag_redundancy(Q, deg))
    rows = []
    for z in zigzags(Q):
        name = f"r3{z.render()}"
        rows.append({"zigzag": z.render(), "strict": z.strict, "redundant": flags[name]})

    def show(data):
        print_header("ZIG-ZAG RELATIONS")
        print(format_table(["zig-zag", "strict", "redundant"],
                           [[r["zigzag"], verdict(r["strict"]), verdict(r["redundant"])] for r in data["zigzags"]]))

    return CommandResult({"zigzags": rows}, printer=show)


def _seed_from_args(config: SessionConfig, args) -> Seed:
    Q, _, _ = load_input(config.input_path)
    if not getattr(args, "seed_in", None):
        return initial_seed(Q, config.coefficients)
    seed = load_seed(args.seed_in)
    if seed.n != len(Q.vertices):
        raise ValueError(f"Seed {args.seed_in} has rank {seed.n} but {config.input_path} "
                         f"has {len(Q.vertices)} vertices")
    return seed


def show_seed(data: Dict):
    seed = Seed.from_dict(data)
    print_header("SEED")
    print(f"\nCoefficients: {seed.coefficients}")
    for i, v in enumerate(seed.variables):
        print(f"  x{i + 1} = {v.render()}")
    for i, f in enumerate(seed.frozen):
        print(f"  frozen {i + 1} = {f.render()}")
    print(f"\nb_ext = {format_matrix(seed.b_ext)}")


def cmd_seed(config: SessionConfig, args) -> CommandResult:
    seed = _seed_from_args(config, args)
    if args.action == "init":
        if args.word:
            raise ValueError("seed init takes no mutation word")
    else:
        seed = mutate_sequence(seed, args.word)
    if args.out:
        save_json(args.out, seed.to_dict())
    return CommandResult(seed.to_dict(), printer=show_seed)


def cmd_grade(config: SessionConfig, args) -> CommandResult:
    Q, _, _ = load_input(config.input_path)
    g = grading_matrix(Q)
    seed = mutate_sequence(_seed_from_args(config, args), args.word)
    g_vectors = g_matrix(seed, g)
    invariants = check_invariants(seed, Q, g)
    data = {
        "grading_matrix": g.to_dict(),
        "g_vectors": [list(row) for row in g_vectors],
        "c_matrix": [list(row) for row in seed.c_matrix()],
        "invariants": invariants.to_dict(),
    }

    def show(d):
        print_header("GRADING")
        print(format_table(["variable", "degree"], [[k, v] for k, v in d["grading_matrix"].items()]))
        print("\ng-vectors:")
        for i, row in enumerate(d["g_vectors"]):
            print(f"  x{i + 1}: {row}")
        print(f"\nc-matrix: {format_matrix(d['c_matrix'])}")
        print(f"b'g' = (c')^t b: {verdict(d['invariants']['gc_identity'])}")

    return CommandResult(data, passed=invariants.passed, printer=show)


def cmd_explore(config: SessionConfig, args) -> CommandResult:
    Q, _, _ = load_input(config.input_path)
    graph = exchange_graph(Q, config.max_seeds, config.max_depth)
    isomorphic = matches_coefficient_free(Q, config.max_seeds, config.max_depth)
    data = graph.to_dict()
    data["isomorphic_to_coefficient_free"] = isomorphic
    passed = isomorphic
    if config.walks:
        walks = random_walks(Q, config.walks, config.walk_length, config.prng_seed)
        data["walks"] = walks.to_dict()
        passed = passed and walks.passed

    def show(d):
        print_header("EXCHANGE GRAPH")
        print(f"\n  seeds: {d['seeds']}   edges: {d['edges']}   exhaustive: {verdict(d['exhaustive'])}")
        print(f"  isomorphic to the coefficient-free graph: {verdict(d['isomorphic_to_coefficient_free'])}")
        if "walks" in d:
            w = d["walks"]
            print(f"  random walks: {w['walks']} x {w['length']} (seed {w['prng_seed']}), "
                  f"{w['seeds_checked']} seeds checked: {verdict(w['passed'])}")
            if w["deterministic"]:
                print("    (rank <= 2: every walk repeats the same path after its first step)")
            for line in w["failures"]:
                print(f"    {line}")

    return CommandResult(data, passed=passed, dot=graph.to_dot(), printer=show)


def cmd_repl(config: SessionConfig, args) -> CommandResult:
    from src.repl import run_repl
    Q, _, _ = load_input(config.input_path)
    seed = _seed_from_args(config, args)
    run_repl(seed, Q)
    return CommandResult({}, printer=lambda d: None)


COMMANDS = {
    "lift": cmd_lift,
    "relations": cmd_relations,
    "gamma": cmd_gamma,
    "dim": cmd_dim,
    "check-cy": cmd_check_cy,
    "boundary-verify": cmd_boundary_verify,
    "interior": cmd_interior,
    "pi-check": cmd_pi_check,
    "zigzags": cmd_zigzags,
    "seed": cmd_seed,
    "grade": cmd_grade,
    "explore": cmd_explore,
    "repl": cmd_repl,
}


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=DEFAULT_FORMAT, help="Output format")
    common.add_argument("--bound", type=int, default=None, help="Truncation degree override")
    common.add_argument("--workers", type=int, default=MAX_WORKERS, help="Worker processes for check-cy")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Frozen Jacobian algebras of lifted quivers with potential, and their cluster algebras.",
        epilog="Exit status: 0 pass, 1 check failure, 2 input error.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {
        "lift": "Print the lifted ice quiver with potential",
        "relations": "Print the relations of the frozen Jacobian algebra",
        "gamma": "Print the boundary algebra presentation (acyclic quivers)",
        "dim": "Dimensions of the frozen Jacobian algebra",
        "check-cy": "Exactness certificate on all vertex simples",
        "boundary-verify": "Check Phi and the preprojective relation",
        "interior": "Compare A/<e> with the Jacobian algebra",
        "pi-check": "Is the preprojective image the whole boundary algebra?",
        "zigzags": "Zig-zag relations and their redundancy",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", help="Quiver JSON file")

    seed = sub.add_parser("seed", parents=[common], help="Initial seeds and mutation")
    seed.add_argument("action", choices=["init", "mutate"])
    seed.add_argument("input", help="Quiver JSON file")
    seed.add_argument("word", nargs="*", type=int, help="Mutation indices (1-based)")
    seed.add_argument("--in", dest="seed_in", default=None, help="Seed JSON file to start from")
    seed.add_argument("--out", default=None, help="Write the resulting seed here")
    seed.add_argument("--coefficients", choices=COEFFICIENT_SYSTEMS, default="polarised")

    grade = sub.add_parser("grade", parents=[common], help="Grading matrix, g-vectors and b'g' = (c')^t b")
    grade.add_argument("input", help="Quiver JSON file")
    grade.add_argument("word", nargs="*", type=int, help="Mutation word applied first")
    grade.add_argument("--in", dest="seed_in", default=None, help="Seed JSON file to start from")

    explore = sub.add_parser("explore", parents=[common], help="Exchange graph and random-walk invariants")
    explore.add_argument("input", help="Quiver JSON file")
    explore.add_argument("--max-seeds", type=int, default=DEFAULT_MAX_SEEDS)
    explore.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    explore.add_argument("--walks", type=int, default=0, help="Random mutation walks (0 = none)")
    explore.add_argument("--walk-length", type=int, default=DEFAULT_WALK_LENGTH)
    explore.add_argument("--seed", dest="prng_seed", type=int, default=DEFAULT_PRNG_SEED, help="PRNG seed")

    repl = sub.add_parser("repl", parents=[common], help="Interactive mutation session")
    repl.add_argument("input", help="Quiver JSON file")
    repl.add_argument("--in", dest="seed_in", default=None, help="Seed JSON file to start from")
    repl.add_argument("--coefficients", choices=COEFFICIENT_SYSTEMS, default="polarised")
    return parser


def config_from_args(args) -> SessionConfig:
    return SessionConfig(
        input_path=getattr(args, "input", None),
        output_format=args.format,
        bound=args.bound,
        max_seeds=getattr(args, "max_seeds", DEFAULT_MAX_SEEDS),
        max_depth=getattr(args, "max_depth", DEFAULT_MAX_DEPTH),
        walks=getattr(args, "walks", 0),
        walk_length=getattr(args, "walk_length", DEFAULT_WALK_LENGTH),
        prng_seed=getattr(args, "prng_seed", DEFAULT_PRNG_SEED),
        workers=args.workers,
        coefficients=getattr(args, "coefficients", "polarised"),
    )


def emit(result: CommandResult, output_format: str):
    if output_format == "json":
        print(canonical_json(result.data))
    elif output_format == "dot":
        if result.dot is None:
            raise ValueError("This command has no DOT output")
        print(result.dot)
    elif result.printer is not None:
        result.printer(result.data)


def run(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR

    logging.basicConfig(level=logging.DEBUG if args.verbose else getattr(logging, LOG_LEVEL),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        config = config_from_args(args)
        result = COMMANDS[args.command](config, args)
        emit(result, config.output_format)
    except (ValueError, AssertionError, FileNotFoundError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return EXIT_OK if result.passed else EXIT_CHECK_FAILED


def main():
    sys.exit(run())
