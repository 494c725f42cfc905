import argparse
import contextlib
import logging
import sys

from fractions import Fraction
from typing import Iterator, List, Optional, TextIO

from relaxlab import jsonfile
from relaxlab.adversary import greedy_adversary_complete, sample_random_path_instance
from relaxlab.engine import execute_schedule
from relaxlab.errors import RelaxLabError
from relaxlab.experiment import estimate_mean_reduced_cost, load_config, make_regime
from relaxlab.graph import Instance, WeightAssignment, complete_digraph, potential_weights
from relaxlab.hard import assemble_hard_graph, sample_hard_instance
from relaxlab.network import (
    RoutingRequest,
    route_pairs,
    sparse_nonblocking,
    verify_rearrangeable_bruteforce,
)
from relaxlab.schedule import RoundRobin, Yen, append_fallback, randomized_yen_schedule
from relaxlab.serialization import write_document
from relaxlab.writer import AdversaryWriter, HardGraphWriter, NetworkWriter

logger = logging.getLogger(__name__)


@contextlib.contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as f:
            yield f


def _read(path: str, load):
    with open(path, "r") as f:
        return load(f)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a fraction: {!r}".format(text))


def _parse_pairs(text: str) -> List[tuple]:
    pairs = []
    for item in filter(None, text.split(",")):
        i, _, o = item.partition(":")
        try:
            pairs.append((int(i), int(o)))
        except ValueError:
            raise argparse.ArgumentTypeError(
                "not an input:output pair: {!r}".format(item)
            ) from None
    return pairs


def _gen_graph(args: argparse.Namespace) -> None:
    if args.kind == "complete":
        digraph = complete_digraph(args.n)
        if args.weights == "potential":
            weights = potential_weights(
                digraph, args.seed, args.slack_max, args.potential_max
            )
        else:
            weights = WeightAssignment([0] * digraph.edge_count)
        with _output(args.out) as f:
            jsonfile.dump_instance(Instance(digraph, args.source, weights), f)
    elif args.kind == "sparse-hard":
        graph = assemble_hard_graph(
            args.n,
            args.m,
            make_regime(args.regime, args.eps),
            capacity=args.capacity,
            degree=args.degree,
        )
        with _output(args.out) as f:
            HardGraphWriter().dump(graph, f)
    else:
        instance = _read(args.path, jsonfile.load_instance)
        with _output(args.out) as f:
            jsonfile.dump_instance(instance, f)


def _gen_schedule(args: argparse.Namespace) -> None:
    digraph = _read(args.graph, jsonfile.GraphReader().load_digraph)
    if args.kind == "round-robin":
        schedule = RoundRobin(rounds=args.rounds)(digraph)
    elif args.kind == "yen":
        schedule = Yen(rounds=args.rounds)(digraph)
    elif args.kind == "randomized-yen":
        rounds = args.rounds or max(digraph.vertex_count, 1)
        schedule, order = randomized_yen_schedule(digraph, rounds, args.seed)
        logger.info("vertex order: %s", order)
    else:
        base = _read(args.schedule, lambda f: jsonfile.load_schedule(f, digraph))
        schedule = append_fallback(base, digraph)
    with _output(args.out) as f:
        jsonfile.dump_schedule(schedule, f)


def _run(args: argparse.Namespace) -> None:
    instance = _read(args.graph, jsonfile.load_instance)
    schedule = _read(
        args.schedule, lambda f: jsonfile.load_schedule(f, instance.digraph)
    )
    result = execute_schedule(instance, schedule)
    with _output(args.out) as f:
        jsonfile.dump_result(result, f)


def _adversary(args: argparse.Namespace) -> None:
    digraph = complete_digraph(args.n)
    schedule = _read(args.schedule, lambda f: jsonfile.load_schedule(f, digraph))
    result = greedy_adversary_complete(args.n, args.source, schedule)
    with _output(args.out) as f:
        AdversaryWriter().dump(result, f)


def _sample(args: argparse.Namespace) -> None:
    if args.kind == "random-path":
        instance, path = sample_random_path_instance(args.n, args.source, args.seed)
        with _output(args.out) as f:
            jsonfile.dump_instance(instance, f)
        logger.info("path: %s", path)
        return
    graph = assemble_hard_graph(
        args.n,
        args.m,
        make_regime(args.regime, args.eps),
        capacity=args.capacity,
        degree=args.degree,
    )
    sample = sample_hard_instance(graph, args.seed)
    with _output(args.out) as f:
        HardGraphWriter().dump_sample(graph, sample, f)


def _network(args: argparse.Namespace) -> None:
    if args.action == "build":
        network = sparse_nonblocking(args.capacity, args.eps)
        with _output(args.out) as f:
            NetworkWriter().dump(network, f)
        return
    network = _read(args.network, jsonfile.load_network)
    if args.action == "route":
        request = RoutingRequest(args.pairs, network.capacity)
        with _output(args.out) as f:
            NetworkWriter().dump_routes(route_pairs(network, request), f)
        return
    verdict = verify_rearrangeable_bruteforce(network)
    with _output(args.out) as f:
        write_document(
            {
                "rearrangeable": verdict.ok,
                "checked": verdict.checked,
                "counterexample": verdict.counterexample,
            },
            f,
        )


def _experiment(args: argparse.Namespace) -> None:
    config = _read(args.config, load_config)
    changes = {}
    if args.trials is not None:
        changes["trials"] = args.trials
    if args.seed is not None:
        changes["base_seed"] = args.seed
    if args.out is not None:
        changes["output"] = args.out
    if args.workers is not None:
        changes["workers"] = args.workers
    config = config.replace(**changes)
    summary = estimate_mean_reduced_cost(config)
    with _output(config.output) as f:
        if args.format == "csv":
            summary.dump_csv(f)
        else:
            summary.dump_json(f)


def _add_budget_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, help="edge budget")
    parser.add_argument(
        "--regime",
        choices=("complete-bipartite", "dense-clos"),
        default="complete-bipartite",
    )
    parser.add_argument(
        "--eps",
        type=_fraction,
        default=Fraction(1),
        help="edge exponent slack, e.g. 1/2",
    )
    parser.add_argument("--capacity", type=int, help="override capacity c")
    parser.add_argument("--degree", type=int, help="override biregular degree d")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relaxlab",
        description="Non-adaptive shortest-path relaxation schedules and "
        "their hard instances",
    )
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v info, -vv debug"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", help="output file (default: stdout)")

    p = commands.add_parser("gen-graph", parents=[out], help="write a graph")
    p.add_argument("kind", choices=("complete", "sparse-hard", "from-file"))
    p.add_argument("--n", type=int, help="vertex count")
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--weights", choices=("potential", "zero"), default="potential")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slack-max", type=int, default=10)
    p.add_argument("--potential-max", type=int, default=10)
    p.add_argument("--path", help="graph JSON to validate (from-file)")
    _add_budget_arguments(p)
    p.set_defaults(handler=_gen_graph)

    p = commands.add_parser("gen-schedule", parents=[out], help="write a schedule")
    p.add_argument(
        "kind", choices=("round-robin", "yen", "randomized-yen", "fallback")
    )
    p.add_argument("--graph", required=True, help="graph JSON")
    p.add_argument("--rounds", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--schedule", help="schedule to extend (fallback)")
    p.set_defaults(handler=_gen_schedule)

    p = commands.add_parser("run", parents=[out], help="execute a schedule")
    p.add_argument("--graph", required=True)
    p.add_argument("--schedule", required=True)
    p.set_defaults(handler=_run)

    p = commands.add_parser(
        "adversary", parents=[out], help="greedy hard weighting for a schedule"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--schedule", required=True)
    p.set_defaults(handler=_adversary)

    p = commands.add_parser("sample", parents=[out], help="draw a hard instance")
    p.add_argument("kind", choices=("random-path", "sparse-hard"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    _add_budget_arguments(p)
    p.set_defaults(handler=_sample)

    p = commands.add_parser("network", parents=[out], help="non-blocking networks")
    p.add_argument("action", choices=("build", "route", "verify"))
    p.add_argument("--capacity", type=int, default=4)
    p.add_argument("--eps", type=_fraction, default=Fraction(1))
    p.add_argument("--network", help="network JSON (route, verify)")
    p.add_argument(
        "--pairs",
        type=_parse_pairs,
        default="",
        help="input:output pairs, e.g. 0:3,2:1",
    )
    p.set_defaults(handler=_network)

    p = commands.add_parser("experiment", parents=[out], help="Monte-Carlo trials")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, help="base seed")
    p.add_argument("--workers", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(handler=_experiment)
    return parser


def _check_required(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    needs_n = {("gen-graph", "complete"), ("gen-graph", "sparse-hard")}
    if (args.command, getattr(args, "kind", None)) in needs_n and args.n is None:
        parser.error("--n is required")
    if getattr(args, "kind", None) == "sparse-hard" and args.m is None:
        parser.error("--m is required for sparse-hard")
    if args.command == "gen-graph" and args.kind == "from-file" and not args.path:
        parser.error("--path is required for from-file")
    if args.command == "gen-schedule" and args.kind == "fallback" and not args.schedule:
        parser.error("--schedule is required for fallback")
    if args.command == "network" and args.action != "build" and not args.network:
        parser.error("--network is required for route and verify")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_required(args, parser)
    levels = {0: logging.WARNING, 1: logging.INFO}
    logging.basicConfig(
        level=levels.get(args.verbose, logging.DEBUG),
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
    )
    try:
        args.handler(args)
    except RelaxLabError as exc:
        print("relaxlab: error: {}".format(exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print("relaxlab: error: {}".format(exc), file=sys.stderr)
        return 1
    return 0
