from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO

from kacss.arb import Direction, decompose
from kacss.cli.dot import export_dot
from kacss.config import Config
from kacss.core import format_fraction
from kacss.errors import InfeasibleInstanceError, InstanceFormatError, InvariantViolation, KacssError
from kacss.flow import is_k_arc_connected, min_violated_cut
from kacss.gap import ExactStatus, GapParams, build_gap_instance, gap_report
from kacss.graph import Instance, parse_arc_set, parse_instance, random_k_connected, write_arc_set, write_instance
from kacss.lp import solve_lp_acss
from kacss.rounding import RoundingMode, check_seed, solve_pipeline
from kacss.utils import read_text_file_to_string, write_text_file

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _dump_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=False, indent=2) + "\n"


def _render_text(payload: Dict[str, Any]) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, list):
            value = " ".join(str(item) for item in value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _load_instance(path: str) -> Instance:
    return parse_instance(read_text_file_to_string(path))


def _seed(value: str) -> int:
    try:
        return check_seed(int(value))
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _non_negative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return number


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def run_solve(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    instance = _load_instance(args.instance)
    mode = RoundingMode.DERANDOMIZED if args.derandomize else RoundingMode.SAMPLED
    result = solve_pipeline(instance, root=args.root, mode=mode, seed=args.seed, config=config)
    report = result.report

    if args.transcript:
        write_text_file(args.transcript, _dump_json(result.solution.transcript.model_dump(mode="json")))
    if args.output:
        write_text_file(args.output, write_arc_set(report.arcs))
    if args.dot:
        Path(args.dot).write_bytes(export_dot(instance, highlight=report.arcs))

    payload = report.model_dump(mode="json", exclude_none=True)
    out.write(_dump_json(payload) if args.json else _render_text(payload))
    return EXIT_OK


def run_verify(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    instance = _load_instance(args.instance)
    arcs = parse_arc_set(read_text_file_to_string(args.subgraph), instance)
    connected = is_k_arc_connected(instance, arcs, instance.k)
    payload: Dict[str, Any] = {"k": instance.k, "arcs": len(arcs), "k_arc_connected": connected}
    if not connected:
        capacities = [Fraction(1) if a in arcs else Fraction(0) for a in range(instance.m)]
        cut = min_violated_cut(instance, capacities, 0, instance.k)
        if cut is not None:
            payload["cut"] = list(cut.vertices)
            payload["cut_value"] = format_fraction(cut.value)
    out.write(_dump_json(payload) if args.json else _render_text(payload))
    return EXIT_OK if connected else EXIT_INFEASIBLE


def run_decompose(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    instance = _load_instance(args.instance)
    simplex = config.get_simplex_settings()
    cutting_plane = config.get_cutting_plane_settings()
    solution = solve_lp_acss(instance, args.root, settings=cutting_plane, simplex_settings=simplex)
    combination = decompose(
        instance,
        solution,
        args.root,
        instance.k,
        Direction(args.direction),
        settings=config.get_column_generation_settings(),
        cutting_plane_settings=cutting_plane,
        simplex_settings=simplex,
    )
    out.write(_dump_json(combination.to_json_dict()))
    return EXIT_OK


def run_gap(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    params = GapParams(d=args.depth, r=args.columns)
    gap = build_gap_instance(params)
    if args.emit:
        comment = f"G({params.d}, s, s), r={params.r}"
        write_text_file(f"{args.emit}.kacss", write_instance(gap.instance, comment=comment))
        write_text_file(f"{args.emit}.levels.json", _dump_json(gap.sidecar()))

    report = gap_report(params, compute_exact=args.exact, config=config, gap=gap)
    if args.dot:
        highlight = report.optimum_arcs if report.exact_status == ExactStatus.OPTIMAL else None
        Path(args.dot).write_bytes(export_dot(gap.instance, highlight=highlight, levels=gap.levels))

    payload = report.model_dump(mode="json", exclude_none=True)
    out.write(_dump_json(payload) if args.json else _render_text(payload))
    return EXIT_OK


def run_random(args: argparse.Namespace, config: Config, out: TextIO) -> int:
    instance = random_k_connected(args.n, args.k, args.extra, args.seed, config.get_generator_settings())
    text = write_instance(instance, comment=f"random n={args.n} k={args.k} extra={args.extra} seed={args.seed}")
    if args.output:
        write_text_file(args.output, text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kacss", description="Minimum-size k-arc-connected spanning subgraphs")
    parser.add_argument("--config", help="YAML configuration file (defaults to config/default.yaml)")
    parser.add_argument("--log-level", help="overrides the configured logging level")
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="LP relaxation, decompositions and rounded union")
    solve.add_argument("instance")
    solve.add_argument("--root", type=int, default=0)
    solve.add_argument("--seed", type=_seed, default=0)
    solve.add_argument("--derandomize", action="store_true", help="best pair instead of a sampled one")
    solve.add_argument("--json", action="store_true")
    solve.add_argument("--dot", help="write the instance with the returned arcs highlighted")
    solve.add_argument("--transcript", help="write the cutting-plane transcript as JSON")
    solve.add_argument("--output", help="write the returned arcs as a subgraph file")
    solve.set_defaults(handler=run_solve)

    verify = commands.add_parser("verify", help="check that a subgraph is k-arc-connected")
    verify.add_argument("instance")
    verify.add_argument("--subgraph", required=True)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=run_verify)

    decomposition = commands.add_parser("decompose", help="convex combination of k-arborescences under x")
    decomposition.add_argument("instance")
    decomposition.add_argument("--root", type=int, default=0)
    decomposition.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.OUT.value)
    decomposition.set_defaults(handler=run_decompose)

    gap = commands.add_parser("gap", help="build and evaluate the recursive integrality-gap family")
    gap.add_argument("--depth", type=_positive, required=True)
    gap.add_argument("--columns", type=_positive, required=True)
    gap.add_argument("--exact", action="store_true", help="compute the exact optimum by branch and bound")
    gap.add_argument("--emit", metavar="PREFIX", help="write PREFIX.kacss and PREFIX.levels.json")
    gap.add_argument("--dot")
    gap.add_argument("--json", action="store_true")
    gap.set_defaults(handler=run_gap)

    random = commands.add_parser("random", help="random k-arc-connected instance")
    random.add_argument("--n", type=_positive, required=True)
    random.add_argument("--k", type=_positive, required=True)
    random.add_argument("--extra", type=_non_negative, default=0)
    random.add_argument("--seed", type=_seed, default=0)
    random.add_argument("--output")
    random.set_defaults(handler=run_random)
    return parser


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = Config(config_path=args.config)
    except (OSError, ValueError) as e:
        print(f"kacss: cannot load configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    Config.configure_logging(config.get_logging_settings(), level=args.log_level)

    handler: Callable[[argparse.Namespace, Config, TextIO], int] = args.handler
    try:
        return handler(args, config, out)
    except InfeasibleInstanceError as e:
        print(f"kacss: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (InstanceFormatError, ValueError) as e:
        print(f"kacss: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        logger.error(f"Internal check failed: {e}")
        return EXIT_INTERNAL
    except KacssError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INTERNAL
