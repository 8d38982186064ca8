"""
TRANSDUCTIONS - Command-Line Front End
======================================

Load graphs and pipelines, run encoders and verifiers, query games and
parameters, and export JSON / DOT reports.

Usage:
    python src/cli.py apply graph.json pipeline.json [--witness w.json] [--format dot]
    python src/cli.py enumerate graph.json pipeline.json [--budget N]
    python src/cli.py member target.json pipeline.json host.json
    python src/cli.py encode grid 2 3 [--output bundle.json]
    python src/cli.py encode interval graph.json
    python src/cli.py encode planar-pw graph.json
    python src/cli.py encode components graph.json --n 3 [--perturbation sets.json]
    python src/cli.py encode cubic graph.json [--degree D]
    python src/cli.py encode caterpillar caterpillar.json --delta 3
    python src/cli.py encode selfcopy-path 2 3
    python src/cli.py ef g.json h.json --q 2
    python src/cli.py param graph.json --which pw
    python src/cli.py perturb graph.json --sets sets.json
    python src/cli.py verify-lemma-perturb graph.json sets.json

Exit Codes:
    0   success (for encode: the artifact verified)
    1   verification failed
    2   search budget exceeded
    64  usage error, unreadable or malformed input file

Environment:
    TRANSDUCER_BUDGET   overrides the default search budget
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

# ============================================================================
# PATH SETUP
# ============================================================================

_SRC_DIR = Path(__file__).parent.resolve()
if str(_SRC_DIR) not in sys.path:
    sys.path.insert(0, str(_SRC_DIR))

# ============================================================================
# CONFIGURATION
# ============================================================================

try:
    from config import EXIT_CODES
    _USING_CONFIG = True
except ImportError:
    _USING_CONFIG = False

    class EXIT_CODES:
        OK = 0
        VERIFY_FAILED = 1
        BUDGET_EXCEEDED = 2
        USAGE = 64

from transductions import (
    BudgetExceededError, CompressedCaterpillar, GraphError, PipelineError, TransductionError, VerificationError,
    apply_partition_flip, apply_pipeline, apply_sequence, bandwidth, basic_params,
    compress_caterpillar, dilation_profile, distinguishing_rank, duplicator_wins,
    encode_bounded_components, encode_caterpillar_in_path, encode_cubic, encode_grid,
    encode_interval, encode_pathwidth_planar, enumerate_images, graph_to_dot, graph_to_json,
    member_check, path_selfcopy, pathwidth, sets_to_partition, star_chromatic_number,
    treedepth, treewidth,
)
from transductions.encodings import IntervalFamily
from transductions.loaders import dumps, graph_from_json, load_json, save_json
from transductions.perturbation import Perturbation, partition_from_json, perturbation_from_json
from transductions.transduction import pipeline_from_json, witness_from_json, witness_to_json

logger = logging.getLogger("transductions.cli")

ENCODERS = ("interval", "grid", "planar-pw", "components", "cubic", "caterpillar", "selfcopy-path")
PARAMS = ("pw", "tw", "td", "bw", "starchrom", "basic", "dilation")


class UsageError(Exception):
    """Bad arguments or unreadable input files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ============================================================================
# INPUT / OUTPUT HELPERS
# ============================================================================

def _load(path: str) -> Any:
    try:
        return load_json(path)
    except OSError as exc:
        raise UsageError(f"Cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise UsageError(str(exc)) from None


def _load_graph(path: str):
    try:
        return graph_from_json(_load(path))
    except GraphError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_pipeline(path: str):
    try:
        return pipeline_from_json(_load(path))
    except PipelineError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_witnesses(paths: Sequence[str]) -> List[dict]:
    witnesses = []
    for path in paths:
        data = _load(path)
        entries = data if isinstance(data, list) else [data]
        witnesses.extend(witness_from_json(entry) for entry in entries)
    return witnesses


def _emit_graph(G, fmt: str) -> None:
    if fmt == "dot":
        sys.stdout.write(graph_to_dot(G))
    else:
        sys.stdout.write(dumps(graph_to_json(G)))


def _emit(obj: Any) -> None:
    sys.stdout.write(dumps(obj))


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_apply(args) -> int:
    G = _load_graph(args.graph)
    pipeline = _load_pipeline(args.pipeline)
    image = apply_pipeline(G, pipeline, _load_witnesses(args.witness or []))
    _emit_graph(image, args.format)
    return EXIT_CODES.OK


def cmd_enumerate(args) -> int:
    G = _load_graph(args.graph)
    pipeline = _load_pipeline(args.pipeline)
    images = enumerate_images(G, pipeline, args.budget)
    if args.format == "dot":
        for i, image in enumerate(images):
            sys.stdout.write(graph_to_dot(image, name=f"I{i}"))
    else:
        _emit({"count": len(images), "images": [graph_to_json(H) for H in images]})
    return EXIT_CODES.OK


def cmd_member(args) -> int:
    target = _load_graph(args.target)
    pipeline = _load_pipeline(args.pipeline)
    host = _load_graph(args.host)
    witnesses = member_check(target, pipeline, host, args.budget)
    if witnesses is None:
        print("no")
        return EXIT_CODES.OK
    _emit({"witnesses": [witness_to_json(w) for w in witnesses]})
    return EXIT_CODES.OK


def _build_artifact(args):
    """(artifact, description of the target) for one encode invocation."""
    values = args.values
    kind = args.kind

    def need(count: int, what: str):
        if len(values) != count:
            raise UsageError(f"encode {kind} expects {what}")

    def as_int(text: str) -> int:
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"encode {kind}: {text!r} is not an integer") from None

    if kind == "grid":
        need(2, "two integers n m")
        n, m = as_int(values[0]), as_int(values[1])
        return encode_grid(n, m), f"{n}x{m} grid"
    if kind == "selfcopy-path":
        need(2, "two integers n k")
        n, k = as_int(values[0]), as_int(values[1])
        return path_selfcopy(n, k), f"C_{k}(P_{n})"

    need(1, "one input file")
    if kind == "caterpillar":
        if args.delta is None:
            raise UsageError("encode caterpillar needs --delta")
        data = _load(values[0])
        if isinstance(data, dict) and "path" in data:
            cc = CompressedCaterpillar.from_json(data)
        else:
            cc = compress_caterpillar(_load_graph(values[0]))
        artifact = encode_caterpillar_in_path(cc, args.delta)
        return artifact, f"caterpillar ({artifact.target.n} vertices)"

    G = _load_graph(values[0])
    label = f"target ({G.n} vertices, {len(G.edges)} edges)"
    if kind == "interval":
        return encode_interval(G), label
    if kind == "planar-pw":
        model = None
        if args.model:
            model = IntervalFamily(tuple((e["tag"], e["lo"], e["hi"]) for e in _load(args.model)))
        return encode_pathwidth_planar(G, model), label
    if kind == "components":
        if args.n is None:
            raise UsageError("encode components needs --n")
        perturbation = None
        if args.perturbation:
            perturbation = perturbation_from_json(_load(args.perturbation), G.n)
        return encode_bounded_components(G, args.n, perturbation), label
    encoding = encode_cubic(G, args.degree, args.budget)
    return encoding.artifact, f"{label} (cubic host, p={encoding.p})"


def cmd_encode(args) -> int:
    try:
        artifact, label = _build_artifact(args)
    except VerificationError as exc:
        print(f"FAILED: {exc}")
        return EXIT_CODES.VERIFY_FAILED
    if args.output:
        path = save_json(artifact.to_json(), args.output)
        logger.info("bundle written to %s", path)
    print(f"VERIFIED: image ≅ {label}")
    if args.format == "dot":
        sys.stdout.write(graph_to_dot(artifact.host, name="host"))
    elif args.bundle:
        _emit(artifact.to_json())
    return EXIT_CODES.OK


def cmd_ef(args) -> int:
    G, H = _load_graph(args.G), _load_graph(args.H)
    if duplicator_wins(G, H, args.q, args.budget):
        print(f"Duplicator wins at q={args.q}")
        print(f"distinguishing rank: >= {args.q + 1}")
    else:
        rank = distinguishing_rank(G, H, args.q, args.budget)
        print(f"Spoiler wins at q={args.q}")
        print(f"distinguishing rank: {rank}")
    return EXIT_CODES.OK


def cmd_param(args) -> int:
    G = _load_graph(args.graph)
    which = args.which
    if which in ("pw", "tw", "td", "bw"):
        compute = {"pw": pathwidth, "tw": treewidth, "td": treedepth, "bw": bandwidth}[which]
        print(compute(G))
    elif which == "starchrom":
        k, coloring = star_chromatic_number(G)
        _emit({"star_chromatic_number": k, "coloring": [coloring[v] for v in range(G.n)]})
    elif which == "basic":
        _emit(basic_params(G).to_dict())
    else:
        profile = dilation_profile([G], args.rmax)
        _emit({str(r): size for r, size in sorted(profile.items())})
    return EXIT_CODES.OK


def cmd_perturb(args) -> int:
    G = _load_graph(args.graph)
    if args.sets:
        image = apply_sequence(G, perturbation_from_json(_load(args.sets), G.n))
    else:
        image = apply_partition_flip(G, partition_from_json(_load(args.partition), G.n))
    _emit_graph(image, args.format)
    return EXIT_CODES.OK


def cmd_verify_lemma_perturb(args) -> int:
    G = _load_graph(args.graph)
    P = perturbation_from_json(_load(args.sets), G.n)
    by_sets = apply_sequence(G, P)
    by_partition = apply_partition_flip(G, sets_to_partition(P, G.n))
    involution = apply_sequence(by_sets, Perturbation(tuple(reversed(P.sets)), G.n)) == G
    if by_sets.edges == by_partition.edges and involution:
        print(f"EQUIVALENT: partition flip = sequence image ({len(by_sets.edges)} edges); involution holds")
        return EXIT_CODES.OK
    print(f"MISMATCH: pairs {sorted(by_sets.edges ^ by_partition.edges)} differ between the two images; "
          f"involution {'holds' if involution else 'fails'}")
    return EXIT_CODES.VERIFY_FAILED


# ============================================================================
# PARSER
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--budget', type=int, default=None, help='Search budget (overrides TRANSDUCER_BUDGET)')
    common.add_argument('--format', choices=('json', 'dot'), default='json', help='Graph output format')
    common.add_argument('--verbose', action='store_true', help='Log library debug messages to stderr')

    parser = _Parser(prog="transductions", description="First-order transductions of finite colored graphs")
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('apply', parents=[common], help='Apply a pipeline to a graph')
    p.add_argument('graph')
    p.add_argument('pipeline')
    p.add_argument('--witness', action='append', help='Witness JSON (object or list), one per ColorSearch stage')
    p.set_defaults(handler=cmd_apply)

    p = sub.add_parser('enumerate', parents=[common], help='All images of a graph up to isomorphism')
    p.add_argument('graph')
    p.add_argument('pipeline')
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser('member', parents=[common], help='Find witnesses producing a target from a host')
    p.add_argument('target')
    p.add_argument('pipeline')
    p.add_argument('host')
    p.set_defaults(handler=cmd_member)

    p = sub.add_parser('encode', parents=[common], help='Build and verify a host artifact')
    p.add_argument('kind', choices=ENCODERS)
    p.add_argument('values', nargs='+', help='Input file or integer arguments')
    p.add_argument('--n', type=int, help='Component order (components)')
    p.add_argument('--perturbation', help='Perturbation sets JSON (components)')
    p.add_argument('--degree', type=int, help='Degree bound D (cubic)')
    p.add_argument('--delta', type=int, help='Degree bound (caterpillar)')
    p.add_argument('--model', help='Interval model JSON (planar-pw)')
    p.add_argument('--output', help='Write the bundle JSON here')
    p.add_argument('--bundle', action='store_true', help='Print the bundle JSON after the verdict')
    p.set_defaults(handler=cmd_encode)

    p = sub.add_parser('ef', parents=[common], help='Decide the q-round game')
    p.add_argument('G')
    p.add_argument('H')
    p.add_argument('--q', type=int, required=True)
    p.set_defaults(handler=cmd_ef)

    p = sub.add_parser('param', parents=[common], help='Exact graph parameters')
    p.add_argument('graph')
    p.add_argument('--which', choices=PARAMS, required=True)
    p.add_argument('--rmax', type=int, default=2, help='Largest radius (dilation)')
    p.set_defaults(handler=cmd_param)

    p = sub.add_parser('perturb', parents=[common], help='Apply a perturbation')
    p.add_argument('graph')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--sets', help='Perturbation sets JSON')
    group.add_argument('--partition', help='Flip partition JSON')
    p.set_defaults(handler=cmd_perturb)

    p = sub.add_parser('verify-lemma-perturb', parents=[common], help='Sequence and partition flips agree')
    p.add_argument('graph')
    p.add_argument('sets')
    p.set_defaults(handler=cmd_verify_lemma_perturb)
    return parser


# ============================================================================
# ENTRY POINT
# ============================================================================

def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand, return the exit status."""
    try:
        args = build_parser().parse_args(argv)
        if args.budget is not None and args.budget < 1:
            raise UsageError(f"--budget must be a positive integer, got {args.budget}")
        if args.verbose:
            logging.basicConfig(level=logging.DEBUG, format='%(name)s: %(message)s')
        return args.handler(args)
    except UsageError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_CODES.USAGE
    except BudgetExceededError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_CODES.BUDGET_EXCEEDED
    except VerificationError as exc:
        print(f"[FAIL] {exc}", file=sys.stderr)
        return EXIT_CODES.VERIFY_FAILED
    except TransductionError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_CODES.VERIFY_FAILED
    except json.JSONDecodeError as exc:
        print(f"[ERROR] invalid JSON: {exc}", file=sys.stderr)
        return EXIT_CODES.USAGE
    except ValueError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        return EXIT_CODES.USAGE


if __name__ == "__main__":
    sys.exit(run())
