"""Command line interface: ``tornadotab <command> ...``.

Exit codes: 0 when the command ran, 1 when an experiment acceptance check
failed (or ``independence --check`` found a dependency), 2 for invalid
configurations and inputs.
"""
import argparse
import dataclasses
import json
import logging
import sys
import typing as tp
from pathlib import Path

import numpy as np

from tornadotab.core.bounds import FORMULAS, BoundInputs, evaluate, ugly_bound
from tornadotab.core.errors import InputError, TornadoError
from tornadotab.core.hashing import (
    HashParams,
    format_golden,
    oracle_new,
    simple_tab_new,
    tornado_new,
)
from tornadotab.core.independence import derived_dependency_witness
from tornadotab.core.sketches import (
    BottomKSketch,
    KPartitionMinSketch,
    VectorKSample,
    bottomk_build,
    bottomk_distinct_estimate,
    bottomk_union,
    dumps,
    jaccard_estimate,
    kpm_build,
    kpm_estimate,
    kpm_union,
    loads,
    to_json,
    vectork_build,
    vectork_union,
)

from .config import load_config
from .experiments import list_experiments, run_experiment

logger = logging.getLogger("tornadotab")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

SCHEMES = {"tornado": tornado_new, "simple": simple_tab_new, "oracle": oracle_new}
BUILDERS = {"bottom-k": bottomk_build, "kpm": kpm_build, "vector-k": vectork_build}
UNIONS = {
    BottomKSketch: bottomk_union,
    KPartitionMinSketch: kpm_union,
    VectorKSample: vectork_union,
}
INT_INPUTS = {"sigma_size", "b", "c", "d", "sel_bits", "i", "n"}


def _add_hasher_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("hash function")
    group.add_argument("--scheme", choices=sorted(SCHEMES), default="tornado")
    group.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    group.add_argument("--c", type=int, default=4, help="characters per key")
    group.add_argument("--d", type=int, default=3, help="derived characters")
    group.add_argument("--char-bits", type=int, default=16)
    group.add_argument("--range-bits", type=int, default=64)


def _hasher(args: argparse.Namespace):
    params = HashParams(args.c, args.d, args.char_bits, args.range_bits)
    return SCHEMES[args.scheme](args.seed, params)


def _read_keys(values: list[str], keys_file: str | None) -> np.ndarray:
    """Keys in decimal or ``0x`` hex, from the command line and a file with one key per line."""
    tokens = list(values)
    if keys_file:
        text = sys.stdin.read() if keys_file == "-" else Path(keys_file).read_text()
        tokens += [line.split("#")[0].strip() for line in text.splitlines()]
    try:
        return np.array([int(tok, 0) for tok in tokens if tok], dtype=np.uint64)
    except (ValueError, OverflowError) as err:
        raise InputError(f"Cannot parse keys: {err}") from err


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tornadotab",
        description="Tornado tabulation hashing, its bounds and experiments.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="log debug messages")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    commands = parser.add_subparsers(dest="command", required=True)

    experiment = commands.add_parser("experiment", help="run Monte Carlo experiments")
    exp_commands = experiment.add_subparsers(dest="action", required=True)
    run = exp_commands.add_parser("run", help="run the experiment of a JSON config")
    run.add_argument("--config", required=True, help="JSON experiment configuration")
    run.add_argument("--output", help="CSV report path, overriding the config")
    run.set_defaults(handler=cmd_experiment_run)
    listing = exp_commands.add_parser("list", help="list the experiment kinds")
    listing.set_defaults(handler=cmd_experiment_list)

    bounds = commands.add_parser("bounds", help="evaluate bound formulas")
    bound_commands = bounds.add_subparsers(dest="action", required=True)
    ev = bound_commands.add_parser("eval", help="evaluate one formula")
    ev.add_argument("--formula", required=True, choices=sorted(FORMULAS))
    for name in BoundInputs.field_names():
        kind = str if name == "variant" else int if name in INT_INPUTS else float
        ev.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind)
    ev.add_argument("--backend", default="numpy", help="numpy, numba or decimal")
    ev.add_argument("--json", action="store_true", help="print the full result as JSON")
    ev.set_defaults(handler=cmd_bounds_eval)
    ugly = bound_commands.add_parser("ugly", help="lower tail deviation with its symbol table")
    for name in ("p", "mu"):
        ugly.add_argument(f"--{name}", type=float, required=True)
    for name in ("sigma-size", "c", "d"):
        ugly.add_argument(f"--{name}", type=int, required=True)
    ugly.add_argument("--sel-bits", type=int, default=0)
    ugly.add_argument("--s-all", type=int, default=160)
    ugly.add_argument("--p-reg-variant", choices=("table", "prose"), default="table")
    ugly.add_argument("--backend", default="numpy")
    ugly.set_defaults(handler=cmd_bounds_ugly)

    hashing = commands.add_parser("hash", help="hash keys")
    _add_hasher_args(hashing)
    hashing.add_argument("keys", nargs="*", help="keys in decimal or 0x hex")
    hashing.add_argument("--keys-file", help="file with one key per line, '-' for stdin")
    hashing.add_argument("--golden", help="write a golden vector file instead of printing")
    hashing.set_defaults(handler=cmd_hash)

    sketch = commands.add_parser("sketch", help="build, merge and query sketches")
    sketch_commands = sketch.add_subparsers(dest="action", required=True)
    build = sketch_commands.add_parser("build", help="sketch a key set")
    _add_hasher_args(build)
    build.add_argument("--type", choices=sorted(BUILDERS), default="bottom-k")
    build.add_argument("--k", type=int, required=True)
    build.add_argument("--target-error-p", type=float, help="vector-k hole probability")
    build.add_argument("keys", nargs="*")
    build.add_argument("--keys-file")
    build.add_argument("--out", required=True, help="binary sketch file")
    build.set_defaults(handler=cmd_sketch_build)
    merge = sketch_commands.add_parser("merge", help="union of two sketches")
    merge.add_argument("first")
    merge.add_argument("second")
    merge.add_argument("--out", required=True)
    merge.set_defaults(handler=cmd_sketch_merge)
    estimate = sketch_commands.add_parser(
        "estimate", help="distinct count, or Jaccard similarity with --other"
    )
    estimate.add_argument("sketch")
    estimate.add_argument("--other", help="second vector-k sample")
    estimate.set_defaults(handler=cmd_sketch_estimate)
    show = sketch_commands.add_parser("show", help="print a sketch as JSON")
    show.add_argument("sketch")
    show.set_defaults(handler=cmd_sketch_show)

    independence = commands.add_parser(
        "independence", help="check linear independence of character rows"
    )
    independence.add_argument(
        "--check",
        required=True,
        metavar="FILE",
        help="one key per line as whitespace separated position characters",
    )
    independence.set_defaults(handler=cmd_independence)
    return parser


def cmd_experiment_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.output:
        config = dataclasses.replace(config, output=args.output)
    report = run_experiment(config)
    print(f"{report.kind}: regime={report.regime} config_sha256={report.config.sha256}")
    for check in report.checks:
        print(f"  {'ok  ' if check.passed else 'FAIL'} {check.name}: {check.detail}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_experiment_list(args: argparse.Namespace) -> int:
    for name, description in list_experiments():
        print(f"{name:18s} {description}")
    return EXIT_OK


def _bound_inputs(args: argparse.Namespace) -> BoundInputs:
    values = {name: getattr(args, name) for name in BoundInputs.field_names()}
    return BoundInputs(**{k: v for k, v in values.items() if v is not None})


def cmd_bounds_eval(args: argparse.Namespace) -> int:
    result = evaluate(args.formula, _bound_inputs(args), backend=args.backend)
    if args.json:
        print(json.dumps({"formula": args.formula, **result.to_dict()}, indent=2))
    else:
        print(result.value)
        for warning in result.warnings:
            print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_bounds_ugly(args: argparse.Namespace) -> int:
    bound = ugly_bound(
        args.p,
        args.mu,
        args.sigma_size,
        args.c,
        args.d,
        args.sel_bits,
        s_all=args.s_all,
        p_reg_variant=args.p_reg_variant,
        backend=args.backend,
    )
    out = {
        "deviation": float(bound.deviation),
        "probability": bound.probability.to_dict(),
        "symbols": bound.symbols.to_dict(),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_hash(args: argparse.Namespace) -> int:
    hasher = _hasher(args)
    keys = _read_keys(args.keys, args.keys_file)
    text = format_golden(hasher, keys)
    if args.golden:
        Path(args.golden).write_text(text)
        logger.info("Wrote %d hash values to %s", keys.shape[0], args.golden)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_sketch_build(args: argparse.Namespace) -> int:
    hasher = _hasher(args)
    keys = _read_keys(args.keys, args.keys_file)
    if args.type == "vector-k":
        sketch = vectork_build(keys, hasher, args.k, args.target_error_p)
    else:
        sketch = BUILDERS[args.type](keys, hasher, args.k)
    Path(args.out).write_bytes(dumps(sketch))
    logger.info("Wrote %s sketch of %d keys to %s", args.type, keys.shape[0], args.out)
    return EXIT_OK


def _load(path: str):
    try:
        return loads(Path(path).read_bytes())
    except OSError as err:
        raise InputError(f"Cannot read sketch {path}: {err}") from err


def cmd_sketch_merge(args: argparse.Namespace) -> int:
    first, second = _load(args.first), _load(args.second)
    merged = UNIONS[type(first)](first, second)
    Path(args.out).write_bytes(dumps(merged))
    return EXIT_OK


def cmd_sketch_estimate(args: argparse.Namespace) -> int:
    sketch = _load(args.sketch)
    if isinstance(sketch, VectorKSample):
        if not args.other:
            raise InputError("A vector-k sample estimates Jaccard similarity; pass --other.")
        print(jaccard_estimate(sketch, _load(args.other)))
    elif isinstance(sketch, BottomKSketch):
        print(bottomk_distinct_estimate(sketch))
    else:
        print(kpm_estimate(sketch))
    return EXIT_OK


def cmd_sketch_show(args: argparse.Namespace) -> int:
    print(to_json(_load(args.sketch)))
    return EXIT_OK


def _read_rows(path: str) -> np.ndarray:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as err:
        raise InputError(f"Cannot read {path}: {err}") from err
    rows = [line.split("#")[0].split() for line in lines]
    rows = [row for row in rows if row]
    if rows and len({len(row) for row in rows}) != 1:
        raise InputError("Every key needs the same number of characters.")
    try:
        return np.array([[int(tok, 0) for tok in row] for row in rows], dtype=np.int64)
    except ValueError as err:
        raise InputError(f"Cannot parse characters: {err}") from err


def cmd_independence(args: argparse.Namespace) -> int:
    rows = _read_rows(args.check)
    if rows.size == 0:
        print("independent: 0 keys")
        return EXIT_OK
    if rows.min() < 0:
        raise InputError("Characters must be non-negative.")
    witness = derived_dependency_witness(rows)
    if witness is None:
        print(f"independent: {rows.shape[0]} keys")
        return EXIT_OK
    print("dependent: zero set of lines " + " ".join(str(i + 1) for i in witness))
    return EXIT_FAILED


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def main(argv: tp.Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    try:
        return args.handler(args)
    except TornadoError as err:
        logger.error("%s", err)
        return EXIT_CONFIG
