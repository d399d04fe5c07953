"""Command line interface.

    chssrigid verify <models...> [--seed N] [--samples N] [--format json|md] [--cache DIR] [-o FILE]
    chssrigid tables <model>
    chssrigid decompose <model> <expr>

Exit codes: 0 success, 1 some model INCOMPLETE, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .bertini import DEFAULT_SAMPLES, DEFAULT_SEED
from .cache import ENV_VAR, DecompositionCache
from .expr import ExprError, evaluate, expected_dimension
from .models import ModelError, build_model, canonical_name
from .orchestrator import ledger_to_report, report_json, run_pipeline
from .report import render_markdown
from .tables import render_tables

EXIT_OK, EXIT_INCOMPLETE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chssrigid", description="Rigidity certificates for homogeneous models.")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the elimination pipeline")
    v.add_argument("models", nargs="+")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    v.add_argument("--format", choices=("json", "md"), default="md")
    v.add_argument("--cache", default=None, help=f"cache directory (default: ${ENV_VAR})")
    v.add_argument("-o", "--output", default=None)

    t = sub.add_parser("tables", help="decomposition tables with golden comparison")
    t.add_argument("model")

    d = sub.add_parser("decompose", help="decompose an expression over T, T*, N, N*")
    d.add_argument("model")
    d.add_argument("expr")
    return p


def _models(names):
    out = []
    for n in names:
        try:
            out.append(build_model(canonical_name(n)))
        except ModelError as exc:
            raise UsageError(str(exc)) from exc
    return out


def run_verify(args, out) -> int:
    if args.seed < 0:
        raise UsageError("seed must be a nonnegative integer")
    if args.samples < 0:
        raise UsageError("samples must be a nonnegative integer")
    models = _models(args.models)
    cache = DecompositionCache(args.cache)
    reports = [ledger_to_report(run_pipeline(m, args.seed, args.samples, cache)) for m in models]
    if args.format == "json":
        text = report_json(reports) + "\n"
    else:
        text = "\n".join(render_markdown(r) for r in reports)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    status = EXIT_OK
    for r in reports:
        if r["verdict"] != "RIGID":
            status = EXIT_INCOMPLETE
            for order in r["orders"]:
                for s in order["survivors"]:
                    print(f"{r['model']}: order {order['k']} survivor {s['weight']} x{s['mult']}", file=sys.stderr)
    return status


def run_decompose(args, out) -> int:
    (model,) = _models([args.model])
    try:
        s = evaluate(model, args.expr)
        dim = expected_dimension(model, args.expr)
    except ExprError as exc:
        raise UsageError(str(exc)) from exc
    for w, m, d in s.serialize(model.rd):
        out.write(f"{m} x {w}  (dim {d})\n")
    out.write(f"total dimension {s.dimension(model.rd)} (expected {dim})\n")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            return run_verify(args, out)
        if args.command == "tables":
            (model,) = _models([args.model])
            out.write(render_tables(model))
            return EXIT_OK
        return run_decompose(args, out)
    except UsageError as exc:
        print(f"chssrigid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
