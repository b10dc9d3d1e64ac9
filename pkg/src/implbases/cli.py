"""Command-line surface: compute bases, generate random contexts,
evaluate bounds, run sweeps, fit constants.

All output is deterministic for fixed flags (wall-clock columns are
opt-in), so identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bases import format_implications, proper_premise_base, stem_base
from .bounds import (ContextBoundParams, RegimeThresholds,
                     almost_sure_lower_exponent, avg_pp_exponent,
                     classify_regime, total_base_bound_log10)
from .ctxio import ContextParseError, read_context_file, write_burmeister
from .randctx import (MultiParamSpec, SingleParamSpec, gen_multi, gen_single,
                      spec_to_keyvalues)
from .sweep import (DEFAULT_MAX_PROPER_ATTRIBUTES, DEFAULT_MAX_STEM_ATTRIBUTES,
                    FitError, SweepSpec, fit_exponent, parse_csv, render_csv,
                    run_sweep)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must be in [0, 1], got {text}")
    return value


def _open_probability(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"probability must be in (0, 1), got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="implbases",
        description="Implicational bases of formal contexts: computation, "
                    "random models, size bounds, and sweep experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser(
        "compute", help="compute an implication base of a context file")
    p_compute.add_argument("context", help="context file (Burmeister, or .csv 0/1 matrix)")
    p_compute.add_argument("--base", choices=["proper", "stem", "both"],
                           default="proper")
    p_compute.add_argument("--format", choices=["text", "json"], default="text")
    p_compute.add_argument("--max-proper-attrs", type=int,
                           default=DEFAULT_MAX_PROPER_ATTRIBUTES,
                           help="refuse proper-premise computation above this size")
    p_compute.add_argument("--max-stem-attrs", type=int,
                           default=DEFAULT_MAX_STEM_ATTRIBUTES,
                           help="refuse stem-base computation above this size")

    p_gen = sub.add_parser("gen", help="generate a random context")
    p_gen.add_argument("--model", choices=["single", "multi"], default="single")
    p_gen.add_argument("--objects", type=int, required=True)
    p_gen.add_argument("--attributes", type=int, required=True)
    p_gen.add_argument("--p", type=_probability, default=0.5,
                       help="cell probability (single model)")
    p_gen.add_argument("--u-size", type=int, default=0)
    p_gen.add_argument("--r-size", type=int, default=0)
    p_gen.add_argument("--x", type=float, default=2.0)
    p_gen.add_argument("--f-prob", type=_probability, default=0.5)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default="-", help="output path, '-' for stdout")

    p_bounds = sub.add_parser("bounds", help="evaluate the theoretical size bounds")
    p_bounds.add_argument("--attributes", type=int, required=True)
    p_bounds.add_argument("--objects", type=int, required=True)
    p_bounds.add_argument("--p", type=_open_probability, required=True)
    p_bounds.add_argument("--c", type=float, default=1.0)
    p_bounds.add_argument("--c2", type=float, default=0.0)
    p_bounds.add_argument("--u-size", type=int, default=None,
                          help="with --r-size, also classify the multi-model regime")
    p_bounds.add_argument("--r-size", type=int, default=None)
    p_bounds.add_argument("--x", type=float, default=2.0)
    p_bounds.add_argument("--f-prob", type=_probability, default=0.5)
    p_bounds.add_argument("--format", choices=["text", "json"], default="text")

    p_sweep = sub.add_parser("sweep", help="run a seeded parameter sweep to CSV")
    p_sweep.add_argument("--model", choices=["single", "multi"], default="single")
    p_sweep.add_argument("--objects", type=_int_list, required=True,
                         help="comma-separated object counts")
    p_sweep.add_argument("--attributes", type=_int_list, required=True)
    p_sweep.add_argument("--p", type=_float_list, default=(0.5,))
    p_sweep.add_argument("--u-size", type=_int_list, default=(0,))
    p_sweep.add_argument("--r-size", type=_int_list, default=(0,))
    p_sweep.add_argument("--x", type=float, default=2.0)
    p_sweep.add_argument("--f-prob", type=_probability, default=0.5)
    p_sweep.add_argument("--trials", type=int, default=1)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--base", choices=["proper", "stem", "both"],
                         default="proper",
                         help="'stem'/'both' additionally compute the stem base")
    p_sweep.add_argument("--c", type=float, default=1.0)
    p_sweep.add_argument("--c2", type=float, default=0.0)
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--timings", action="store_true",
                         help="include wall-clock columns (breaks byte determinism)")
    p_sweep.add_argument("--max-proper-attrs", type=int,
                         default=DEFAULT_MAX_PROPER_ATTRIBUTES)
    p_sweep.add_argument("--max-stem-attrs", type=int,
                         default=DEFAULT_MAX_STEM_ATTRIBUTES)
    p_sweep.add_argument("--out", default="-")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")

    p_fit = sub.add_parser("fit", help="fit bound constants to sweep CSV output")
    p_fit.add_argument("csv", help="sweep CSV path")
    p_fit.add_argument("--format", choices=["text", "json"], default="text")

    return parser


def _write_out(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_compute(args) -> int:
    try:
        ctx = read_context_file(args.context)
    except FileNotFoundError:
        print(f"error: no such file: {args.context}", file=sys.stderr)
        return 2
    except ContextParseError as exc:
        print(f"error: {args.context}: {exc}", file=sys.stderr)
        return 2
    if ctx.n_objects == 0 or ctx.n_attributes == 0:
        print(f"error: {args.context}: context is empty "
              f"({ctx.n_objects} objects, {ctx.n_attributes} attributes)",
              file=sys.stderr)
        return 2
    kinds = ["proper", "stem"] if args.base == "both" else [args.base]
    if "proper" in kinds and ctx.n_attributes > args.max_proper_attrs:
        print(f"error: {ctx.n_attributes} attributes exceeds proper-premise "
              f"size guard {args.max_proper_attrs} (raise --max-proper-attrs)",
              file=sys.stderr)
        return 2
    if "stem" in kinds and ctx.n_attributes > args.max_stem_attrs:
        print(f"error: {ctx.n_attributes} attributes exceeds stem-base "
              f"size guard {args.max_stem_attrs} (raise --max-stem-attrs)",
              file=sys.stderr)
        return 2

    results = {}
    for kind in kinds:
        base = proper_premise_base(ctx) if kind == "proper" else stem_base(ctx)
        results[kind] = base
    if args.format == "json":
        payload = {
            "objects": ctx.n_objects,
            "attributes": ctx.n_attributes,
            "bases": {
                kind: {
                    "implications": [
                        {"premise": [ctx.attribute_names[a] for a in imp.premise],
                         "conclusion": [ctx.attribute_names[a] for a in imp.conclusion]}
                        for imp in base
                    ],
                    "implication_count": len(base),
                    "premise_count": base.premise_count,
                    "pair_count": base.pair_count,
                }
                for kind, base in results.items()
            },
        }
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 0
    for kind, base in results.items():
        if len(results) > 1:
            sys.stdout.write(f"# base={kind}\n")
        sys.stdout.write(format_implications(base, ctx.attribute_names))
        sys.stdout.write(
            f"# {kind}: implications={len(base)} premises={base.premise_count} "
            f"pairs={base.pair_count} attributes={ctx.n_attributes} "
            f"objects={ctx.n_objects}\n")
    return 0


def cmd_gen(args) -> int:
    try:
        if args.model == "single":
            spec = SingleParamSpec(n_objects=args.objects,
                                   n_attributes=args.attributes,
                                   p=args.p, seed=args.seed)
            ctx = gen_single(spec)
        else:
            spec = MultiParamSpec(n_objects=args.objects,
                                  n_attributes=args.attributes,
                                  u_size=args.u_size, r_size=args.r_size,
                                  x=args.x, f_prob=args.f_prob, seed=args.seed)
            ctx = gen_multi(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = write_burmeister(ctx, header_comments=spec_to_keyvalues(spec))
    _write_out(args.out, text)
    return 0


def cmd_bounds(args) -> int:
    rows: list[tuple[str, str]] = []
    mq = args.objects * (1.0 - args.p)
    if mq < 3.0:
        rows.append(("avg_pp_exponent",
                     f"degenerate-dense (objects*q={mq!r} < 3)"))
        rows.append(("lower_exponent",
                     f"degenerate-dense (objects*q={mq!r} < 3)"))
        rows.append(("total_base_log10",
                     f"degenerate-dense (objects*q={mq!r} < 3)"))
    else:
        params = ContextBoundParams(args.attributes, args.objects, args.p, args.c)
        lower = almost_sure_lower_exponent(args.attributes, args.objects,
                                           args.p, args.c2)
        rows.append(("avg_pp_exponent", repr(avg_pp_exponent(params))))
        rows.append(("lower_exponent", repr(lower.exponent)))
        rows.append(("total_base_log10", repr(total_base_bound_log10(params))))
        rows.append(("lower_total_log10", repr(lower.total_log10)))
    if args.u_size is not None or args.r_size is not None:
        try:
            spec = MultiParamSpec(
                n_objects=args.objects, n_attributes=args.attributes,
                u_size=args.u_size or 0, r_size=args.r_size or 0,
                x=args.x, f_prob=args.f_prob, seed=0)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        report = classify_regime(spec, RegimeThresholds())
        rows.append(("regime", report.regime))
        rows.append(("regime_witness", report.witness))
    if args.format == "json":
        sys.stdout.write(json.dumps(dict(rows), indent=2, sort_keys=True) + "\n")
    else:
        for name, value in rows:
            sys.stdout.write(f"{name} = {value}\n")
    return 0


def cmd_sweep(args) -> int:
    try:
        spec = SweepSpec(
            model=args.model,
            objects=args.objects,
            attributes=args.attributes,
            p_values=args.p,
            u_sizes=args.u_size,
            r_sizes=args.r_size,
            x=args.x,
            f_prob=args.f_prob,
            trials=args.trials,
            base_seed=args.seed,
            with_stem=args.base in ("stem", "both"),
            c=args.c,
            c2=args.c2,
            max_proper_attributes=args.max_proper_attrs,
            max_stem_attributes=args.max_stem_attrs,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    records = run_sweep(spec, workers=args.workers)
    if args.format == "json":
        payload = []
        for rec in records:
            entry = {
                "cell": rec.cell, "trial": rec.trial, "seed": rec.seed,
                **rec.params,
                "mt_min": rec.mt_min, "mt_mean": rec.mt_mean,
                "mt_max": rec.mt_max, "pp_pairs": rec.pp_pairs,
                "pp_premises": rec.pp_premises, "stem_count": rec.stem_count,
                "avg_exponent": rec.avg_exponent,
                "lower_exponent": rec.lower_exponent,
                "total_log10": rec.total_log10,
                "error": rec.error,
            }
            if args.timings:
                entry.update({"gen_ms": rec.gen_ms, "dual_ms": rec.dual_ms,
                              "stem_ms": rec.stem_ms})
            payload.append(entry)
        _write_out(args.out, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        _write_out(args.out, render_csv(spec, records,
                                        include_timings=args.timings))
    return 1 if any(rec.error is not None for rec in records) else 0


def cmd_fit(args) -> int:
    try:
        with open(args.csv, "r", encoding="utf-8") as fh:
            rows = parse_csv(fh.read())
    except FileNotFoundError:
        print(f"error: no such file: {args.csv}", file=sys.stderr)
        return 2
    try:
        result = fit_exponent(rows)
    except FitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        payload = {
            "c": result.c,
            "log_k": result.log_k,
            "c2": result.c2,
            "max_relative_residual": result.max_relative_residual,
            "cells": [
                {"attributes": s.attributes, "objects": s.objects, "p": s.p,
                 "mean_count": s.mean_count, "fitted_count": s.fitted_count,
                 "residual_ln": s.residual_ln,
                 "relative_residual": s.relative_residual}
                for s in result.cells
            ],
        }
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return 0
    sys.stdout.write(f"c = {result.c!r}\n")
    sys.stdout.write(f"log_k = {result.log_k!r}\n")
    sys.stdout.write(f"c2 = {result.c2!r}\n")
    sys.stdout.write(f"max_relative_residual = {result.max_relative_residual!r}\n")
    for s in result.cells:
        sys.stdout.write(
            f"cell attributes={s.attributes} objects={s.objects} p={s.p!r} "
            f"mean={s.mean_count!r} fitted={s.fitted_count!r} "
            f"rel_residual={s.relative_residual!r}\n")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "compute": cmd_compute,
        "gen": cmd_gen,
        "bounds": cmd_bounds,
        "sweep": cmd_sweep,
        "fit": cmd_fit,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
