"""Command-line entry point: ``haarmana {figure,verify,predict,bench,sample,plot-template}``.

Exit codes: 0 success, 1 verification failure, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import experiments as ex
from .ensembles import EnsembleSpec, batch_statistics, write_batch_csv

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG = 0, 1, 2


def _int_list(text: str) -> list[int]:
    """``"3,5,7"`` or ``"1..13"`` (inclusive) or a mix: ``"1..5,9"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _common(p: argparse.ArgumentParser, *, samples_default=None, out_default=None) -> None:
    p.add_argument("--seed", type=int, default=ex.DEFAULT_SEED, help="master seed (64-bit)")
    p.add_argument("--samples", type=int, default=samples_default, help="samples per grid point")
    p.add_argument("--out", default=out_default, help="output CSV path")
    p.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="haarmana", description="Mana and Wigner norms of random qudit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="run a figure-reproduction experiment")
    fig.add_argument("id", choices=sorted(ex.FIGURES))
    fig.add_argument("--dims", type=_int_list, help="qudit dimensions, e.g. 3,5,7 or 3..27")
    fig.add_argument("--knobs", type=_int_list, help="d_B values or mixture sizes, e.g. 1..13")
    fig.add_argument("--delta-step", type=float, help="deficit grid step (fig_mixed_intro)")
    _common(fig)

    ver = sub.add_parser("verify", help="run the invariant suite")
    ver.add_argument("--dims", type=_int_list, default=[3, 5, 7, 9, 15, 27, 31])
    ver.add_argument("--perturb", action="store_true", help=argparse.SUPPRESS)
    _common(ver, samples_default=8)

    prd = sub.add_parser("predict", help="closed-form prediction table")
    prd.add_argument("--d-a", type=int)
    prd.add_argument("--d-b", type=_int_list, default=list(range(1, 14)))
    prd.add_argument("--big-d", type=int, help="register dimension for a deficit grid")
    prd.add_argument("--delta-grid", type=float, nargs=3, metavar=("START", "STOP", "STEP"))
    _common(prd, out_default="predictions.csv")

    bch = sub.add_parser("bench", help="time the three Wigner evaluation paths")
    bch.add_argument("--dims", type=_int_list, default=[3, 27, 81, 243])
    bch.add_argument("--memory-mb", type=float, default=2048.0)
    bch.add_argument("--trace-max-d", type=int, default=81)
    _common(bch, samples_default=5, out_default="bench.csv")

    smp = sub.add_parser("sample", help="per-sample statistics for one ensemble")
    smp.add_argument("kind", choices=["simple", "average", "reduced", "pure"])
    smp.add_argument("--dim", type=int, required=True)
    smp.add_argument("--knob", type=float, help="target deficit, mixture size or d_B")
    _common(smp, samples_default=100, out_default="samples.csv")

    tpl = sub.add_parser("plot-template", help="print a matplotlib script for a figure CSV")
    tpl.add_argument("csv")
    return parser


def _figure(args) -> int:
    spec = ex.FIGURES[args.id]
    extra = {"delta_step": args.delta_step} if args.delta_step else {}
    cfg = ex.ExperimentConfig(
        experiment=args.id,
        n_samples=args.samples if args.samples is not None else spec.default_samples,
        master_seed=args.seed,
        output_path=args.out or f"{args.id}.csv",
        threads=args.threads,
        dims=args.dims,
        knobs=args.knobs,
        extra=extra,
    )
    meta = ex.run_figure(cfg)
    print(f"wrote {cfg.output_path} ({meta['elapsed_seconds']:.1f} s)")
    return EXIT_OK


def _verify(args) -> int:
    t0 = time.perf_counter()
    checks = ex.run_verify(dims=args.dims, perturb=args.perturb, seed=args.seed, samples=args.samples)
    for c in checks:
        print(c.line())
    failed = [c.name for c in checks if not c.ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed in {time.perf_counter() - t0:.1f} s")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump({c.name: {"value": c.value, "tol": c.tol, "ok": c.ok} for c in checks}, fh, indent=2)
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _predict(args) -> int:
    if args.big_d is not None:
        if not args.delta_grid:
            raise ex.ConfigError("--big-d needs --delta-grid START STOP STEP")
        start, stop, step = args.delta_grid
        if step <= 0 or stop < start:
            raise ex.ConfigError("delta grid needs STEP > 0 and STOP >= START")
        n = int(np.floor((stop - start) / step + 1e-9))
        deltas = [start + k * step for k in range(n + 1)]
        rows = ex.run_predict(args.out, big_d=args.big_d, deltas=deltas)
    else:
        if args.d_a is None:
            raise ex.ConfigError("give --d-a (with --d-b) or --big-d with --delta-grid")
        rows = ex.run_predict(args.out, d_a=args.d_a, d_bs=args.d_b)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def _bench(args) -> int:
    rows = ex.run_bench(args.dims, reps=args.samples, seed=args.seed, memory_budget_mb=args.memory_mb,
                        trace_max_d=args.trace_max_d, out=args.out)
    for r in rows:
        cells = " ".join(
            f"{p}={r[p + '_seconds']:.3e}s" if r.get(p + "_seconds") is not None else f"{p}=skipped"
            for p in ("trace", "direct", "fft"))
        print(f"d={r['d']:<4d} {cells} max|diff|={r['max_abs_diff']:.1e}")
    big = [r for r in rows if r["d"] >= 27]
    if len(big) >= 2:
        slope = ex.loglog_slope([r["d"] for r in big], [r["direct_seconds"] for r in big])
        print(f"direct path log-log slope over d >= 27: {slope:.2f}")
    return EXIT_OK


def _sample(args) -> int:
    knob = args.knob
    if args.kind in ("average", "reduced") and knob is not None:
        knob = int(knob)
    spec = EnsembleSpec(args.kind, args.dim, knob)
    out = Path(args.out)
    ex._check_writable(out)
    stats = batch_statistics(spec, args.samples, args.seed, threads=args.threads)
    write_batch_csv(out, spec, stats)
    print(f"wrote {args.samples} rows to {out}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"figure": _figure, "verify": _verify, "predict": _predict, "bench": _bench,
                "sample": _sample}
    try:
        if args.command == "plot-template":
            print(ex.plot_template(args.csv))
            return EXIT_OK
        if getattr(args, "samples", 1) is not None and args.samples < 1:
            raise ex.ConfigError("--samples must be >= 1")
        if args.threads < 1:
            raise ex.ConfigError("--threads must be >= 1")
        return handlers[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RuntimeError as exc:  # a correctness gate tripped
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
