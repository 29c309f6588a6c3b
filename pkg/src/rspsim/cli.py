"""Command-line entry point: ``rspsim <experiment> [options]``."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .experiments import EXPERIMENTS, ExperimentConfig, format_summary, run_experiment, write_outputs


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"usage: {message}")


def _angles(text: str) -> tuple[float, ...]:
    vals = tuple(np.deg2rad(float(x)) for x in text.split(","))
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("need four comma-separated angles in degrees")
    return vals


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--resource", default="ideal",
                        help="ideal | werner:<p> | werner-fid:<F> | rotated:<ax,ay,az;bx,by,bz> | file:<path>")
    common.add_argument("--bs-t", type=float, default=0.5, help="beamsplitter intensity transmittance")
    common.add_argument("--mode", choices=("exact", "counts"), default="exact")
    common.add_argument("--rate", type=float, default=600.0, help="coincidence rate, 1/s")
    common.add_argument("--duration", type=float, default=10.0, help="seconds per tomography setting")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--grid", type=int, default=24)
    common.add_argument("--label", default=None,
                        help="outcome label (0H, 0V, 1H, 1V, or all); default 0H, all for qpt")
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--angles", type=_angles, default=None, help="CHSH angles a,a',b,b' in degrees")
    common.add_argument("--two-detector", action="store_true")
    common.add_argument("--out", default=None, help="results file; summary goes to <out>.summary")

    parser = _Parser(prog="rspsim", description=__doc__)
    sub = parser.add_subparsers(dest="experiment", required=True, parser_class=_Parser)
    for name in EXPERIMENTS:
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args) -> ExperimentConfig:
    kw = dict(
        experiment=args.experiment,
        resource=args.resource,
        bs_t=args.bs_t,
        mode=args.mode,
        rate=args.rate,
        duration=args.duration,
        seed=args.seed,
        grid=args.grid,
        label=args.label or ("all" if args.experiment == "qpt" else "0H"),
        two_detector=args.two_detector,
    )
    if args.samples is not None:
        kw["samples"] = args.samples
    elif args.experiment == "classical-baseline":
        kw["samples"] = 100_000
    if args.angles is not None:
        kw["angles"] = args.angles
    return ExperimentConfig(**kw)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        table, summary = run_experiment(cfg)
        if args.out:
            write_outputs(args.out, table, summary)
            sys.stdout.write(format_summary(summary))
        else:
            sys.stdout.write(table.dumps())
            sys.stdout.write(format_summary(summary))
    except (CliError, ValueError, OSError, IndexError) as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
