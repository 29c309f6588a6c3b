"""Run every experiment with the default settings and write results to a directory.

    python scripts/reproduce_all.py results/ --seed 1
"""
import argparse
from pathlib import Path

from rspsim.experiments import ExperimentConfig, run_experiment, write_outputs

RUNS = [
    ("sweep-phi1", dict(mode="counts")),
    ("sweep-phi2", dict(mode="counts")),
    ("sweep-mixture", dict(mode="counts")),
    ("qpt", dict(resource="werner-fid:0.945", label="all")),
    ("qpt", dict(resource="ideal", bs_t=0.43, label="all")),
    ("chsh", dict(resource="werner-fid:0.945")),
    ("favg-limit", dict(resource="werner-fid:0.945", samples=10_000)),
    ("classical-baseline", dict(samples=100_000)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for i, (name, kw) in enumerate(RUNS):
        cfg = ExperimentConfig(name, seed=args.seed, **kw)
        table, summary = run_experiment(cfg)
        out, _ = write_outputs(args.outdir / f"{i:02d}_{name}.csv", table, summary)
        brief = ", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}" for k, v in summary.items())
        print(f"{out.name}: {brief}")


if __name__ == "__main__":
    main()
