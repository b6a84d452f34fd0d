#!/usr/bin/env python3
"""Iris protocol: best-of-10 accuracy, iteration trend, kernel-width sweep.

Writes reports and CSVs under results/.
"""

import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
os.chdir(ROOT)

from hyperseed.harness.config import load_config
from hyperseed.harness.experiment import run_experiment, sweep, \
    write_report, write_sweep_csv
from hyperseed.labeling import export_projection, write_projection_csv
from hyperseed.harness.plotting import render_projection


def main() -> None:
    os.makedirs("results", exist_ok=True)
    cfg = load_config("configs/iris.yaml")

    report, best = run_experiment(cfg)
    print(f"iris best-of-{cfg.run.repeats} @ I={cfg.train.iterations}: "
          f"{report.accuracy:.4f}")
    write_report(report, "results/iris_report.json")

    rows = export_projection(best.state, best.hd, best.labeled,
                             best.test_pairs)
    write_projection_csv(rows, "results/iris_projection.csv")
    render_projection(rows, "results/iris_projection.svg",
                      best.hd.n, best.hd.m, targets=cfg.train.targets,
                      title="iris test split")

    iter_rows = sweep(cfg, "iterations", ["1", "2", "3", "4", "5", "6"])
    write_sweep_csv(iter_rows, "results/iris_iterations.csv")
    for value, accuracy in iter_rows:
        print(f"  I={value}: {accuracy:.4f}")

    eq_rows = sweep(cfg, "epsilon_q")
    write_sweep_csv(eq_rows, "results/iris_epsilon_q.csv")
    print("kernel-width sweep (q:epsilon_d -> accuracy):")
    for value, accuracy in eq_rows:
        print(f"  {value}: {accuracy:.4f}")


if __name__ == "__main__":
    main()
