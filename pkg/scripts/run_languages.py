#!/usr/bin/env python3
"""Language identification: 5-language run, then a 21-language comparison
of one seed vector versus ten at the same total update count.

Generates the synthetic corpora on first use.
"""

import copy
import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
os.chdir(ROOT)

from hyperseed.harness.config import load_config
from hyperseed.harness.corpus import generate_language_corpus, write_corpus
from hyperseed.harness.experiment import run_experiment, write_report
from hyperseed.vsa import make_rng

# Corpus generation seed is fixed so the text on disk never depends on the
# run seed; changing run.seed reshuffles training, not the data itself.
CORPUS_SEED = 11


def ensure_corpus(train_dir: str, test_dir: str, languages: int,
                  chunks: int, sentences: int, seed: int) -> None:
    if os.path.isdir(train_dir) and os.path.isdir(test_dir):
        return
    corp = generate_language_corpus(languages, chunks, sentences,
                                    make_rng(seed))
    write_corpus(corp, train_dir, test_dir)
    print(f"generated {languages}-language corpus under {train_dir}")


def main() -> None:
    os.makedirs("results", exist_ok=True)

    cfg5 = load_config("configs/languages5.yaml")
    ensure_corpus(cfg5.data.train_dir, cfg5.data.test_dir,
                  languages=5, chunks=200, sentences=100, seed=CORPUS_SEED)
    report, _ = run_experiment(cfg5, keep_result=False)
    print(f"5 languages, 1 seed vector, I={cfg5.train.iterations}: "
          f"{report.accuracy:.4f}")
    write_report(report, "results/languages5.json")

    cfg21 = load_config("configs/languages21.yaml")
    ensure_corpus(cfg21.data.train_dir, cfg21.data.test_dir,
                  languages=21, chunks=40, sentences=15, seed=CORPUS_SEED)
    for num_seeds in (1, 10):
        cfg = copy.deepcopy(cfg21)
        cfg.train.num_seeds = num_seeds
        report, _ = run_experiment(cfg, keep_result=False)
        print(f"21 languages, {num_seeds} seed vector(s), "
              f"I={cfg.train.iterations}: {report.accuracy:.4f}")
        write_report(report, f"results/languages21_n{num_seeds}.json")


if __name__ == "__main__":
    main()
