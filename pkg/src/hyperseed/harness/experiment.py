"""Experiment driver: one seeded run end to end, repeat protocols, sweeps,
and deterministic report serialization.

Per-repeat RNG streams are spawned from the master seed with
numpy.random.SeedSequence(master).spawn(repeats). Within a repeat, draws
happen in a fixed order: dataset generation (synthetic tabular only),
train/test split (tabular only), encoder bases, map bases, then seed
initialization and target draws inside training. Reports serialize with
sorted keys and repr-precision floats; wall-clock time is kept in memory
but never written, so rerunning a config with the same seed reproduces
report files byte for byte.
"""

from __future__ import annotations

import copy
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .. import encoders, labeling, learning
from ..hdmap import HdMap, build_map
from ..learning import SeedState, TrainConfig
from .config import ConfigError, ExperimentConfig
from .corpus import load_language_corpus
from .datasets import generate_fcps_like, load_csv_dataset, stratified_split

SWEEP_AXES = ("iterations", "dimensionality", "num_seeds", "epsilon_q")

DEFAULT_SWEEP_VALUES = {
    "iterations": ["1", "2", "3", "4", "6", "8"],
    "dimensionality": ["400", "500", "1000", "2000", "5000"],
    "num_seeds": ["1", "2", "5", "10"],
    "epsilon_q": ["5:0.05", "5:0.1", "5:0.2", "10:0.05", "10:0.1", "10:0.2",
                  "20:0.05", "20:0.1", "20:0.2"],
}


@dataclass
class SingleRunResult:
    accuracy: float
    per_class: dict
    confusion: dict
    label_order: list
    trace: list                      # per update: step, data_index, target
    hd: HdMap
    state: SeedState
    labeled: labeling.LabeledMap
    encoder: object
    test_pairs: list                 # (vector, true label) of the test split


@dataclass
class ExperimentReport:
    accuracy: float
    select: str
    repeat_accuracies: list
    selected_repeat: int
    per_class: dict
    confusion: dict
    label_order: list
    targets: list
    config: dict
    master_seed: int
    wall_clock_seconds: float = field(default=0.0)


def strategy_from_section(train) -> learning.TargetStrategy:
    if train.strategy == "random_node":
        return learning.RandomNodeTargets()
    if train.strategy == "corner_cycle":
        return learning.CornerCycleTargets()
    return learning.FixedListTargets(tuple((i, j) for i, j in train.targets))


def _map_dtype(name: str):
    return np.float32 if name == "float32" else np.float64


def _tabular_pairs(cfg: ExperimentConfig, rng: np.random.Generator):
    data = cfg.data
    if data.kind == "csv":
        ds = load_csv_dataset(data.path, data.label_column)
    else:
        ds = generate_fcps_like(data.name, data.n_points, rng)
    tr, te = stratified_split(ds.labels, data.train_fraction, rng)
    enc = encoders.fit_feature_encoder(
        ds.samples[tr], cfg.encoder.q, cfg.encoder.epsilon_d,
        cfg.train.d, rng)
    train_pairs = [(encoders.encode_features(enc, ds.samples[k]), ds.labels[k])
                   for k in tr]
    test_pairs = [(encoders.encode_features(enc, ds.samples[k]), ds.labels[k])
                  for k in te]
    return enc, train_pairs, test_pairs


def _corpus_pairs(cfg: ExperimentConfig, rng: np.random.Generator):
    data = cfg.data
    corp = load_language_corpus(data.train_dir, data.test_dir,
                                min_symbols=cfg.encoder.ngram_n)
    enc = encoders.fit_ngram_encoder(cfg.encoder.ngram_n, cfg.train.d, rng)
    train_vec = encoders.encode_ngram_corpus(enc, corp.train_chunks)
    test_vec = encoders.encode_ngram_corpus(enc, corp.test_sentences)
    return enc, list(zip(train_vec, corp.train_labels)), \
        list(zip(test_vec, corp.test_labels))


def run_single(cfg: ExperimentConfig,
               seed_seq: np.random.SeedSequence) -> SingleRunResult:
    """One full pipeline pass under a single RNG stream."""
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    if cfg.data.kind == "corpus":
        enc, train_pairs, test_pairs = _corpus_pairs(cfg, rng)
    else:
        enc, train_pairs, test_pairs = _tabular_pairs(cfg, rng)
    if not train_pairs:
        raise ConfigError("data: empty training split")
    hd = build_map(cfg.map.n, cfg.map.m, cfg.map.epsilon_p, cfg.train.d, rng,
                   dtype=_map_dtype(cfg.map.dtype))
    train_cfg = TrainConfig(iterations=cfg.train.iterations,
                            num_seeds=cfg.train.num_seeds,
                            strategy=strategy_from_section(cfg.train),
                            renormalize=cfg.train.renormalize)
    trace: list = []

    def record(step, data_index, target, state):
        trace.append({"step": step, "data_index": data_index,
                      "target": [target[0], target[1]]})

    vectors = [v for v, _ in train_pairs]
    state = learning.train(vectors, hd, train_cfg, rng, on_step=record)
    lm = labeling.label_map(state, hd, train_pairs)
    predictions = labeling.classify_batch(state, hd, lm,
                                          [v for v, _ in test_pairs])
    truth = [lb for _, lb in test_pairs]
    predicted = [p[0] for p in predictions]
    accuracy, per_class, confusion, label_order = score(truth, predicted)
    return SingleRunResult(accuracy=accuracy, per_class=per_class,
                           confusion=confusion, label_order=label_order,
                           trace=trace, hd=hd, state=state, labeled=lm,
                           encoder=enc, test_pairs=test_pairs)


def score(truth: list, predicted: list) -> tuple[float, dict, dict, list]:
    """Accuracy, per-class accuracy, and confusion counts (true -> pred)."""
    if len(truth) != len(predicted):
        raise ValueError("prediction/truth length mismatch")
    if not truth:
        raise ValueError("empty evaluation set")
    label_order: list = []
    for lb in truth:
        if lb not in label_order:
            label_order.append(lb)
    correct = sum(1 for t, p in zip(truth, predicted) if t == p)
    per_class = {}
    confusion: dict = {}
    for cls in label_order:
        members = [(t, p) for t, p in zip(truth, predicted) if t == cls]
        per_class[str(cls)] = sum(1 for t, p in members if t == p) / len(members)
        row: dict = {}
        for _, p in members:
            row[str(p)] = row.get(str(p), 0) + 1
        confusion[str(cls)] = dict(sorted(row.items()))
    return correct / len(truth), per_class, confusion, label_order


def run_experiment(cfg: ExperimentConfig,
                   keep_result: bool = True) -> tuple[ExperimentReport, SingleRunResult | None]:
    """Repeat protocol: spawn child streams, run each, select best or mean.

    Returns the report plus the selected repeat's full result (for model
    saving and projection export); pass keep_result=False to drop it.
    """
    started = time.perf_counter()
    children = np.random.SeedSequence(cfg.run.seed).spawn(cfg.run.repeats)
    accuracies: list[float] = []
    best: SingleRunResult | None = None
    best_index = 0
    for r, child in enumerate(children):
        result = run_single(cfg, child)
        accuracies.append(result.accuracy)
        if best is None or result.accuracy > max(accuracies[:-1], default=-1.0):
            best = result
            best_index = r
    selected = max(accuracies) if cfg.run.select == "best" \
        else float(np.mean(accuracies))
    report = ExperimentReport(
        accuracy=selected,
        select=cfg.run.select,
        repeat_accuracies=accuracies,
        selected_repeat=best_index,
        per_class=best.per_class,
        confusion=best.confusion,
        label_order=[str(lb) for lb in best.label_order],
        targets=[t["target"] for t in best.trace],
        config=cfg.to_dict(),
        master_seed=cfg.run.seed,
        wall_clock_seconds=time.perf_counter() - started,
    )
    return report, (best if keep_result else None)


def report_to_json(report: ExperimentReport) -> str:
    """Deterministic serialization; wall-clock is deliberately excluded."""
    doc = {
        "accuracy": report.accuracy,
        "select": report.select,
        "repeat_accuracies": report.repeat_accuracies,
        "selected_repeat": report.selected_repeat,
        "per_class": report.per_class,
        "confusion": report.confusion,
        "label_order": report.label_order,
        "targets": report.targets,
        "config": report.config,
        "master_seed": report.master_seed,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_report(report: ExperimentReport, path) -> None:
    with open(path, "w") as fh:
        fh.write(report_to_json(report))


def _with_axis_value(cfg: ExperimentConfig, axis: str, raw: str) -> ExperimentConfig:
    out = copy.deepcopy(cfg)
    if axis == "iterations":
        out.train.iterations = int(raw)
    elif axis == "dimensionality":
        out.train.d = int(raw)
    elif axis == "num_seeds":
        out.train.num_seeds = int(raw)
    elif axis == "epsilon_q":
        try:
            q_str, eps_str = raw.split(":")
            out.encoder.q = int(q_str)
            out.encoder.epsilon_d = float(eps_str)
        except ValueError:
            raise ConfigError(
                f"sweep value {raw!r}: expected q:epsilon_d") from None
    else:
        raise ConfigError(f"sweep axis {axis!r}: choose from {SWEEP_AXES}")
    return out


def sweep(cfg: ExperimentConfig, axis: str,
          values: list[str] | None = None) -> list[tuple[str, float]]:
    """One full repeat protocol per axis value; rows of (value, accuracy)."""
    if values is None:
        values = DEFAULT_SWEEP_VALUES[axis]
    rows = []
    for raw in values:
        report, _ = run_experiment(_with_axis_value(cfg, axis, raw),
                                   keep_result=False)
        rows.append((raw, report.accuracy))
    return rows


def write_sweep_csv(rows: list[tuple[str, float]], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("value,accuracy\n")
        for value, accuracy in rows:
            fh.write(f"{value},{repr(float(accuracy))}\n")
