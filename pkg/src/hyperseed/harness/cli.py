"""Command-line interface.

Subcommands: train, eval, sweep, landscape, project, gen-data, model.
Every config field can be overridden with repeatable
--set section.field=value flags; overrides win over the config file.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from .. import encoders, labeling
from ..hdmap import build_map, similarity_landscape, write_landscape_csv
from ..model_io import load_model, save_model
from ..vsa import make_rng
from . import experiment
from .config import ConfigError, ExperimentConfig, apply_overrides, load_config
from .corpus import generate_language_corpus, load_language_corpus, write_corpus
from .datasets import FCPS_NAMES, generate_fcps_like, load_csv_dataset, \
    stratified_split
from .experiment import run_experiment, score, write_report, write_sweep_csv
from .plotting import render_projection


def _load_cfg(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    return apply_overrides(cfg, args.set or [])


def _add_config_args(parser, required: bool = True):
    parser.add_argument("--config", required=required,
                        help="YAML config file")
    parser.add_argument("--set", action="append", metavar="SECTION.FIELD=VALUE",
                        help="override a config field (repeatable)")


def _print_report(report) -> None:
    print(f"accuracy: {report.accuracy:.4f}  (select={report.select}, "
          f"repeats={len(report.repeat_accuracies)}, "
          f"seed={report.master_seed})")
    print("repeat accuracies:",
          " ".join(f"{a:.4f}" for a in report.repeat_accuracies))
    for cls in report.label_order:
        print(f"  class {cls}: {report.per_class[cls]:.4f}")


def _cmd_train(args) -> int:
    cfg = _load_cfg(args)
    report, best = run_experiment(cfg)
    _print_report(report)
    if args.report:
        write_report(report, args.report)
        print(f"report written to {args.report}")
    if args.model_out:
        save_model(args.model_out, best.hd, best.state, labeled=best.labeled,
                   encoder=best.encoder, config=cfg.to_dict(),
                   master_seed=cfg.run.seed)
        print(f"model written to {args.model_out}")
    return 0


def _eval_pairs(cfg: ExperimentConfig, bundle):
    """Test-split pairs encoded with the stored encoder.

    Data generation and splitting use the first child stream of the
    master seed, matching the first repeat of a training run.
    """
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(cfg.run.seed).spawn(1)[0]))
    if cfg.data.kind == "corpus":
        corp = load_language_corpus(cfg.data.train_dir, cfg.data.test_dir,
                                    min_symbols=bundle.encoder.n)
        vectors = encoders.encode_ngram_corpus(bundle.encoder,
                                               corp.test_sentences)
        return list(zip(vectors, corp.test_labels))
    if cfg.data.kind == "csv":
        ds = load_csv_dataset(cfg.data.path, cfg.data.label_column)
    else:
        ds = generate_fcps_like(cfg.data.name, cfg.data.n_points, rng)
    _, te = stratified_split(ds.labels, cfg.data.train_fraction, rng)
    return [(encoders.encode_features(bundle.encoder, ds.samples[k]),
             ds.labels[k]) for k in te]


def _cmd_eval(args) -> int:
    cfg = _load_cfg(args)
    bundle = load_model(args.model)
    if bundle.labeled is None:
        raise ConfigError("model: no label table; cannot evaluate")
    pairs = _eval_pairs(cfg, bundle)
    predictions = labeling.classify_batch(bundle.state, bundle.hd,
                                          bundle.labeled,
                                          [v for v, _ in pairs])
    truth = [lb for _, lb in pairs]
    predicted = [p[0] for p in predictions]
    accuracy, per_class, _, label_order = score(truth, predicted)
    print(f"accuracy: {accuracy:.4f}  ({len(pairs)} samples)")
    for cls in label_order:
        print(f"  class {cls}: {per_class[str(cls)]:.4f}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_cfg(args)
    values = args.values.split(",") if args.values else None
    rows = experiment.sweep(cfg, args.axis, values)
    for value, accuracy in rows:
        print(f"{value}: {accuracy:.4f}")
    if args.out:
        write_sweep_csv(rows, args.out)
        print(f"sweep written to {args.out}")
    return 0


def _cmd_landscape(args) -> int:
    cfg = _load_cfg(args)
    try:
        ti, tj = (int(v) for v in args.target.split(","))
    except ValueError:
        raise ConfigError(
            f"--target {args.target!r}: expected i,j integers") from None
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(cfg.run.seed).spawn(1)[0]))
    hd = build_map(cfg.map.n, cfg.map.m, cfg.map.epsilon_p, cfg.train.d, rng,
                   dtype=np.float32 if cfg.map.dtype == "float32" else np.float64)
    grid = similarity_landscape(hd, (ti, tj))
    write_landscape_csv(grid, args.out)
    print(f"landscape written to {args.out}")
    return 0


def _cmd_project(args) -> int:
    cfg = _load_cfg(args)
    bundle = load_model(args.model)
    if bundle.labeled is None:
        raise ConfigError("model: no label table; cannot project")
    pairs = _eval_pairs(cfg, bundle)
    rows = labeling.export_projection(bundle.state, bundle.hd, bundle.labeled,
                                      pairs)
    labeling.write_projection_csv(rows, args.out)
    print(f"projection written to {args.out}")
    if args.plot:
        targets = bundle.config.get("train", {}).get("targets", [])
        render_projection(rows, args.plot, bundle.hd.n, bundle.hd.m,
                          targets=targets)
        print(f"plot written to {args.plot}")
    return 0


def _cmd_gen_data(args) -> int:
    rng = make_rng(args.seed)
    if args.what == "fcps":
        ds = generate_fcps_like(args.name, args.n_points, rng)
        headers = [f"x{k}" for k in range(ds.num_features)] + ["label"]
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(headers)
            for row, label in zip(ds.samples, ds.labels):
                writer.writerow([repr(float(v)) for v in row] + [label])
        print(f"{ds.num_samples} points written to {args.out}")
        return 0
    corp = generate_language_corpus(
        args.languages, args.chunks, args.sentences, rng,
        sentence_symbols=args.sentence_symbols,
        concentration=args.concentration)
    write_corpus(corp, args.train_dir, args.test_dir)
    print(f"{len(corp.train_chunks)} chunks / {len(corp.test_sentences)} "
          f"sentences written to {args.train_dir}, {args.test_dir}")
    return 0


def _cmd_model(args) -> int:
    if args.action == "save":
        cfg = _load_cfg(args)
        report, best = run_experiment(cfg)
        save_model(args.out, best.hd, best.state, labeled=best.labeled,
                   encoder=best.encoder, config=cfg.to_dict(),
                   master_seed=cfg.run.seed)
        _print_report(report)
        print(f"model written to {args.out}")
        return 0
    bundle = load_model(args.model)
    hd, state = bundle.hd, bundle.state
    print(f"map: {hd.n}x{hd.m}, epsilon_p={hd.epsilon_p}, d={hd.d}")
    print(f"seeds: {state.num_seeds} (updates={state.updates_done}, "
          f"cursor={state.cursor}, renormalize={state.renormalize_flag})")
    if bundle.labeled is not None:
        print(f"labeled nodes: {len(bundle.labeled.labels)}; "
              f"labels: {list(bundle.labeled.label_order)}")
    enc = bundle.encoder
    if enc is None:
        print("encoder: none")
    elif isinstance(enc, encoders.FeatureEncoder):
        print(f"encoder: feature (K={enc.num_features}, q={enc.q}, "
              f"epsilon_d={enc.epsilon_d})")
    else:
        print(f"encoder: ngram (n={enc.n}, alphabet size {len(enc.alphabet)})")
    print(f"master seed: {bundle.master_seed}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperseed",
        description="Seed-vector learning on a fixed hypervector map")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="run the repeat protocol, report accuracy")
    _add_config_args(p)
    p.add_argument("--report", help="write the report JSON here")
    p.add_argument("--model-out", help="save the selected repeat's model here")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="evaluate a saved model on a dataset")
    _add_config_args(p)
    p.add_argument("--model", required=True, help="model file from train")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep", help="sweep one axis, one protocol per value")
    _add_config_args(p)
    p.add_argument("--axis", required=True, choices=experiment.SWEEP_AXES)
    p.add_argument("--values",
                   help="comma-separated values (epsilon_q takes q:eps pairs)")
    p.add_argument("--out", help="write value,accuracy CSV here")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("landscape",
                       help="node-to-node similarity grid around a target")
    _add_config_args(p)
    p.add_argument("--target", required=True, metavar="I,J")
    p.add_argument("--out", required=True, help="CSV matrix output")
    p.set_defaults(func=_cmd_landscape)

    p = sub.add_parser("project",
                       help="project the test split through a saved model")
    _add_config_args(p)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True, help="projection CSV output")
    p.add_argument("--plot", help="also render an SVG scatter here")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("gen-data", help="generate synthetic datasets")
    gsub = p.add_subparsers(dest="what", required=True)
    g = gsub.add_parser("fcps", help="labeled point-cloud CSV")
    g.add_argument("--name", required=True, choices=FCPS_NAMES)
    g.add_argument("--n-points", type=int, default=800)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen_data)
    g = gsub.add_parser("corpus", help="synthetic language corpus directories")
    g.add_argument("--languages", type=int, default=5)
    g.add_argument("--chunks", type=int, default=200,
                   help="training chunks per language")
    g.add_argument("--sentences", type=int, default=100,
                   help="test sentences per language")
    g.add_argument("--sentence-symbols", type=int, default=180)
    g.add_argument("--concentration", type=float, default=0.2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--train-dir", required=True)
    g.add_argument("--test-dir", required=True)
    g.set_defaults(func=_cmd_gen_data)

    p = sub.add_parser("model", help="save (train) or load (inspect) a model")
    msub = p.add_subparsers(dest="action", required=True)
    m = msub.add_parser("save", help="train per config and save the model")
    _add_config_args(m)
    m.add_argument("--out", required=True)
    m.set_defaults(func=_cmd_model)
    m = msub.add_parser("load", help="load a model and print a summary")
    m.add_argument("--model", required=True)
    m.set_defaults(func=_cmd_model)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
