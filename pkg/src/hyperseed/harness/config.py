"""Experiment configuration: dataclasses, YAML loading, dotted overrides.

A config file has five sections (data, encoder, map, train, run). Every
field can be overridden from the command line with --set section.field=value;
overrides are applied before validation. Validation errors name the full
field path.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields, is_dataclass
from pathlib import Path

import yaml


class ConfigError(ValueError):
    """Invalid configuration; message starts with the field path."""


@dataclass
class DataConfig:
    kind: str = "fcps"               # csv | fcps | corpus
    path: str = ""                   # csv only
    label_column: str = "label"      # csv only
    name: str = "twodiamonds"        # fcps only
    n_points: int = 800              # fcps only
    train_dir: str = ""              # corpus only
    test_dir: str = ""               # corpus only
    train_fraction: float = 0.5      # csv/fcps split


@dataclass
class EncoderConfig:
    q: int = 10
    epsilon_d: float = 0.1
    ngram_n: int = 3


@dataclass
class MapConfig:
    n: int = 100
    m: int = 100
    epsilon_p: float = 0.03
    dtype: str = "float32"


@dataclass
class TrainSection:
    d: int = 1000
    iterations: int = 1
    num_seeds: int = 1
    strategy: str = "random_node"    # random_node | corner_cycle | fixed_list
    targets: list = field(default_factory=list)  # fixed_list (i, j) pairs
    renormalize: bool = False


@dataclass
class RunConfig:
    seed: int = 0
    repeats: int = 1
    select: str = "best"             # best | mean


@dataclass
class ExperimentConfig:
    data: DataConfig = field(default_factory=DataConfig)
    encoder: EncoderConfig = field(default_factory=EncoderConfig)
    map: MapConfig = field(default_factory=MapConfig)
    train: TrainSection = field(default_factory=TrainSection)
    run: RunConfig = field(default_factory=RunConfig)

    def to_dict(self) -> dict:
        return asdict(self)


def _coerce(path: str, value, target_type):
    if target_type is bool:
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "false"):
            return value.lower() == "true"
        raise ConfigError(f"{path}: expected true/false, got {value!r}")
    if target_type is int:
        try:
            out = int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{path}: expected int, got {value!r}") from None
        return out
    if target_type is float:
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{path}: expected number, got {value!r}") from None
    if target_type is str:
        return str(value)
    if target_type is list:
        if isinstance(value, list):
            return value
        raise ConfigError(f"{path}: expected list, got {value!r}")
    return value


def _apply_section(section, values: dict, prefix: str):
    known = {f.name: f.type for f in fields(section)}
    typed = {f.name: f for f in fields(section)}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(f"{prefix}.{key}: unknown field")
        current = getattr(section, key)
        target_type = type(current) if not isinstance(current, bool) else bool
        setattr(section, key, _coerce(f"{prefix}.{key}", value, target_type))
    del typed


def config_from_dict(doc: dict) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError("top level: expected a mapping of sections")
    cfg = ExperimentConfig()
    sections = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    for name, values in doc.items():
        if name not in sections:
            raise ConfigError(f"{name}: unknown section")
        if not isinstance(values, dict):
            raise ConfigError(f"{name}: expected a mapping")
        _apply_section(sections[name], values, name)
    validate_config(cfg)
    return cfg


def load_config(path) -> ExperimentConfig:
    text = Path(path).read_text()
    try:
        doc = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from None
    return config_from_dict(doc)


def _parse_override_value(raw: str):
    # reuse YAML scalar/flow parsing so numbers, bools, and lists work
    try:
        return yaml.safe_load(raw)
    except yaml.YAMLError:
        return raw


def apply_overrides(cfg: ExperimentConfig, overrides: list[str]) -> ExperimentConfig:
    """Apply --set section.field=value strings in order, then revalidate."""
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r}: expected section.field=value")
        dotted, raw = item.split("=", 1)
        parts = dotted.strip().split(".")
        if len(parts) != 2:
            raise ConfigError(f"override {item!r}: expected section.field=value")
        section_name, key = parts
        if not hasattr(cfg, section_name) or not is_dataclass(getattr(cfg, section_name)):
            raise ConfigError(f"{section_name}: unknown section")
        _apply_section(getattr(cfg, section_name),
                       {key: _parse_override_value(raw)}, section_name)
    validate_config(cfg)
    return cfg


def validate_config(cfg: ExperimentConfig) -> None:
    d = cfg.data
    if d.kind not in ("csv", "fcps", "corpus"):
        raise ConfigError(f"data.kind: unknown kind {d.kind!r}")
    if d.kind == "csv" and not d.path:
        raise ConfigError("data.path: required for data.kind=csv")
    if d.kind == "corpus" and (not d.train_dir or not d.test_dir):
        raise ConfigError(
            "data.train_dir/data.test_dir: required for data.kind=corpus")
    if d.kind in ("csv", "fcps") and not 0.0 < d.train_fraction < 1.0:
        raise ConfigError("data.train_fraction: must be in (0, 1)")
    if d.kind == "fcps" and d.n_points < 10:
        raise ConfigError("data.n_points: too few points")
    e = cfg.encoder
    if e.q < 2:
        raise ConfigError("encoder.q: must be >= 2")
    if e.epsilon_d <= 0.0:
        raise ConfigError("encoder.epsilon_d: must be > 0")
    if e.ngram_n < 1:
        raise ConfigError("encoder.ngram_n: must be >= 1")
    m = cfg.map
    if m.n < 1 or m.m < 1:
        raise ConfigError("map.n/map.m: must be >= 1")
    if m.epsilon_p <= 0.0:
        raise ConfigError("map.epsilon_p: must be > 0")
    if m.dtype not in ("float32", "float64"):
        raise ConfigError(f"map.dtype: unknown dtype {m.dtype!r}")
    t = cfg.train
    if t.d < 1:
        raise ConfigError("train.d: must be >= 1")
    if t.iterations < 1:
        raise ConfigError("train.iterations: must be >= 1")
    if t.num_seeds < 1:
        raise ConfigError("train.num_seeds: must be >= 1")
    if t.strategy not in ("random_node", "corner_cycle", "fixed_list"):
        raise ConfigError(f"train.strategy: unknown strategy {t.strategy!r}")
    if t.strategy == "fixed_list":
        if not t.targets:
            raise ConfigError("train.targets: required for fixed_list strategy")
        for k, pair in enumerate(t.targets):
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(isinstance(v, int) for v in pair)):
                raise ConfigError(
                    f"train.targets[{k}]: expected an [i, j] integer pair")
            i, j = pair
            if not (0 <= i < m.n and 0 <= j < m.m):
                raise ConfigError(
                    f"train.targets[{k}]: ({i}, {j}) outside {m.n}x{m.m} map")
    r = cfg.run
    if r.repeats < 1:
        raise ConfigError("run.repeats: must be >= 1")
    if r.select not in ("best", "mean"):
        raise ConfigError(f"run.select: unknown policy {r.select!r}")
