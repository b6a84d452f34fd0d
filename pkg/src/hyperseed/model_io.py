"""Versioned model persistence.

A model file is a JSON document holding everything needed to reload a
trained state: map parameters with the two base-vector phase arrays (the
node matrix is rebuilt deterministically from them), seed re/im arrays,
the label table, the fitted encoder, a config echo, and the master RNG
seed. Floats are written with full repr precision, so save/load
round-trips bit-exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .encoders import FeatureEncoder, NgramEncoder
from .hdmap import HdMap, map_from_bases
from .labeling import LabeledMap
from .learning import (
    CornerCycleTargets,
    FixedListTargets,
    RandomNodeTargets,
    SeedState,
    TargetStrategy,
)
from .vsa import BundleVector, PhasorVector

MODEL_VERSION = 1


@dataclass(frozen=True)
class ModelBundle:
    """Everything a loaded model needs to project and classify."""

    hd: HdMap
    state: SeedState
    labeled: LabeledMap | None
    encoder: FeatureEncoder | NgramEncoder | None
    config: dict
    master_seed: int | None


def _strategy_doc(strategy: TargetStrategy) -> dict:
    if isinstance(strategy, RandomNodeTargets):
        return {"kind": "random_node"}
    if isinstance(strategy, CornerCycleTargets):
        return {"kind": "corner_cycle"}
    if isinstance(strategy, FixedListTargets):
        return {"kind": "fixed_list",
                "coords": [list(c) for c in strategy.coords]}
    raise TypeError(f"unknown strategy {type(strategy).__name__}")


def strategy_from_doc(doc: dict) -> TargetStrategy:
    kind = doc["kind"]
    if kind == "random_node":
        return RandomNodeTargets()
    if kind == "corner_cycle":
        return CornerCycleTargets()
    if kind == "fixed_list":
        return FixedListTargets(tuple((int(i), int(j)) for i, j in doc["coords"]))
    raise ValueError(f"unknown strategy kind {kind!r}")


def _encoder_doc(encoder) -> dict | None:
    if encoder is None:
        return None
    if isinstance(encoder, FeatureEncoder):
        return {
            "kind": "feature",
            "q": encoder.q,
            "epsilon_d": encoder.epsilon_d,
            "feature_ranges": [list(r) for r in encoder.feature_ranges],
            "base_phases": [b.phases.tolist() for b in encoder.bases],
        }
    if isinstance(encoder, NgramEncoder):
        return {
            "kind": "ngram",
            "alphabet": encoder.alphabet,
            "n": encoder.n,
            "atomic_phases": [a.phases.tolist() for a in encoder.atomics],
        }
    raise TypeError(f"unknown encoder {type(encoder).__name__}")


def _encoder_from_doc(doc: dict | None):
    if doc is None:
        return None
    if doc["kind"] == "feature":
        return FeatureEncoder(
            q=int(doc["q"]),
            epsilon_d=float(doc["epsilon_d"]),
            bases=tuple(PhasorVector(np.array(p)) for p in doc["base_phases"]),
            feature_ranges=tuple((float(lo), float(hi))
                                 for lo, hi in doc["feature_ranges"]),
        )
    if doc["kind"] == "ngram":
        return NgramEncoder(
            alphabet=doc["alphabet"],
            n=int(doc["n"]),
            atomics=tuple(PhasorVector(np.array(p))
                          for p in doc["atomic_phases"]),
        )
    raise ValueError(f"unknown encoder kind {doc['kind']!r}")


def _labeled_doc(lm: LabeledMap | None) -> dict | None:
    if lm is None:
        return None
    return {
        "label_order": list(lm.label_order),
        "labels": [[i, j, lb] for (i, j), lb in lm.labels.items()],
        "votes": [[i, j, lb, count]
                  for (i, j), node in lm.votes.items()
                  for lb, count in node.items()],
    }


def _labeled_from_doc(doc: dict | None) -> LabeledMap | None:
    if doc is None:
        return None
    votes: dict[tuple[int, int], dict] = {}
    for i, j, lb, count in doc["votes"]:
        votes.setdefault((int(i), int(j)), {})[lb] = int(count)
    labels = {(int(i), int(j)): lb for i, j, lb in doc["labels"]}
    return LabeledMap(votes=votes, labels=labels,
                      label_order=tuple(doc["label_order"]))


def save_model(path, hd: HdMap, state: SeedState,
               labeled: LabeledMap | None = None, encoder=None,
               config: dict | None = None,
               master_seed: int | None = None) -> None:
    doc = {
        "version": MODEL_VERSION,
        "d": hd.d,
        "map": {
            "n": hd.n,
            "m": hd.m,
            "epsilon_p": hd.epsilon_p,
            "dtype": np.dtype(hd.dtype).name,
            "x0_phases": hd.x0.phases.tolist(),
            "y0_phases": hd.y0.phases.tolist(),
        },
        "seeds": {
            "re": [s.re.tolist() for s in state.seeds],
            "im": [s.im.tolist() for s in state.seeds],
            "cursor": state.cursor,
            "updates_done": state.updates_done,
            "renormalize_flag": state.renormalize_flag,
        },
        "labeling": _labeled_doc(labeled),
        "encoder": _encoder_doc(encoder),
        "config": config or {},
        "master_seed": master_seed,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_model(path) -> ModelBundle:
    with open(path) as fh:
        doc = json.load(fh)
    version = doc.get("version")
    if version != MODEL_VERSION:
        raise ValueError(f"unsupported model version {version!r}")
    m = doc["map"]
    hd = map_from_bases(
        n=int(m["n"]), m=int(m["m"]), epsilon_p=float(m["epsilon_p"]),
        x0=PhasorVector(np.array(m["x0_phases"])),
        y0=PhasorVector(np.array(m["y0_phases"])),
        dtype=np.dtype(m["dtype"]),
    )
    s = doc["seeds"]
    seeds = tuple(BundleVector(re=np.array(re), im=np.array(im))
                  for re, im in zip(s["re"], s["im"]))
    state = SeedState(seeds=seeds, cursor=int(s["cursor"]),
                      updates_done=int(s["updates_done"]),
                      renormalize_flag=bool(s["renormalize_flag"]))
    return ModelBundle(
        hd=hd,
        state=state,
        labeled=_labeled_from_doc(doc.get("labeling")),
        encoder=_encoder_from_doc(doc.get("encoder")),
        config=doc.get("config", {}),
        master_seed=doc.get("master_seed"),
    )
