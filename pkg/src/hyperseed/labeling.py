"""Node labeling from a frozen training pass, and classification against
the labeled nodes.

Labeling projects every training sample once (no seed updates), tallies
per-node label votes, and assigns each visited node its majority label.
Classification projects a query and searches only the labeled nodes, so a
prediction is always a label seen in training.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .hdmap import HdMap
from .learning import SeedState, project_dataset
from .vsa import DimensionError, PhasorVector, UndefinedSimilarityError

_QUERY_BLOCK_ROWS = 256


@dataclass(frozen=True)
class LabeledMap:
    """Vote tallies and winning labels for the nodes visited in labeling.

    `label_order` fixes label ordinals by first appearance in the training
    data; vote ties resolve to the lowest ordinal.
    """

    votes: dict[tuple[int, int], dict[object, int]]
    labels: dict[tuple[int, int], object]
    label_order: tuple

    @property
    def labeled_coords(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.labels.keys())


def label_map(state: SeedState, hd: HdMap,
              training: list[tuple[PhasorVector, object]]) -> LabeledMap:
    """One projection pass over labeled training data; majority vote per node."""
    if not training:
        raise ValueError("empty training set")
    vectors = [v for v, _ in training]
    idx, _, _ = project_dataset(state, vectors, hd)
    label_order = []
    ordinal: dict = {}
    votes: dict[tuple[int, int], dict] = {}
    for flat, (_, label) in zip(idx, training):
        if label not in ordinal:
            ordinal[label] = len(label_order)
            label_order.append(label)
        node_votes = votes.setdefault(hd.coords_of(flat), {})
        node_votes[label] = node_votes.get(label, 0) + 1
    labels = {
        coords: min(node_votes, key=lambda lb: (-node_votes[lb], ordinal[lb]))
        for coords, node_votes in votes.items()
    }
    return LabeledMap(votes=votes, labels=labels, label_order=tuple(label_order))


def _labeled_node_re(hd: HdMap, lm: LabeledMap) -> tuple[np.ndarray, list]:
    coords = list(lm.labels.keys())
    flat = np.array([hd.flat_index(i, j) for i, j in coords], dtype=np.int64)
    return hd.node_re[flat], coords


def classify_batch(state: SeedState, hd: HdMap, lm: LabeledMap,
                   queries: list[PhasorVector]) -> list[tuple[object, tuple[int, int], float]]:
    """Best (seed, labeled node) match per query: (label, coords, similarity).

    Ties resolve to the lowest seed index, then the labeled node listed
    first in the labeling pass.
    """
    if not lm.labels:
        raise ValueError("no labeled nodes")
    if not queries:
        return []
    if state.d != hd.d or any(q.d != hd.d for q in queries):
        raise DimensionError("queries, seeds, and map must share dimensionality")
    node_re, coords = _labeled_node_re(hd, lm)
    node_re = node_re.astype(hd.dtype, copy=False)
    node_norms = np.linalg.norm(node_re.astype(np.float64, copy=False), axis=1)
    results: list[tuple[object, tuple[int, int], float]] = []
    for start in range(0, len(queries), _QUERY_BLOCK_ROWS):
        block = queries[start:start + _QUERY_BLOCK_ROWS]
        phases = np.stack([q.phases for q in block])
        cos_d = np.cos(phases).astype(hd.dtype, copy=False)
        sin_d = np.sin(phases).astype(hd.dtype, copy=False)
        best_sim = np.full(len(block), -np.inf)
        best_node = np.zeros(len(block), dtype=np.int64)
        for seed in state.seeds:
            re = seed.re.astype(hd.dtype, copy=False)
            im = seed.im.astype(hd.dtype, copy=False)
            proj = cos_d * re[None, :] + sin_d * im[None, :]
            norms = np.linalg.norm(proj.astype(np.float64, copy=False), axis=1)
            if np.any(norms == 0.0):
                raise UndefinedSimilarityError(
                    "zero-norm projection; similarity undefined")
            scores = (proj @ node_re.T).astype(np.float64)
            scores /= node_norms[None, :]
            scores /= norms[:, None]
            cand = np.argmax(scores, axis=1)
            cand_sim = scores[np.arange(len(block)), cand]
            better = cand_sim > best_sim
            best_node[better] = cand[better]
            best_sim[better] = cand_sim[better]
        for k in range(len(block)):
            c = coords[best_node[k]]
            results.append((lm.labels[c], c, float(best_sim[k])))
    return results


def classify(state: SeedState, hd: HdMap, lm: LabeledMap,
             query: PhasorVector) -> tuple[object, tuple[int, int], float]:
    """Label of the closest labeled node to the unbound query."""
    return classify_batch(state, hd, lm, [query])[0]


def export_projection(state: SeedState, hd: HdMap, lm: LabeledMap,
                      samples: list[tuple[PhasorVector, object]]) -> list[dict]:
    """Rows for plotting: sample index, landing node, true and predicted label.

    Landing coordinates come from the full-map projection; the predicted
    label from classification over labeled nodes.
    """
    if not samples:
        return []
    vectors = [v for v, _ in samples]
    idx, sim, _ = project_dataset(state, vectors, hd)
    predicted = classify_batch(state, hd, lm, vectors)
    rows = []
    for k, (_, true_label) in enumerate(samples):
        i, j = hd.coords_of(idx[k])
        rows.append({
            "sample": k,
            "i": i,
            "j": j,
            "true_label": true_label,
            "predicted_label": predicted[k][0],
            "similarity": float(sim[k]),
        })
    return rows


PROJECTION_HEADER = ["sample", "i", "j", "true_label", "predicted_label",
                     "similarity"]


def write_projection_csv(rows: list[dict], path) -> None:
    """CSV with the fixed header sample,i,j,true_label,predicted_label,similarity."""
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=PROJECTION_HEADER)
        writer.writeheader()
        for row in rows:
            out = dict(row)
            out["similarity"] = repr(float(out["similarity"]))
            writer.writerow(out)
