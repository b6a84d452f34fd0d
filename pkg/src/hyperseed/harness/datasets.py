"""Tabular datasets: CSV loading, synthetic cluster generators, splitting.

The generators stand in for six classic clustering benchmark shapes when
the original CSV files are not available. Each returns labeled 2-D or 3-D
point clouds reproducing the qualitative structure the shape is known
for (documented per generator); they are not the original point sets.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TabularDataset:
    samples: np.ndarray   # (num_samples, K) float
    labels: list          # one label per sample
    name: str

    def __post_init__(self):
        if self.samples.ndim != 2:
            raise ValueError("samples must be 2-D")
        if len(self.labels) != self.samples.shape[0]:
            raise ValueError("one label per sample required")

    @property
    def num_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def num_features(self) -> int:
        return self.samples.shape[1]


def load_csv_dataset(path, label_column: str = "label",
                     name: str | None = None) -> TabularDataset:
    """Numeric CSV with a header row; one column holds the class label.

    Malformed input is rejected with the 1-based row number.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        if label_column not in header:
            raise ValueError(f"{path}: no column named {label_column!r}")
        label_idx = header.index(label_column)
        feature_idx = [k for k in range(len(header)) if k != label_idx]
        samples, labels = [], []
        for row_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(
                    f"{path}: row {row_no}: expected {len(header)} cells, "
                    f"got {len(row)}")
            try:
                samples.append([float(row[k]) for k in feature_idx])
            except ValueError:
                raise ValueError(
                    f"{path}: row {row_no}: non-numeric feature cell") from None
            labels.append(row[label_idx])
    if not samples:
        raise ValueError(f"{path}: no data rows")
    return TabularDataset(samples=np.array(samples, dtype=np.float64),
                          labels=labels,
                          name=name or str(path))


def _fill_diamond(count: int, center, rng: np.random.Generator) -> np.ndarray:
    # rejection-sample the unit L1 ball, then shift
    out = np.empty((0, 2))
    while len(out) < count:
        cand = rng.uniform(-1.0, 1.0, size=(count * 2, 2))
        keep = np.abs(cand).sum(axis=1) <= 1.0
        out = np.vstack([out, cand[keep]])
    return out[:count] + np.asarray(center)


def _sphere_directions(count: int, dim: int,
                       rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=(count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def generate_fcps_like(name: str, n_points: int,
                       rng: np.random.Generator) -> TabularDataset:
    """Synthetic stand-ins for the six benchmark shapes.

    atom: dense core ball inside a thin spherical shell (2 classes, 3-D);
    radius distributions of the classes are disjoint.
    chainlink: two interlocked unit-radius rings in orthogonal planes
    (2 classes, 3-D), not linearly separable.
    engytime: two overlapping elongated Gaussians (2 classes, 2-D);
    class boundaries overlap, so the best achievable accuracy is < 1.
    hepta: seven compact Gaussian blobs, one central (7 classes, 3-D).
    twodiamonds: two axis-aligned diamonds almost touching at a corner
    (2 classes, 2-D), separable by the sign of x.
    lsun3d: an L-shaped slab plus three compact spheres (4 classes, 3-D).
    """
    gen = _GENERATORS.get(name)
    if gen is None:
        raise ValueError(
            f"unknown dataset {name!r}; choose from {sorted(_GENERATORS)}")
    samples, labels = gen(n_points, rng)
    return TabularDataset(samples=samples, labels=labels, name=name)


def _gen_atom(n: int, rng) -> tuple[np.ndarray, list]:
    half = n // 2
    core = rng.normal(0.0, 0.3, size=(half, 3))
    radii = rng.normal(2.0, 0.08, size=(n - half, 1))
    shell = _sphere_directions(n - half, 3, rng) * radii
    return np.vstack([core, shell]), [0] * half + [1] * (n - half)


def _gen_chainlink(n: int, rng) -> tuple[np.ndarray, list]:
    half = n // 2
    t = rng.uniform(0.0, 2.0 * np.pi, size=half)
    ring_a = np.column_stack([np.cos(t), np.sin(t), np.zeros(half)])
    s = rng.uniform(0.0, 2.0 * np.pi, size=n - half)
    ring_b = np.column_stack([1.0 + np.cos(s), np.zeros(n - half), np.sin(s)])
    pts = np.vstack([ring_a, ring_b]) + rng.normal(0.0, 0.05, size=(n, 3))
    return pts, [0] * half + [1] * (n - half)


def _gen_engytime(n: int, rng) -> tuple[np.ndarray, list]:
    half = n // 2
    a = rng.normal([0.0, 0.0], [1.0, 2.0], size=(half, 2))
    b = rng.normal([3.4, 0.0], [1.0, 2.0], size=(n - half, 2))
    return np.vstack([a, b]), [0] * half + [1] * (n - half)


def _gen_hepta(n: int, rng) -> tuple[np.ndarray, list]:
    centers = np.array([
        [0.0, 0.0, 0.0],
        [2.5, 0.0, 0.0], [-2.5, 0.0, 0.0],
        [0.0, 2.5, 0.0], [0.0, -2.5, 0.0],
        [0.0, 0.0, 2.5], [0.0, 0.0, -2.5],
    ])
    per = [n // 7 + (1 if c < n % 7 else 0) for c in range(7)]
    pts = [rng.normal(ctr, 0.15, size=(k, 3)) for k, ctr in zip(per, centers)]
    labels = [c for c, k in enumerate(per) for _ in range(k)]
    return np.vstack(pts), labels


def _gen_twodiamonds(n: int, rng) -> tuple[np.ndarray, list]:
    half = n // 2
    left = _fill_diamond(half, [-1.05, 0.0], rng)
    right = _fill_diamond(n - half, [1.05, 0.0], rng)
    return np.vstack([left, right]), [0] * half + [1] * (n - half)


def _gen_lsun3d(n: int, rng) -> tuple[np.ndarray, list]:
    quarter = n // 4
    leg_x = rng.uniform([0.0, 0.0, 0.0], [2.0, 0.3, 0.3],
                        size=(quarter // 2, 3))
    leg_y = rng.uniform([0.0, 0.0, 0.0], [0.3, 2.0, 0.3],
                        size=(quarter - quarter // 2, 3))
    spheres = [rng.normal(ctr, 0.15, size=(k, 3)) for ctr, k in (
        ([3.0, 3.0, 0.2], quarter),
        ([3.0, 0.0, 2.0], quarter),
        ([0.0, 3.0, 2.0], n - 4 * quarter + quarter),
    )]
    pts = np.vstack([leg_x, leg_y] + spheres)
    labels = ([0] * quarter + [1] * quarter + [2] * quarter
              + [3] * (n - 3 * quarter))
    return pts, labels


_GENERATORS = {
    "atom": _gen_atom,
    "chainlink": _gen_chainlink,
    "engytime": _gen_engytime,
    "hepta": _gen_hepta,
    "twodiamonds": _gen_twodiamonds,
    "lsun3d": _gen_lsun3d,
}

FCPS_NAMES = tuple(sorted(_GENERATORS))


def stratified_split(labels, train_fraction: float,
                     rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Per-class shuffled split; returns sorted (train, test) index arrays.

    The per-class training count is round(train_fraction * class size).
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be in (0, 1)")
    labels = list(labels)
    order: dict = {}
    for lb in labels:
        order.setdefault(lb, len(order))
    train, test = [], []
    for cls in sorted(set(labels), key=order.get):
        idx = np.flatnonzero([lb == cls for lb in labels])
        idx = idx[rng.permutation(len(idx))]
        k = int(round(train_fraction * len(idx)))
        train.extend(idx[:k])
        test.extend(idx[k:])
    return np.sort(np.array(train, dtype=np.int64)), \
        np.sort(np.array(test, dtype=np.int64))
