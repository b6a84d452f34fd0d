"""Fixed FPE-encoded 2D grid of node hypervectors (the associative memory).

Node (i, j) is bind(x0**(eps*i), y0**(eps*j)) for two random base phasors.
The map is built once and never mutated; the only operation against it is
the exhaustive best-matching-vector (BMV) search by cosine similarity of
real parts. Grid coordinates are topology metadata for visualization; the
memory itself is an unordered set of vectors.

The real parts of all nodes are precomputed into one (n*m, d) matrix so a
BMV query is a single matrix-vector product. Node phase vectors are
reconstructed on demand from the bases (bit-identical to the build path).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .vsa import (
    DimensionError,
    Hypervector,
    PhasorVector,
    UndefinedSimilarityError,
    centered_phases,
    random_phasor,
    wrap_phase,
)

_BUILD_BLOCK_ROWS = 256
_QUERY_BLOCK_ROWS = 256


@dataclass(frozen=True)
class BmvResult:
    """Best matching vector: grid coordinates and the achieved cosine."""

    coords: tuple[int, int]
    similarity: float


@dataclass(frozen=True)
class HdMap:
    n: int
    m: int
    epsilon_p: float
    x0: PhasorVector
    y0: PhasorVector
    node_re: np.ndarray      # (n*m, d) real parts, row-major over (i, j)
    node_norms: np.ndarray   # (n*m,) norms of the rows of node_re

    def __post_init__(self):
        self.node_re.setflags(write=False)
        self.node_norms.setflags(write=False)

    @property
    def d(self) -> int:
        return self.x0.d

    @property
    def num_nodes(self) -> int:
        return self.n * self.m

    @property
    def dtype(self) -> np.dtype:
        return self.node_re.dtype

    def flat_index(self, i: int, j: int) -> int:
        if not (0 <= i < self.n and 0 <= j < self.m):
            raise IndexError(f"node ({i}, {j}) outside {self.n}x{self.m} grid")
        return i * self.m + j

    def coords_of(self, flat: int) -> tuple[int, int]:
        return divmod(int(flat), self.m)

    def node_phases(self, i: int, j: int) -> np.ndarray:
        self.flat_index(i, j)
        return _grid_phases(self.x0, self.y0, self.epsilon_p,
                            np.array([i]), np.array([j]))[0]

    def node(self, i: int, j: int) -> PhasorVector:
        return PhasorVector(self.node_phases(i, j))


def _grid_phases(x0: PhasorVector, y0: PhasorVector, eps: float,
                 ii: np.ndarray, jj: np.ndarray) -> np.ndarray:
    """Phases of bind(fpe_power(x0, eps*i), fpe_power(y0, eps*j)) per (i, j) row."""
    cx = centered_phases(x0.phases)
    cy = centered_phases(y0.phases)
    xi = wrap_phase(cx[None, :] * (eps * ii)[:, None])
    yj = wrap_phase(cy[None, :] * (eps * jj)[:, None])
    return wrap_phase(xi + yj)


def build_map(n: int, m: int, epsilon_p: float, d: int,
              rng: np.random.Generator, dtype=np.float64) -> HdMap:
    """Draw the two bases and precompute all n*m node vectors.

    dtype controls the stored real-part matrix (float32 halves memory and
    roughly doubles BMV throughput for large maps; similarities are still
    returned as float64).
    """
    if n < 1 or m < 1:
        raise ValueError("grid sizes must be >= 1")
    if epsilon_p <= 0.0:
        raise ValueError("epsilon_p must be > 0")
    x0 = random_phasor(d, rng)
    y0 = random_phasor(d, rng)
    total = n * m
    ii, jj = np.divmod(np.arange(total), m)
    node_re = np.empty((total, d), dtype=dtype)
    for start in range(0, total, _BUILD_BLOCK_ROWS):
        stop = min(start + _BUILD_BLOCK_ROWS, total)
        phases = _grid_phases(x0, y0, epsilon_p, ii[start:stop], jj[start:stop])
        node_re[start:stop] = np.cos(phases)
    node_norms = np.linalg.norm(node_re.astype(np.float64, copy=False), axis=1)
    return HdMap(n=n, m=m, epsilon_p=epsilon_p, x0=x0, y0=y0,
                 node_re=node_re, node_norms=node_norms)


def map_from_bases(n: int, m: int, epsilon_p: float, x0: PhasorVector,
                   y0: PhasorVector, dtype=np.float64) -> HdMap:
    """Rebuild a map from known bases (model loading); bit-identical nodes."""
    if x0.d != y0.d:
        raise DimensionError("base vectors must share dimensionality")
    total = n * m
    ii, jj = np.divmod(np.arange(total), m)
    node_re = np.empty((total, x0.d), dtype=dtype)
    for start in range(0, total, _BUILD_BLOCK_ROWS):
        stop = min(start + _BUILD_BLOCK_ROWS, total)
        phases = _grid_phases(x0, y0, epsilon_p, ii[start:stop], jj[start:stop])
        node_re[start:stop] = np.cos(phases)
    node_norms = np.linalg.norm(node_re.astype(np.float64, copy=False), axis=1)
    return HdMap(n=n, m=m, epsilon_p=epsilon_p, x0=x0, y0=y0,
                 node_re=node_re, node_norms=node_norms)


def best_nodes(hd: HdMap, re_rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise BMV over a batch of query real parts.

    Returns (flat node indices, cosine similarities). Ties resolve to the
    lowest row-major node index (argmax first occurrence), so a blocked or
    parallel reduction must preserve that order.
    """
    q = np.atleast_2d(np.asarray(re_rows))
    if q.shape[1] != hd.d:
        raise DimensionError(f"query dimensionality {q.shape[1]} != map {hd.d}")
    norms = np.linalg.norm(q.astype(np.float64, copy=False), axis=1)
    if np.any(norms == 0.0):
        raise UndefinedSimilarityError("zero-norm real part; similarity undefined")
    q = q.astype(hd.dtype, copy=False)
    rows = q.shape[0]
    idx = np.empty(rows, dtype=np.int64)
    sim = np.empty(rows, dtype=np.float64)
    for start in range(0, rows, _QUERY_BLOCK_ROWS):
        stop = min(start + _QUERY_BLOCK_ROWS, rows)
        scores = (q[start:stop] @ hd.node_re.T).astype(np.float64)
        scores /= hd.node_norms[None, :]
        scores /= norms[start:stop, None]
        idx[start:stop] = np.argmax(scores, axis=1)
        sim[start:stop] = scores[np.arange(stop - start), idx[start:stop]]
    return idx, sim


def find_bmv(hd: HdMap, query: Hypervector) -> BmvResult:
    """Exhaustive argmax of cosine_real(query, node) over all nodes."""
    idx, sim = best_nodes(hd, query.real()[None, :])
    return BmvResult(coords=hd.coords_of(idx[0]), similarity=float(sim[0]))


def similarity_landscape(hd: HdMap, target: tuple[int, int]) -> np.ndarray:
    """(n, m) grid of cosine similarities between `target`'s node and every node."""
    ti, tj = target
    flat = hd.flat_index(ti, tj)
    t = hd.node_re[flat].astype(np.float64)
    scores = (hd.node_re.astype(np.float64, copy=False) @ t)
    scores /= hd.node_norms * hd.node_norms[flat]
    return scores.reshape(hd.n, hd.m)


def write_landscape_csv(grid: np.ndarray, path) -> None:
    """CSV matrix of similarities: row index i, column index j."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.asarray(grid):
            writer.writerow([repr(float(v)) for v in row])
