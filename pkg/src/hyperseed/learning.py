"""Seed-vector learning: projection by unbinding, weakest-match search,
the additive update rule, and the iterative training loop.

The learned state is nothing but N accumulating bundle vectors ("seeds").
A data vector is placed on the map by unbinding it from a seed and finding
the best matching node; training repeatedly picks the datum whose best
match is currently weakest and binds it to a strategy-chosen target node,
adding that pair into the seed due for update (round-robin over seeds).

There are no per-node weights, no neighborhood function, and no learning
rate; the map is immutable and all plasticity lives in the seeds.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .hdmap import BmvResult, HdMap, best_nodes
from .vsa import (
    BundleVector,
    DimensionError,
    PhasorVector,
    bind,
    normalize,
    random_phasor,
)

_DATA_BLOCK_ROWS = 256

# Called after each update with (step, data_index, target_coords, state).
StepCallback = Callable[[int, int, tuple[int, int], "SeedState"], None]


@dataclass(frozen=True)
class SeedState:
    """N seed bundles plus the round-robin cursor; the entire learned state."""

    seeds: tuple[BundleVector, ...]
    cursor: int
    updates_done: int
    renormalize_flag: bool

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("at least one seed required")
        d = self.seeds[0].d
        if any(s.d != d for s in self.seeds):
            raise DimensionError("seeds must share dimensionality")
        if not 0 <= self.cursor < len(self.seeds):
            raise ValueError("cursor out of range")

    @property
    def num_seeds(self) -> int:
        return len(self.seeds)

    @property
    def d(self) -> int:
        return self.seeds[0].d


@dataclass(frozen=True)
class RandomNodeTargets:
    """Target node drawn uniformly over all n*m nodes, with replacement.

    Draws come from `rng` if given, else from the generator passed by the
    caller (the training stream), one draw per update.
    """

    rng: np.random.Generator | None = None

    def target_for(self, step: int, hd: HdMap,
                   rng: np.random.Generator) -> tuple[int, int]:
        gen = self.rng if self.rng is not None else rng
        return hd.coords_of(int(gen.integers(hd.num_nodes)))


@dataclass(frozen=True)
class CornerCycleTargets:
    """Cycle over the four map corners: (0,0), (n-1,0), (n-1,m-1), (0,m-1)."""

    def target_for(self, step: int, hd: HdMap,
                   rng: np.random.Generator) -> tuple[int, int]:
        corners = ((0, 0), (hd.n - 1, 0), (hd.n - 1, hd.m - 1), (0, hd.m - 1))
        return corners[step % 4]


@dataclass(frozen=True)
class FixedListTargets:
    """Explicit target list, cycled if there are more updates than entries."""

    coords: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.coords:
            raise ValueError("target list must be non-empty")

    def target_for(self, step: int, hd: HdMap,
                   rng: np.random.Generator) -> tuple[int, int]:
        i, j = self.coords[step % len(self.coords)]
        hd.flat_index(i, j)
        return (i, j)


TargetStrategy = RandomNodeTargets | CornerCycleTargets | FixedListTargets


@dataclass(frozen=True)
class TrainConfig:
    iterations: int
    num_seeds: int = 1
    strategy: TargetStrategy = field(default_factory=RandomNodeTargets)
    renormalize: bool = False

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.num_seeds < 1:
            raise ValueError("num_seeds must be >= 1")


def init_seeds(num_seeds: int, d: int, rng: np.random.Generator,
               renormalize: bool = False) -> SeedState:
    """N independent random unit-magnitude seeds, cursor at 0."""
    if num_seeds < 1:
        raise ValueError("num_seeds must be >= 1")
    seeds = []
    for _ in range(num_seeds):
        p = random_phasor(d, rng).phases
        seeds.append(BundleVector(re=np.cos(p), im=np.sin(p)))
    return SeedState(seeds=tuple(seeds), cursor=0, updates_done=0,
                     renormalize_flag=renormalize)


def _projected_re(seed: BundleVector, cos_data: np.ndarray,
                  sin_data: np.ndarray, dtype) -> np.ndarray:
    """Real part of unbind(data, seed) for a block of data rows.

    unbind rotates each seed component by the conjugate data phasor, so
    Re = cos(theta)*re + sin(theta)*im per component.
    """
    re = seed.re.astype(dtype, copy=False)
    im = seed.im.astype(dtype, copy=False)
    return cos_data * re[None, :] + sin_data * im[None, :]


def project_dataset(state: SeedState, dataset: list[PhasorVector],
                    hd: HdMap) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Project every data vector; max similarity across seeds per datum.

    Returns (flat node indices, similarities, winning seed indices), one
    entry per dataset element. Seed ties resolve to the lowest seed index.
    """
    if not dataset:
        raise ValueError("empty dataset")
    if state.d != hd.d or any(v.d != hd.d for v in dataset):
        raise DimensionError("data, seeds, and map must share dimensionality")
    total = len(dataset)
    idx = np.empty(total, dtype=np.int64)
    sim = np.full(total, -np.inf, dtype=np.float64)
    seed_idx = np.zeros(total, dtype=np.int64)
    for start in range(0, total, _DATA_BLOCK_ROWS):
        stop = min(start + _DATA_BLOCK_ROWS, total)
        phases = np.stack([v.phases for v in dataset[start:stop]])
        cos_d = np.cos(phases).astype(hd.dtype, copy=False)
        sin_d = np.sin(phases).astype(hd.dtype, copy=False)
        for k, seed in enumerate(state.seeds):
            block_idx, block_sim = best_nodes(
                hd, _projected_re(seed, cos_d, sin_d, hd.dtype))
            better = block_sim > sim[start:stop]
            idx[start:stop][better] = block_idx[better]
            seed_idx[start:stop][better] = k
            sim[start:stop][better] = block_sim[better]
    return idx, sim, seed_idx


def project(state: SeedState, data: PhasorVector,
            hd: HdMap) -> tuple[BmvResult, int]:
    """Best matching node for one datum, searched through every seed."""
    idx, sim, seed_idx = project_dataset(state, [data], hd)
    bmv = BmvResult(coords=hd.coords_of(idx[0]), similarity=float(sim[0]))
    return bmv, int(seed_idx[0])


def wms_pass(state: SeedState, dataset: list[PhasorVector], hd: HdMap) -> int:
    """Index of the datum with the weakest best-match similarity.

    Ties resolve to the lowest dataset index.
    """
    _, sim, _ = project_dataset(state, dataset, hd)
    return int(np.argmin(sim))


def update_seed(state: SeedState, data: PhasorVector,
                target: PhasorVector) -> SeedState:
    """Add bind(data, target) into the seed at the cursor, advance cursor."""
    if data.d != state.d or target.d != state.d:
        raise DimensionError("data and target must match seed dimensionality")
    pair = bind(data, target)
    seed = state.seeds[state.cursor]
    re = seed.re + np.cos(pair.phases)
    im = seed.im + np.sin(pair.phases)
    if state.renormalize_flag:
        p = normalize(BundleVector(re=re, im=im)).phases
        re, im = np.cos(p), np.sin(p)
    seeds = list(state.seeds)
    seeds[state.cursor] = BundleVector(re=re, im=im)
    return replace(state, seeds=tuple(seeds),
                   cursor=(state.cursor + 1) % state.num_seeds,
                   updates_done=state.updates_done + 1)


def train(dataset: list[PhasorVector], hd: HdMap, cfg: TrainConfig,
          rng: np.random.Generator,
          on_step: StepCallback | None = None) -> SeedState:
    """Run the full loop: exactly I updates, I-1 weakest-match passes.

    The first update uses dataset index 0; every later update uses the
    datum picked by a full weakest-match pass after the previous update.
    Draw order from `rng`: seed initialization first, then one draw per
    update for a RandomNode strategy without its own generator.
    """
    if not dataset:
        raise ValueError("empty dataset")
    if any(v.d != hd.d for v in dataset):
        raise DimensionError("dataset dimensionality must match map")
    state = init_seeds(cfg.num_seeds, hd.d, rng, cfg.renormalize)
    datum_idx = 0
    for step in range(cfg.iterations):
        target = cfg.strategy.target_for(step, hd, rng)
        state = update_seed(state, dataset[datum_idx], hd.node(*target))
        if on_step is not None:
            on_step(step, datum_idx, target, state)
        if step < cfg.iterations - 1:
            datum_idx = wms_pass(state, dataset, hd)
    return state
