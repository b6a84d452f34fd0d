#!/usr/bin/env python3
"""Collapse demonstration: one update with a wide-kernel map absorbs a
narrow-kernel source grid onto a single node.

A 3x3 source grid (scale 0.2, points labeled 1..3 on each axis) is
projected through a seed holding one binding, source (1,2) to the center
node of a 5x5 map built at scale 0.8. All nine source vectors land on
the center; the weakest match sits in the far row of the source grid.
"""

import os
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))
os.chdir(ROOT)

import numpy as np

from hyperseed import hdmap, learning, vsa

D = 10_000
EPS_D = 0.2
EPS_P = 0.8
MASTER = 1


def main() -> None:
    os.makedirs("results", exist_ok=True)
    rng = vsa.make_rng(MASTER)
    hd = hdmap.build_map(5, 5, EPS_P, D, rng)
    bx = vsa.random_phasor(D, rng)
    by = vsa.random_phasor(D, rng)
    coords = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    data = [vsa.bind(vsa.fpe_power(bx, EPS_D * i),
                     vsa.fpe_power(by, EPS_D * j)) for i, j in coords]

    state = learning.init_seeds(1, D, rng)
    state = learning.update_seed(state, data[coords.index((1, 2))],
                                 hd.node(2, 2))

    idx, sim, _ = learning.project_dataset(state, data, hd)
    print("source -> landing node (similarity)")
    for (i, j), flat, s in zip(coords, idx, sim):
        print(f"  ({i},{j}) -> {hd.coords_of(int(flat))}  ({s:.3f})")
    landed = [hd.coords_of(int(k)) for k in idx]
    print(f"collapsed to (2,2): {sum(c == (2, 2) for c in landed)}/9")
    print(f"weakest match: source {coords[int(np.argmin(sim))]}")

    grid = hdmap.similarity_landscape(hd, (2, 2))
    hdmap.write_landscape_csv(grid, "results/collapse_landscape.csv")
    print("landscape written to results/collapse_landscape.csv")


if __name__ == "__main__":
    main()
