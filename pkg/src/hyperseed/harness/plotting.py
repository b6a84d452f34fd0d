"""Scatter rendering of projection tables to SVG.

Output is deterministic: fixed figure geometry, a stable per-label color
assignment, a fixed SVG hash salt, and no embedded timestamps, so the
same rows always produce byte-identical files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_COLORS = ("tab:blue", "tab:orange", "tab:green", "tab:red", "tab:purple",
           "tab:brown", "tab:pink", "tab:gray", "tab:olive", "tab:cyan")


def render_projection(rows: list[dict], path, n: int, m: int,
                      targets: list | None = None, title: str = "") -> None:
    """Scatter of landing nodes on the (i, j) grid, colored by true label.

    Marker positions get a small deterministic per-sample offset so
    samples sharing a node stay visible. Target nodes, when given, are
    drawn as black crosses.
    """
    with plt.rc_context({"svg.hashsalt": "hyperseed"}):
        fig, ax = plt.subplots(figsize=(6.0, 6.0))
        labels_seen: list = []
        for row in rows:
            label = row["true_label"]
            if label not in labels_seen:
                labels_seen.append(label)
        for k, label in enumerate(labels_seen):
            member = [row for row in rows if row["true_label"] == label]
            xs = [row["j"] + 0.18 * ((row["sample"] * 7919) % 5 - 2) / 5
                  for row in member]
            ys = [row["i"] + 0.18 * ((row["sample"] * 104729) % 5 - 2) / 5
                  for row in member]
            ax.scatter(xs, ys, s=12, alpha=0.75,
                       color=_COLORS[k % len(_COLORS)], label=str(label),
                       linewidths=0)
        for i, j in targets or []:
            ax.scatter([j], [i], marker="x", s=90, color="black", linewidths=2.0)
        ax.set_xlim(-1, m)
        ax.set_ylim(n, -1)
        ax.set_xlabel("j")
        ax.set_ylabel("i")
        if title:
            ax.set_title(title)
        if labels_seen:
            ax.legend(loc="upper right", fontsize=8)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
