"""Report rendering: evaluation-table text output plus summary figures."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .simulator import MetricsRow

COLUMNS = ("Name", "Time", "#Pick", "#Place", "#MoveTorso", "#MoveBase",
           "#Handover", "Cost", "Replans", "Goal", "Anomalies")


def _anomaly_text(tags: Sequence[str]) -> str:
    shown = [t for t in tags if t != "none"]
    return ", ".join(shown) if shown else "-"


def _row_values(row: MetricsRow) -> list[str]:
    return [
        row.name,
        f"{row.plan_time:.2f}",
        str(row.picks),
        str(row.places),
        str(row.move_torsos),
        str(row.move_bases),
        str(row.handovers),
        f"{row.cost:.1f}",
        str(row.replans),
        "yes" if row.goal_reached else "no",
        _anomaly_text(row.anomalies),
    ]


def render_report(rows: Iterable[MetricsRow], format: str = "table") -> str:
    """Render rows with the fixed column set.

    ``delimited`` emits tab-separated lines with a header row first;
    ``table`` pads columns for reading.  Costs always print with one
    decimal.
    """
    grid = [list(COLUMNS)] + [_row_values(r) for r in rows]
    if format == "delimited":
        return "\n".join("\t".join(line) for line in grid) + "\n"
    if format != "table":
        raise ValueError(f"unknown report format {format!r}")
    widths = [max(len(line[i]) for line in grid) for i in range(len(COLUMNS))]
    out = []
    for index, line in enumerate(grid):
        out.append("  ".join(value.ljust(width)
                             for value, width in zip(line, widths)).rstrip())
        if index == 0:
            out.append("  ".join("-" * width for width in widths))
    return "\n".join(out) + "\n"


def render_figures(rows: Sequence[MetricsRow], outdir: str | Path) -> list[Path]:
    """Write summary charts next to the delimited report; returns the paths.

    Three PNGs: accumulated cost per episode, action-count breakdown per
    episode, and planning time per episode.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = list(rows)
    names = [r.name for r in rows]
    positions = range(len(rows))
    written = []

    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(rows) + 2), 4))
    colors = ["tab:blue" if r.goal_reached else "tab:red" for r in rows]
    ax.bar(positions, [r.cost for r in rows], color=colors)
    ax.set_ylabel("accumulated cost")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_title("Plan cost per episode (red: goal not reached)")
    fig.tight_layout()
    path = outdir / "costs.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(rows) + 2), 4))
    series = [("pick", [r.picks for r in rows]),
              ("place", [r.places for r in rows]),
              ("move-torso", [r.move_torsos for r in rows]),
              ("move-base", [r.move_bases for r in rows]),
              ("handover", [r.handovers for r in rows])]
    bottoms = [0] * len(rows)
    for label, values in series:
        ax.bar(positions, values, bottom=bottoms, label=label)
        bottoms = [b + v for b, v in zip(bottoms, values)]
    ax.set_ylabel("actions in first plan")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.legend(fontsize=8)
    ax.set_title("Action breakdown per episode")
    fig.tight_layout()
    path = outdir / "actions.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(rows) + 2), 4))
    ax.bar(positions, [r.plan_time for r in rows], color="tab:green")
    ax.set_ylabel("first-plan time [s]")
    ax.set_xticks(list(positions))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_title("Planning time per episode")
    fig.tight_layout()
    path = outdir / "plan_times.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
