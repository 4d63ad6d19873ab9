"""Static session reports: delimited tables plus rendered figures.

Writes the four visualization designs to image files (seating table,
engagement heatmap, per-seat stacked link list, aggregate point flow) next
to CSV exports of the same data, for after-class review without the web UI.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import LinearSegmentedColormap

from .model import BehaviorCategory, SeatId, TRACKED_CATEGORIES
from .session import ClassSession, flow, heatmap, sequence

CATEGORY_COLORS = {
    BehaviorCategory.HAND_RAISING: "#d4a017",
    BehaviorCategory.STANDING: "#2e9e4f",
    BehaviorCategory.SLEEPING: "#00a6b6",
    BehaviorCategory.YAWNING: "#d43d2a",
    BehaviorCategory.SMILING: "#2d6cdf",
    BehaviorCategory.TEACHER: "#222222",
}

ENGAGEMENT_CMAP = LinearSegmentedColormap.from_list(
    "engagement", ["#2166ac", "#f7f7f7", "#b2182b"]
)


def write_grid_csv(session: ClassSession, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["seat", "row", "col", "occupied", *[c.value for c in TRACKED_CATEGORIES]])
        for seat in sorted(session.tracklets):
            tracklet = session.tracklets[seat]
            writer.writerow(
                [
                    str(seat),
                    seat.row,
                    seat.col,
                    int(tracklet.occupied),
                    *[tracklet.count(c) for c in TRACKED_CATEGORIES],
                ]
            )


def write_flow_csv(session: ClassSession, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample", "t", *[c.value for c in TRACKED_CATEGORIES]])
        for i, counts in enumerate(flow(session)):
            writer.writerow(
                [i, i * session.config.sample_interval_s, *[counts[c] for c in TRACKED_CATEGORIES]]
            )


def write_sequences_csv(session: ClassSession, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["seat", "t", "category"])
        for seat in sorted(session.tracklets):
            for t, cat in sequence(session, seat):
                writer.writerow([str(seat), t, cat.value])


def write_heatmap_csv(session: ClassSession, t: float, path: Path) -> None:
    scores = heatmap(session, t)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row", *[f"C{c}" for c in range(1, session.config.cols + 1)]])
        for r, row in enumerate(scores, start=1):
            writer.writerow([f"R{r}", *["" if v is None else f"{v:.4f}" for v in row]])


def render_seating_table(session: ClassSession, path: Path) -> None:
    rows, cols = session.config.rows, session.config.cols
    fig, ax = plt.subplots(figsize=(1.6 * cols + 1, 1.1 * rows + 1))
    ax.set_xlim(0, cols)
    ax.set_ylim(rows, 0)
    ax.set_xticks([])
    ax.set_yticks([])
    for r in range(1, rows + 1):
        for c in range(1, cols + 1):
            tracklet = session.tracklets[SeatId(r, c)]
            face = "#d9d9d9" if tracklet.occupied else "#ffffff"
            ax.add_patch(
                plt.Rectangle((c - 1, r - 1), 1, 1, facecolor=face, edgecolor="#666666")
            )
            ax.text(c - 0.5, r - 0.86, str(tracklet.seat), ha="center", va="top", fontsize=7)
            for k, cat in enumerate(TRACKED_CATEGORIES):
                ax.text(
                    c - 0.5,
                    r - 0.62 + 0.13 * k,
                    str(tracklet.count(cat)),
                    ha="center",
                    va="center",
                    fontsize=7,
                    color=CATEGORY_COLORS[cat],
                )
    ax.set_title(f"Seating table: {session.meta.course_id}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_heatmap(session: ClassSession, t: float, path: Path) -> None:
    scores = heatmap(session, t)
    grid = np.array(
        [[np.nan if v is None else v for v in row] for row in scores], dtype=float
    )
    fig, ax = plt.subplots(figsize=(1.1 * session.config.cols + 2, 1.1 * session.config.rows + 1))
    masked = np.ma.masked_invalid(grid)
    cmap = ENGAGEMENT_CMAP.copy()
    cmap.set_bad("#eeeeee")
    im = ax.imshow(masked, cmap=cmap, vmin=0.0, vmax=1.0)
    ax.set_xticks(range(session.config.cols), [f"C{c+1}" for c in range(session.config.cols)])
    ax.set_yticks(range(session.config.rows), [f"R{r+1}" for r in range(session.config.rows)])
    fig.colorbar(im, ax=ax, label="engagement")
    ax.set_title(f"Engagement at t={t:.0f}s")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_link_list(
    session: ClassSession, path: Path, sort_by: BehaviorCategory | None = None
) -> None:
    occupied = [s for s in sorted(session.tracklets) if session.tracklets[s].occupied]
    if sort_by is None:
        key = lambda s: sum(session.tracklets[s].counts.values())
    else:
        key = lambda s: session.tracklets[s].count(sort_by)
    occupied.sort(key=key, reverse=True)
    occupied = occupied[:30]

    fig, ax = plt.subplots(figsize=(8, max(2.5, 0.28 * len(occupied) + 1.2)))
    y = np.arange(len(occupied))
    left = np.zeros(len(occupied))
    for cat in TRACKED_CATEGORIES:
        widths = np.array([session.tracklets[s].count(cat) for s in occupied], dtype=float)
        ax.barh(y, widths, left=left, color=CATEGORY_COLORS[cat], label=cat.value)
        left += widths
    ax.set_yticks(y, [str(s) for s in occupied])
    ax.invert_yaxis()
    ax.set_xlabel("behavior count")
    sort_label = "total" if sort_by is None else sort_by.value
    ax.set_title(f"Link list (sorted by {sort_label})")
    ax.legend(fontsize=7, loc="lower right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_point_flow(session: ClassSession, path: Path) -> None:
    counts = flow(session)
    ts = [i * session.config.sample_interval_s for i in range(len(counts))]
    fig, ax = plt.subplots(figsize=(9, 3.2))
    for cat in TRACKED_CATEGORIES:
        series = [c[cat] for c in counts]
        ax.plot(ts, series, ".-", markersize=3, linewidth=0.8,
                color=CATEGORY_COLORS[cat], label=cat.value)
    ax.set_xlabel("class time (s)")
    ax.set_ylabel("events starting")
    ax.set_title("Point flow")
    ax.legend(fontsize=7, ncols=5)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(session: ClassSession, out_dir: str | Path, t: float | None = None) -> list[Path]:
    """All tables and figures for one session; returns the written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    at = session.meta.duration_s if t is None else t
    written = []
    for name, fn in [
        ("grid.csv", lambda p: write_grid_csv(session, p)),
        ("flow.csv", lambda p: write_flow_csv(session, p)),
        ("sequences.csv", lambda p: write_sequences_csv(session, p)),
        ("heatmap.csv", lambda p: write_heatmap_csv(session, at, p)),
        ("seating_table.png", lambda p: render_seating_table(session, p)),
        ("heatmap.png", lambda p: render_heatmap(session, at, p)),
        ("link_list.png", lambda p: render_link_list(session, p)),
        ("point_flow.png", lambda p: render_point_flow(session, p)),
    ]:
        target = out / name
        fn(target)
        written.append(target)
    return written
