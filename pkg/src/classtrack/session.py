"""Seat-indexed session state: tracklets, engagement, timeline, persistence.

A finalized session is one self-describing JSON document (format_version,
config, metadata, events, occupancy, per-frame predictions).  Serialization
is canonical -- sorted keys, compact separators, shortest-repr floats -- so
save -> load -> save is byte-identical.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .config import ClassroomConfig, config_from_dict, config_to_dict
from .dedup import BehaviorEvent, TrackedBox
from .model import (
    BehaviorCategory,
    Box,
    NEGATIVE_CATEGORIES,
    POSITIVE_CATEGORIES,
    SeatId,
    TRACKED_CATEGORIES,
)

FORMAT_VERSION = 1


@dataclass
class SeatTracklet:
    """Per-seat record of the five tracked behaviors."""

    seat: SeatId
    occupied: bool = False
    events: dict[BehaviorCategory, list[BehaviorEvent]] = field(
        default_factory=lambda: {cat: [] for cat in TRACKED_CATEGORIES}
    )

    def count(self, category: BehaviorCategory) -> int:
        return len(self.events[category])

    @property
    def counts(self) -> dict[BehaviorCategory, int]:
        return {cat: len(evs) for cat, evs in self.events.items()}

    def positive_negative(self, up_to_t: float | None = None) -> tuple[int, int]:
        pos = neg = 0
        for cat, evs in self.events.items():
            n = (
                len(evs)
                if up_to_t is None
                else sum(1 for e in evs if e.start_t <= up_to_t)
            )
            if cat in POSITIVE_CATEGORIES:
                pos += n
            elif cat in NEGATIVE_CATEGORIES:
                neg += n
        return pos, neg


@dataclass
class HandRaisingPrediction:
    """One hand-raising box with its per-frame match outcome."""

    det_index: int
    bbox: Box
    pose_index: int | None
    seat: SeatId | None


@dataclass
class FramePrediction:
    """Per-frame outputs kept for evaluation: pose seats (by original pose
    index; None for teachers and dropped poses) and hand-raising matches."""

    frame_index: int
    t: float
    seats: list[SeatId | None]
    hand_raising: list[HandRaisingPrediction] = field(default_factory=list)


@dataclass
class SessionMeta:
    course_id: str = "session"
    duration_s: float = 0.0
    engine_version: str = __version__


class ClassSession:
    """Accumulated observation result for one course."""

    def __init__(self, config: ClassroomConfig, meta: SessionMeta | None = None):
        self.config = config
        self.meta = meta or SessionMeta()
        self.tracklets: dict[SeatId, SeatTracklet] = {
            SeatId(r, c): SeatTracklet(SeatId(r, c))
            for r in range(1, config.rows + 1)
            for c in range(1, config.cols + 1)
        }
        self.unassigned_events: list[BehaviorEvent] = []
        self.frame_predictions: list[FramePrediction] = []
        self._totals: dict[BehaviorCategory, int] = {cat: 0 for cat in TRACKED_CATEGORIES}

    # -- accumulation ------------------------------------------------------

    def mark_occupied(self, seat: SeatId) -> None:
        if seat in self.tracklets:
            self.tracklets[seat].occupied = True

    def accumulate(self, event: BehaviorEvent) -> None:
        """Add one finalized event to its seat tracklet (or the unassigned
        bucket) keeping event lists time-sorted."""
        if event.category == BehaviorCategory.TEACHER:
            raise ValueError("teacher detections are never tracked as events")
        if event.seat is None:
            bisect.insort(self.unassigned_events, event, key=_event_sort_key)
        else:
            if event.seat not in self.tracklets:
                raise ValueError(f"seat {event.seat} outside the configured grid")
            tracklet = self.tracklets[event.seat]
            bisect.insort(tracklet.events[event.category], event, key=_event_sort_key)
        self._totals[event.category] += 1

    @property
    def totals(self) -> dict[BehaviorCategory, int]:
        return dict(self._totals)

    def check_conservation(self) -> bool:
        """Grid counts plus unassigned counts must equal emitted totals."""
        summed = {cat: 0 for cat in TRACKED_CATEGORIES}
        for tracklet in self.tracklets.values():
            for cat, evs in tracklet.events.items():
                summed[cat] += len(evs)
        for ev in self.unassigned_events:
            summed[ev.category] += 1
        return summed == self._totals

    # -- derived views -----------------------------------------------------

    @property
    def occupancy(self) -> dict[SeatId, bool]:
        return {seat: t.occupied for seat, t in self.tracklets.items()}

    @property
    def timeline_length(self) -> int:
        if self.meta.duration_s <= 0:
            return 0
        return math.ceil(self.meta.duration_s / self.config.sample_interval_s)

    def sample_index(self, t: float) -> int:
        idx = int(t / self.config.sample_interval_s + 1e-9)
        return min(max(idx, 0), max(self.timeline_length - 1, 0))

    def timeline(self) -> list[dict[BehaviorCategory, int]]:
        """Aggregate counts per sampling moment, binned by event start."""
        out = [{cat: 0 for cat in TRACKED_CATEGORIES} for _ in range(self.timeline_length)]
        if not out:
            return out
        for ev in self.iter_events():
            out[self.sample_index(ev.start_t)][ev.category] += 1
        return out

    def iter_events(self):
        for tracklet in self.tracklets.values():
            for evs in tracklet.events.values():
                yield from evs
        yield from self.unassigned_events


def _event_sort_key(ev: BehaviorEvent) -> tuple:
    return (ev.start_t, ev.end_t, ev.start_frame, ev.category.value)


# -- engagement -------------------------------------------------------------


def engagement_score(tracklet: SeatTracklet, up_to_t: float) -> float | None:
    """Smoothed positive fraction (P + 1) / (P + N + 2) of events starting
    at or before up_to_t; None for unoccupied seats."""
    if up_to_t < 0:
        raise ValueError("up_to_t must be >= 0")
    if not tracklet.occupied:
        return None
    pos, neg = tracklet.positive_negative(up_to_t)
    return (pos + 1) / (pos + neg + 2)


def heatmap(session: ClassSession, t: float) -> list[list[float | None]]:
    """R x C engagement grid at time t; None marks unoccupied seats."""
    if not (0.0 <= t <= session.meta.duration_s):
        raise ValueError(f"t={t} outside [0, {session.meta.duration_s}]")
    grid: list[list[float | None]] = []
    for r in range(1, session.config.rows + 1):
        row: list[float | None] = []
        for c in range(1, session.config.cols + 1):
            row.append(engagement_score(session.tracklets[SeatId(r, c)], t))
        grid.append(row)
    return grid


def sequence(session: ClassSession, seat: SeatId) -> list[tuple[float, BehaviorCategory]]:
    """Time-ordered behavior sequence of one seat; same-time ties sort by
    category name."""
    if seat not in session.tracklets:
        raise ValueError(f"seat {seat} outside the configured grid")
    merged = [
        (ev.start_t, cat)
        for cat, evs in session.tracklets[seat].events.items()
        for ev in evs
    ]
    merged.sort(key=lambda item: (item[0], item[1].value))
    return merged


def flow(session: ClassSession) -> list[dict[BehaviorCategory, int]]:
    """Per-sampling-moment category counts over all seats plus unassigned."""
    return session.timeline()


# -- persistence --------------------------------------------------------------


def _event_to_doc(ev: BehaviorEvent) -> dict:
    return {
        "category": ev.category.value,
        "seat": None if ev.seat is None else str(ev.seat),
        "start_frame": ev.start_frame,
        "end_frame": ev.end_frame,
        "start_t": ev.start_t,
        "end_t": ev.end_t,
        "boxes": [[m.frame_index, m.det_index, *m.bbox] for m in ev.members],
    }


def _event_from_doc(doc: dict) -> BehaviorEvent:
    members = [
        TrackedBox(int(b[0]), int(b[1]), (b[2], b[3], b[4], b[5])) for b in doc["boxes"]
    ]
    return BehaviorEvent(
        category=BehaviorCategory(doc["category"]),
        start_frame=doc["start_frame"],
        end_frame=doc["end_frame"],
        start_t=doc["start_t"],
        end_t=doc["end_t"],
        members=members,
        seat=None if doc["seat"] is None else SeatId.parse(doc["seat"]),
    )


def session_to_doc(session: ClassSession) -> dict:
    events = sorted(session.iter_events(), key=_full_event_key)
    return {
        "format_version": FORMAT_VERSION,
        "config": config_to_dict(session.config),
        "metadata": {
            "course_id": session.meta.course_id,
            "duration_s": session.meta.duration_s,
            "engine_version": session.meta.engine_version,
        },
        "events": [_event_to_doc(ev) for ev in events],
        "occupancy": sorted(str(s) for s, occ in session.occupancy.items() if occ),
        "frames": [
            {
                "frame": fp.frame_index,
                "t": fp.t,
                "seats": [None if s is None else str(s) for s in fp.seats],
                "hand_raising": [
                    {
                        "det": hr.det_index,
                        "bbox": list(hr.bbox),
                        "pose": hr.pose_index,
                        "seat": None if hr.seat is None else str(hr.seat),
                    }
                    for hr in fp.hand_raising
                ],
            }
            for fp in session.frame_predictions
        ],
    }


def _full_event_key(ev: BehaviorEvent) -> tuple:
    return (
        ev.start_t,
        ev.end_t,
        ev.category.value,
        "" if ev.seat is None else str(ev.seat),
        ev.members[0].det_index,
    )


def session_from_doc(doc: dict) -> ClassSession:
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported session format: {doc.get('format_version')!r}")
    cfg = config_from_dict(doc["config"])
    meta = SessionMeta(
        course_id=doc["metadata"]["course_id"],
        duration_s=doc["metadata"]["duration_s"],
        engine_version=doc["metadata"]["engine_version"],
    )
    session = ClassSession(cfg, meta)
    for seat_text in doc["occupancy"]:
        session.mark_occupied(SeatId.parse(seat_text))
    for ev_doc in doc["events"]:
        session.accumulate(_event_from_doc(ev_doc))
    for f in doc["frames"]:
        session.frame_predictions.append(
            FramePrediction(
                frame_index=f["frame"],
                t=f["t"],
                seats=[None if s is None else SeatId.parse(s) for s in f["seats"]],
                hand_raising=[
                    HandRaisingPrediction(
                        det_index=hr["det"],
                        bbox=tuple(hr["bbox"]),
                        pose_index=hr["pose"],
                        seat=None if hr["seat"] is None else SeatId.parse(hr["seat"]),
                    )
                    for hr in f["hand_raising"]
                ],
            )
        )
    return session


def dumps_session(session: ClassSession) -> str:
    return json.dumps(session_to_doc(session), sort_keys=True, separators=(",", ":"))


def loads_session(text: str) -> ClassSession:
    return session_from_doc(json.loads(text))


def save_session(session: ClassSession, path: str | Path) -> None:
    Path(path).write_text(dumps_session(session), encoding="utf-8")


def load_session(path: str | Path) -> ClassSession:
    return loads_session(Path(path).read_text(encoding="utf-8"))
