"""Interframe deduplication: collapse a behavior spanning several sampled
frames into one event via greedy IoU box matching per category."""

from __future__ import annotations

from dataclasses import dataclass

from .config import ClassroomConfig
from .model import BehaviorCategory, Box, FrameRecord, SeatId


def iou(a: Box, b: Box) -> float:
    """Intersection over union of two (x, y, w, h) boxes."""
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    if aw <= 0 or ah <= 0 or bw <= 0 or bh <= 0:
        raise ValueError("boxes must have positive width and height")
    if a == b:
        return 1.0
    ix = max(0.0, min(ax + aw, bx + bw) - max(ax, bx))
    iy = max(0.0, min(ay + ah, by + bh) - max(ay, by))
    inter = ix * iy
    if inter == 0.0:
        return 0.0
    union = aw * ah + bw * bh - inter
    return inter / union


@dataclass(frozen=True)
class TrackedBox:
    frame_index: int
    det_index: int
    bbox: Box


@dataclass
class BehaviorEvent:
    """One deduplicated behavior occurrence."""

    category: BehaviorCategory
    start_frame: int
    end_frame: int
    start_t: float
    end_t: float
    members: list[TrackedBox]
    seat: SeatId | None = None

    @property
    def member_boxes(self) -> list[tuple[int, Box]]:
        return [(m.frame_index, m.bbox) for m in self.members]


@dataclass
class ActiveTrack:
    category: BehaviorCategory
    last_bbox: Box
    members: list[TrackedBox]
    start_t: float
    end_t: float
    miss_count: int = 0
    created_seq: int = 0

    def to_event(self) -> BehaviorEvent:
        return BehaviorEvent(
            category=self.category,
            start_frame=self.members[0].frame_index,
            end_frame=self.members[-1].frame_index,
            start_t=self.start_t,
            end_t=self.end_t,
            members=list(self.members),
        )


class DedupTracker:
    """Streaming tracker; one instance per session, fed frames in order.

    A detection extends the same-category track of maximum IoU (>= the
    configured threshold); a track missing from more than miss_tolerance
    consecutive frames is closed and emitted as exactly one event.
    """

    def __init__(self, iou_threshold: float = 0.2, miss_tolerance: int = 2):
        if not (0.0 < iou_threshold < 1.0):
            raise ValueError("iou_threshold must be in (0, 1)")
        if miss_tolerance < 0:
            raise ValueError("miss_tolerance must be >= 0")
        self.iou_threshold = iou_threshold
        self.miss_tolerance = miss_tolerance
        self.tracks: list[ActiveTrack] = []
        self._seq = 0

    @classmethod
    def from_config(cls, cfg: ClassroomConfig) -> "DedupTracker":
        return cls(cfg.iou_threshold, cfg.miss_tolerance_t)

    def step(self, frame: FrameRecord) -> list[BehaviorEvent]:
        """Consume one validated frame; return events closed by this frame."""
        dets = [
            (i, d)
            for i, d in enumerate(frame.detections)
            if d.category != BehaviorCategory.TEACHER
        ]

        # Candidate pairs per category, greedily matched in descending IoU;
        # ties: earlier track creation, then lower detection index.
        candidates = []
        for ti, track in enumerate(self.tracks):
            for di, (det_idx, det) in enumerate(dets):
                if det.category != track.category:
                    continue
                v = iou(track.last_bbox, det.bbox)
                if v >= self.iou_threshold:
                    candidates.append((-v, track.created_seq, det_idx, ti, di))
        candidates.sort()

        matched_tracks: set[int] = set()
        matched_dets: set[int] = set()
        for _, _, det_idx, ti, di in candidates:
            if ti in matched_tracks or di in matched_dets:
                continue
            matched_tracks.add(ti)
            matched_dets.add(di)
            track = self.tracks[ti]
            det = dets[di][1]
            track.last_bbox = det.bbox
            track.members.append(TrackedBox(frame.frame_index, det_idx, det.bbox))
            track.end_t = frame.t
            track.miss_count = 0

        for di, (det_idx, det) in enumerate(dets):
            if di in matched_dets:
                continue
            self.tracks.append(
                ActiveTrack(
                    category=det.category,
                    last_bbox=det.bbox,
                    members=[TrackedBox(frame.frame_index, det_idx, det.bbox)],
                    start_t=frame.t,
                    end_t=frame.t,
                    created_seq=self._seq,
                )
            )
            self._seq += 1

        # Tracks neither extended nor created this frame take a miss.
        emitted: list[BehaviorEvent] = []
        survivors: list[ActiveTrack] = []
        for track in self.tracks:
            if track.members[-1].frame_index != frame.frame_index:
                track.miss_count += 1
                if track.miss_count > self.miss_tolerance:
                    emitted.append(track.to_event())
                    continue
            survivors.append(track)
        self.tracks = survivors
        emitted.sort(key=lambda e: (e.start_frame, e.category.value))
        return emitted

    def flush(self) -> list[BehaviorEvent]:
        """Close every remaining active track at end of stream."""
        events = [t.to_event() for t in sorted(self.tracks, key=lambda t: t.created_seq)]
        self.tracks = []
        return events
