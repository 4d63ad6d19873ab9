"""Synthetic classroom streams with exact ground truth.

Students are placed at seat-cell centers of the rectified unit square and
mapped backward through the camera model (projective quad, then optional
radial distortion), so the true seat of every generated pose is known by
construction.  Behavior boxes are synthesized anatomically around the
skeleton: a hand-raising box sits over the raised wrist, standing covers the
whole body, yawning/smiling are face-sized, sleeping covers the desk area.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import ClassroomConfig, Point
from .geometry import (
    DistortionParams,
    UNIT_SQUARE,
    apply_homography,
    distort,
    solve_homography,
)
from .model import (
    BehaviorCategory,
    BodyPose,
    Box,
    Detection,
    FrameRecord,
    NUM_KEYPOINTS,
    SeatId,
    TRACKED_CATEGORIES,
)

TRUTH_FORMAT_VERSION = 1

# Seated skeleton offsets in units of the local body scale, x right, y down.
# The seven upper-body offsets sum to zero so the representative point of a
# fully confident pose is exactly the seat anchor.
_BASE_OFFSETS = np.array(
    [
        (0.00, -0.16),  # nose
        (-0.07, -0.24),  # left eye
        (0.07, -0.24),  # right eye
        (-0.14, -0.18),  # left ear
        (0.14, -0.18),  # right ear
        (-0.35, 0.50),  # left shoulder
        (0.35, 0.50),  # right shoulder
        (-0.44, 0.70),  # left elbow
        (0.44, 0.70),  # right elbow
        (-0.18, 0.80),  # left wrist
        (0.18, 0.80),  # right wrist
        (-0.20, 0.95),  # left hip
        (0.20, 0.95),  # right hip
        (-0.26, 1.25),  # left knee
        (0.26, 1.25),  # right knee
        (-0.24, 1.55),  # left ankle
        (0.24, 1.55),  # right ankle
    ]
)
_RAISED_WRIST = (0.38, -0.85)
_RAISED_ELBOW = (0.44, -0.60)
_UPPER_CONF = 0.95
_LOWER_CONF = 0.85

# Behavior boxes as (x, y, w, h) offsets in body-scale units.
_FACE_BOX = (-0.20, -0.34, 0.40, 0.28)
_SLEEP_BOX = (-0.50, 0.35, 1.00, 0.70)
# Tall enough that 2*h covers the distance from the box bottom to the far
# shoulder, so the proximity gate holds even when the near shoulder drops out.
_HR_BOX = (0.16, -1.13, 0.44, 0.68)  # relative to the raised-arm side

# Body scale as a fraction of the smaller neighbor pitch.  Kept small enough
# that an idle arm of the adjacent row can never fall inside an expanded
# hand-raising box: the box top reaches 1.1 scale units above the anchor and
# idle wrists hang 0.8 below, so 1.9 * 0.42 < 1 pitch with margin.
_SCALE_FRAC = 0.42


@dataclass(frozen=True)
class NoiseModel:
    det_miss_prob: float = 0.0
    kp_dropout_prob: float = 0.0
    bbox_jitter_px: float = 0.0
    false_positives_per_frame: float = 0.0
    pose_jitter_frac: float = 0.0

    def validate(self) -> None:
        for name in ("det_miss_prob", "kp_dropout_prob"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be in [0, 1]")
        if self.bbox_jitter_px < 0 or self.false_positives_per_frame < 0:
            raise ValueError("noise magnitudes must be >= 0")
        if self.pose_jitter_frac < 0:
            raise ValueError("pose_jitter_frac must be >= 0")


@dataclass(frozen=True)
class ScriptedEvent:
    seat: SeatId
    category: BehaviorCategory
    start_t: float
    duration_s: float


@dataclass
class ScenarioSpec:
    rows: int
    cols: int
    duration_s: float
    rect_quad: tuple[Point, Point, Point, Point]
    image_w: int = 1920
    image_h: int = 1080
    k1: float = 0.0
    k2: float = 0.0
    sample_interval_s: float = 3.0
    occupied: frozenset[SeatId] | None = None  # None = every seat
    events: list[ScriptedEvent] = field(default_factory=list)
    noise: NoiseModel = field(default_factory=NoiseModel)
    with_teacher: bool = False
    seed: int = 0

    def seats(self) -> list[SeatId]:
        all_seats = [
            SeatId(r, c)
            for r in range(1, self.rows + 1)
            for c in range(1, self.cols + 1)
        ]
        if self.occupied is None:
            return all_seats
        return [s for s in all_seats if s in self.occupied]

    def validate(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be >= 1")
        if self.duration_s <= 0 or self.sample_interval_s <= 0:
            raise ValueError("duration and sample interval must be positive")
        self.noise.validate()
        occupied = set(self.seats())
        if not occupied:
            raise ValueError("scenario has no occupied seats")
        for ev in self.events:
            if ev.category not in TRACKED_CATEGORIES:
                raise ValueError(f"{ev.category} cannot be scripted")
            if ev.seat not in occupied:
                raise ValueError(f"event at unoccupied seat {ev.seat}")
            if ev.start_t < 0 or ev.duration_s <= 0:
                raise ValueError("event start/duration out of range")
            if ev.start_t + ev.duration_s > self.duration_s + 1e-9:
                raise ValueError(f"event at {ev.seat} runs past the scenario end")

    def frame_count(self) -> int:
        return int(round(self.duration_s / self.sample_interval_s))


@dataclass(frozen=True)
class TruthBox:
    category: BehaviorCategory
    bbox: Box
    seat: SeatId


@dataclass(frozen=True)
class TruthPose:
    seat: SeatId | None  # None marks the teacher
    legal: bool


@dataclass(frozen=True)
class TruthFrame:
    frame_index: int
    t: float
    poses: tuple[TruthPose, ...]
    boxes: tuple[TruthBox, ...]


@dataclass
class GroundTruth:
    events: list[ScriptedEvent]
    frames: list[TruthFrame]


def scenario_config(spec: ScenarioSpec, **overrides) -> ClassroomConfig:
    """ClassroomConfig matching a scenario's camera and grid."""
    kwargs = dict(
        image_w=spec.image_w,
        image_h=spec.image_h,
        rows=spec.rows,
        cols=spec.cols,
        rect_quad=spec.rect_quad,
        k1=spec.k1,
        k2=spec.k2,
        sample_interval_s=spec.sample_interval_s,
    )
    kwargs.update(overrides)
    return ClassroomConfig(**kwargs)


def default_quad(
    image_w: int = 1920, image_h: int = 1080, view: str = "center", shrink: float = 1.0
) -> tuple[Point, Point, Point, Point]:
    """A plausible seating-area quad (TL, TR, BR, BL) for a front camera.

    The top edge (back rows) is narrower than the bottom edge (front rows);
    left/right views skew the trapezoid sideways.
    """
    quads = {
        "center": ((640.0, 120.0), (1280.0, 120.0), (1620.0, 990.0), (300.0, 990.0)),
        "left": ((500.0, 140.0), (1240.0, 100.0), (1660.0, 930.0), (260.0, 1020.0)),
        "right": ((680.0, 100.0), (1420.0, 140.0), (1660.0, 1020.0), (260.0, 930.0)),
    }
    if view not in quads:
        raise ValueError(f"unknown view {view!r}")
    cx, cy = image_w / 2.0, image_h / 2.0
    scale_x, scale_y = image_w / 1920.0, image_h / 1080.0
    out = []
    for x, y in quads[view]:
        x, y = x * scale_x, y * scale_y
        out.append((cx + (x - cx) * shrink, cy + (y - cy) * shrink))
    return tuple(out)


def schedule_events(
    seats: Sequence[SeatId],
    duration_s: float,
    interval_s: float,
    category_counts: dict[BehaviorCategory, int],
    rng: np.random.Generator,
    min_gap_frames: int = 4,
    min_frames: int = 2,
    max_frames: int = 6,
) -> list[ScriptedEvent]:
    """Scripted events spread across seats, one behavior at a time per seat
    with gaps wide enough that consecutive events never merge in dedup."""
    total_frames = int(round(duration_s / interval_s))
    pool: list[BehaviorCategory] = []
    for cat, count in sorted(category_counts.items(), key=lambda kv: kv[0].value):
        pool.extend([cat] * count)
    rng.shuffle(pool)  # type: ignore[arg-type]

    cursors = {seat: 1 + int(rng.integers(0, min_gap_frames + 1)) for seat in seats}
    events: list[ScriptedEvent] = []
    for cat in pool:
        seat = min(cursors, key=lambda s: (cursors[s], s))
        frames = int(rng.integers(min_frames, max_frames + 1))
        start = cursors[seat]
        if start + frames >= total_frames:
            raise ValueError(
                "could not fit all scripted events; reduce counts or lengthen the scenario"
            )
        events.append(
            ScriptedEvent(seat, cat, start * interval_s, frames * interval_s)
        )
        cursors[seat] = start + frames + min_gap_frames + int(rng.integers(0, 3))
    events.sort(key=lambda e: (e.start_t, str(e.seat), e.category.value))
    return events


class _SceneGeometry:
    """Backward camera mapping and per-seat body scales for one scenario."""

    def __init__(self, spec: ScenarioSpec):
        self.spec = spec
        self.h_unit_to_img = solve_homography(UNIT_SQUARE, spec.rect_quad)
        cfg = scenario_config(spec)
        self.distortion = DistortionParams.from_config(cfg)
        self.seats = spec.seats()
        self.rect_anchor = {
            seat: ((seat.col - 0.5) / spec.cols, (seat.row - 0.5) / spec.rows)
            for seat in self.seats
        }
        anchors = apply_homography(
            self.h_unit_to_img, np.array([self.rect_anchor[s] for s in self.seats])
        )
        self.base_anchor = {seat: anchors[i] for i, seat in enumerate(self.seats)}
        self.scale = {seat: self._local_scale(seat) for seat in self.seats}

    def _local_scale(self, seat: SeatId) -> float:
        spec = self.spec
        x, y = self.rect_anchor[seat]
        candidates = []
        if spec.cols > 1:
            step = 1.0 / spec.cols
            nx = x + step if x + step < 1.0 else x - step
            candidates.append((nx, y))
        if spec.rows > 1:
            step = 1.0 / spec.rows
            ny = y + step if y + step < 1.0 else y - step
            candidates.append((x, ny))
        if not candidates:
            candidates.append((min(x + 0.5, 0.999), y))
        here = apply_homography(self.h_unit_to_img, (x, y))
        dists = []
        for c in candidates:
            there = apply_homography(self.h_unit_to_img, c)
            dists.append(math.hypot(there[0] - here[0], there[1] - here[1]))
        return _SCALE_FRAC * min(dists)

    def to_image(self, pts: np.ndarray) -> np.ndarray:
        """Rectified points -> (possibly distorted) image points."""
        img = apply_homography(self.h_unit_to_img, pts)
        if not self.distortion.is_identity:
            img = distort(img, self.distortion)
        return img

    def image_points(self, und_pts: np.ndarray) -> np.ndarray:
        """Undistorted image points -> stream (distorted) image points."""
        if self.distortion.is_identity:
            return und_pts
        return distort(und_pts, self.distortion)


def _round2(v: float) -> float:
    return round(float(v), 2)


def _box_from_und(geom: _SceneGeometry, x: float, y: float, w: float, h: float) -> Box:
    """Distort an undistorted-image box by mapping its corners."""
    corners = np.array([(x, y), (x + w, y + h)])
    mapped = geom.image_points(corners)
    x0, y0 = mapped[0]
    x1, y1 = mapped[1]
    return (
        _round2(min(x0, x1)),
        _round2(min(y0, y1)),
        _round2(abs(x1 - x0)),
        _round2(abs(y1 - y0)),
    )


def _skeleton(anchor: np.ndarray, s: float, raised_side: int | None) -> np.ndarray:
    """(17, 2) undistorted keypoints; raised_side mirrors the raised arm
    (+1 right, -1 left, None idle)."""
    offsets = _BASE_OFFSETS.copy()
    if raised_side is not None:
        wrist = 10 if raised_side > 0 else 9
        elbow = 8 if raised_side > 0 else 7
        offsets[wrist] = (_RAISED_WRIST[0] * raised_side, _RAISED_WRIST[1])
        offsets[elbow] = (_RAISED_ELBOW[0] * raised_side, _RAISED_ELBOW[1])
    return anchor + offsets * s


def generate(spec: ScenarioSpec, seed: int | None = None) -> tuple[list[FrameRecord], GroundTruth]:
    """Deterministic synthetic stream plus frame-aligned ground truth."""
    spec.validate()
    rng = np.random.default_rng(spec.seed if seed is None else seed)
    geom = _SceneGeometry(spec)
    seats = geom.seats
    n_frames = spec.frame_count()
    interval = spec.sample_interval_s
    noise = spec.noise

    # Events grouped by seat for the per-frame active lookup.
    by_seat: dict[SeatId, list[ScriptedEvent]] = {seat: [] for seat in seats}
    for ev in spec.events:
        by_seat[ev.seat].append(ev)

    mid_scale = float(np.median([geom.scale[s] for s in seats]))
    quad = np.asarray(spec.rect_quad)
    fp_x_range = (quad[:, 0].min(), quad[:, 0].max())
    fp_y_range = (quad[:, 1].min(), quad[:, 1].max())

    records: list[FrameRecord] = []
    truth_frames: list[TruthFrame] = []
    for i in range(n_frames):
        t = i * interval
        detections: list[Detection] = []
        truth_boxes: list[TruthBox] = []
        poses: list[BodyPose] = []
        truth_poses: list[TruthPose] = []

        for seat in seats:
            s = geom.scale[seat]
            rect_pt = np.asarray(geom.rect_anchor[seat], dtype=float)
            if noise.pose_jitter_frac > 0:
                rect_pt = rect_pt + rng.normal(
                    0.0,
                    (noise.pose_jitter_frac / spec.cols, noise.pose_jitter_frac / spec.rows),
                )
            anchor_und = np.asarray(apply_homography(geom.h_unit_to_img, tuple(rect_pt)))

            active = [
                ev
                for ev in by_seat[seat]
                if ev.start_t - 1e-9 <= t < ev.start_t + ev.duration_s - 1e-9
            ]
            raising = any(ev.category == BehaviorCategory.HAND_RAISING for ev in active)
            side = 1 if (seat.row + seat.col) % 2 == 0 else -1
            kps_und = _skeleton(anchor_und, s, side if raising else None)
            kps_img = geom.image_points(kps_und)

            conf = np.where(np.arange(NUM_KEYPOINTS) <= 6, _UPPER_CONF, _LOWER_CONF)
            if noise.kp_dropout_prob > 0:
                drop = rng.random(NUM_KEYPOINTS) < noise.kp_dropout_prob
                drop[0] = False  # the nose survives so the pose stays usable
                conf = np.where(drop, 0.0, conf)
                kps_img = np.where(drop[:, None], 0.0, kps_img)
            poses.append(
                BodyPose(
                    tuple(
                        (_round2(x), _round2(y), round(float(c), 3))
                        for (x, y), c in zip(kps_img, conf)
                    )
                )
            )
            truth_poses.append(TruthPose(seat=seat, legal=True))

            for ev in active:
                box_und = _event_box_und(ev.category, anchor_und, s, side, kps_und)
                box = _box_from_und(geom, *box_und)
                truth_boxes.append(TruthBox(ev.category, box, seat))
                if noise.det_miss_prob > 0 and rng.random() < noise.det_miss_prob:
                    continue
                detections.append(
                    Detection(ev.category, _jitter_box(box, noise.bbox_jitter_px, rng), 0.9)
                )

        if spec.with_teacher:
            tx = 0.5 + 0.42 * math.sin(2.0 * math.pi * t / 300.0)
            anchor_und = np.asarray(apply_homography(geom.h_unit_to_img, (tx, 0.045)))
            s = mid_scale
            kps_und = _skeleton(anchor_und, s, None)
            kps_img = geom.image_points(kps_und)
            poses.append(
                BodyPose(
                    tuple(
                        (_round2(x), _round2(y), round(float(c), 3))
                        for (x, y), c in zip(
                            kps_img,
                            np.where(np.arange(NUM_KEYPOINTS) <= 6, _UPPER_CONF, _LOWER_CONF),
                        )
                    )
                )
            )
            truth_poses.append(TruthPose(seat=None, legal=False))
            lo = kps_und.min(axis=0) - 0.15 * s
            hi = kps_und.max(axis=0) + 0.15 * s
            tbox = _box_from_und(geom, lo[0], lo[1], hi[0] - lo[0], hi[1] - lo[1])
            if not (noise.det_miss_prob > 0 and rng.random() < noise.det_miss_prob):
                detections.append(
                    Detection(BehaviorCategory.TEACHER, _jitter_box(tbox, noise.bbox_jitter_px, rng), 0.9)
                )

        if noise.false_positives_per_frame > 0:
            for _ in range(rng.poisson(noise.false_positives_per_frame)):
                w = mid_scale * rng.uniform(0.3, 1.0)
                h = mid_scale * rng.uniform(0.3, 1.0)
                x = rng.uniform(*fp_x_range)
                y = rng.uniform(*fp_y_range)
                cat = TRACKED_CATEGORIES[int(rng.integers(0, len(TRACKED_CATEGORIES)))]
                detections.append(
                    Detection(cat, (_round2(x), _round2(y), _round2(w), _round2(h)), 0.5)
                )

        records.append(FrameRecord(i, float(t), tuple(detections), tuple(poses)))
        truth_frames.append(TruthFrame(i, float(t), tuple(truth_poses), tuple(truth_boxes)))

    truth = GroundTruth(events=list(spec.events), frames=truth_frames)
    return records, truth


def _event_box_und(
    category: BehaviorCategory,
    anchor: np.ndarray,
    s: float,
    side: int,
    kps_und: np.ndarray,
) -> tuple[float, float, float, float]:
    ax, ay = float(anchor[0]), float(anchor[1])
    if category == BehaviorCategory.HAND_RAISING:
        bx, by, bw, bh = _HR_BOX
        x = ax + (bx if side > 0 else -(bx + bw)) * s
        return (x, ay + by * s, bw * s, bh * s)
    if category in (BehaviorCategory.YAWNING, BehaviorCategory.SMILING):
        bx, by, bw, bh = _FACE_BOX
        return (ax + bx * s, ay + by * s, bw * s, bh * s)
    if category == BehaviorCategory.SLEEPING:
        bx, by, bw, bh = _SLEEP_BOX
        return (ax + bx * s, ay + by * s, bw * s, bh * s)
    if category == BehaviorCategory.STANDING:
        lo = kps_und.min(axis=0) - 0.10 * s
        hi = kps_und.max(axis=0) + 0.10 * s
        return (float(lo[0]), float(lo[1]), float(hi[0] - lo[0]), float(hi[1] - lo[1]))
    raise ValueError(f"no box synthesis for {category}")


def _jitter_box(box: Box, sigma: float, rng: np.random.Generator) -> Box:
    if sigma <= 0:
        return box
    x, y, w, h = box
    x += rng.normal(0.0, sigma)
    y += rng.normal(0.0, sigma)
    w = max(2.0, w + rng.normal(0.0, sigma / 2.0))
    h = max(2.0, h + rng.normal(0.0, sigma / 2.0))
    return (_round2(x), _round2(y), _round2(w), _round2(h))


# -- scenario and truth documents --------------------------------------------


def spec_to_doc(spec: ScenarioSpec) -> dict:
    return {
        "rows": spec.rows,
        "cols": spec.cols,
        "duration_s": spec.duration_s,
        "image_w": spec.image_w,
        "image_h": spec.image_h,
        "rect_quad": [[float(x), float(y)] for x, y in spec.rect_quad],
        "k1": spec.k1,
        "k2": spec.k2,
        "sample_interval_s": spec.sample_interval_s,
        "occupied": None
        if spec.occupied is None
        else sorted(str(s) for s in spec.occupied),
        "events": [
            {
                "seat": str(e.seat),
                "category": e.category.value,
                "start_t": e.start_t,
                "duration_s": e.duration_s,
            }
            for e in spec.events
        ],
        "noise": {
            "det_miss_prob": spec.noise.det_miss_prob,
            "kp_dropout_prob": spec.noise.kp_dropout_prob,
            "bbox_jitter_px": spec.noise.bbox_jitter_px,
            "false_positives_per_frame": spec.noise.false_positives_per_frame,
            "pose_jitter_frac": spec.noise.pose_jitter_frac,
        },
        "with_teacher": spec.with_teacher,
        "seed": spec.seed,
    }


def spec_from_doc(doc: dict) -> ScenarioSpec:
    noise = NoiseModel(**doc.get("noise", {}))
    occupied = doc.get("occupied")
    spec = ScenarioSpec(
        rows=doc["rows"],
        cols=doc["cols"],
        duration_s=doc["duration_s"],
        rect_quad=tuple((float(x), float(y)) for x, y in doc["rect_quad"]),
        image_w=doc.get("image_w", 1920),
        image_h=doc.get("image_h", 1080),
        k1=doc.get("k1", 0.0),
        k2=doc.get("k2", 0.0),
        sample_interval_s=doc.get("sample_interval_s", 3.0),
        occupied=None if occupied is None else frozenset(SeatId.parse(s) for s in occupied),
        events=[
            ScriptedEvent(
                SeatId.parse(e["seat"]),
                BehaviorCategory(e["category"]),
                float(e["start_t"]),
                float(e["duration_s"]),
            )
            for e in doc.get("events", [])
        ],
        noise=noise,
        with_teacher=doc.get("with_teacher", False),
        seed=doc.get("seed", 0),
    )
    auto = doc.get("auto_events")
    if auto:
        rng = np.random.default_rng(spec.seed)
        counts = {
            BehaviorCategory(cat): int(n) for cat, n in auto["category_counts"].items()
        }
        spec.events = spec.events + schedule_events(
            spec.seats(),
            spec.duration_s,
            spec.sample_interval_s,
            counts,
            rng,
            min_gap_frames=int(auto.get("min_gap_frames", 4)),
            min_frames=int(auto.get("min_frames", 2)),
            max_frames=int(auto.get("max_frames", 6)),
        )
    return spec


def load_spec(path: str | Path) -> ScenarioSpec:
    return spec_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))


def save_spec(spec: ScenarioSpec, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(spec_to_doc(spec), sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def truth_to_doc(truth: GroundTruth) -> dict:
    return {
        "format_version": TRUTH_FORMAT_VERSION,
        "events": [
            {
                "seat": str(e.seat),
                "category": e.category.value,
                "start_t": e.start_t,
                "duration_s": e.duration_s,
            }
            for e in truth.events
        ],
        "frames": [
            {
                "frame": f.frame_index,
                "t": f.t,
                "poses": [
                    {"seat": None if p.seat is None else str(p.seat), "legal": p.legal}
                    for p in f.poses
                ],
                "boxes": [
                    {"cat": b.category.value, "bbox": list(b.bbox), "seat": str(b.seat)}
                    for b in f.boxes
                ],
            }
            for f in truth.frames
        ],
    }


def truth_from_doc(doc: dict) -> GroundTruth:
    if doc.get("format_version") != TRUTH_FORMAT_VERSION:
        raise ValueError(f"unsupported truth format: {doc.get('format_version')!r}")
    return GroundTruth(
        events=[
            ScriptedEvent(
                SeatId.parse(e["seat"]),
                BehaviorCategory(e["category"]),
                float(e["start_t"]),
                float(e["duration_s"]),
            )
            for e in doc["events"]
        ],
        frames=[
            TruthFrame(
                frame_index=f["frame"],
                t=f["t"],
                poses=tuple(
                    TruthPose(
                        seat=None if p["seat"] is None else SeatId.parse(p["seat"]),
                        legal=bool(p["legal"]),
                    )
                    for p in f["poses"]
                ),
                boxes=tuple(
                    TruthBox(
                        BehaviorCategory(b["cat"]),
                        tuple(b["bbox"]),
                        SeatId.parse(b["seat"]),
                    )
                    for b in f["boxes"]
                ),
            )
            for f in doc["frames"]
        ],
    )


def dumps_truth(truth: GroundTruth) -> str:
    return json.dumps(truth_to_doc(truth), sort_keys=True, separators=(",", ":"))


def save_truth(truth: GroundTruth, path: str | Path) -> None:
    Path(path).write_text(dumps_truth(truth), encoding="utf-8")


def load_truth(path: str | Path) -> GroundTruth:
    return truth_from_doc(json.loads(Path(path).read_text(encoding="utf-8")))


def make_demo_spec(seed: int = 11) -> ScenarioSpec:
    """Small review-ready scenario: a 5x9 room with hand-raisers at R2C7 and
    R4C9 and a smile at R4C9, plus a sprinkle of other behaviors."""
    quad = default_quad(view="center")
    events = [
        ScriptedEvent(SeatId.parse("R2C7"), BehaviorCategory.HAND_RAISING, 30.0, 9.0),
        ScriptedEvent(SeatId.parse("R4C9"), BehaviorCategory.HAND_RAISING, 30.0, 9.0),
        ScriptedEvent(SeatId.parse("R4C9"), BehaviorCategory.SMILING, 57.0, 6.0),
        ScriptedEvent(SeatId.parse("R1C1"), BehaviorCategory.STANDING, 15.0, 9.0),
        ScriptedEvent(SeatId.parse("R3C4"), BehaviorCategory.SLEEPING, 45.0, 12.0),
        ScriptedEvent(SeatId.parse("R5C2"), BehaviorCategory.YAWNING, 21.0, 6.0),
        ScriptedEvent(SeatId.parse("R2C7"), BehaviorCategory.HAND_RAISING, 75.0, 6.0),
    ]
    return ScenarioSpec(
        rows=5,
        cols=9,
        duration_s=120.0,
        rect_quad=quad,
        events=events,
        with_teacher=True,
        seed=seed,
    )
