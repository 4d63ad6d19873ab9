"""Shared oracles and scenario builders for the test suite."""

from __future__ import annotations

import itertools

import numpy as np

from classtrack.config import ClassroomConfig
from classtrack.model import (
    BehaviorCategory,
    BodyPose,
    Box,
    NUM_KEYPOINTS,
    SeatId,
    TRACKED_CATEGORIES,
)
from classtrack.simulate import (
    NoiseModel,
    ScenarioSpec,
    default_quad,
    schedule_events,
)


def pixel_iou(a: Box, b: Box) -> float:
    """Brute-force IoU by counting unit pixels; exact for integer boxes."""

    def cells(box):
        x, y, w, h = (int(v) for v in box)
        return {(i, j) for i in range(x, x + w) for j in range(y, y + h)}

    ca, cb = cells(a), cells(b)
    union = len(ca | cb)
    return len(ca & cb) / union if union else 0.0


def exhaustive_kmeans_sse(values, k: int) -> float:
    """Minimum within-cluster sum of squares over every contiguous
    partition of the sorted values into k runs."""
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    best = np.inf
    for splits in itertools.combinations(range(1, n), k - 1):
        bounds = [0, *splits, n]
        sse = sum(
            float(((x[a:b] - x[a:b].mean()) ** 2).sum())
            for a, b in zip(bounds, bounds[1:])
        )
        best = min(best, sse)
    return best


def kmeans_sse(values, labels, centers) -> float:
    vals = np.asarray(values, dtype=float)
    return float(sum(((vals[labels == c] - centers[c]) ** 2).sum() for c in range(len(centers))))


def pose_from_points(points: dict[int, tuple[float, float]], conf: float = 0.9) -> BodyPose:
    """BodyPose with the given keypoints confident and the rest missing."""
    kps = []
    for i in range(NUM_KEYPOINTS):
        if i in points:
            x, y = points[i]
            kps.append((float(x), float(y), conf))
        else:
            kps.append((0.0, 0.0, 0.0))
    return BodyPose(tuple(kps))


def simple_config(rows: int = 5, cols: int = 7, **overrides) -> ClassroomConfig:
    kwargs = dict(
        image_w=1920,
        image_h=1080,
        rows=rows,
        cols=cols,
        rect_quad=default_quad(view="center"),
    )
    kwargs.update(overrides)
    return ClassroomConfig(**kwargs)


def rectangle_config(rows: int, cols: int, **overrides) -> ClassroomConfig:
    """Config whose seating quad is an axis-aligned rectangle, so rectified
    coordinates are a plain affine map of image coordinates."""
    kwargs = dict(
        image_w=1920,
        image_h=1080,
        rows=rows,
        cols=cols,
        rect_quad=((200.0, 100.0), (1700.0, 100.0), (1700.0, 1000.0), (200.0, 1000.0)),
    )
    kwargs.update(overrides)
    return ClassroomConfig(**kwargs)


def grid_pose_at(cfg: ClassroomConfig, row: int, col: int) -> BodyPose:
    """Single-keypoint pose at the exact rectified cell center of a
    rectangle_config classroom."""
    (x0, y0), (x1, _), (_, y1) = cfg.rect_quad[0], cfg.rect_quad[1], cfg.rect_quad[2]
    u = (col - 0.5) / cfg.cols
    v = (row - 0.5) / cfg.rows
    return pose_from_points({0: (x0 + u * (x1 - x0), y0 + v * (y1 - y0))})


def event_counts(total_per_category: int) -> dict[BehaviorCategory, int]:
    return {cat: total_per_category for cat in TRACKED_CATEGORIES}


def matching_fixture(real_correct, real_wrong, real_unmatched, fp_matched, fp_unmatched):
    """Per-frame hand-raising predictions with controlled outcome counts:
    one detected box per frame, a truth box present only for real ones."""
    from classtrack.session import FramePrediction, HandRaisingPrediction
    from classtrack.simulate import GroundTruth, TruthBox, TruthFrame

    box = (100.0, 100.0, 20.0, 20.0)
    seat_a, seat_b = SeatId(1, 1), SeatId(1, 2)
    frames, truths = [], []

    def add(i, box_present, pose, seat):
        pred = FramePrediction(i, i * 3.0, [], [HandRaisingPrediction(0, box, pose, seat)])
        boxes = (TruthBox(BehaviorCategory.HAND_RAISING, box, seat_a),) if box_present else ()
        frames.append(pred)
        truths.append(TruthFrame(i, i * 3.0, (), boxes))

    i = 0
    for _ in range(real_correct):
        add(i, True, 0, seat_a); i += 1
    for _ in range(real_wrong):
        add(i, True, 0, seat_b); i += 1
    for _ in range(real_unmatched):
        add(i, True, None, None); i += 1
    for _ in range(fp_matched):
        add(i, False, 0, seat_a); i += 1
    for _ in range(fp_unmatched):
        add(i, False, None, None); i += 1
    return frames, GroundTruth(events=[], frames=truths)


def per_seat_frames(legal: int, correct: int, seat: SeatId = SeatId(1, 1)):
    """Per-frame seat predictions for one tracked seat with the given
    legal/correct frame counts."""
    from classtrack.session import FramePrediction
    from classtrack.simulate import GroundTruth, TruthFrame, TruthPose

    frames, truths = [], []
    for i in range(legal):
        predicted = seat if i < correct else SeatId(9, 9)
        frames.append(FramePrediction(i, i * 3.0, [predicted], []))
        truths.append(TruthFrame(i, i * 3.0, (TruthPose(seat, True),), ()))
    return frames, GroundTruth(events=[], frames=truths)


def clean_closure_spec(seed: int = 5) -> ScenarioSpec:
    """Zero-noise 5x7 classroom, 40 minutes at 3 s sampling, >= 50 events."""
    rng = np.random.default_rng(seed)
    seats = [SeatId(r, c) for r in range(1, 6) for c in range(1, 8)]
    events = schedule_events(seats, 2400.0, 3.0, event_counts(12), rng)
    return ScenarioSpec(
        rows=5,
        cols=7,
        duration_s=2400.0,
        rect_quad=default_quad(view="left"),
        events=events,
        seed=seed,
    )


def noisy_matching_spec(seed: int = 99) -> ScenarioSpec:
    """Hand-raising heavy scenario with the acceptance noise levels."""
    rng = np.random.default_rng(seed)
    seats = [SeatId(r, c) for r in range(1, 6) for c in range(1, 8)]
    counts = {
        BehaviorCategory.HAND_RAISING: 600,
        BehaviorCategory.STANDING: 70,
        BehaviorCategory.SLEEPING: 70,
        BehaviorCategory.YAWNING: 70,
        BehaviorCategory.SMILING: 70,
    }
    events = schedule_events(seats, 2400.0, 3.0, counts, rng)
    return ScenarioSpec(
        rows=5,
        cols=7,
        duration_s=2400.0,
        rect_quad=default_quad(view="left"),
        events=events,
        noise=NoiseModel(
            det_miss_prob=0.10,
            kp_dropout_prob=0.20,
            bbox_jitter_px=2.0,
            false_positives_per_frame=0.02,
        ),
        seed=seed,
    )


def seat_accuracy_specs() -> list[ScenarioSpec]:
    """Four seat-location scenarios: three undistorted (left/right/center
    quads, one with a teacher), one with barrel distortion; all with
    representative-point jitter of 5% of the seat pitch."""
    jitter = NoiseModel(pose_jitter_frac=0.05)
    return [
        ScenarioSpec(
            rows=6, cols=6, duration_s=600.0,
            rect_quad=default_quad(view="left"),
            noise=jitter, seed=21,
        ),
        ScenarioSpec(
            rows=5, cols=8, duration_s=600.0,
            rect_quad=default_quad(view="right"),
            noise=jitter, with_teacher=True, seed=22,
        ),
        ScenarioSpec(
            rows=5, cols=7, duration_s=600.0,
            rect_quad=default_quad(view="center"),
            noise=jitter, seed=23,
        ),
        ScenarioSpec(
            rows=5, cols=6, duration_s=600.0,
            rect_quad=default_quad(view="left", shrink=0.85),
            k1=0.1, noise=jitter, seed=24,
        ),
    ]
