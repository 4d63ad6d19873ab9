"""Behavior-to-student matching.

Body-level behaviors (standing, sleeping, yawning, smiling) match the pose
whose confident keypoints fall inside the behavior box.  Hand-raising boxes
only cover part of an arm, so they are scored against every pose with a
wrist/elbow/shoulder-proximity priority and assigned greedily, one box per
pose per frame.  Containment is closed: points on a box edge count as inside.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .dedup import BehaviorEvent
from .model import (
    BehaviorCategory,
    BodyPose,
    Box,
    Detection,
    ELBOWS,
    SHOULDERS,
    SeatId,
    WRISTS,
    box_center,
)
from .seating import representative_point


class MatchMethod(str, Enum):
    KEYPOINT_CONTAINMENT = "keypoint_containment"
    WRIST_ELBOW_GREEDY = "wrist_elbow_greedy"
    NEAREST_FALLBACK = "nearest_fallback"
    UNMATCHED = "unmatched"


@dataclass(frozen=True)
class MatchResult:
    det_index: int
    pose_index: int | None
    score: float
    method: MatchMethod


def point_in_box(p: tuple[float, float], box: Box) -> bool:
    x, y, w, h = box
    return x <= p[0] <= x + w and y <= p[1] <= y + h


def expand_box(box: Box, frac: float) -> Box:
    x, y, w, h = box
    return (x - w * frac, y - h * frac, w * (1 + 2 * frac), h * (1 + 2 * frac))


def flag_teachers(
    poses: Sequence[BodyPose],
    teacher_boxes: Sequence[Box],
    kp_conf_min: float = 0.3,
) -> list[bool]:
    """A pose is the teacher iff its representative point lies inside any
    teacher box; flagged poses are excluded from matching and seating."""
    if not teacher_boxes:
        return [False] * len(poses)
    flags = []
    for pose in poses:
        rp = representative_point(pose, kp_conf_min)
        flags.append(any(point_in_box(rp, b) for b in teacher_boxes))
    return flags


def match_body_behavior(
    det_index: int,
    det: Detection,
    poses: Sequence[BodyPose],
    kp_conf_min: float = 0.3,
    match_radius_scale: float = 2.0,
) -> MatchResult:
    """Match a body-level behavior box to the pose with the largest fraction
    of confident keypoints inside it; ties go to the pose whose
    representative point is nearest the box center.  With no keypoint inside
    any pose, fall back to the nearest representative point within
    match_radius_scale * max(w, h)."""
    if det.category in (BehaviorCategory.HAND_RAISING, BehaviorCategory.TEACHER):
        raise ValueError(f"{det.category.value} is not a body-level behavior")
    bbox = det.bbox
    cx, cy = box_center(bbox)
    best: tuple[float, float, int] | None = None  # (-fraction, distance, index)
    for i, pose in enumerate(poses):
        arr = pose.as_array()
        conf = arr[:, 2] >= kp_conf_min
        total = int(conf.sum())
        if total == 0:
            continue
        inside = 0
        for x, y, _ in arr[conf]:
            if point_in_box((x, y), bbox):
                inside += 1
        if inside == 0:
            continue
        rp = representative_point(pose, kp_conf_min)
        dist = math.hypot(rp[0] - cx, rp[1] - cy)
        key = (-(inside / total), dist, i)
        if best is None or key < best:
            best = key
    if best is not None:
        return MatchResult(det_index, best[2], -best[0], MatchMethod.KEYPOINT_CONTAINMENT)

    r_max = match_radius_scale * max(bbox[2], bbox[3])
    nearest: tuple[float, int] | None = None
    for i, pose in enumerate(poses):
        rp = representative_point(pose, kp_conf_min)
        dist = math.hypot(rp[0] - cx, rp[1] - cy)
        if dist <= r_max and (nearest is None or (dist, i) < nearest):
            nearest = (dist, i)
    if nearest is not None:
        return MatchResult(det_index, nearest[1], 0.0, MatchMethod.NEAREST_FALLBACK)
    return MatchResult(det_index, None, 0.0, MatchMethod.UNMATCHED)


def match_hand_raising(
    boxes: Sequence[tuple[int, Detection]],
    poses: Sequence[BodyPose],
    image_w: float,
    image_h: float,
    kp_conf_min: float = 0.3,
    wrist_weight: float = 3.0,
    elbow_weight: float = 2.0,
    box_expand: float = 0.2,
    match_radius_scale: float = 2.0,
) -> list[MatchResult]:
    """Greedy hand-raising assignment for one frame.

    Pair score: wrist_weight if a confident wrist lies inside the box
    expanded by box_expand per side, elbow_weight if an elbow does, plus
    1 / (1 + d / D) where d is the distance from the box bottom-center to
    the pose's nearest confident shoulder and D the image diagonal.  Poses
    without confident shoulders contribute no proximity term and gate d on
    the representative point instead.  Zero-score pairs and pairs with
    d > match_radius_scale * max(w, h) are discarded; survivors are taken
    in descending score (ties: smaller d, lower pose index), each box and
    each pose used at most once.
    """
    diag = math.hypot(image_w, image_h)
    pairs = []  # (-score, d, pose_idx, box_pos)
    for b_pos, (det_index, det) in enumerate(boxes):
        if det.category != BehaviorCategory.HAND_RAISING:
            raise ValueError(f"{det.category.value} box in hand-raising matching")
        box = det.bbox
        x, y, w, h = box
        bottom_center = (x + w / 2.0, y + h)
        expanded = expand_box(box, box_expand)
        r_max = match_radius_scale * max(w, h)
        for p_idx, pose in enumerate(poses):
            arr = pose.as_array()
            conf = arr[:, 2] >= kp_conf_min
            score = 0.0
            if any(conf[i] and point_in_box(tuple(arr[i, :2]), expanded) for i in WRISTS):
                score += wrist_weight
            if any(conf[i] and point_in_box(tuple(arr[i, :2]), expanded) for i in ELBOWS):
                score += elbow_weight
            shoulder_pts = [tuple(arr[i, :2]) for i in SHOULDERS if conf[i]]
            if shoulder_pts:
                d = min(
                    math.hypot(px - bottom_center[0], py - bottom_center[1])
                    for px, py in shoulder_pts
                )
                score += 1.0 / (1.0 + d / diag)
            else:
                rp = representative_point(pose, kp_conf_min)
                d = math.hypot(rp[0] - bottom_center[0], rp[1] - bottom_center[1])
            if score <= 0.0 or d > r_max:
                continue
            pairs.append((-score, d, p_idx, b_pos))
    pairs.sort()

    taken_boxes: dict[int, MatchResult] = {}
    taken_poses: set[int] = set()
    for neg_score, d, p_idx, b_pos in pairs:
        if b_pos in taken_boxes or p_idx in taken_poses:
            continue
        det_index = boxes[b_pos][0]
        taken_boxes[b_pos] = MatchResult(
            det_index, p_idx, -neg_score, MatchMethod.WRIST_ELBOW_GREEDY
        )
        taken_poses.add(p_idx)

    results = []
    for b_pos, (det_index, _) in enumerate(boxes):
        if b_pos in taken_boxes:
            results.append(taken_boxes[b_pos])
        else:
            results.append(MatchResult(det_index, None, 0.0, MatchMethod.UNMATCHED))
    return results


def assign_event_seat(
    event: BehaviorEvent,
    pose_by_detection: Mapping[tuple[int, int], int | None],
    seats_by_frame: Mapping[int, Sequence[SeatId | None]],
) -> BehaviorEvent:
    """Seat an event by majority vote over its member frames' matched-pose
    seats; ties go to the latest frame; no votes leaves the seat unset."""
    votes: list[tuple[int, SeatId]] = []
    for member in event.members:
        pose_idx = pose_by_detection.get((member.frame_index, member.det_index))
        if pose_idx is None:
            continue
        seats = seats_by_frame.get(member.frame_index)
        if seats is None or pose_idx >= len(seats):
            continue
        seat = seats[pose_idx]
        if seat is not None:
            votes.append((member.frame_index, seat))
    if not votes:
        event.seat = None
        return event
    counts = Counter(seat for _, seat in votes)
    top = max(counts.values())
    tied = {seat for seat, n in counts.items() if n == top}
    winner = None
    for frame, seat in votes:
        if seat in tied and (winner is None or frame >= winner[0]):
            winner = (frame, seat)
    event.seat = winner[1] if winner else None
    return event
