"""Core data model: behavior categories, detections, poses, frames, seats."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

# Axis-aligned box (x, y, w, h) in pixels, origin at the image top-left.
Box = tuple[float, float, float, float]

# COCO 17-keypoint order.
NOSE = 0
LEFT_EYE, RIGHT_EYE = 1, 2
LEFT_EAR, RIGHT_EAR = 3, 4
LEFT_SHOULDER, RIGHT_SHOULDER = 5, 6
LEFT_ELBOW, RIGHT_ELBOW = 7, 8
LEFT_WRIST, RIGHT_WRIST = 9, 10
LEFT_HIP, RIGHT_HIP = 11, 12
LEFT_KNEE, RIGHT_KNEE = 13, 14
LEFT_ANKLE, RIGHT_ANKLE = 15, 16

NUM_KEYPOINTS = 17
UPPER_BODY = (NOSE, LEFT_EYE, RIGHT_EYE, LEFT_EAR, RIGHT_EAR, LEFT_SHOULDER, RIGHT_SHOULDER)
SHOULDERS = (LEFT_SHOULDER, RIGHT_SHOULDER)
ELBOWS = (LEFT_ELBOW, RIGHT_ELBOW)
WRISTS = (LEFT_WRIST, RIGHT_WRIST)


class BehaviorCategory(str, Enum):
    HAND_RAISING = "hand_raising"
    STANDING = "standing"
    SLEEPING = "sleeping"
    YAWNING = "yawning"
    SMILING = "smiling"
    TEACHER = "teacher"


# The five behaviors that are tracked per seat; teacher boxes are only used
# to exclude the teacher's pose from matching and seat assignment.
TRACKED_CATEGORIES: tuple[BehaviorCategory, ...] = (
    BehaviorCategory.HAND_RAISING,
    BehaviorCategory.STANDING,
    BehaviorCategory.SLEEPING,
    BehaviorCategory.YAWNING,
    BehaviorCategory.SMILING,
)

POSITIVE_CATEGORIES = frozenset(
    {BehaviorCategory.HAND_RAISING, BehaviorCategory.STANDING, BehaviorCategory.SMILING}
)
NEGATIVE_CATEGORIES = frozenset({BehaviorCategory.YAWNING, BehaviorCategory.SLEEPING})


@dataclass(frozen=True)
class Detection:
    """One detector output: category, pixel box and confidence."""

    category: BehaviorCategory
    bbox: Box
    confidence: float


@dataclass(frozen=True)
class BodyPose:
    """17 COCO keypoints as (x, y, conf); conf == 0 means not detected."""

    keypoints: tuple[tuple[float, float, float], ...]

    def __post_init__(self) -> None:
        if len(self.keypoints) != NUM_KEYPOINTS:
            raise ValueError(f"expected {NUM_KEYPOINTS} keypoints, got {len(self.keypoints)}")

    def as_array(self) -> np.ndarray:
        """(17, 3) float array of (x, y, conf)."""
        return np.asarray(self.keypoints, dtype=float)

    def confident(self, kp_conf_min: float) -> np.ndarray:
        """Boolean mask over the 17 keypoints with conf >= kp_conf_min."""
        arr = self.as_array()
        return arr[:, 2] >= kp_conf_min


@dataclass(frozen=True)
class FrameRecord:
    """One sampled frame of the detection stream."""

    frame_index: int
    t: float
    detections: tuple[Detection, ...] = field(default_factory=tuple)
    poses: tuple[BodyPose, ...] = field(default_factory=tuple)


_SEAT_RE = re.compile(r"^R(\d+)C(\d+)$")


@dataclass(frozen=True, order=True)
class SeatId:
    """Row/column seat identity, the privacy-preserving student id."""

    row: int
    col: int

    def __str__(self) -> str:
        return f"R{self.row}C{self.col}"

    @classmethod
    def parse(cls, text: str) -> "SeatId":
        m = _SEAT_RE.match(text)
        if not m:
            raise ValueError(f"not a seat id: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


def box_intersects_image(box: Box, image_w: float, image_h: float) -> bool:
    x, y, w, h = box
    return x < image_w and y < image_h and x + w > 0 and y + h > 0


def box_center(box: Box) -> tuple[float, float]:
    x, y, w, h = box
    return (x + w / 2.0, y + h / 2.0)
