"""Seat assignment: representative points, 1-D clustering, and the
per-frame pipeline that turns poses into row/column identities."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .config import ClassroomConfig
from .geometry import (
    DistortionParams,
    apply_homography,
    rectification_homography,
    undistort,
)
from .model import BodyPose, SeatId, UPPER_BODY


def representative_point(pose: BodyPose, kp_conf_min: float = 0.3) -> tuple[float, float]:
    """Mean of the confident upper-body keypoints (nose, eyes, ears,
    shoulders); falls back to the mean of all confident keypoints."""
    arr = pose.as_array()
    conf = arr[:, 2] >= kp_conf_min
    upper = np.zeros(len(arr), dtype=bool)
    upper[list(UPPER_BODY)] = True
    chosen = conf & upper
    if not chosen.any():
        chosen = conf
    if not chosen.any():
        raise ValueError("pose has no confident keypoints")
    xy = arr[chosen, :2].mean(axis=0)
    return (float(xy[0]), float(xy[1]))


def kmeans_1d(values: Sequence[float] | np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Optimal 1-D k-means: labels plus ascending cluster centers.

    In one dimension the optimal clusters are contiguous runs of the sorted
    values, so the global optimum is found by dynamic programming over
    segment costs instead of Lloyd iterations.  Deterministic; labels are
    renumbered so centers ascend.
    """
    vals = np.asarray(values, dtype=float)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("values must be a non-empty 1-D sequence")
    if k < 1:
        raise ValueError("k must be >= 1")
    # Equal values always share a cluster: run the DP over the distinct
    # values weighted by multiplicity.
    x, inverse, w = np.unique(vals, return_inverse=True, return_counts=True)
    n = x.size
    if k > n:
        raise ValueError(f"k={k} exceeds the {n} distinct values")

    wf = w.astype(float)
    w0 = np.concatenate([[0.0], np.cumsum(wf)])
    s1 = np.concatenate([[0.0], np.cumsum(wf * x)])
    s2 = np.concatenate([[0.0], np.cumsum(wf * x * x)])

    # cost[i, j]: weighted within-cluster sum of squares of x[i..j].
    i_idx = np.arange(n)[:, None]
    j_idx = np.arange(n)[None, :]
    seg_w = w0[j_idx + 1] - w0[i_idx]
    seg_sum = s1[j_idx + 1] - s1[i_idx]
    seg_sq = s2[j_idx + 1] - s2[i_idx]
    with np.errstate(divide="ignore", invalid="ignore"):
        cost = seg_sq - seg_sum**2 / seg_w
    cost[j_idx < i_idx] = np.inf
    np.maximum(cost, 0.0, out=cost)

    best = np.full((k, n), np.inf)
    split = np.zeros((k, n), dtype=int)
    best[0] = cost[0]
    for m in range(1, k):
        # candidate split s: first s values use m clusters, x[s..j] is cluster m+1
        cand = best[m - 1][: n - 1, None] + cost[1:n, :]
        cand[np.arange(1, n)[:, None] > np.arange(n)[None, :]] = np.inf
        idx = np.argmin(cand, axis=0)
        best[m] = cand[idx, np.arange(n)]
        split[m] = idx + 1

    boundaries = np.empty(k + 1, dtype=int)
    boundaries[k] = n
    j = n - 1
    for m in range(k - 1, 0, -1):
        boundaries[m] = split[m][j]
        j = boundaries[m] - 1
    boundaries[0] = 0

    labels_distinct = np.empty(n, dtype=int)
    centers = np.empty(k, dtype=float)
    for c in range(k):
        lo, hi = boundaries[c], boundaries[c + 1]
        labels_distinct[lo:hi] = c
        centers[c] = (wf[lo:hi] * x[lo:hi]).sum() / wf[lo:hi].sum()

    return labels_distinct[inverse], centers


def _map_to_reference(centers: np.ndarray, count: int) -> np.ndarray:
    """Nearest of `count` evenly spaced unit-interval reference centers."""
    refs = (np.arange(count) + 0.5) / count
    return np.abs(centers[:, None] - refs[None, :]).argmin(axis=1)


class SeatAssigner:
    """Per-frame pose -> seat pipeline for one classroom configuration."""

    def __init__(self, cfg: ClassroomConfig):
        self.cfg = cfg
        self.homography = rectification_homography(cfg)
        self.distortion = DistortionParams.from_config(cfg)

    def rectify(self, points: np.ndarray) -> np.ndarray:
        """Image points -> unit-square coordinates."""
        pts = np.asarray(points, dtype=float)
        if not self.distortion.is_identity:
            pts = undistort(pts, self.distortion)
        return apply_homography(self.homography, pts)

    def assign(
        self, poses: Sequence[BodyPose], teacher_flags: Sequence[bool]
    ) -> list[SeatId | None]:
        """Seat per pose; None for teacher-flagged poses.

        Rows come from clustering rectified y with k = min(R, distinct
        values), columns likewise with C; cluster centers snap to the
        nearest of the evenly spaced per-row/column reference centers so
        numbering stays absolute when rows or columns are empty.
        """
        if len(poses) != len(teacher_flags):
            raise ValueError("poses and teacher_flags must align")
        out: list[SeatId | None] = [None] * len(poses)
        student_idx = [i for i, flag in enumerate(teacher_flags) if not flag]
        if not student_idx:
            return out

        pts = np.array(
            [representative_point(poses[i], self.cfg.kp_conf_min) for i in student_idx]
        )
        rect = self.rectify(pts)

        rows = self._axis_numbers(rect[:, 1], self.cfg.rows, self.cfg.row_origin_front)
        cols = self._axis_numbers(rect[:, 0], self.cfg.cols, self.cfg.col_origin_left)
        for i, r, c in zip(student_idx, rows, cols):
            out[i] = SeatId(int(r), int(c))
        return out

    @staticmethod
    def _axis_numbers(coords: np.ndarray, count: int, origin_low: bool) -> np.ndarray:
        k = min(count, int(np.unique(coords).size))
        labels, centers = kmeans_1d(coords, k)
        ref = _map_to_reference(centers, count)
        numbers = ref[labels] + 1
        if not origin_low:
            numbers = count + 1 - numbers
        return numbers


def assign_seats(
    poses: Sequence[BodyPose], teacher_flags: Sequence[bool], cfg: ClassroomConfig
) -> list[SeatId | None]:
    return SeatAssigner(cfg).assign(poses, teacher_flags)
