"""Detection-stream parsing, serialization and per-frame validation.

A stream is UTF-8 line-delimited JSON, one frame per line:

    {"frame": 0, "t": 0.0,
     "detections": [{"cat": "standing", "bbox": [x, y, w, h], "conf": 0.9}],
     "poses": [{"kps": [[x, y, conf], ... 17 entries ...]}]}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .config import ClassroomConfig
from .model import (
    BehaviorCategory,
    BodyPose,
    Detection,
    FrameRecord,
    NUM_KEYPOINTS,
    box_intersects_image,
)


class StreamFormatError(ValueError):
    """Malformed stream input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class StreamOrderError(ValueError):
    pass


def _parse_frame(obj: dict, line: int) -> FrameRecord:
    try:
        frame_index = obj["frame"]
        t = obj["t"]
        raw_dets = obj.get("detections", [])
        raw_poses = obj.get("poses", [])
    except (KeyError, TypeError) as exc:
        raise StreamFormatError(line, f"missing field: {exc}") from exc
    if not isinstance(frame_index, int) or frame_index < 0:
        raise StreamFormatError(line, f"bad frame index: {frame_index!r}")
    if not isinstance(t, (int, float)):
        raise StreamFormatError(line, f"bad timestamp: {t!r}")

    detections = []
    for i, d in enumerate(raw_dets):
        try:
            cat = BehaviorCategory(d["cat"])
            bbox = d["bbox"]
            conf = float(d["conf"])
        except (KeyError, TypeError, ValueError) as exc:
            raise StreamFormatError(line, f"detection {i}: {exc}") from exc
        if not (isinstance(bbox, list) and len(bbox) == 4):
            raise StreamFormatError(line, f"detection {i}: bbox must be [x, y, w, h]")
        detections.append(Detection(cat, tuple(float(v) for v in bbox), conf))

    poses = []
    for i, p in enumerate(raw_poses):
        try:
            kps = p["kps"]
        except (KeyError, TypeError) as exc:
            raise StreamFormatError(line, f"pose {i}: {exc}") from exc
        if not isinstance(kps, list) or len(kps) != NUM_KEYPOINTS:
            raise StreamFormatError(
                line, f"pose {i}: expected {NUM_KEYPOINTS} keypoints, got {len(kps)}"
            )
        try:
            triples = tuple((float(k[0]), float(k[1]), float(k[2])) for k in kps)
        except (TypeError, ValueError, IndexError) as exc:
            raise StreamFormatError(line, f"pose {i}: bad keypoint triple: {exc}") from exc
        poses.append(BodyPose(triples))

    return FrameRecord(frame_index, float(t), tuple(detections), tuple(poses))


def parse_stream(source: Iterable[str] | IO[str]) -> Iterator[FrameRecord]:
    """Yield FrameRecords from line-delimited text; constant memory per frame."""
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise StreamFormatError(line_no, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise StreamFormatError(line_no, "frame record must be a JSON object")
        yield _parse_frame(obj, line_no)


def serialize_frame(rec: FrameRecord) -> str:
    """Canonical single-line encoding; parse(serialize(rec)) == rec."""
    obj = {
        "frame": rec.frame_index,
        "t": rec.t,
        "detections": [
            {"cat": d.category.value, "bbox": list(d.bbox), "conf": d.confidence}
            for d in rec.detections
        ],
        "poses": [{"kps": [list(k) for k in p.keypoints]} for p in rec.poses],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_stream(records: Iterable[FrameRecord], sink: IO[str]) -> int:
    n = 0
    for rec in records:
        sink.write(serialize_frame(rec) + "\n")
        n += 1
    return n


@dataclass
class ValidationReport:
    """What validation dropped from a frame, and why."""

    dropped_poses: list[int] = field(default_factory=list)
    dropped_detections: list[int] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    # Original index of each surviving pose / detection.
    pose_index_map: list[int] = field(default_factory=list)
    detection_index_map: list[int] = field(default_factory=list)

    @property
    def dropped_count(self) -> int:
        return len(self.dropped_poses) + len(self.dropped_detections)


def _finite(*vals: float) -> bool:
    return all(math.isfinite(v) for v in vals)


def validate_frame(
    rec: FrameRecord,
    cfg: ClassroomConfig,
    prev_index: int | None = None,
) -> tuple[FrameRecord, ValidationReport]:
    """Filter out unusable poses and detections without mutating survivors.

    Raises StreamOrderError when frame_index does not strictly increase.
    """
    if prev_index is not None and rec.frame_index <= prev_index:
        raise StreamOrderError(
            f"frame index {rec.frame_index} does not increase past {prev_index}"
        )
    report = ValidationReport()

    detections = []
    for i, det in enumerate(rec.detections):
        x, y, w, h = det.bbox
        if not _finite(x, y, w, h, det.confidence):
            report.dropped_detections.append(i)
            report.warnings.append(f"detection {i}: non-finite values")
            continue
        if w <= 0 or h <= 0:
            report.dropped_detections.append(i)
            report.warnings.append(f"detection {i}: non-positive box size")
            continue
        if not (0.0 <= det.confidence <= 1.0):
            report.dropped_detections.append(i)
            report.warnings.append(f"detection {i}: confidence outside [0, 1]")
            continue
        if not box_intersects_image(det.bbox, cfg.image_w, cfg.image_h):
            report.dropped_detections.append(i)
            report.warnings.append(f"detection {i}: box outside the image")
            continue
        report.detection_index_map.append(i)
        detections.append(det)

    poses = []
    for i, pose in enumerate(rec.poses):
        arr = pose.as_array()
        if not _finite(*arr.reshape(-1)):
            report.dropped_poses.append(i)
            report.warnings.append(f"pose {i}: non-finite keypoints")
            continue
        if (arr[:, 2] < 0).any() or (arr[:, 2] > 1).any():
            report.dropped_poses.append(i)
            report.warnings.append(f"pose {i}: keypoint confidence outside [0, 1]")
            continue
        if not (arr[:, 2] >= cfg.kp_conf_min).any():
            report.dropped_poses.append(i)
            report.warnings.append(f"pose {i}: no keypoint above kp_conf_min")
            continue
        report.pose_index_map.append(i)
        poses.append(pose)

    validated = FrameRecord(rec.frame_index, rec.t, tuple(detections), tuple(poses))
    return validated, report


class StreamValidator:
    """Sequential validator that also watches the sampling cadence."""

    def __init__(self, cfg: ClassroomConfig):
        self.cfg = cfg
        self._prev_index: int | None = None
        self._prev_t: float | None = None

    def validate(self, rec: FrameRecord) -> tuple[FrameRecord, ValidationReport]:
        validated, report = validate_frame(rec, self.cfg, self._prev_index)
        if self._prev_t is not None:
            gap = rec.t - self._prev_t
            if gap < 0:
                raise StreamOrderError(f"timestamp decreases at frame {rec.frame_index}")
            lo = self.cfg.sample_interval_s * 0.9
            hi = self.cfg.sample_interval_s * 1.1
            if not (lo <= gap <= hi):
                report.warnings.append(
                    f"frame {rec.frame_index}: sample gap {gap:.3f}s outside "
                    f"{self.cfg.sample_interval_s}s +/- 10%"
                )
        self._prev_index = rec.frame_index
        self._prev_t = rec.t
        return validated, report
