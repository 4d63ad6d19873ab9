"""End-to-end stream analysis: validate -> dedup -> match -> seat -> session."""

from __future__ import annotations

from typing import Iterable

from .config import ClassroomConfig
from .dedup import BehaviorEvent, DedupTracker
from .matching import (
    assign_event_seat,
    flag_teachers,
    match_body_behavior,
    match_hand_raising,
)
from .model import BehaviorCategory, FrameRecord, SeatId
from .seating import SeatAssigner
from .session import (
    ClassSession,
    FramePrediction,
    HandRaisingPrediction,
    SessionMeta,
)
from .stream import StreamValidator


class StreamAnalyzer:
    """Incremental analyzer; feed() frames in order, then finalize().

    Keeps per-frame matches and seat assignments so closed events can be
    seated by majority vote, and so the session document carries the
    per-frame predictions evaluation needs.
    """

    def __init__(self, cfg: ClassroomConfig, course_id: str = "session"):
        self.cfg = cfg
        self.course_id = course_id
        self.validator = StreamValidator(cfg)
        self.assigner = SeatAssigner(cfg)
        self.dedup = DedupTracker.from_config(cfg)
        self.closed_events: list[BehaviorEvent] = []
        self.frame_predictions: list[FramePrediction] = []
        self.occupied: set[SeatId] = set()
        self.warnings: list[str] = []
        self.dropped = 0
        self._pose_by_det: dict[tuple[int, int], int | None] = {}
        self._seats_by_frame: dict[int, list[SeatId | None]] = {}
        self._last_t = 0.0
        self._frames = 0

    def feed(self, rec: FrameRecord) -> list[BehaviorEvent]:
        validated, report = self.validator.validate(rec)
        self.warnings.extend(report.warnings)
        self.dropped += report.dropped_count
        f = validated.frame_index

        teacher_boxes = [
            d.bbox for d in validated.detections if d.category == BehaviorCategory.TEACHER
        ]
        flags = flag_teachers(validated.poses, teacher_boxes, self.cfg.kp_conf_min)
        seats_local = self.assigner.assign(validated.poses, flags)

        # Seats keyed by the original pose index of the incoming record.
        seats = [None] * len(rec.poses)
        for local, orig in enumerate(report.pose_index_map):
            seats[orig] = seats_local[local]
        self._seats_by_frame[f] = seats
        self.occupied.update(s for s in seats if s is not None)

        # Matching runs on non-teacher poses; indices map back to originals.
        students = [i for i, flag in enumerate(flags) if not flag]
        student_poses = [validated.poses[i] for i in students]

        hr_boxes = []
        for det_idx, det in enumerate(validated.detections):
            if det.category == BehaviorCategory.TEACHER:
                continue
            if det.category == BehaviorCategory.HAND_RAISING:
                hr_boxes.append((det_idx, det))
            else:
                res = match_body_behavior(
                    det_idx,
                    det,
                    student_poses,
                    self.cfg.kp_conf_min,
                    self.cfg.match_radius_scale,
                )
                self._record_match(f, det_idx, res.pose_index, students, report)

        hr_predictions = []
        hr_results = match_hand_raising(
            hr_boxes,
            student_poses,
            self.cfg.image_w,
            self.cfg.image_h,
            self.cfg.kp_conf_min,
            self.cfg.hr_wrist_weight,
            self.cfg.hr_elbow_weight,
            self.cfg.hr_box_expand,
            self.cfg.match_radius_scale,
        )
        for (det_idx, det), res in zip(hr_boxes, hr_results):
            orig_pose = self._record_match(f, det_idx, res.pose_index, students, report)
            hr_predictions.append(
                HandRaisingPrediction(
                    det_index=det_idx,
                    bbox=det.bbox,
                    pose_index=orig_pose,
                    seat=None if orig_pose is None else seats[orig_pose],
                )
            )

        self.frame_predictions.append(
            FramePrediction(rec.frame_index, rec.t, seats, hr_predictions)
        )
        self._last_t = rec.t
        self._frames += 1

        closed = self.dedup.step(validated)
        self._seat_events(closed)
        self.closed_events.extend(closed)
        return closed

    def _record_match(self, frame, det_idx, local_pose, students, report) -> int | None:
        """Map a match in validated-student index space back to the original
        pose index and remember it for event seating."""
        orig = None
        if local_pose is not None:
            orig = report.pose_index_map[students[local_pose]]
        self._pose_by_det[(frame, det_idx)] = orig
        return orig

    def _seat_events(self, events: list[BehaviorEvent]) -> None:
        for ev in events:
            assign_event_seat(ev, self._pose_by_det, self._seats_by_frame)

    def snapshot(self, course_id: str | None = None) -> ClassSession:
        """Session view of everything closed so far (live mode)."""
        return self._build(self.closed_events, course_id or self.course_id)

    def finalize(self) -> ClassSession:
        tail = self.dedup.flush()
        self._seat_events(tail)
        self.closed_events.extend(tail)
        return self._build(self.closed_events, self.course_id)

    def _build(self, events, course_id: str) -> ClassSession:
        duration = self._last_t + self.cfg.sample_interval_s if self._frames else 0.0
        session = ClassSession(self.cfg, SessionMeta(course_id=course_id, duration_s=duration))
        for seat in self.occupied:
            session.mark_occupied(seat)
        for ev in events:
            session.accumulate(ev)
        session.frame_predictions = list(self.frame_predictions)
        return session


def analyze(
    records: Iterable[FrameRecord], cfg: ClassroomConfig, course_id: str = "session"
) -> ClassSession:
    """Run the full pipeline over a finite stream."""
    analyzer = StreamAnalyzer(cfg, course_id)
    for rec in records:
        analyzer.feed(rec)
    return analyzer.finalize()
