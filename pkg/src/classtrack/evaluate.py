"""Quantitative evaluation against ground truth: hand-raising matching
precision/recall, per-seat location accuracy, and event-count errors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dedup import iou
from .model import BehaviorCategory, SeatId, TRACKED_CATEGORIES
from .session import ClassSession, FramePrediction
from .simulate import GroundTruth


class EvaluationError(ValueError):
    pass


@dataclass
class MatchingReport:
    """Hand-raising matching quality.

    detected: boxes the pipeline saw; matched: boxes assigned to a pose;
    real: detected boxes that correspond to a true hand-raising (IoU >= 0.5
    against a truth box); correct: real boxes whose assigned seat equals the
    truth seat.  precision = correct/real, match_rate = matched/detected.
    """

    detected: int = 0
    matched: int = 0
    real: int = 0
    correct: int = 0

    @property
    def precision(self) -> float:
        return self.correct / self.real if self.real else 1.0

    @property
    def match_rate(self) -> float:
        return self.matched / self.detected if self.detected else 1.0


@dataclass
class SeatStats:
    legal: int = 0  # frames where the seat's student is locatable
    correct: int = 0  # frames where the predicted seat agrees

    @property
    def accuracy(self) -> float:
        return self.correct / self.legal if self.legal else 1.0


@dataclass
class SeatReport:
    per_seat: dict[SeatId, SeatStats] = field(default_factory=dict)

    @property
    def total_legal(self) -> int:
        return sum(s.legal for s in self.per_seat.values())

    @property
    def total_correct(self) -> int:
        return sum(s.correct for s in self.per_seat.values())

    @property
    def overall_accuracy(self) -> float:
        total = self.total_legal
        return self.total_correct / total if total else 1.0


@dataclass
class CountReport:
    per_category: dict[BehaviorCategory, tuple[int, int]] = field(default_factory=dict)
    per_seat: dict[SeatId, dict[BehaviorCategory, tuple[int, int]]] = field(
        default_factory=dict
    )

    def category_error(self, category: BehaviorCategory) -> int:
        predicted, truth = self.per_category[category]
        return abs(predicted - truth)

    @property
    def total_error(self) -> int:
        return sum(self.category_error(cat) for cat in self.per_category)


def _truth_by_frame(truth: GroundTruth) -> dict[int, object]:
    return {f.frame_index: f for f in truth.frames}


def _check_coverage(frames: Sequence[FramePrediction], truth: GroundTruth) -> None:
    pred_idx = {fp.frame_index for fp in frames}
    truth_idx = {f.frame_index for f in truth.frames}
    if pred_idx != truth_idx:
        missing = sorted(truth_idx ^ pred_idx)[:5]
        raise EvaluationError(f"prediction/truth frame coverage differs near {missing}")


def eval_matching(
    frames: Sequence[FramePrediction],
    truth: GroundTruth,
    iou_min: float = 0.5,
) -> MatchingReport:
    """Score per-frame hand-raising matches against truth boxes."""
    _check_coverage(frames, truth)
    by_frame = _truth_by_frame(truth)
    report = MatchingReport()
    for fp in frames:
        tf = by_frame[fp.frame_index]
        truth_hr = [b for b in tf.boxes if b.category == BehaviorCategory.HAND_RAISING]
        for pred in fp.hand_raising:
            report.detected += 1
            if pred.pose_index is not None:
                report.matched += 1
            best = None
            for tb in truth_hr:
                v = iou(pred.bbox, tb.bbox)
                if v >= iou_min and (best is None or v > best[0]):
                    best = (v, tb)
            if best is None:
                continue
            report.real += 1
            if pred.seat is not None and pred.seat == best[1].seat:
                report.correct += 1
    return report


def eval_seats(
    frames: Sequence[FramePrediction],
    truth: GroundTruth,
    seats: Sequence[SeatId] | None = None,
) -> SeatReport:
    """Per-seat located-frame counts; seats=None tracks every seat present
    in the truth."""
    _check_coverage(frames, truth)
    by_frame = _truth_by_frame(truth)

    truth_seats = {
        p.seat for f in truth.frames for p in f.poses if p.seat is not None
    }
    if seats is None:
        tracked = sorted(truth_seats)
    else:
        unknown = [s for s in seats if s not in truth_seats]
        if unknown:
            raise EvaluationError(f"seats absent from truth: {unknown}")
        tracked = list(seats)

    report = SeatReport(per_seat={seat: SeatStats() for seat in tracked})
    for fp in frames:
        tf = by_frame[fp.frame_index]
        if len(fp.seats) != len(tf.poses):
            raise EvaluationError(
                f"frame {fp.frame_index}: {len(fp.seats)} predicted poses vs "
                f"{len(tf.poses)} in truth"
            )
        for predicted, truth_pose in zip(fp.seats, tf.poses):
            if truth_pose.seat is None or not truth_pose.legal:
                continue
            stats = report.per_seat.get(truth_pose.seat)
            if stats is None:
                continue
            stats.legal += 1
            if predicted == truth_pose.seat:
                stats.correct += 1
    return report


def eval_counts(session: ClassSession, truth: GroundTruth) -> CountReport:
    """Deduplicated event counts vs scripted events, per category and seat."""
    report = CountReport()
    pred_by_seat: dict[SeatId | None, dict[BehaviorCategory, int]] = {}
    for ev in session.iter_events():
        pred_by_seat.setdefault(ev.seat, {c: 0 for c in TRACKED_CATEGORIES})
        pred_by_seat[ev.seat][ev.category] += 1
    truth_by_seat: dict[SeatId, dict[BehaviorCategory, int]] = {}
    for ev in truth.events:
        truth_by_seat.setdefault(ev.seat, {c: 0 for c in TRACKED_CATEGORIES})
        truth_by_seat[ev.seat][ev.category] += 1

    for cat in TRACKED_CATEGORIES:
        predicted = sum(counts[cat] for counts in pred_by_seat.values())
        scripted = sum(counts[cat] for counts in truth_by_seat.values())
        report.per_category[cat] = (predicted, scripted)

    seats = set(truth_by_seat) | {s for s in pred_by_seat if s is not None}
    for seat in sorted(seats):
        row = {}
        for cat in TRACKED_CATEGORIES:
            row[cat] = (
                pred_by_seat.get(seat, {}).get(cat, 0),
                truth_by_seat.get(seat, {}).get(cat, 0),
            )
        report.per_seat[seat] = row
    return report


# -- report rendering ---------------------------------------------------------


def format_matching_report(report: MatchingReport) -> str:
    return "\n".join(
        [
            "hand-raising matching",
            f"  detected boxes : {report.detected}",
            f"  matched boxes  : {report.matched}",
            f"  real boxes     : {report.real}",
            f"  correct        : {report.correct}",
            f"  precision      : {report.precision:.4f}",
            f"  match rate     : {report.match_rate:.4f}",
        ]
    )


def format_seat_report(report: SeatReport) -> str:
    lines = ["seat location", "  seat    legal  correct  accuracy"]
    for seat, stats in sorted(report.per_seat.items()):
        lines.append(
            f"  {str(seat):<7} {stats.legal:>5}  {stats.correct:>7}  {stats.accuracy:8.2f}"
        )
    lines.append(
        f"  total   {report.total_legal:>5}  {report.total_correct:>7}  "
        f"{report.overall_accuracy:8.4f}"
    )
    return "\n".join(lines)


def format_count_report(report: CountReport) -> str:
    lines = ["event counts (predicted / scripted)"]
    for cat in TRACKED_CATEGORIES:
        predicted, scripted = report.per_category[cat]
        lines.append(f"  {cat.value:<13} {predicted:>5} / {scripted:<5} error {abs(predicted - scripted)}")
    return "\n".join(lines)


def matching_report_to_dict(report: MatchingReport) -> dict:
    return {
        "detected": report.detected,
        "matched": report.matched,
        "real": report.real,
        "correct": report.correct,
        "precision": report.precision,
        "match_rate": report.match_rate,
    }


def seat_report_to_dict(report: SeatReport) -> dict:
    return {
        "per_seat": {
            str(seat): {
                "legal": stats.legal,
                "correct": stats.correct,
                "accuracy": stats.accuracy,
            }
            for seat, stats in sorted(report.per_seat.items())
        },
        "total_legal": report.total_legal,
        "total_correct": report.total_correct,
        "overall_accuracy": report.overall_accuracy,
    }


def count_report_to_dict(report: CountReport) -> dict:
    return {
        "per_category": {
            cat.value: {"predicted": p, "scripted": s}
            for cat, (p, s) in report.per_category.items()
        },
        "per_seat": {
            str(seat): {
                cat.value: {"predicted": p, "scripted": s}
                for cat, (p, s) in row.items()
            }
            for seat, row in report.per_seat.items()
        },
        "total_error": report.total_error,
    }
