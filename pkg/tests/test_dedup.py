import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classtrack.dedup import DedupTracker, iou
from classtrack.model import BehaviorCategory, Detection, FrameRecord

from helpers import pixel_iou


def make_frame(i, dets):
    return FrameRecord(i, i * 3.0, tuple(dets), ())


class TestIou:
    def test_identical(self):
        assert iou((0, 0, 10, 10), (0, 0, 10, 10)) == 1.0

    def test_disjoint(self):
        assert iou((0, 0, 10, 10), (20, 20, 5, 5)) == 0.0

    def test_half_overlap_is_one_third(self):
        a, b = (0, 0, 10, 10), (5, 0, 10, 10)
        assert iou(a, b) == pytest.approx(1 / 3, abs=1e-12)
        assert iou(a, b) == pytest.approx(pixel_iou(a, b), abs=1e-12)

    def test_nonpositive_size_rejected(self):
        with pytest.raises(ValueError):
            iou((0, 0, 0, 10), (0, 0, 10, 10))
        with pytest.raises(ValueError):
            iou((0, 0, 10, 10), (0, 0, 10, -1))

    @given(
        st.tuples(
            st.integers(0, 40), st.integers(0, 40),
            st.integers(1, 50), st.integers(1, 50),
        ),
        st.tuples(
            st.integers(0, 40), st.integers(0, 40),
            st.integers(1, 50), st.integers(1, 50),
        ),
    )
    @settings(max_examples=200)
    def test_matches_pixel_count_oracle(self, a, b):
        assert iou(a, b) == pytest.approx(pixel_iou(a, b), abs=1e-6)
        assert iou(a, b) == pytest.approx(iou(b, a), abs=1e-12)
        assert 0.0 <= iou(a, b) <= 1.0


class TestTracker:
    def test_event_emitted_after_grace_misses(self):
        tracker = DedupTracker(0.2, 2)
        box = (100.0, 100.0, 10.0, 10.0)
        events = []
        for i in range(6):
            dets = [Detection(BehaviorCategory.STANDING, box, 0.9)] if i <= 2 else []
            events.extend(tracker.step(make_frame(i, dets)))
            if i < 5:
                assert events == []  # grace window still open through frame 4
        assert len(events) == 1
        ev = events[0]
        assert (ev.start_frame, ev.end_frame) == (0, 2)
        assert len(ev.members) == 3
        assert ev.category == BehaviorCategory.STANDING

    def test_disjoint_boxes_never_merge(self):
        tracker = DedupTracker(0.2, 2)
        dets = [
            Detection(BehaviorCategory.HAND_RAISING, (0, 0, 10, 10), 0.9),
            Detection(BehaviorCategory.HAND_RAISING, (500, 500, 10, 10), 0.9),
        ]
        tracker.step(make_frame(0, dets))
        assert len(tracker.tracks) == 2
        events = tracker.flush()
        assert len(events) == 2

    def test_drifting_box_stays_one_event(self):
        tracker = DedupTracker(0.2, 2)
        boxes = [(float(2 * i), 0.0, 10.0, 10.0) for i in range(5)]
        # the derived premise: consecutive IoUs all clear the threshold
        for a, b in zip(boxes, boxes[1:]):
            assert iou(a, b) >= 0.2
        for i, b in enumerate(boxes):
            assert tracker.step(make_frame(i, [Detection(BehaviorCategory.SMILING, b, 0.9)])) == []
        events = tracker.flush()
        assert len(events) == 1
        assert len(events[0].members) == 5

    def test_categories_never_mix(self):
        tracker = DedupTracker(0.2, 2)
        box = (10.0, 10.0, 20.0, 20.0)
        tracker.step(make_frame(0, [Detection(BehaviorCategory.STANDING, box, 0.9)]))
        tracker.step(make_frame(1, [Detection(BehaviorCategory.SLEEPING, box, 0.9)]))
        assert len(tracker.tracks) == 2
        assert {t.category for t in tracker.tracks} == {
            BehaviorCategory.STANDING,
            BehaviorCategory.SLEEPING,
        }

    def test_teacher_boxes_ignored(self):
        tracker = DedupTracker(0.2, 2)
        tracker.step(make_frame(0, [Detection(BehaviorCategory.TEACHER, (0, 0, 10, 10), 0.9)]))
        assert tracker.tracks == []
        assert tracker.flush() == []

    def test_flush_cases(self):
        tracker = DedupTracker(0.2, 2)
        assert tracker.flush() == []
        cats = [BehaviorCategory.STANDING, BehaviorCategory.YAWNING, BehaviorCategory.SMILING]
        dets = [Detection(c, (i * 100.0, 0.0, 10.0, 10.0), 0.9) for i, c in enumerate(cats)]
        tracker.step(make_frame(0, dets))
        events = tracker.flush()
        assert [e.category for e in events] == cats
        assert tracker.flush() == []

    def test_greedy_prefers_higher_iou(self):
        tracker = DedupTracker(0.2, 2)
        tracker.step(make_frame(0, [
            Detection(BehaviorCategory.STANDING, (0.0, 0.0, 10.0, 10.0), 0.9),
            Detection(BehaviorCategory.STANDING, (12.0, 0.0, 10.0, 10.0), 0.9),
        ]))
        # detection order reversed; each must extend its own track
        tracker.step(make_frame(1, [
            Detection(BehaviorCategory.STANDING, (12.5, 0.0, 10.0, 10.0), 0.9),
            Detection(BehaviorCategory.STANDING, (0.5, 0.0, 10.0, 10.0), 0.9),
        ]))
        events = sorted(tracker.flush(), key=lambda e: e.members[0].bbox[0])
        assert len(events) == 2
        assert [m.bbox[0] for m in events[0].members] == [0.0, 0.5]
        assert [m.bbox[0] for m in events[1].members] == [12.0, 12.5]

    def test_conservation_on_random_streams(self):
        rng = np.random.default_rng(3)
        cats = list(BehaviorCategory)
        tracker = DedupTracker(0.2, 2)
        total_dets = 0
        events = []
        for i in range(60):
            dets = []
            for _ in range(rng.integers(0, 6)):
                cat = cats[rng.integers(0, 5)]  # tracked categories only
                x, y = rng.uniform(0, 400, 2)
                dets.append(Detection(cat, (float(x), float(y), 20.0, 20.0), 0.9))
            total_dets += len(dets)
            events.extend(tracker.step(make_frame(i, dets)))
        events.extend(tracker.flush())
        member_total = sum(len(e.members) for e in events)
        assert member_total == total_dets  # every detection in exactly one track
        assert len(events) <= total_dets

    def test_determinism(self):
        def run():
            rng = np.random.default_rng(11)
            tracker = DedupTracker(0.2, 2)
            out = []
            for i in range(40):
                dets = [
                    Detection(
                        BehaviorCategory.HAND_RAISING,
                        (float(rng.uniform(0, 300)), float(rng.uniform(0, 300)), 15.0, 15.0),
                        0.9,
                    )
                    for _ in range(rng.integers(0, 4))
                ]
                out.extend(tracker.step(make_frame(i, dets)))
            out.extend(tracker.flush())
            return [(e.category, e.start_frame, e.end_frame, tuple(m.bbox for m in e.members)) for e in out]

        assert run() == run()
