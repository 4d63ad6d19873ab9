import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classtrack.dedup import BehaviorEvent, TrackedBox
from classtrack.model import BehaviorCategory, SeatId
from classtrack.session import (
    ClassSession,
    SessionMeta,
    dumps_session,
    engagement_score,
    flow,
    heatmap,
    loads_session,
    sequence,
)

from helpers import simple_config


def event(cat, seat=None, start_t=0.0, end_t=None, start_frame=None):
    sf = int(start_t / 3.0) if start_frame is None else start_frame
    et = start_t if end_t is None else end_t
    return BehaviorEvent(
        category=cat,
        start_frame=sf,
        end_frame=int(et / 3.0),
        start_t=start_t,
        end_t=et,
        members=[TrackedBox(sf, 0, (0.0, 0.0, 10.0, 10.0))],
        seat=seat,
    )


def make_session(duration=300.0, rows=5, cols=7):
    cfg = simple_config(rows, cols)
    return ClassSession(cfg, SessionMeta(course_id="t", duration_s=duration))


class TestAccumulate:
    def test_hand_raising_lands_on_its_seat(self):
        session = make_session()
        seat = SeatId(2, 7)
        session.mark_occupied(seat)
        session.accumulate(event(BehaviorCategory.HAND_RAISING, seat, 30.0))
        assert session.tracklets[seat].count(BehaviorCategory.HAND_RAISING) == 1
        assert session.check_conservation()

    def test_seatless_event_goes_to_unassigned(self):
        session = make_session()
        session.accumulate(event(BehaviorCategory.SMILING, None, 9.0))
        assert len(session.unassigned_events) == 1
        assert all(t.count(BehaviorCategory.SMILING) == 0 for t in session.tracklets.values())
        assert session.check_conservation()

    def test_same_seat_events_stay_sorted(self):
        session = make_session()
        seat = SeatId(1, 1)
        session.accumulate(event(BehaviorCategory.SLEEPING, seat, 60.0))
        session.accumulate(event(BehaviorCategory.SLEEPING, seat, 30.0))
        evs = session.tracklets[seat].events[BehaviorCategory.SLEEPING]
        assert [e.start_t for e in evs] == [30.0, 60.0]
        assert session.tracklets[seat].count(BehaviorCategory.SLEEPING) == 2

    def test_seat_outside_grid_rejected(self):
        session = make_session()
        with pytest.raises(ValueError):
            session.accumulate(event(BehaviorCategory.SMILING, SeatId(9, 9), 0.0))

    def test_teacher_event_rejected(self):
        session = make_session()
        with pytest.raises(ValueError):
            session.accumulate(event(BehaviorCategory.TEACHER, SeatId(1, 1), 0.0))


class TestEngagement:
    def test_neutral_with_no_events(self):
        session = make_session()
        seat = SeatId(1, 1)
        session.mark_occupied(seat)
        assert engagement_score(session.tracklets[seat], 0.0) == 0.5

    def test_three_positives(self):
        session = make_session()
        seat = SeatId(1, 1)
        session.mark_occupied(seat)
        for t in (3.0, 6.0, 9.0):
            session.accumulate(event(BehaviorCategory.HAND_RAISING, seat, t))
        assert engagement_score(session.tracklets[seat], 100.0) == pytest.approx(0.8)

    def test_two_negatives(self):
        session = make_session()
        seat = SeatId(1, 1)
        session.mark_occupied(seat)
        session.accumulate(event(BehaviorCategory.YAWNING, seat, 3.0))
        session.accumulate(event(BehaviorCategory.SLEEPING, seat, 9.0))
        assert engagement_score(session.tracklets[seat], 100.0) == pytest.approx(0.25)

    def test_unoccupied_seat_is_none(self):
        session = make_session()
        assert engagement_score(session.tracklets[SeatId(1, 1)], 10.0) is None

    def test_time_cutoff_respected(self):
        session = make_session()
        seat = SeatId(1, 1)
        session.mark_occupied(seat)
        session.accumulate(event(BehaviorCategory.SMILING, seat, 60.0))
        assert engagement_score(session.tracklets[seat], 30.0) == 0.5
        assert engagement_score(session.tracklets[seat], 60.0) == pytest.approx(2 / 3)

    @given(st.lists(st.sampled_from([c for c in BehaviorCategory if c != BehaviorCategory.TEACHER]), max_size=20))
    @settings(max_examples=80)
    def test_monotonicity_and_range(self, cats):
        session = make_session(duration=10_000.0)
        seat = SeatId(1, 1)
        session.mark_occupied(seat)
        prev = engagement_score(session.tracklets[seat], 1e9)
        assert prev == 0.5
        from classtrack.model import POSITIVE_CATEGORIES

        for i, cat in enumerate(cats):
            session.accumulate(event(cat, seat, 3.0 * (i + 1)))
            score = engagement_score(session.tracklets[seat], 1e9)
            assert 0.0 < score < 1.0
            if cat in POSITIVE_CATEGORIES:
                assert score > prev
            else:
                assert score < prev
            prev = score


class TestViews:
    def test_heatmap_neutral_at_start(self):
        session = make_session()
        for seat in (SeatId(1, 1), SeatId(3, 4)):
            session.mark_occupied(seat)
        grid = heatmap(session, 0.0)
        assert grid[0][0] == 0.5
        assert grid[2][3] == 0.5
        assert grid[0][1] is None

    def test_heatmap_after_smile(self):
        session = make_session()
        seat = SeatId(1, 1)
        session.mark_occupied(seat)
        session.accumulate(event(BehaviorCategory.SMILING, seat, 30.0))
        grid = heatmap(session, 60.0)
        assert grid[0][0] == pytest.approx(2 / 3)

    def test_heatmap_time_bounds(self):
        session = make_session(duration=300.0)
        with pytest.raises(ValueError):
            heatmap(session, -1.0)
        with pytest.raises(ValueError):
            heatmap(session, 301.0)

    def test_sequence_empty(self):
        session = make_session()
        assert sequence(session, SeatId(1, 1)) == []

    def test_sequence_sorted_with_tie_rule(self):
        session = make_session()
        seat = SeatId(2, 2)
        session.accumulate(event(BehaviorCategory.STANDING, seat, 30.0))
        session.accumulate(event(BehaviorCategory.SMILING, seat, 10.0))
        session.accumulate(event(BehaviorCategory.SLEEPING, seat, 30.0))
        out = sequence(session, seat)
        assert out == [
            (10.0, BehaviorCategory.SMILING),
            (30.0, BehaviorCategory.SLEEPING),  # 'sleeping' < 'standing'
            (30.0, BehaviorCategory.STANDING),
        ]

    def test_sequence_bad_seat(self):
        session = make_session()
        with pytest.raises(ValueError):
            sequence(session, SeatId(99, 1))

    def test_flow_empty(self):
        session = make_session(duration=30.0)
        out = flow(session)
        assert len(out) == 10
        assert all(all(v == 0 for v in counts.values()) for counts in out)

    def test_flow_bins_by_start_sample(self):
        session = make_session(duration=30.0)
        session.accumulate(event(BehaviorCategory.YAWNING, SeatId(1, 1), 9.0))
        out = flow(session)
        assert out[3][BehaviorCategory.YAWNING] == 1  # floor(9 / 3) = 3
        assert sum(c[BehaviorCategory.YAWNING] for c in out) == 1

    def test_flow_totals_conserved(self):
        session = make_session(duration=120.0)
        cats = [BehaviorCategory.SMILING, BehaviorCategory.SLEEPING, BehaviorCategory.HAND_RAISING]
        for i, cat in enumerate(cats * 3):
            session.accumulate(event(cat, SeatId(1, 1), 3.0 * i))
        session.accumulate(event(BehaviorCategory.SMILING, None, 33.0))
        out = flow(session)
        for cat in BehaviorCategory:
            if cat == BehaviorCategory.TEACHER:
                continue
            assert sum(c[cat] for c in out) == session.totals[cat]

    def test_timeline_length(self):
        session = make_session(duration=100.0)
        assert session.timeline_length == 34  # ceil(100 / 3)


class TestPersistence:
    def build(self):
        session = make_session(duration=120.0)
        session.mark_occupied(SeatId(1, 1))
        session.mark_occupied(SeatId(2, 5))
        session.accumulate(event(BehaviorCategory.HAND_RAISING, SeatId(2, 5), 30.0, 36.0))
        session.accumulate(event(BehaviorCategory.SLEEPING, SeatId(1, 1), 57.0, 63.0))
        session.accumulate(event(BehaviorCategory.SMILING, None, 90.0))
        return session

    def test_roundtrip_is_byte_exact(self):
        session = self.build()
        text = dumps_session(session)
        again = dumps_session(loads_session(text))
        assert again == text

    def test_save_load(self, tmp_path):
        from classtrack.session import load_session, save_session

        session = self.build()
        path = tmp_path / "s.json"
        save_session(session, path)
        loaded = load_session(path)
        assert dumps_session(loaded) == dumps_session(session)
        assert loaded.meta.duration_s == 120.0
        assert loaded.tracklets[SeatId(2, 5)].count(BehaviorCategory.HAND_RAISING) == 1
        assert loaded.occupancy[SeatId(1, 1)] is True

    def test_insertion_order_independent(self):
        events = [
            event(BehaviorCategory.HAND_RAISING, SeatId(2, 5), 30.0),
            event(BehaviorCategory.SLEEPING, SeatId(1, 1), 57.0),
            event(BehaviorCategory.SMILING, SeatId(2, 5), 12.0),
            event(BehaviorCategory.SMILING, None, 90.0),
        ]
        docs = set()
        for perm in itertools.permutations(events):
            session = make_session(duration=120.0)
            session.mark_occupied(SeatId(1, 1))
            session.mark_occupied(SeatId(2, 5))
            for ev in perm:
                session.accumulate(ev)
            assert session.check_conservation()
            docs.add(dumps_session(session))
        assert len(docs) == 1
