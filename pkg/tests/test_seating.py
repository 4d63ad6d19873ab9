import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from classtrack.model import SeatId
from classtrack.seating import (
    SeatAssigner,
    assign_seats,
    kmeans_1d,
    representative_point,
)

from helpers import (
    exhaustive_kmeans_sse,
    grid_pose_at,
    kmeans_sse,
    pose_from_points,
    rectangle_config,
)


class TestRepresentativePoint:
    def test_single_confident_nose(self):
        pose = pose_from_points({0: (100.0, 200.0)})
        assert representative_point(pose) == (100.0, 200.0)

    def test_upper_body_mean(self):
        pose = pose_from_points({0: (100.0, 280.0), 5: (90.0, 300.0), 6: (110.0, 300.0)})
        x, y = representative_point(pose)
        assert x == pytest.approx(100.0, abs=1e-9)
        assert y == pytest.approx(880.0 / 3.0, abs=1e-9)  # hand-computed mean

    def test_fallback_to_all_confident(self):
        pose = pose_from_points({15: (50.0, 900.0), 16: (70.0, 900.0)})
        assert representative_point(pose) == pytest.approx((60.0, 900.0))

    def test_upper_body_preferred_over_lower(self):
        pose = pose_from_points({0: (10.0, 10.0), 15: (500.0, 900.0)})
        assert representative_point(pose) == (10.0, 10.0)

    def test_no_confident_keypoints_rejected(self):
        pose = pose_from_points({})
        with pytest.raises(ValueError):
            representative_point(pose)


class TestKmeans1d:
    def test_two_well_separated_pairs(self):
        labels, centers = kmeans_1d([1.0, 2.0, 101.0, 102.0], 2)
        assert labels.tolist() == [0, 0, 1, 1]
        assert centers.tolist() == [1.5, 101.5]

    def test_k_equals_one(self):
        labels, centers = kmeans_1d([3.0, 5.0, 10.0], 1)
        assert labels.tolist() == [0, 0, 0]
        assert centers.tolist() == [6.0]

    def test_k_equals_distinct_count(self):
        labels, centers = kmeans_1d([5.0, 1.0, 3.0], 3)
        assert labels.tolist() == [2, 0, 1]
        assert centers.tolist() == [1.0, 3.0, 5.0]

    def test_infeasible_k_rejected(self):
        with pytest.raises(ValueError):
            kmeans_1d([1.0, 1.0, 2.0], 3)

    def test_local_minimum_trap_avoided(self):
        # Naive seeded Lloyd collapses a middle cluster here.
        values = [1.0, 2.0, 3.0, 4.0, 100.0, 101.0, 102.0, 103.0]
        labels, centers = kmeans_1d(values, 3)
        sse = kmeans_sse(values, labels, centers)
        assert sse == pytest.approx(exhaustive_kmeans_sse(values, 3), abs=1e-9)

    @given(
        st.lists(st.floats(-100, 100), min_size=2, max_size=12),
        st.integers(1, 4),
    )
    @settings(max_examples=200)
    def test_matches_exhaustive_oracle(self, values, k):
        distinct = len(set(values))
        if k > distinct:
            k = distinct
        labels, centers = kmeans_1d(values, k)
        assert kmeans_sse(values, labels, centers) == pytest.approx(
            exhaustive_kmeans_sse(values, k), abs=1e-9
        )

    @given(st.lists(st.floats(-50, 50), min_size=1, max_size=20), st.integers(1, 5))
    @settings(max_examples=200)
    def test_contiguous_and_sorted(self, values, k):
        distinct = len(set(values))
        k = min(k, distinct)
        labels, centers = kmeans_1d(values, k)
        assert np.all(np.diff(centers) > 0) or len(centers) == 1
        order = np.argsort(np.asarray(values), kind="stable")
        runs = labels[order]
        assert np.all(np.diff(runs) >= 0)  # non-decreasing runs in sorted order
        assert set(runs.tolist()) == set(range(k))  # every cluster non-empty

    def test_deterministic(self):
        values = np.random.default_rng(5).uniform(0, 10, 30).tolist()
        a = kmeans_1d(values, 4)
        b = kmeans_1d(values, 4)
        assert a[0].tolist() == b[0].tolist()
        assert a[1].tolist() == b[1].tolist()


class TestAssignSeats:
    def test_single_pose_single_seat(self):
        cfg = rectangle_config(1, 1)
        pose = grid_pose_at(cfg, 1, 1)
        assert assign_seats([pose], [False], cfg) == [SeatId(1, 1)]

    def test_full_grid_recovers_every_cell(self):
        cfg = rectangle_config(5, 7)
        poses, expected = [], []
        for r in range(1, 6):
            for c in range(1, 8):
                poses.append(grid_pose_at(cfg, r, c))
                expected.append(SeatId(r, c))
        assert assign_seats(poses, [False] * len(poses), cfg) == expected

    def test_empty_back_row_keeps_absolute_numbering(self):
        cfg = rectangle_config(5, 7)
        poses, expected = [], []
        for r in range(1, 5):  # row 5 absent
            for c in range(1, 8):
                poses.append(grid_pose_at(cfg, r, c))
                expected.append(SeatId(r, c))
        assert assign_seats(poses, [False] * len(poses), cfg) == expected

    def test_empty_middle_column_keeps_absolute_numbering(self):
        cfg = rectangle_config(3, 5)
        poses, expected = [], []
        for r in range(1, 4):
            for c in (1, 2, 4, 5):  # column 3 absent
                poses.append(grid_pose_at(cfg, r, c))
                expected.append(SeatId(r, c))
        assert assign_seats(poses, [False] * len(poses), cfg) == expected

    def test_teachers_excluded(self):
        cfg = rectangle_config(2, 2)
        poses = [grid_pose_at(cfg, 1, 1), grid_pose_at(cfg, 2, 2)]
        out = assign_seats(poses, [True, False], cfg)
        assert out[0] is None
        assert out[1] is not None

    def test_all_teachers_gives_empty_result(self):
        cfg = rectangle_config(2, 2)
        poses = [grid_pose_at(cfg, 1, 1)]
        assert assign_seats(poses, [True], cfg) == [None]

    def test_permutation_invariance(self):
        cfg = rectangle_config(4, 6)
        rng = np.random.default_rng(7)
        poses = []
        for r in range(1, 5):
            for c in range(1, 7):
                poses.append(grid_pose_at(cfg, r, c))
        base = assign_seats(poses, [False] * len(poses), cfg)
        perm = rng.permutation(len(poses))
        shuffled = [poses[i] for i in perm]
        out = assign_seats(shuffled, [False] * len(poses), cfg)
        assert out == [base[i] for i in perm]

    def test_row_monotone_in_rectified_y(self):
        cfg = rectangle_config(4, 3)
        rng = np.random.default_rng(9)
        assigner = SeatAssigner(cfg)
        for _ in range(20):
            n = int(rng.integers(2, 10))
            xs = rng.choice([400.0, 900.0, 1500.0], n)  # shared columns
            ys = rng.uniform(150, 950, n)
            poses = [pose_from_points({0: (x, y)}) for x, y in zip(xs, ys)]
            seats = assigner.assign(poses, [False] * n)
            for i in range(n):
                for j in range(n):
                    if abs(xs[i] - xs[j]) < 1e-9 and ys[i] > ys[j]:
                        assert seats[i].row >= seats[j].row

    def test_flipped_origins(self):
        cfg = rectangle_config(2, 2, row_origin_front=False, col_origin_left=False)
        poses = [grid_pose_at(cfg, 1, 1), grid_pose_at(cfg, 2, 2)]
        out = assign_seats(poses, [False, False], cfg)
        assert out == [SeatId(2, 2), SeatId(1, 1)]
