import numpy as np
import pytest

from indefsplit.densekernel import sym_eigen
from indefsplit.errors import ParameterError, SingularMatrixError
from indefsplit.generators import random_pencil_pair, random_sym_with_inertia
from indefsplit.homotopy import (
    BRACKET_TOL,
    count_report,
    crossing_eigenvalue,
    homotopy_matrix,
    trace,
)

# negative real eigenvalues of M^-1 A for the worked example (numpy.linalg oracle)
EXAMPLE_NEGATIVE = np.array([-19.78045203, -4.05163476, -0.40975445])
LISTED_THETA = np.array([0.2907, 0.8021, 0.9518])


def neg_count(values):
    return int(np.sum(values < 0))


class TestCrossingEigenvalue:
    def test_midpoint(self):
        assert crossing_eigenvalue(0.5, "T") == -1.0
        assert crossing_eigenvalue(0.5, "S") == 1.0

    def test_complement_value(self):
        assert crossing_eigenvalue(0.7093, "T") == pytest.approx(-2.4405, abs=1e-3)

    def test_signs(self):
        for theta in np.linspace(0.01, 0.99, 25):
            assert crossing_eigenvalue(theta, "T") < 0 < crossing_eigenvalue(theta, "S")

    def test_out_of_range(self):
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ParameterError):
                crossing_eigenvalue(bad, "T")

    def test_bad_kind(self):
        with pytest.raises(ParameterError):
            crossing_eigenvalue(0.5, "X")

    def test_homotopy_singular_at_crossing(self):
        # lambda = theta / (theta - 1) makes (1 - theta) A + theta M singular
        a, m = random_pencil_pair([-3.0, 0.5, 2.0], [1.0, -1.0, 1.0], 4)
        theta = 3.0 / 4.0
        assert crossing_eigenvalue(theta, "T") == pytest.approx(-3.0)
        w = np.linalg.eigvalsh(homotopy_matrix(a, m, theta, "T"))
        assert np.min(np.abs(w)) <= 1e-12 * np.max(np.abs(w)) * 10


class TestTrace:
    def test_identity_pair(self):
        tr = trace(np.eye(3), np.eye(3), "T", steps=32)
        assert np.all(tr.curves == 1.0)
        assert tr.crossing_count == 0

    def test_worked_example_kind_t(self, example_pair):
        tr = trace(*example_pair, "T")
        assert tr.crossing_count == 3
        assert np.allclose(np.sort(tr.implied_eigenvalues), EXAMPLE_NEGATIVE, atol=1e-7)
        theta_oracle = np.sort(EXAMPLE_NEGATIVE / (EXAMPLE_NEGATIVE - 1.0))
        assert np.allclose(np.sort(tr.theta_hats), theta_oracle, atol=1e-9)
        # the listed crossing locations agree with the computed ones directly
        assert np.max(np.abs(np.sort(tr.theta_hats) - LISTED_THETA)) <= 1e-3

    def test_worked_example_kind_s(self, example_pair):
        assert trace(*example_pair, "S").crossing_count == 0

    def test_grid_and_endpoints(self, example_pair):
        a, m = example_pair
        for kind, sign in (("T", 1.0), ("S", -1.0)):
            tr = trace(a, m, kind, steps=64)
            assert tr.theta_grid[0] == 0.0 and tr.theta_grid[-1] == 1.0
            assert len(tr.theta_grid) == 65 and np.all(np.diff(tr.theta_grid) > 0)
            assert tr.curves.shape == (65, 5)
            assert np.all(np.diff(tr.curves, axis=1) >= 0)
            assert np.max(np.abs(tr.curves[0] - sym_eigen(a).eigenvalues)) <= 1e-9
            assert np.max(np.abs(tr.curves[-1] - sym_eigen(sign * m).eigenvalues)) <= 1e-9

    def test_two_crossings_in_one_cell(self):
        # implied thetas 0.5 and 0.50001 share a grid cell at 512 steps
        lam2 = -0.50001 / 0.49999
        a, m = random_pencil_pair([-1.0, lam2, 0.7, 2.0], [1.0, 1.0, -1.0, 1.0], 9)
        tr = trace(a, m, "T")
        assert tr.crossing_count == 2
        assert np.allclose(np.sort(tr.implied_eigenvalues), np.sort([-1.0, lam2]), atol=1e-8)
        assert abs(tr.theta_hats[0] - tr.theta_hats[1]) > 5e-6

    def test_double_eigenvalue_counts_twice(self):
        a, m = random_pencil_pair([-2.0, -2.0, 0.5], [1.0, 1.0, -1.0], 3)
        tr = trace(a, m, "T")
        assert tr.crossing_count == 2
        assert tr.crossings[0].theta_hat == tr.crossings[1].theta_hat
        assert np.allclose(tr.implied_eigenvalues, -2.0, atol=1e-8)

    def test_opposite_coincident_crossings_cancel(self):
        # two curves cross zero at the same theta in opposite directions:
        # the negative count never changes, so nothing is reported
        a, m = random_pencil_pair([-2.0, -2.0, 0.5], [1.0, -1.0, 1.0], 3)
        assert trace(a, m, "T").crossing_count == 0

    def test_crossing_fields(self, mismatched_suite):
        for res in mismatched_suite[:200]:
            for tr, sign in ((res.traj_t, -1), (res.traj_s, 1)):
                for c in tr.crossings:
                    assert 0.0 < c.theta_hat < 1.0
                    assert c.bracket_width <= BRACKET_TOL
                    assert np.sign(c.implied_pencil_eigenvalue) == sign
                    assert c.direction in (-1, 1)
                assert list(tr.theta_hats) == sorted(tr.theta_hats)

    def test_count_change_parity(self, mismatched_suite, matched_suite):
        for res in mismatched_suite + matched_suite:
            for tr in (res.traj_t, res.traj_s):
                jump = abs(int(tr.neg_counts[-1]) - int(tr.neg_counts[0]))
                assert tr.crossing_count >= jump
                assert (tr.crossing_count - jump) % 2 == 0
                net = sum(c.direction for c in tr.crossings)
                assert net == int(tr.neg_counts[-1]) - int(tr.neg_counts[0])

    def test_endpoint_counts_are_inertias(self, mismatched_suite):
        for res in mismatched_suite[:100]:
            assert res.traj_t.neg_counts[0] == neg_count(np.linalg.eigvalsh(res.a))
            assert res.traj_t.neg_counts[-1] == neg_count(np.linalg.eigvalsh(res.m))
            assert res.traj_s.neg_counts[-1] == neg_count(np.linalg.eigvalsh(-res.m))

    def test_crossings_match_pencil(self, mismatched_suite, matched_suite):
        for res in mismatched_suite + matched_suite:
            cls = res.report.classification
            assert res.traj_t.crossing_count == cls.neg_count
            assert res.traj_s.crossing_count == cls.pos_count
            if cls.neg_count:
                assert np.max(np.abs(np.sort(res.traj_t.implied_eigenvalues) - cls.negative_real)) <= 1e-6
            if cls.pos_count:
                assert np.max(np.abs(np.sort(res.traj_s.implied_eigenvalues) - cls.positive_real)) <= 1e-6

    def test_without_refinement(self, example_pair):
        tr = trace(*example_pair, "T", refine=False)
        assert tr.crossing_count == 3 and not tr.refined

    def test_too_few_steps(self):
        with pytest.raises(ParameterError):
            trace(np.eye(2), np.eye(2), "T", steps=15)

    def test_singular_input(self):
        with pytest.raises(SingularMatrixError, match=r"A is singular: inertia \(1, 1, 0\)"):
            trace(np.diag([1.0, 0.0]), np.eye(2))
        with pytest.raises(SingularMatrixError, match="M is singular"):
            trace(np.eye(2), np.diag([1.0, 0.0]))

    def test_bad_kind_and_shape(self):
        with pytest.raises(ParameterError):
            trace(np.eye(2), np.eye(2), "U")
        with pytest.raises(ParameterError):
            trace(np.eye(2), np.eye(3))


class TestCountReport:
    def test_worked_example(self, example_pair):
        cr = count_report(*example_pair)
        assert (cr.p, cr.n, cr.r) == (3, 2, -1)
        assert (cr.neg_real_count, cr.s, cr.pos_real_count, cr.t) == (3, 1, 0, 0)
        assert cr.proposition_holds and cr.corollary_holds

    def test_identity(self):
        cr = count_report(np.eye(2), np.eye(2))
        assert (cr.r, cr.neg_real_count, cr.s, cr.pos_real_count, cr.t) == (0, 0, 0, 2, 0)

    def test_sign_flip(self):
        a = np.diag([1.0, -1.0])
        cr = count_report(a, -a)
        assert (cr.r, cr.neg_real_count, cr.s, cr.pos_real_count) == (0, 2, 1, 0)
        assert cr.proposition_holds and cr.corollary_holds

    def test_bounds_over_suite(self, mismatched_suite, matched_suite):
        for res in mismatched_suite + matched_suite:
            cr = res.report.count_report
            assert cr.proposition_holds and cr.corollary_holds
            assert cr.neg_real_count == abs(cr.r) + 2 * cr.s
            assert cr.pos_real_count == abs(cr.p + cr.r - cr.n) + 2 * cr.t
            assert cr.neg_real_count + cr.pos_real_count <= cr.p + cr.n
            assert cr.s <= cr.s_max and cr.t <= cr.t_max

    def test_matched_suite_has_equal_inertia(self, matched_suite):
        assert all(res.report.count_report.r == 0 for res in matched_suite)

    def test_all_shifts_covered(self, mismatched_suite):
        shifts = {res.report.count_report.r for res in mismatched_suite}
        assert min(shifts) <= -5 and max(shifts) >= 5

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            count_report(np.diag([1.0, 0.0]), np.eye(2))

    def test_random_sym_pair(self):
        a = random_sym_with_inertia(3, 1, 1)
        m = random_sym_with_inertia(1, 3, 2)
        cr = count_report(a, m)
        assert cr.r == -2 and cr.neg_real_count >= 2
