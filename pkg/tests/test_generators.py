import numpy as np
import pytest

from indefsplit.densekernel import ldlt_inertia
from indefsplit.errors import NotPositiveDefiniteError, ParameterError
from indefsplit.generators import (
    block_diag_preconditioner,
    constraint_preconditioner,
    paper_example,
    random_full_rank,
    random_orthogonal,
    random_pencil_pair,
    random_spd,
    random_sym_with_inertia,
    saddle_point,
)
from indefsplit.pencil import pencil_spectrum, spd_similarity_check


class TestWorkedExample:
    def test_entries(self):
        a, m = paper_example()
        assert a[0, 0] == 0.33
        assert a[2, 2] == -0.32
        assert m[4, 4] == 0.35

    def test_symmetric(self):
        a, m = paper_example()
        assert np.array_equal(a, a.T)
        assert np.array_equal(m, m.T)

    def test_fresh_copies(self):
        a, _ = paper_example()
        a[0, 0] = 99.0
        assert paper_example()[0][0, 0] == 0.33


class TestRandomSymmetric:
    def test_spd(self):
        a = random_sym_with_inertia(2, 0, 1)
        assert a.shape == (2, 2)
        assert ldlt_inertia(a)[1] == (2, 0, 0)

    def test_indefinite(self):
        assert ldlt_inertia(random_sym_with_inertia(3, 2, 7))[1] == (3, 0, 2)

    def test_spectrum_bounds(self):
        for seed in range(50):
            w = np.linalg.eigvalsh(random_sym_with_inertia(4, 3, seed))
            assert np.all((np.abs(w) >= 0.1 - 1e-12) & (np.abs(w) <= 1.0 + 1e-12))

    def test_seed_determinism(self):
        assert np.array_equal(random_sym_with_inertia(3, 3, 42), random_sym_with_inertia(3, 3, 42))
        assert not np.array_equal(random_sym_with_inertia(3, 3, 42), random_sym_with_inertia(3, 3, 43))

    def test_inertia_postcondition(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            dim = int(rng.integers(1, 11))
            p = int(rng.integers(0, dim + 1))
            a = random_sym_with_inertia(p, dim - p, int(rng.integers(2**62)))
            assert np.array_equal(a, a.T)
            w = np.linalg.eigvalsh(a)
            assert (int(np.sum(w > 0)), int(np.sum(w < 0))) == (p, dim - p)

    def test_orthogonal(self):
        q = random_orthogonal(7, np.random.default_rng(3))
        assert np.max(np.abs(q.T @ q - np.eye(7))) <= 1e-13

    def test_bad_sizes(self):
        with pytest.raises(ParameterError):
            random_sym_with_inertia(0, 0, 1)
        with pytest.raises(ParameterError):
            random_sym_with_inertia(-1, 3, 1)


class TestFullRank:
    def test_singular_values(self):
        for seed in range(30):
            b = random_full_rank(3, 5, seed)
            assert b.shape == (3, 5)
            assert np.linalg.svd(b, compute_uv=False)[-1] >= 1e-3

    def test_too_many_rows(self):
        with pytest.raises(ParameterError):
            random_full_rank(4, 3, 0)


class TestPencilPair:
    def test_prescribed_spectrum(self):
        ratios = np.array([-2.0, 0.5, 0.5, 3.0])
        a, m = random_pencil_pair(ratios, [1.0, -1.0, 1.0, -1.0], 5)
        ev = np.linalg.eigvals(np.linalg.solve(m, a))
        assert np.allclose(np.sort(ev.real), np.sort(ratios), atol=1e-10)
        assert np.allclose(ev.imag, 0.0, atol=1e-10)

    def test_signs_fix_inertia_of_m(self):
        _, m = random_pencil_pair([1.0, 2.0, 3.0], [1.0, 1.0, -1.0], 0)
        assert ldlt_inertia(m)[1] == (2, 0, 1)

    def test_rejects_zero_ratio(self):
        with pytest.raises(ParameterError):
            random_pencil_pair([0.0, 1.0], [1.0, 1.0], 0)


class TestSaddlePoint:
    def test_identity_block(self):
        sp = saddle_point(np.eye(2), [[1.0, 0.0]])
        assert sp.assembled.shape == (3, 3)
        assert sp.inertia == (2, 0, 1)
        assert np.allclose(sp.schur, [[-1.0]])

    def test_diagonal_block(self):
        sp = saddle_point(np.diag([2.0, 3.0]), [[1.0, 1.0]])
        assert sp.inertia == (2, 0, 1)
        assert np.isclose(sp.schur[0, 0], -(1 / 2 + 1 / 3))
        w = np.linalg.eigvalsh(sp.assembled)
        assert (int(np.sum(w > 0)), int(np.sum(w < 0))) == (2, 1)

    def test_random_m4_n2(self):
        sp = saddle_point(random_spd(4, 1), random_full_rank(2, 4, 2))
        assert sp.inertia == (4, 0, 2)

    def test_blocks_exact(self):
        h = random_spd(3, 4)
        b = random_full_rank(2, 3, 5)
        sp = saddle_point(h, b)
        assert np.array_equal(sp.assembled[:3, :3], h)
        assert np.array_equal(sp.assembled[3:, :3], b)
        assert np.array_equal(sp.assembled[:3, 3:], b.T)
        assert np.all(sp.assembled[3:, 3:] == 0.0)
        assert (sp.m, sp.n) == (3, 2)

    def test_congruence_across_seeds(self):
        rng = np.random.default_rng(77)
        for _ in range(200):
            m = int(rng.integers(1, 7))
            n = int(rng.integers(1, m + 1))
            sp = saddle_point(random_spd(m, int(rng.integers(2**62))), random_full_rank(n, m, int(rng.integers(2**62))))
            assert sp.inertia == (m, 0, n)
            assert sp.congruence_ok
            assert sp.congruence_residual <= 1e-8

    def test_indefinite_h(self):
        # the congruence identity does not need H definite
        h = random_sym_with_inertia(2, 1, 3)
        sp = saddle_point(h, random_full_rank(1, 3, 4))
        assert sp.congruence_ok
        assert sp.inertia_h == (2, 0, 1)

    def test_singular_h(self):
        sp = saddle_point(np.diag([1.0, 0.0]), [[0.0, 1.0]])
        assert sp.schur is None and sp.congruence_ok is None
        # eigenvalues 1 and +-1
        assert sp.inertia == (2, 0, 1)

    def test_shape_errors(self):
        with pytest.raises(ParameterError):
            saddle_point(np.eye(2), np.ones((1, 3)))
        with pytest.raises(ParameterError):
            saddle_point(np.eye(2), np.ones((3, 2)))


class TestPreconditioners:
    def test_constraint_identity(self):
        sp = constraint_preconditioner(np.eye(2), [[1.0, 1.0]])
        assert sp.assembled.shape == (3, 3)
        assert sp.inertia == (2, 0, 1)

    def test_constraint_pairing(self):
        a = saddle_point(np.diag([2.0, 3.0]), [[1.0, 1.0]]).assembled
        m = constraint_preconditioner(np.eye(2), [[1.0, 1.0]]).assembled
        cls = pencil_spectrum(a, m)
        assert cls.all_real and cls.neg_count == 0
        assert np.allclose(np.sort(cls.positive_real), np.sort(np.linalg.eigvals(np.linalg.solve(m, a)).real))

    def test_constraint_equal_blocks(self):
        h = random_spd(3, 0)
        b = random_full_rank(1, 3, 1)
        a = saddle_point(h, b).assembled
        m = constraint_preconditioner(h, b).assembled
        assert np.array_equal(a, m)
        assert np.all(pencil_spectrum(a, m).spectrum.eigenvalues == 1.0)

    def test_block_diag_similarity(self):
        a = saddle_point(np.eye(2), [[1.0, 0.0]]).assembled
        m = block_diag_preconditioner(np.eye(2), np.eye(1))
        chk = spd_similarity_check(a, m)
        assert chk.ok
        assert chk.real_spectrum_inertia == (2, 0, 1)

    def test_block_diag_identity(self):
        assert np.array_equal(block_diag_preconditioner(np.eye(3), np.eye(2)), np.eye(5))

    def test_block_diag_spd(self):
        m = block_diag_preconditioner(random_spd(4, 1), random_spd(2, 2))
        assert ldlt_inertia(m)[1] == (6, 0, 0)

    def test_block_diag_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefiniteError):
            block_diag_preconditioner(np.eye(2), -np.eye(1))
