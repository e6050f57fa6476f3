import numpy as np
import pytest

import tubal.transform as tf
from tubal import oracle
from tubal.errors import DimensionMismatch, TubalError
from tubal.linalg import frobenius, mat_tprod, slices
from tubal.tsvd import truncate_brank, truncate_tubal, tsvd


def test_circ_conv_shift():
    assert np.allclose(oracle.circ_conv([0, 1, 0], [0, 0, 1]), [1, 0, 0])
    assert np.allclose(oracle.circ_conv([1, 2], [3, 4]), [11, 10])


def test_dft_sum_small():
    assert np.allclose(oracle.dft_sum([1, 0, 0]), [1, 1, 1])
    assert np.allclose(oracle.dft_sum([1, 1]), [2, 0])


def test_loop_slices_agree_with_vectorized():
    rng = np.random.default_rng(0)
    L = tf.builtin("ndft-orth", 4, seed=1)
    A = rng.standard_normal((2, 3, 4))
    assert np.allclose(oracle._slices_loop(L, A), slices(L, A))
    assert np.allclose(oracle._unslice_loop(L, slices(L, A)), A)


def test_naive_product_mismatch():
    L = tf.make_dft(2)
    with pytest.raises(DimensionMismatch):
        oracle.naive_mat_tprod(L, np.zeros((2, 3, 2)), np.zeros((2, 3, 2)))


class TestBldg:
    def test_shape_norm_rank(self):
        rng = np.random.default_rng(1)
        L = tf.make_unitary_dft(3)
        A = rng.standard_normal((2, 4, 3))
        M = oracle.bldg(L, A)
        assert M.shape == (6, 12)
        assert np.isclose(np.linalg.norm(M), frobenius(A))
        B = mat_tprod(L, rng.standard_normal((2, 1, 3)), rng.standard_normal((1, 4, 3)))
        assert np.linalg.matrix_rank(oracle.bldg(L, B)) == 3

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            oracle.bldg(tf.make_dct(3), np.zeros((2, 2, 4)))

    def test_best_rank_full_is_identity(self):
        rng = np.random.default_rng(2)
        L = tf.make_dct(2)
        A = rng.standard_normal((2, 2, 2))
        X, off, imag = oracle.bldg_best_rank(L, A, 4)
        assert np.allclose(X, A) and off < 1e-12


class TestJacobi:
    def test_diagonal(self):
        assert np.allclose(oracle.hermitian_eigvals(np.diag([1.0, 3.0, 2.0])), [3, 2, 1])

    def test_matches_lapack(self):
        rng = np.random.default_rng(3)
        X = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        H = X + X.conj().T
        assert np.allclose(oracle.hermitian_eigvals(H), np.sort(np.linalg.eigvalsh(H))[::-1])

    def test_zero(self):
        assert np.array_equal(oracle.hermitian_eigvals(np.zeros((3, 3))), np.zeros(3))


def test_conj_pairing_dft():
    assert list(oracle.conj_pairing(tf.make_dft(5))) == [0, 4, 3, 2, 1]
    assert list(oracle.conj_pairing(tf.make_dft(5))) == list(tf.make_dft(5).cls.conj_structure.perm)
    assert list(oracle.conj_pairing(tf.make_dct(3))) == [0, 1, 2]


class TestRandomSearch:
    def setup_method(self):
        rng = np.random.default_rng(4)
        self.L = tf.make_dct(3)
        self.A = rng.standard_normal((3, 3, 3))
        self.f = tsvd(self.L, self.A)

    def test_truncation_dominates(self):
        rep = oracle.random_search_optimality(self.L, self.A, truncate_tubal(self.f, 1),
                                              oracle.CompetitorSpec("tubal", 1, 200))
        assert rep.dominated and rep.worst_margin >= -1e-9

    def test_brank_dominates(self):
        rep = oracle.random_search_optimality(self.L, self.A, truncate_brank(self.f, 4),
                                              oracle.CompetitorSpec("brank", 4, 200))
        assert rep.dominated

    def test_wrong_candidate_is_caught(self):
        # keep the second tube instead of the first
        tubes = self.f.S.tubes.copy()
        tubes[[0, 2]] = 0.0
        from tubal.tsvd import _assemble
        bad = _assemble(self.f, tubes)
        rep = oracle.random_search_optimality(self.L, self.A, bad, oracle.CompetitorSpec("tubal", 1, 200))
        assert not rep.dominated

    def test_bad_spec(self):
        with pytest.raises(TubalError):
            oracle.CompetitorSpec("nope", 1)
        with pytest.raises(TubalError):
            oracle.random_search_optimality(self.L, self.A, self.A, oracle.CompetitorSpec("tubal", 9))
