import json

import numpy as np
import pytest
import scipy.fft

import tubal.transform as tf
from tubal import oracle
from tubal.errors import DimensionMismatch, InvalidDimension, InvalidSpec, SingularTransform


def example_pf():
    s = np.sqrt(2) / 2
    P = np.array([[s, s, 0], [s, -s, 0], [0, 0, 1]])
    return tf.from_matrix(P @ tf.make_dft(3).L)


class TestConstructors:
    def test_dft_small(self):
        assert np.allclose(tf.make_dft(1).L, [[1]])
        assert np.allclose(tf.make_dft(2).L, [[1, 1], [1, -1]], atol=1e-15)

    def test_dft_entry(self):
        # w^3 with w = exp(-2 pi i / 4) is exp(-3 pi i / 2) = i
        assert abs(tf.make_dft(4).L[1, 3] - 1j) < 1e-15

    @pytest.mark.parametrize("p", [1, 3, 4, 7])
    def test_dft_matches_direct_sum(self, p):
        a = np.random.default_rng(p).standard_normal(p)
        assert np.allclose(tf.forward(tf.make_dft(p), a), oracle.dft_sum(a), atol=1e-12)

    def test_dft_inverse(self):
        F = tf.make_dft(5)
        assert np.allclose(F.H, F.L.conj().T / 5)

    def test_unitary_dft(self):
        assert np.allclose(tf.make_unitary_dft(1).L, [[1]])
        L = tf.make_unitary_dft(4)
        assert L.cls.is_unitary
        assert np.linalg.norm(L.L.conj().T @ L.L - np.eye(4)) < 1e-12
        a = np.array([1.0, 2.0, 3.0])
        L3 = tf.make_unitary_dft(3)
        assert np.allclose(tf.inverse(L3, tf.forward(L3, a)), a, atol=1e-12)

    def test_dct(self):
        assert np.allclose(tf.make_dct(1).L, [[1]])
        r = 1 / np.sqrt(2)
        assert np.allclose(tf.make_dct(2).L, [[r, r], [r, -r]])

    @pytest.mark.parametrize("p", range(1, 9))
    def test_dct_orthogonal_and_matches_scipy(self, p):
        C = tf.make_dct(p).L.real
        assert np.linalg.norm(C.T @ C - np.eye(p)) <= 1e-12
        assert np.allclose(C, scipy.fft.dct(np.eye(p), norm="ortho", axis=0))

    def test_random_orthogonal(self):
        Q1 = tf.make_random_orthogonal(1, 3).L
        assert abs(abs(Q1[0, 0]) - 1) < 1e-15
        assert np.array_equal(tf.make_random_orthogonal(5, 7).L, tf.make_random_orthogonal(5, 7).L)
        Q = tf.make_random_orthogonal(5, 7).L.real
        assert np.linalg.norm(Q.T @ Q - np.eye(5)) <= 1e-12

    @pytest.mark.parametrize("maker", [tf.make_dft, tf.make_unitary_dft, tf.make_dct])
    def test_bad_dimension(self, maker):
        with pytest.raises(InvalidDimension):
            maker(0)
        with pytest.raises(InvalidDimension):
            tf.make_random_orthogonal(0, 1)

    def test_singular(self):
        with pytest.raises(SingularTransform):
            tf.from_matrix(np.ones((3, 3)))

    def test_inverse_consistency(self):
        for name in tf.BUILTINS:
            L = tf.builtin(name, 6, seed=2)
            assert np.linalg.norm(L.L @ L.H - np.eye(6)) <= 1e-10 * np.linalg.norm(L.L)


class TestApply:
    def test_forward_unit_vector(self):
        F = tf.make_dft(4)
        assert np.allclose(tf.forward(F, np.eye(4)[0]), np.ones(4))
        assert np.allclose(tf.inverse(F, np.ones(4)), np.eye(4)[0])

    def test_round_trip_relative(self):
        rng = np.random.default_rng(0)
        for name in tf.BUILTINS:
            L = tf.builtin(name, 7, seed=1)
            a = rng.standard_normal(7) + 1j * rng.standard_normal(7)
            assert np.linalg.norm(tf.inverse(L, tf.forward(L, a)) - a) <= 1e-10 * np.linalg.norm(a)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            tf.forward(tf.make_dft(3), np.ones(4))
        with pytest.raises(DimensionMismatch):
            tf.inverse(tf.make_dft(3), np.ones(2))


class TestClassify:
    @pytest.mark.parametrize("p", range(1, 9))
    def test_dft_flip(self, p):
        c = tf.classify(tf.make_dft(p))
        assert c.is_real_preserving and c.is_doubly_real_preserving
        assert not c.is_unitary or p == 1
        flip = [(p - k) % p for k in range(p)]
        if p <= 2:
            assert c.conj_structure.kind == "identity"
        else:
            assert c.conj_structure.kind == "signed_permutation"
            assert list(c.conj_structure.perm) == flip
        # transpose map: a(1) fixed, a(k) -> a(p+2-k) in 1-based indexing
        assert np.array_equal(c.psi, np.eye(p)[flip])

    def test_i_identity_not_real_preserving(self):
        c = tf.classify(1j * np.eye(2))
        assert not c.is_real_preserving
        assert not c.is_doubly_real_preserving

    def test_example_pf(self):
        assert not example_pf().cls.is_real_preserving

    @pytest.mark.parametrize("seed", range(5))
    def test_real_orthogonal(self, seed):
        c = tf.make_random_orthogonal(6, seed).cls
        assert c.is_doubly_real_preserving and c.is_unitary
        assert c.conj_structure.kind == "identity"
        assert np.array_equal(c.psi, np.eye(6))

    def test_flag_implication(self):
        for L in [1j * np.eye(3), example_pf().L, tf.make_dft(4).L, np.diag([1, 1j, 1])]:
            c = tf.classify(L)
            assert c.is_real_preserving or not c.is_doubly_real_preserving

    def test_composition_rules(self):
        rng = np.random.default_rng(11)
        for t in range(20):
            p = 2 + t % 5
            P = tf.from_matrix(rng.standard_normal((p, p)))
            Q = tf.make_random_orthogonal(p, t)
            assert tf.compose(tf.make_dft(p), P).cls.is_real_preserving
            assert tf.compose(tf.make_dft(p), P).cls.is_doubly_real_preserving
            assert tf.compose(tf.make_dct(p), P).cls.is_doubly_real_preserving
            assert tf.compose(tf.make_unitary_dft(p), Q).cls.is_unitary

    def test_compose_identity_and_mismatch(self):
        F = tf.make_dft(3)
        assert np.allclose(tf.compose(F, tf.identity_transform(3)).L, F.L)
        assert tf.compose(F, tf.make_random_orthogonal(3, 0)).cls.is_real_preserving
        with pytest.raises(DimensionMismatch):
            tf.compose(F, tf.make_dft(4))

    def test_left_orthogonal_breaks_realness(self):
        s = np.sqrt(2) / 2
        P = tf.from_matrix(np.array([[s, s, 0], [s, -s, 0], [0, 0, 1]]))
        assert not tf.compose(P, tf.make_dft(3)).cls.is_real_preserving

    @pytest.mark.parametrize("p", [2, 3, 4, 5])
    def test_basis_check_agrees_with_sampling(self, p):
        rng = np.random.default_rng(p)
        candidates = [
            tf.make_dft(p).L,
            tf.make_dft(p).L @ rng.standard_normal((p, p)),
            rng.standard_normal((p, p)) @ tf.make_dft(p).L,
            rng.standard_normal((p, p)) + 1j * rng.standard_normal((p, p)),
            np.diag(np.exp(1j * rng.uniform(0, 6, p))),
        ]
        for M in candidates:
            c = tf.classify(M)
            H = np.linalg.inv(M)
            worst = 0.0
            for _ in range(100):
                a, b = rng.standard_normal((2, p))
                prod = H @ ((M @ a) * (M @ b))
                worst = max(worst, np.max(np.abs(prod.imag)) / (np.linalg.norm(a) * np.linalg.norm(b)))
            assert c.is_real_preserving == (worst < 1e-8)


def test_real_preserving_products_are_real():
    rng = np.random.default_rng(5)
    for name in tf.BUILTINS:
        L = tf.builtin(name, 6, seed=3)
        for _ in range(20):
            a, b = rng.standard_normal((2, 6))
            c = tf.inverse(L, tf.forward(L, a) * tf.forward(L, b))
            assert np.max(np.abs(c.imag)) <= 1e-9 * (np.linalg.norm(a) * np.linalg.norm(b) + 1)


class TestJson:
    def test_round_trip(self, tmp_path):
        L = tf.make_unitary_dft(5)
        path = tmp_path / "l.json"
        tf.save(L, path)
        obj = json.loads(path.read_text())
        assert obj["p"] == 5 and len(obj["re"]) == 5 and len(obj["im"][0]) == 5
        assert np.array_equal(tf.load(path).L, L.L)

    def test_bad_json(self):
        with pytest.raises(InvalidSpec):
            tf.from_json({"p": 2, "re": [[1, 0]]})
        with pytest.raises(InvalidSpec):
            tf.builtin("nope", 3)
