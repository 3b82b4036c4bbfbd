import numpy as np
import pytest

from rmx import (
    DimensionMismatch,
    IndexOutOfRange,
    SizeCapExceeded,
    TensorOperator,
    embed_two_site,
    frobenius_distance,
    identity_operator,
    is_scalar_operator,
    permutation_operator,
)


class TestPermutation:
    def test_frozen_matrix_two_dim(self):
        want = np.array(
            [
                [1, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 1],
            ],
            dtype=complex,
        )
        assert np.array_equal(permutation_operator(2), want)

    def test_swaps_product_vectors(self):
        rng = np.random.default_rng(3)
        for n in (2, 3, 4):
            p = permutation_operator(n)
            u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            assert np.allclose(p @ np.kron(u, v), np.kron(v, u))

    def test_involution(self):
        for n in (2, 3):
            p = permutation_operator(n)
            assert np.allclose(p @ p, np.eye(n * n))

    def test_conjugation_swaps_factors(self):
        rng = np.random.default_rng(5)
        n = 3
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        p = permutation_operator(n)
        assert np.allclose(p @ np.kron(a, b) @ p, np.kron(b, a))


class TestEmbed:
    def test_two_site_identity_case(self):
        rng = np.random.default_rng(11)
        op = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        out = embed_two_site(op, 1, 2, 2, 2)
        assert np.array_equal(out, op)
        out[0, 0] = 99.0
        assert op[0, 0] != 99.0

    def test_site_routing_against_kron(self):
        rng = np.random.default_rng(13)
        n = 2
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        op = np.kron(a, b)
        eye = np.eye(n)
        got = embed_two_site(op, 2, 3, n, 3)
        assert np.allclose(got, np.kron(eye, np.kron(a, b)))
        got = embed_two_site(op, 1, 3, n, 3)
        assert np.allclose(got, np.kron(a, np.kron(eye, b)))
        # reversed site order routes the factors independently
        got = embed_two_site(op, 3, 1, n, 3)
        assert np.allclose(got, np.kron(b, np.kron(eye, a)))

    def test_reversed_sites_equal_conjugated_embed(self):
        rng = np.random.default_rng(17)
        n = 3
        op = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        p = permutation_operator(n)
        lhs = embed_two_site(op, 2, 1, n, 3)
        rhs = embed_two_site(p @ op @ p, 1, 2, n, 3)
        assert np.allclose(lhs, rhs)

    def test_composition(self):
        rng = np.random.default_rng(19)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        y = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        lhs = embed_two_site(x, 2, 4, 2, 4) @ embed_two_site(y, 2, 4, 2, 4)
        rhs = embed_two_site(x @ y, 2, 4, 2, 4)
        assert np.allclose(lhs, rhs)

    def test_disjoint_sites_commute(self):
        rng = np.random.default_rng(23)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        y = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        a = embed_two_site(x, 1, 3, 2, 4)
        b = embed_two_site(y, 2, 4, 2, 4)
        assert np.allclose(a @ b, b @ a)

    def test_index_validation(self):
        op = np.eye(4)
        with pytest.raises(IndexOutOfRange):
            embed_two_site(op, 0, 2, 2, 3)
        with pytest.raises(IndexOutOfRange):
            embed_two_site(op, 1, 4, 2, 3)
        with pytest.raises(IndexOutOfRange):
            embed_two_site(op, 2, 2, 2, 3)

    def test_shape_validation(self):
        with pytest.raises(DimensionMismatch):
            embed_two_site(np.eye(3), 1, 2, 2, 3)

    def test_size_cap(self):
        with pytest.raises(SizeCapExceeded):
            embed_two_site(np.eye(4), 1, 2, 2, 13)
        with pytest.raises(SizeCapExceeded):
            identity_operator(2, 4, size_cap=8)
        # raising the cap unlocks the same call
        out = identity_operator(2, 4, size_cap=16)
        assert out.shape == (16, 16)


class TestScalarDetection:
    def test_detects_identity_multiple(self):
        ok, coeff, resid = is_scalar_operator(3.5j * np.eye(6))
        assert ok
        assert abs(coeff - 3.5j) < 1e-14
        assert resid < 1e-14

    def test_rejects_nonscalar_with_frozen_residual(self):
        ok, coeff, resid = is_scalar_operator(np.diag([1.0, 2.0]))
        assert not ok
        assert abs(coeff - 1.5) < 1e-14
        # ||diag(-.5,.5)||_F / ||diag(1,2)||_F = 1/sqrt(10)
        assert abs(resid - 0.3162277660168379332) < 1e-14

    def test_tolerance_is_adjustable(self):
        m = np.eye(4) + 1e-6 * np.ones((4, 4))
        assert not is_scalar_operator(m)[0]
        assert is_scalar_operator(m, tol=1e-3)[0]


class TestFrobeniusDistance:
    def test_zero_on_equal(self):
        a = np.arange(9.0).reshape(3, 3)
        assert frobenius_distance(a, a) == 0.0

    def test_symmetric(self):
        rng = np.random.default_rng(29)
        a = rng.standard_normal((3, 3))
        b = rng.standard_normal((3, 3))
        assert frobenius_distance(a, b) == frobenius_distance(b, a)

    def test_scale_normalized(self):
        a = np.eye(2)
        assert abs(frobenius_distance(a, 2 * a) - 0.5) < 1e-15

    def test_small_matrices_use_absolute_floor(self):
        a = 1e-8 * np.eye(2)
        # norms below 1 fall back to an absolute comparison
        assert frobenius_distance(a, np.zeros((2, 2))) < 1e-7


class TestTensorOperator:
    def test_valid_construction(self):
        t = TensorOperator(np.eye(8, dtype=complex), 2, 3)
        assert t.dim == 8

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            TensorOperator(np.eye(7, dtype=complex), 2, 3)
