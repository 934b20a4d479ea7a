import math

import numpy as np
import pytest

from symplat import (
    ComplexMat,
    det,
    det_int,
    inverse,
    is_orthogonal,
    kron,
    kron_complex,
    kron_pow,
    round_to_int,
    sqrt_spd,
    sym_eig,
)
from symplat.errors import NotIntegral, NotSPD, NotSymmetric, Singular
from symplat.groups import j_matrix
from symplat.linalg import intmat_from_obj, intmat_to_obj, mat_from_obj, mat_to_obj

from conftest import random_spd


J2 = np.array([[0.0, 1.0], [1.0, 0.0]])
H2 = np.array([[1.0, 1.0], [1.0, -1.0]])


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_j2_times_id2_swaps_row_blocks(self):
        got = kron(J2, np.eye(2))
        expected = np.zeros((4, 4))
        expected[0, 2] = expected[1, 3] = expected[2, 0] = expected[3, 1] = 1.0
        assert np.array_equal(got, expected)

    def test_hadamard_square(self):
        got = kron(H2, H2)
        expected = np.array(
            [
                [1, 1, 1, 1],
                [1, -1, 1, -1],
                [1, 1, -1, -1],
                [1, -1, -1, 1],
            ],
            dtype=float,
        )
        assert np.array_equal(got, expected)

    def test_associative_exact_on_integer_entries(self, rng):
        # triple products of small integers are exact in float64, so
        # associativity holds entrywise with no tolerance at all
        a = rng.integers(-9, 10, size=(2, 2)).astype(float)
        b = rng.integers(-9, 10, size=(3, 3)).astype(float)
        c = rng.integers(-9, 10, size=(2, 2)).astype(float)
        assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))

    def test_associative_generic(self, rng):
        a = rng.normal(size=(2, 2))
        b = rng.normal(size=(3, 3))
        c = rng.normal(size=(2, 2))
        lhs = kron(kron(a, b), c)
        rhs = kron(a, kron(b, c))
        assert np.allclose(lhs, rhs, rtol=1e-15, atol=0.0)

    def test_det_multiplicativity(self, rng):
        for _ in range(20):
            da, db = rng.integers(2, 5, size=2)
            a = rng.normal(size=(da, da))
            b = rng.normal(size=(db, db))
            lhs = det(kron(a, b))
            rhs = det(a) ** db * det(b) ** da
            assert lhs == pytest.approx(rhs, rel=1e-9)


class TestKronPow:
    def test_identity(self):
        assert np.array_equal(kron_pow(np.eye(2), 3), np.eye(8))

    def test_j2_square_is_antidiagonal(self):
        assert np.array_equal(kron_pow(J2, 2), j_matrix(4).astype(float))

    def test_single_factor(self):
        assert np.array_equal(kron_pow(H2, 1), H2)


class TestSymEig:
    def test_identity(self):
        q, d = sym_eig(np.eye(3))
        assert np.allclose(d, [1, 1, 1])
        assert is_orthogonal(q, 1e-12)

    def test_two_by_two(self):
        _, d = sym_eig([[2.0, 1.0], [1.0, 2.0]])
        assert d == pytest.approx([3.0, 1.0], abs=1e-12)

    def test_diagonal_sorted_descending(self):
        _, d = sym_eig(np.diag([5.0, 2.0, 9.0]))
        assert d == pytest.approx([9.0, 5.0, 2.0], abs=1e-12)

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            sym_eig([[0.0, 1.0], [0.0, 0.0]])

    def test_reconstruction_random(self, rng):
        for dim in (2, 5, 8, 17, 32):
            m = rng.normal(size=(dim, dim))
            s = 0.5 * (m + m.T)
            q, d = sym_eig(s)
            err = np.max(np.abs(q @ np.diag(d) @ q.T - s))
            assert err <= 1e-10 * max(np.max(np.abs(s)), 1e-30)
            assert is_orthogonal(q, 1e-10)

    def test_zero_matrix(self):
        q, d = sym_eig(np.zeros((4, 4)))
        assert np.array_equal(d, np.zeros(4))
        assert is_orthogonal(q, 0.0)


class TestSqrtSpd:
    def test_identity(self):
        assert np.allclose(sqrt_spd(np.eye(4)), np.eye(4))

    def test_diagonal(self):
        assert sqrt_spd(np.diag([4.0, 9.0])) == pytest.approx(np.diag([2.0, 3.0]))

    def test_two_by_two_closed_form(self):
        got = sqrt_spd([[2.0, 1.0], [1.0, 2.0]])
        r3 = math.sqrt(3.0)
        expected = 0.5 * np.array([[r3 + 1, r3 - 1], [r3 - 1, r3 + 1]])
        assert got == pytest.approx(expected, abs=1e-12)

    def test_square_round_trip(self, rng):
        for dim in (2, 3, 6, 12):
            y = random_spd(rng, dim)
            r = sqrt_spd(y)
            assert np.array_equal(r, r.T)
            assert np.max(np.abs(r @ r - y)) <= 1e-9 * np.max(np.abs(y))

    def test_rejects_indefinite(self):
        with pytest.raises(NotSPD):
            sqrt_spd(np.diag([1.0, -1.0]))


class TestDet:
    def test_identity(self):
        assert det(np.eye(5)) == pytest.approx(1.0)

    def test_antidiagonal_sign(self):
        # reversal permutation of 4 elements has 6 inversions: even, det +1
        assert det(j_matrix(4).astype(float)) == pytest.approx(1.0)
        assert det(j_matrix(2).astype(float)) == pytest.approx(-1.0)

    def test_det_int_diagonal(self):
        assert det_int([[2, 0], [0, 3]]) == 6

    def test_det_int_matches_float(self, rng):
        for _ in range(25):
            dim = int(rng.integers(2, 6))
            m = rng.integers(-5, 6, size=(dim, dim))
            assert det_int(m) == pytest.approx(det(m.astype(float)), abs=1e-6)

    def test_det_int_exact_large_entries(self):
        # Bareiss works over Python ints; no intermediate overflow
        m = np.diag([10 ** 6] * 6)
        assert det_int(m) == 10 ** 36


class TestInverse:
    def test_identity(self):
        assert np.allclose(inverse(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert inverse(np.diag([2.0, 4.0])) == pytest.approx(np.diag([0.5, 0.25]))

    def test_antidiagonal_self_inverse(self):
        j4 = j_matrix(4).astype(float)
        assert inverse(j4) == pytest.approx(j4)

    def test_singular(self):
        with pytest.raises(Singular):
            inverse(np.zeros((2, 2)))


class TestIsOrthogonal:
    def test_identity(self):
        assert is_orthogonal(np.eye(3))

    def test_alternating_antidiagonal(self):
        from symplat import k_matrix

        assert is_orthogonal(k_matrix(4).astype(float))

    def test_shear_is_not(self):
        assert not is_orthogonal([[1.0, 1.0], [0.0, 1.0]])


class TestRoundToInt:
    def test_identity(self):
        assert np.array_equal(round_to_int(np.eye(3)), np.eye(3, dtype=np.int64))

    def test_near_integer(self):
        got = round_to_int([[1.0000000001, 0.0], [0.0, 1.0]], tol=1e-6)
        assert np.array_equal(got, np.eye(2, dtype=np.int64))

    def test_rejects_half_integer(self):
        with pytest.raises(NotIntegral):
            round_to_int([[0.5, 0.0], [0.0, 1.0]])


class TestComplexMat:
    def test_kron_complex_matches_numpy(self, rng):
        for _ in range(10):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            got = kron_complex(
                ComplexMat(a.real.copy(), a.imag.copy()),
                ComplexMat(b.real.copy(), b.imag.copy()),
            )
            expected = np.kron(a, b)
            assert np.allclose(got.re, expected.real)
            assert np.allclose(got.im, expected.imag)

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            ComplexMat(np.eye(2), np.eye(3))


class TestJsonForms:
    def test_mat_round_trip(self, rng):
        m = rng.normal(size=(3, 3))
        assert np.array_equal(mat_from_obj(mat_to_obj(m)), m)

    def test_intmat_round_trip(self):
        m = np.array([[1, -2], [3, 4]], dtype=np.int64)
        assert np.array_equal(intmat_from_obj(intmat_to_obj(m)), m)

    def test_schema_errors(self):
        from symplat.errors import SchemaError

        with pytest.raises(SchemaError):
            mat_from_obj({"dim": 2, "rows": [[1.0, 2.0]]})
        with pytest.raises(SchemaError):
            mat_from_obj({"rows": [[1.0]]})
        with pytest.raises(SchemaError):
            intmat_from_obj({"dim": 1, "rows": [[1.5]]})
