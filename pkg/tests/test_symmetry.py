import numpy as np
import pytest

from symplat import (
    a2n_from_row,
    circulant_from_row,
    count_symmetries,
    cyclic_shift,
    group_closure,
    induced_change_of_basis,
    j_generator,
    j_matrix,
)
from symplat.errors import NotASymmetry
from symplat.linalg import det_int

from conftest import random_a2n_row, random_circulant_row


def cyclic_candidates(g):
    c = cyclic_shift(g).astype(float)
    out = []
    power = np.eye(g)
    for _ in range(g - 1):
        power = power @ c
        out.append(power.copy())
    return out


class TestInducedChangeOfBasis:
    def test_identity_basis_signed_permutation(self):
        o = np.array([[0.0, -1.0], [1.0, 0.0]])
        w = induced_change_of_basis(np.eye(2), o)
        assert np.array_equal(w.r, np.array([[0, -1], [1, 0]], dtype=np.int64))
        assert w.residual == 0.0

    def test_circulant_shift_symmetry(self):
        # row must have no vanishing Fourier coefficient, else the
        # circulant is singular; [2,1,0,0] gives |eigenvalues| >= 1
        a = circulant_from_row([2.0, 1.0, 0.0, 0.0])
        assert abs(np.linalg.det(a)) > 0.1
        c = cyclic_shift(4).astype(float)
        # circulants commute with the shift, so each power witnesses itself
        w = induced_change_of_basis(a, c)
        assert np.array_equal(w.r, cyclic_shift(4))
        assert w.residual <= 1e-12
        w_inv = induced_change_of_basis(a, c.T)
        assert np.array_equal(w_inv.r, cyclic_shift(4).T)

    def test_rejects_non_symmetry(self):
        with pytest.raises(NotASymmetry):
            induced_change_of_basis(np.diag([1.0, 2.0]), j_matrix(2).astype(float))

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NotASymmetry):
            induced_change_of_basis(np.eye(2), [[1.0, 1.0], [0.0, 1.0]])

    def test_witness_soundness(self, rng):
        for _ in range(20):
            g = int(rng.integers(3, 9))
            row = random_circulant_row(rng, g)
            a = circulant_from_row(row)
            k = int(rng.integers(1, g))
            o = np.linalg.matrix_power(cyclic_shift(g).astype(float), k)
            w = induced_change_of_basis(a, o)
            assert abs(det_int(w.r)) == 1
            resid = np.max(np.abs(w.o @ a - a @ w.r.astype(float)))
            assert resid <= 1e-9 * np.max(np.abs(a))

    def test_witness_composition(self, rng):
        g = 6
        a = circulant_from_row(random_circulant_row(rng, g))
        c = cyclic_shift(g).astype(float)
        w1 = induced_change_of_basis(a, c)
        w2 = induced_change_of_basis(a, c @ c)
        w12 = induced_change_of_basis(a, c @ (c @ c))
        assert np.array_equal(w12.r, w1.r @ w2.r)


class TestCountSymmetries:
    def test_circulant_full_count(self, rng):
        g = 5
        a = circulant_from_row(random_circulant_row(rng, g))
        count, witnesses = count_symmetries(a, cyclic_candidates(g))
        assert count == g - 1
        assert len(witnesses) == g - 1

    def test_circulant_counts_sweep(self, rng):
        for g in range(3, 13):
            a = circulant_from_row(random_circulant_row(rng, g))
            count, _ = count_symmetries(a, cyclic_candidates(g))
            assert count == g - 1, g

    def test_patterned_count(self, rng):
        for n in (2, 3, 4):
            a = a2n_from_row(random_a2n_row(rng, 2 ** n))
            grp = group_closure([j_generator(n, k) for k in range(1, n + 1)])
            eye = np.eye(2 ** n, dtype=np.int64)
            cands = [e.astype(float) for e in grp.elements if not np.array_equal(e, eye)]
            count, witnesses = count_symmetries(a, cands)
            assert count == 2 ** n - 1
            for w in witnesses:
                # involutions witness themselves
                assert np.array_equal(w.r.astype(float), w.o)

    def test_plus_minus_identity_filtered(self):
        count, witnesses = count_symmetries(np.eye(2), [-np.eye(2), np.eye(2)])
        assert count == 0
        assert witnesses == []

    def test_failures_not_counted(self):
        a = np.diag([1.0, 2.0])
        count, _ = count_symmetries(a, [j_matrix(2).astype(float)])
        assert count == 0
