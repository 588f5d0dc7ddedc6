'''Unit test for matrix_core module.'''

import itertools
import unittest
from math import gcd

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from services.zhbil.algebra.matrix_core import (
    Mat, batch_transform, block_matrix, coproject_mat, crt_lift_mat, det,
    diag, digits_index, from_index, identity, index_digits, is_invertible,
    mat_add, mat_inverse, mat_mul, mat_sub, project_mat, random_invertible,
    random_low_rank, random_matrix, to_index, transpose, zeros)
from services.zhbil.algebra.ring_core import RingSpec
from services.zhbil.algebra.smith import inner_rank
from services.zhbil.errors import (
    DimensionMismatchError, InvalidParameterError)


class MatTestCase(unittest.TestCase):
    '''Unit test for Mat class.'''

    def setUp(self):
        self.z6 = RingSpec.of(6)

    def test_entries_are_reduced(self):
        A = Mat(self.z6, [[7, -1], [12, 3]])
        self.assertEqual(A.tolist(), [[1, 5], [0, 3]])
        self.assertEqual(A.shape, (2, 2))
        self.assertFalse(A.entries.flags.writeable)

    def test_bad_shapes(self):
        for entries in ([], [1, 2], [[]]):
            with self.assertRaises(InvalidParameterError):
                Mat(self.z6, entries)

    def test_equality_and_hash(self):
        A = Mat(self.z6, [[1, 2]])
        self.assertEqual(A, Mat(6, [[7, 8]]))
        self.assertNotEqual(A, Mat(RingSpec.of(12), [[1, 2]]))
        self.assertEqual(len({A, Mat(self.z6, [[1, 2]])}), 1)

    def test_arithmetic(self):
        A = Mat(self.z6, [[1, 2], [3, 4]])
        B = Mat(self.z6, [[5, 5], [0, 1]])
        self.assertEqual((A + B).tolist(), [[0, 1], [3, 5]])
        self.assertEqual((A - B).tolist(), [[2, 3], [3, 3]])
        self.assertEqual((-A).tolist(), [[5, 4], [3, 2]])
        self.assertEqual((A @ B).tolist(), [[5, 1], [3, 1]])
        self.assertEqual((2 * A).tolist(), [[2, 4], [0, 2]])
        self.assertEqual(A.T.tolist(), [[1, 3], [2, 4]])
        self.assertTrue(zeros(self.z6, 2, 3).is_zero())

    def test_mismatch(self):
        A = Mat(self.z6, [[1, 2, 3]])
        with self.assertRaises(DimensionMismatchError):
            mat_mul(A, A)
        with self.assertRaises(DimensionMismatchError):
            _ = A + Mat(RingSpec.of(4), [[1, 2, 3]])
        with self.assertRaises(DimensionMismatchError):
            _ = A + Mat(self.z6, [[1, 2]])

    def test_block_matrix(self):
        one = identity(self.z6, 1)
        two = diag(self.z6, [2])
        block = block_matrix([[one, two], [two, one]])
        self.assertEqual(block.tolist(), [[1, 2], [2, 1]])


class DeterminantTestCase(unittest.TestCase):
    '''Unit test for det / inverse.'''

    def test_det(self):
        z4 = RingSpec.of(4)
        self.assertEqual(int(det(Mat(z4, [[2, 1], [2, 2]]))), 2)
        self.assertEqual(int(det(diag(RingSpec.of(6), [2, 3]))), 0)
        self.assertEqual(int(det(Mat(RingSpec.of(12), [[1, 2], [3, 5]]))),
                         11)
        with self.assertRaises(DimensionMismatchError):
            det(Mat(z4, [[1, 2]]))

    def test_inverse(self):
        ring = RingSpec.of(12)
        A = Mat(ring, [[1, 2], [3, 5]])
        self.assertTrue(is_invertible(A))
        self.assertEqual(A @ mat_inverse(A), identity(ring, 2))
        self.assertEqual(mat_inverse(A) @ A, identity(ring, 2))
        singular = Mat(ring, [[2, 0], [0, 1]])
        self.assertFalse(is_invertible(singular))
        with self.assertRaises(InvalidParameterError):
            mat_inverse(singular)

    def test_invertible_iff_inverse_exists(self):
        '''Test on is_invertible() and mat_inverse() functions.

        Test target:
            Over every Z_h with h <= 6, a 2 x 2 matrix is invertible
            exactly when ad - bc is a unit, and then mat_inverse is a
            two-sided inverse; otherwise mat_inverse raises.
        '''

        for h in range(2, 7):
            ring = RingSpec.of(h)
            eye = identity(ring, 2)
            for idx in range(h ** 4):
                A = from_index(ring, 2, 2, idx)
                (a, b), (c, d) = A.tolist()
                unit = gcd((a * d - b * c) % h, h) == 1
                self.assertEqual(is_invertible(A), unit, A)
                if unit:
                    inv = mat_inverse(A)
                    self.assertEqual(A @ inv, eye)
                    self.assertEqual(inv @ A, eye)
                else:
                    with self.assertRaises(InvalidParameterError):
                        mat_inverse(A)

    def test_inverse_by_search(self):
        '''Test on is_invertible() against a search for an inverse.

        Test target:
            Over Z_2 and Z_3 some B with AB = BA = I exists exactly for
            the matrices is_invertible accepts.
        '''

        for h in (2, 3):
            ring = RingSpec.of(h)
            eye = identity(ring, 2)
            matrices = [from_index(ring, 2, 2, idx) for idx in range(h ** 4)]
            for A in matrices:
                found = any(A @ B == eye and B @ A == eye for B in matrices)
                self.assertEqual(is_invertible(A), found, A)

    @settings(deadline=None, max_examples=60)
    @given(st.sampled_from([4, 6, 12, 30, 49]), st.integers(0, 2 ** 32))
    def test_det_is_multiplicative(self, h, seed):
        ring = RingSpec.of(h)
        rng = np.random.default_rng(seed)
        A = random_matrix(ring, 3, 3, rng)
        B = random_matrix(ring, 3, 3, rng)
        self.assertEqual(int(det(A @ B)), int(det(A)) * int(det(B)) % h)

    def test_random_invertible_is_seeded(self):
        ring = RingSpec.of(12)
        A = random_invertible(ring, 3, seed=5)
        self.assertEqual(A, random_invertible(ring, 3, seed=5))
        self.assertTrue(is_invertible(A))


class CrtMatrixTestCase(unittest.TestCase):
    '''Unit test for entrywise CRT.'''

    def test_crt_lift_mat(self):
        ring = RingSpec.of(6)
        lifted = crt_lift_mat(ring, [[[1, 0]], [[2, 1]]])
        self.assertEqual(lifted.tolist(), [[5, 4]])
        self.assertEqual(project_mat(lifted, 0).tolist(), [[1, 0]])
        self.assertEqual(project_mat(lifted, 1).tolist(), [[2, 1]])
        with self.assertRaises(DimensionMismatchError):
            crt_lift_mat(ring, [[[1]]])

    def test_crt_lift_mat_is_bijective(self):
        '''Test on crt_lift_mat() function.

        Test target:
            For h <= 12 and m, n <= 2, lifting the projections of any
            matrix gives it back, and distinct component tuples lift to
            distinct matrices, so the lift is a bijection.
        '''

        for h in range(2, 13):
            ring = RingSpec.of(h)
            for m, n in ((1, 1), (1, 2), (2, 1), (2, 2)):
                for idx in range(h ** (m * n)):
                    A = from_index(ring, m, n, idx)
                    parts = [project_mat(A, i) for i in range(ring.t)]
                    self.assertEqual(crt_lift_mat(ring, parts), A)

    def test_crt_lift_mat_is_injective(self):
        for h in (6, 10, 12):
            ring = RingSpec.of(h)
            components = [ring.component(i) for i in range(ring.t)]
            per_component = [
                [from_index(sub, 2, 2, idx) for idx in range(sub.h ** 4)]
                for sub in components]
            lifted = set()
            for parts in itertools.product(*per_component):
                A = crt_lift_mat(ring, parts)
                self.assertEqual([project_mat(A, i) for i in range(ring.t)],
                                 list(parts))
                lifted.add(A)
            self.assertEqual(len(lifted), h ** 4)

    def test_coproject_mat(self):
        A = Mat(RingSpec.of(12), [[5, 7]])
        self.assertEqual(coproject_mat(A, 0).ring.h, 3)
        self.assertEqual(coproject_mat(A, 0).tolist(), [[2, 1]])
        self.assertEqual(coproject_mat(A, 1).tolist(), [[1, 3]])

    def test_functional_forms(self):
        ring = RingSpec.of(12)
        A = Mat(ring, [[1, 2, 3], [4, 5, 6]])
        self.assertEqual(transpose(A).tolist(), [[1, 4], [2, 5], [3, 6]])
        self.assertEqual(mat_add(A, A), A * 2)
        self.assertTrue(mat_sub(A, A).is_zero())
        with self.assertRaises(DimensionMismatchError):
            mat_add(A, transpose(A))


class VertexIndexTestCase(unittest.TestCase):
    '''Unit test for the row-major base-h vertex encoding.'''

    def test_index(self):
        z2 = RingSpec.of(2)
        eye = identity(z2, 2)
        self.assertEqual(to_index(eye), 9)
        self.assertEqual(from_index(z2, 2, 2, 9), eye)
        self.assertEqual(index_digits(2, 4, [9]).tolist(), [[1, 0, 0, 1]])
        self.assertEqual(digits_index(2, [[1, 0, 0, 1]]).tolist(), [9])
        with self.assertRaises(InvalidParameterError):
            from_index(z2, 2, 2, 16)

    def test_all_indices(self):
        ring = RingSpec.of(3)
        indices = np.arange(81)
        digits = index_digits(3, 4, indices)
        self.assertEqual(digits_index(3, digits).tolist(), indices.tolist())
        for idx in (0, 40, 80):
            self.assertEqual(to_index(from_index(ring, 2, 2, idx)), idx)


class SamplerTestCase(unittest.TestCase):
    '''Unit test for random samplers and batch transforms.'''

    def test_low_rank(self):
        ring = RingSpec.of(12)
        rng = np.random.default_rng(3)
        for r in range(3):
            for _ in range(20):
                self.assertLessEqual(
                    inner_rank(random_low_rank(ring, 3, 4, r, rng)), r)

    def test_batch_transform(self):
        ring = RingSpec.of(6)
        rng = np.random.default_rng(11)
        S = random_invertible(ring, 2, rng=rng)
        T = random_invertible(ring, 3, rng=rng)
        B0 = random_matrix(ring, 2, 3, rng)
        members = [random_matrix(ring, 2, 3, rng) for _ in range(5)]
        out = batch_transform(ring, np.stack([X.entries for X in members]),
                              S, T, B0)
        for X, Y in zip(members, out):
            self.assertEqual(Mat.from_residues(ring, Y), S @ X @ T + B0)


if __name__ == '__main__':
    unittest.main(verbosity=2)
