import itertools
import random
from fractions import Fraction

from django.test import SimpleTestCase

from ibody.exact_linalg import (
    canonical_direction, det, dot, kernel_basis, max_margin_point, primitive_integer_vector,
    rank, rref, solve, sub,
)
from ibody.exceptions import DimensionError, PreconditionError


class DeterminantTests(SimpleTestCase):
    def test_integer_matrix(self):
        self.assertEqual(det([[1, 1, 0], [1, -1, 0], [0, 0, 1]]), -2)

    def test_zero_leading_pivot_swaps_rows(self):
        self.assertEqual(det([[0, 1], [1, 0]]), -1)
        self.assertEqual(det([[0, 0, 1], [0, 2, 0], [3, 0, 0]]), -6)

    def test_rational_entries(self):
        self.assertEqual(det([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]), Fraction(1, 3))
        self.assertEqual(det([[Fraction(1, 2), Fraction(1, 3)], [1, 1]]), Fraction(1, 6))

    def test_singular(self):
        self.assertEqual(det([[1, 2], [2, 4]]), 0)

    def test_non_square_rejected(self):
        with self.assertRaises(DimensionError):
            det([[1, 2, 3], [4, 5, 6]])


def random_matrix(rng, n, k=None):
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(k or n)] for _ in range(n)]


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


class DeterminantPropertyTests(SimpleTestCase):
    def setUp(self):
        self.rng = random.Random(7)

    def test_row_swap_negates(self):
        for _ in range(20):
            m = random_matrix(self.rng, 4)
            swapped = [m[2], m[1], m[0], m[3]]
            self.assertEqual(det(swapped), -det(m))

    def test_linear_in_each_row(self):
        for _ in range(20):
            n = self.rng.randint(2, 5)
            m = random_matrix(self.rng, n)
            u, v = random_matrix(self.rng, 2, n)
            a, b = Fraction(self.rng.randint(-6, 6), 5), Fraction(self.rng.randint(-6, 6), 7)
            i = self.rng.randrange(n)
            mixed = [list(r) for r in m]
            mixed[i] = [a * x + b * y for x, y in zip(u, v)]
            with_u = [u if j == i else r for j, r in enumerate(m)]
            with_v = [v if j == i else r for j, r in enumerate(m)]
            self.assertEqual(det(mixed), a * det(with_u) + b * det(with_v))

    def test_product_rule(self):
        for n in (3, 4):
            for _ in range(10):
                a, b = random_matrix(self.rng, n), random_matrix(self.rng, n)
                with self.subTest(n=n):
                    self.assertEqual(det(matmul(a, b)), det(a) * det(b))


class SolveTests(SimpleTestCase):
    def test_unique_solution(self):
        self.assertEqual(solve([[2, 1], [1, 3]], [3, 5]), (Fraction(4, 5), Fraction(7, 5)))

    def test_needs_row_swap(self):
        self.assertEqual(solve([[0, 1], [1, 0]], [2, 3]), (3, 2))

    def test_singular_is_none(self):
        self.assertIsNone(solve([[1, 2], [2, 4]], [1, 2]))

    def test_rhs_length_checked(self):
        with self.assertRaises(DimensionError):
            solve([[1, 0], [0, 1]], [1])


class EliminationTests(SimpleTestCase):
    def test_rref_and_rank(self):
        rows, pivots = rref([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        self.assertEqual(pivots, [0, 1])
        self.assertEqual(rows, [[1, 0, 1], [0, 1, 1]])
        self.assertEqual(rank([[1, 2], [2, 4]]), 1)
        self.assertEqual(rank([]), 0)

    def test_kernel_basis(self):
        self.assertEqual(kernel_basis([[1, 1, 0]]), [(1, -1, 0), (0, 0, 1)])
        self.assertEqual(kernel_basis([[1, 0], [0, 1]]), [])
        self.assertEqual(kernel_basis([], ncols=2), [(1, 0), (0, 1)])

    def test_kernel_of_empty_needs_width(self):
        with self.assertRaises(DimensionError):
            kernel_basis([])

    def test_integer_directions(self):
        self.assertEqual(primitive_integer_vector((Fraction(1, 2), Fraction(1, 3))), (3, 2))
        self.assertEqual(primitive_integer_vector((-4, 6)), (-2, 3))
        self.assertEqual(canonical_direction((0, -2, 4)), (0, 1, -2))

    def test_shapes_checked(self):
        with self.assertRaises(DimensionError):
            sub((1, 2), (3,))
        with self.assertRaises(DimensionError):
            dot((1, 2), (1, 2, 3))


class MarginTests(SimpleTestCase):
    def test_open_cone_gets_strict_point(self):
        rows = [((1, 0, 0), 1), ((0, 1, 0), 1), ((1, 1, 1), -1)]
        x, t = max_margin_point(rows)
        self.assertGreater(t, 0)
        for normal, s in rows:
            self.assertGreater(s * dot(normal, x), 0)
        self.assertTrue(all(abs(c) <= 1 for c in x))

    def test_empty_cone_has_zero_margin(self):
        _, t = max_margin_point([((1, 0), 1), ((1, 0), -1)])
        self.assertEqual(t, 0)

    def test_degenerate_symmetric_input_terminates(self):
        rows = [((a, b, c), 1) for a in (1, -1) for b in (1, -1) for c in (1,)]
        x, t = max_margin_point(rows)
        self.assertGreater(t, 0)
        self.assertGreater(x[2], 0)

    def test_invalid_rows(self):
        with self.assertRaises(PreconditionError):
            max_margin_point([])
        with self.assertRaises(PreconditionError):
            max_margin_point([((0, 0), 1)])
        with self.assertRaises(PreconditionError):
            max_margin_point([((1, 0), 0)])

    def test_margin_holds_exactly_on_random_cones(self):
        rng = random.Random(11)
        for _ in range(30):
            d = rng.randint(2, 4)
            normals = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(2, 7))]
            normals = [n for n in normals if any(n)] or [(1,) + (0,) * (d - 1)]
            signs = [rng.choice((1, -1)) for _ in normals]
            rows = list(zip(normals, signs))
            x, t = max_margin_point(rows)
            self.assertTrue(all(abs(c) <= 1 for c in x))
            if t > 0:
                for normal, s in rows:
                    self.assertGreaterEqual(s * dot(normal, x), t)

    def test_sign_pattern_of_a_point_is_feasible(self):
        rng = random.Random(13)
        for _ in range(30):
            z = [rng.randint(-9, 9) for _ in range(3)]
            normals = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(6)]
            rows = [(n, 1 if dot(n, z) > 0 else -1) for n in normals if dot(n, z) != 0]
            if not rows:
                continue
            x, t = max_margin_point(rows)
            self.assertGreater(t, 0)
            for normal, s in rows:
                self.assertGreaterEqual(s * dot(normal, x), t)

    def test_cube_vertex_pattern(self):
        z = (1, 2, 3)
        vertices = list(itertools.product((1, -1), repeat=3))
        rows = [(v, 1 if dot(v, z) > 0 else -1) for v in vertices if dot(v, z) != 0]
        self.assertEqual(len(rows), 6)
        x, t = max_margin_point(rows)
        self.assertGreater(t, 0)
        for v, s in rows:
            self.assertEqual(1 if dot(v, x) > 0 else -1, s)
