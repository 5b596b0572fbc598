import random
from fractions import Fraction

from django.test import SimpleTestCase

from ibody.exact_linalg import det
from ibody.exceptions import DimensionError, PreconditionError
from ibody.polynomial import (
    LinForm, Poly, RatFun, exact_divide, normalize, normalize_pair, parse, poly_det, render,
    variable_names,
)

X, Y, Z = (Poly.variable(3, i) for i in range(3))


class ArithmeticTests(SimpleTestCase):
    def test_ring_operations(self):
        p = (X + Y) * (X - Y)
        self.assertEqual(p, X ** 2 - Y ** 2)
        self.assertEqual(p - p, Poly.zero(3))
        self.assertEqual(2 * X - X, X)
        self.assertEqual((X + 1) ** 2, X * X + 2 * X + 1)

    def test_degrees(self):
        self.assertEqual(Poly.zero(3).total_degree(), -1)
        self.assertEqual((X * Y * Z - X).total_degree(), 3)
        self.assertEqual((X * Y + Z * Z).is_homogeneous(), 2)
        self.assertIsNone((X * Y + Z).is_homogeneous())

    def test_evaluate(self):
        p = 3 * X * Y * Z - X ** 2
        self.assertEqual(p.evaluate((1, 2, Fraction(1, 3))), 1)

    def test_antipode_and_signed_permutation(self):
        p = X + Y ** 2
        self.assertEqual(p.antipode(), -X + Y ** 2)
        self.assertEqual(p.signed_permutation((1, 0, 2), (1, 1, 1)), Y + X ** 2)
        self.assertEqual(X.signed_permutation((2, 1, 0), (-1, 1, 1)), -Z)

    def test_variable_count_checked(self):
        with self.assertRaises(DimensionError):
            X + Poly.variable(2, 0)
        with self.assertRaises(DimensionError):
            X.evaluate((1, 2))

    def test_equal_polynomials_hash_alike(self):
        self.assertEqual(hash(X * Y + Z), hash(Z + Y * X))
        self.assertEqual(len({X * Y + Z, Z + Y * X}), 1)


class DivisionTests(SimpleTestCase):
    def test_exact_quotient(self):
        self.assertEqual(exact_divide(X ** 2 - Y ** 2, X - Y), X + Y)
        norm = Poly.norm_squared(3)
        self.assertEqual(exact_divide(norm * (2 * Z - X), norm), 2 * Z - X)

    def test_remainder_is_none(self):
        self.assertIsNone(exact_divide(X ** 2 + 1, X - Y))
        self.assertIsNone(exact_divide(X, Y))

    def test_division_by_zero(self):
        with self.assertRaises(PreconditionError):
            exact_divide(X, Poly.zero(3))


class NormalizeTests(SimpleTestCase):
    def test_rational_linear(self):
        p, c = normalize(X.scale(Fraction(2, 3)))
        self.assertEqual(p, X)
        self.assertEqual(c, Fraction(3, 2))

    def test_negative_leading_coefficient(self):
        p, c = normalize(-4 * X * Y + 2 * Z ** 2)
        self.assertEqual(p, 2 * X * Y - Z ** 2)
        self.assertEqual(c, Fraction(-1, 2))

    def test_zero_rejected(self):
        with self.assertRaises(PreconditionError):
            normalize(Poly.zero(3))

    def test_pair(self):
        self.assertEqual(normalize_pair(2 * X, 4 * Y), (X, 2 * Y))
        self.assertEqual(normalize_pair(X, -Y), (-X, Y))
        num, den = normalize_pair(Poly.constant(3, Fraction(4, 3)), Z)
        self.assertEqual((num, den), (Poly.constant(3, 4), 3 * Z))


class DeterminantTests(SimpleTestCase):
    def test_two_by_two(self):
        self.assertEqual(poly_det([[X, Y], [Y, X]]), X ** 2 - Y ** 2)

    def test_constant_grid_matches_numbers(self):
        c = lambda v: Poly.constant(3, v)
        grid = [[c(1), c(1), c(0)], [c(1), c(-1), c(0)], [c(0), c(0), c(1)]]
        self.assertEqual(poly_det(grid), c(-2))

    def test_row_of_variables(self):
        c = lambda v: Poly.constant(3, v)
        grid = [[c(1), c(0), c(0)], [c(0), c(1), c(0)], [X, Y, Z]]
        self.assertEqual(poly_det(grid), Z)


class LinearFormTests(SimpleTestCase):
    def test_canonical(self):
        key, s = LinForm((0, -2, 4)).canonical()
        self.assertEqual(key, (0, 1, -2))
        self.assertEqual(s, -2)
        key, s = LinForm((Fraction(1, 2), Fraction(1, 3), 0)).canonical()
        self.assertEqual(key, (3, 2, 0))
        self.assertEqual(s, Fraction(1, 6))

    def test_zero_form(self):
        with self.assertRaises(PreconditionError):
            LinForm((0, 0)).canonical()

    def test_rational_function(self):
        f = RatFun(2 * X, 4 * Y)
        self.assertEqual(f.numerator, X)
        self.assertEqual(f.denominator, 2 * Y)
        self.assertEqual(f.evaluate((3, 1, 0)), Fraction(3, 2))
        with self.assertRaises(PreconditionError):
            f.evaluate((1, 0, 0))


class TextFormTests(SimpleTestCase):
    def test_render(self):
        p = 3 * X * Y * Z - X ** 2 - 2 * X * Y
        self.assertEqual(render(p), '3*x*y*z - x^2 - 2*x*y')
        self.assertEqual(render(3 * Z - 4), '3*z - 4')
        self.assertEqual(render(Poly.linear((Fraction(1, 2), -1))), '1/2*x - y')
        self.assertEqual(render(-X), '-x')
        self.assertEqual(render(Poly.zero(3)), '0')

    def test_parse_inverts_render(self):
        for p in (3 * X * Y * Z - X ** 2 + Fraction(2, 5) * Y * Z - 7, Poly.zero(3), -Z ** 4):
            self.assertEqual(parse(render(p), 3), p)

    def test_many_variables(self):
        self.assertEqual(variable_names(5), ('x1', 'x2', 'x3', 'x4', 'x5'))
        p = Poly.variable(5, 4) ** 2 - Poly.variable(5, 0)
        self.assertEqual(render(p), 'x5^2 - x1')
        self.assertEqual(parse('x5^2 - x1', 5), p)

    def test_parse_errors(self):
        for text in ('', 'x + q', 'x^y', '2**x'):
            with self.subTest(text=text), self.assertRaises(PreconditionError):
                parse(text, 2)


def random_poly(rng, degree=3, terms=4):
    coefficients = {}
    for _ in range(terms):
        exps = [0, 0, 0]
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(3)] += 1
        coefficients[tuple(exps)] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return Poly(3, coefficients)


def random_point(rng):
    return tuple(Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(3))


class PropertyTests(SimpleTestCase):
    def setUp(self):
        self.rng = random.Random(2024)

    def nonzero_poly(self):
        p = random_poly(self.rng)
        while not p:
            p = random_poly(self.rng)
        return p

    def test_poly_det_matches_det_at_points(self):
        for _ in range(15):
            n = self.rng.randint(1, 4)
            grid = [[random_poly(self.rng, degree=1, terms=2) for _ in range(n)] for _ in range(n)]
            d = poly_det(grid)
            for _ in range(3):
                x = random_point(self.rng)
                self.assertEqual(d.evaluate(x), det([[e.evaluate(x) for e in row] for row in grid]))

    def test_exact_divide_recovers_cofactor(self):
        for _ in range(25):
            p, f = random_poly(self.rng), self.nonzero_poly()
            self.assertEqual(exact_divide(p * f, f), p)

    def test_normalize_is_idempotent(self):
        for _ in range(25):
            n, _ = normalize(self.nonzero_poly())
            self.assertEqual(normalize(n), (n, 1))

    def test_normalize_ignores_scale(self):
        for _ in range(25):
            p = self.nonzero_poly()
            c = Fraction(self.rng.choice((-1, 1)) * self.rng.randint(1, 9), self.rng.randint(1, 9))
            self.assertEqual(normalize(p.scale(c))[0], normalize(p)[0])

    def test_evaluate_is_a_ring_morphism(self):
        for _ in range(25):
            p, q, x = random_poly(self.rng), random_poly(self.rng), random_point(self.rng)
            self.assertEqual((p + q).evaluate(x), p.evaluate(x) + q.evaluate(x))
            self.assertEqual((p * q).evaluate(x), p.evaluate(x) * q.evaluate(x))
            self.assertEqual((p - q).evaluate(x), p.evaluate(x) - q.evaluate(x))
            self.assertEqual(Poly.constant(3, 5).evaluate(x), 5)
