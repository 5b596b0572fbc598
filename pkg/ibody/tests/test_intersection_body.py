import math
from collections import Counter
from fractions import Fraction

from django.test import SimpleTestCase

from ibody import catalog
from ibody.choices import NormalizationMode
from ibody.exact_linalg import dot, vector
from ibody.exceptions import InvalidEdgeError
from ibody.intersection_body import (
    ChamberPiece, boundary_components, boundary_summary, cell_numerator, classify_point, compute_intersection_body,
    concrete_vertex, crossed_edges, degree_bound, degree_table, evaluate_radial, membership,
    radial_function, symbolic_vertex,
)
from ibody.polynomial import Poly, parse, render

from .support import orbit, same_ratio_up_to_symmetry

PAPER = NormalizationMode.PAPER


class SectionVertexTests(SimpleTestCase):
    def test_concrete_vertex_lies_on_the_hyperplane(self):
        a, b, x = (1, 0, 0), (0, 1, 0), (1, -1, 0)
        v = concrete_vertex(a, b, x)
        self.assertEqual(v, (Fraction(1, 2), Fraction(1, 2), 0))
        self.assertEqual(dot(v, x), 0)

    def test_symbolic_vertex_agrees(self):
        a, b = (1, 2, -1), (-1, 1, 3)
        vertex = symbolic_vertex(a, b)
        for x in ((1, 0, 0), (2, -3, 1), (Fraction(1, 2), 1, 1)):
            expected = concrete_vertex(a, b, x)
            self.assertEqual(tuple(f.evaluate(x) for f in vertex), expected)

    def test_invalid_edges(self):
        with self.assertRaises(InvalidEdgeError):
            symbolic_vertex((1, 1, 1), (1, 1, 1))
        with self.assertRaises(InvalidEdgeError):
            symbolic_vertex((1, 0, 0), (-2, 0, 0))

    def test_crossed_edges_of_cube(self):
        cube = catalog.cube(3)
        self.assertEqual(len(crossed_edges(cube, (0, 0, 1))), 4)
        self.assertEqual(len(crossed_edges(cube, (-2, 3, 4))), 6)


class CubeTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.body = compute_intersection_body(catalog.cube(3))
        cls.paper = compute_intersection_body(catalog.cube(3), PAPER)

    def test_degrees(self):
        report = degree_table(self.body)
        self.assertEqual(len(self.body), 14)
        self.assertEqual(report.histogram, {1: 6, 3: 8})
        self.assertEqual(report.global_bound, 5)
        self.assertTrue(report.halved)
        self.assertTrue(report.satisfied)

    def test_section_vertex_counts(self):
        counts = Counter(sc.f0 for sc in self.body.combinatorics)
        self.assertEqual(counts, {4: 6, 6: 8})

    def test_radial_values(self):
        self.assertEqual(evaluate_radial(self.body, (0, 0, 1)), 4)
        self.assertEqual(evaluate_radial(self.body, (0, 0, 2)), 2)
        self.assertEqual(evaluate_radial(self.body, (0, 0, -1)), 4)
        self.assertEqual(evaluate_radial(self.body, (1, 1, 1)), 3)

    def test_value_on_a_wall(self):
        # x + y = 0 cuts the cube in a 2 by 2*sqrt(2) rectangle.
        self.assertEqual(evaluate_radial(self.body, (1, 1, 0)), 4)

    def test_origin(self):
        self.assertEqual(evaluate_radial(self.body, (0, 0, 0)), math.inf)
        self.assertTrue(membership(self.body, (0, 0, 0)))

    def test_membership(self):
        self.assertEqual(classify_point(self.body, (0, 0, 3)), ('inside', Fraction(4, 3)))
        self.assertEqual(classify_point(self.body, (0, 0, 4)), ('boundary', 1))
        self.assertEqual(classify_point(self.body, (0, 0, 5)), ('outside', Fraction(4, 5)))
        self.assertFalse(membership(self.body, (0, 0, 5)))

    def test_pieces_are_homogeneous(self):
        for piece in self.body:
            self.assertEqual(piece.p_tilde.is_homogeneous(), piece.q.is_homogeneous() - 1)
            self.assertGreater(piece.q.leading_term()[1], 0)

    def test_linear_piece(self):
        piece = self.body[self.body.chambers[0].id]
        self.assertEqual(self.body.chambers[0].signs, (1, 1, 1, 1))
        self.assertEqual(render(piece.p_tilde), '4')
        self.assertEqual(render(piece.q), 'x')
        self.assertEqual(render(piece.boundary_poly), 'x - 4')
        self.assertEqual(piece.degree, 1)

    def test_paper_linear_boundary(self):
        boundaries = {render(piece.boundary_poly) for piece in self.paper}
        self.assertIn('3*z - 4', boundaries)
        self.assertEqual(classify_point(self.paper, (0, 0, 1)), ('inside', Fraction(4, 3)))

    def test_paper_shapes(self):
        linear = orbit('3*z - 4')
        cubic = orbit('3*x*y*z - x^2 - 2*x*y - y^2 - 2*x*z + 2*y*z - z^2')
        for piece in self.paper:
            expected = linear if piece.degree == 1 else cubic
            self.assertIn(piece.boundary_poly, expected)

    def test_paper_cubic_vanishes_on_the_body(self):
        self.assertEqual(classify_point(self.paper, (-1, 1, 1)), ('boundary', 1))

    def test_modes_differ_by_dimension(self):
        for x in ((0, 0, 1), (1, 2, 4), (-5, 1, 2)):
            self.assertEqual(evaluate_radial(self.body, x), 3 * evaluate_radial(self.paper, x))

    def test_components_and_summary(self):
        components = boundary_components(self.body)
        self.assertEqual(len(components), 14)
        linear = [c for c in components if c.degree == 1]
        self.assertEqual(len(linear), 6)
        summary = boundary_summary(self.body)
        self.assertEqual(sum(len(ids) for _, ids in summary), 14)

    def test_radial_function_shortcut(self):
        self.assertEqual(len(radial_function(catalog.cube(2))), 4)


class TetrahedronTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.paper = compute_intersection_body(catalog.tetrahedron(), PAPER)

    def test_quartic_above_the_z_axis(self):
        ns = self.paper.normals
        piece = self.paper.piece_for_signs(ns.signs_at((0, 0, 1)))
        quartic = orbit('6*x^2*y^2 - 6*x^2*z^2 - 6*y^2*z^2 + 6*z^4 + 4*x^2*z + 4*y^2*z - 4*z^3')
        self.assertEqual(piece.degree, 4)
        self.assertIn(piece.boundary_poly, quartic)

    def test_cubic_in_a_triangular_chamber(self):
        cubic = orbit(
            '6*x^2*y + 6*x^2*z - 6*x*y^2 - 12*x*y*z - 6*x*z^2 + 6*y^2*z + 6*y*z^2'
            ' - 2*x^2 + 4*x*y + 4*x*z - 2*y^2 - 4*y*z - 2*z^2'
        )
        found = [piece for piece in self.paper if piece.boundary_poly in cubic]
        self.assertTrue(found)
        self.assertTrue(all(piece.degree == 3 for piece in found))

    def test_bound_is_not_halved(self):
        self.assertEqual(degree_bound(catalog.tetrahedron()), (4, False))
        self.assertTrue(degree_table(self.paper).satisfied)


class SpecialOriginTests(SimpleTestCase):
    def test_corner_cube_shapes(self):
        body = compute_intersection_body(catalog.corner_cube(), PAPER)
        self.assertEqual(body.normals.m, 7)
        self.assertEqual(len(body), 32)
        self.assertEqual(sum(piece.is_zero_piece for piece in body), 2)

        x, y, z = (Poly.variable(3, i) for i in range(3))
        shapes = [
            (2 * x, 3 * y * z),
            (2 * (x + 2 * z), 3 * y * z),
            (2 * (x ** 2 + 2 * x * y + y ** 2 + 2 * x * z + z ** 2), 3 * x * y * z),
        ]
        counts = Counter()
        for piece in body.nonzero_pieces():
            match = next(i for i, (n, d) in enumerate(shapes) if same_ratio_up_to_symmetry(piece, n, d))
            counts[match] += 1
        self.assertEqual(counts, {0: 6, 1: 18, 2: 6})

    def test_zero_pieces(self):
        body = compute_intersection_body(catalog.corner_cube())
        zero = [piece for piece in body if piece.is_zero_piece]
        for piece in zero:
            self.assertIsNone(piece.boundary_poly)
            self.assertIsNone(piece.degree)
            self.assertEqual(piece.value((1, 1, 1)), 0)
        self.assertEqual(evaluate_radial(body, (1, 1, 1)), 0)
        self.assertEqual(evaluate_radial(body, (0, 0, 0)), math.inf)

    def test_simplex_with_origin_on_an_edge(self):
        body = compute_intersection_body(catalog.simplex4())
        self.assertEqual(len(body), 16)
        self.assertFalse(any(piece.is_zero_piece for piece in body))
        self.assertEqual(degree_table(body).histogram, {3: 4, 5: 12})
        self.assertTrue(all(sc.origin_is_section_vertex for sc in body.combinatorics))

    def test_exterior_origin(self):
        body = compute_intersection_body(catalog.cube(2, shift=(3, 0)))
        self.assertEqual(evaluate_radial(body, (0, 0)), 0)
        self.assertFalse(membership(body, (0, 0)))
        self.assertTrue(any(piece.is_zero_piece for piece in body))


class PieceTests(SimpleTestCase):
    def test_value_on_a_pole(self):
        piece = ChamberPiece(
            chamber_id=0, signs=(1,), p_tilde=parse('1', 2), q=parse('x', 2),
            boundary_poly=parse('x - 1', 2), degree=1, is_zero_piece=False,
            normalization_mode=NormalizationMode.TRUE_VOLUME,
        )
        self.assertIsNone(piece.value((0, 1)))
        self.assertEqual(piece.value((2, 1)), Fraction(1, 2))

    def test_square_is_doubled_and_rotated(self):
        body = compute_intersection_body(catalog.cube(2))
        self.assertEqual(degree_table(body).histogram, {1: 4})
        self.assertEqual(degree_bound(catalog.cube(2)), (1, True))
        self.assertEqual(evaluate_radial(body, (1, 0)), 2)
        self.assertEqual(evaluate_radial(body, (1, 1)), 2)


class CellNumeratorTests(SimpleTestCase):
    def test_parallel_edges_share_one_factor(self):
        edges = (
            (vector((-1, -1, -1)), vector((-1, -1, 1))),
            (vector((1, -1, -1)), vector((1, -1, 1))),
        )
        D, keys, magnitude = cell_numerator(edges)
        self.assertEqual(keys, ((0, 0, 1),))
        self.assertEqual(magnitude, 4)
        self.assertEqual(D, Poly.norm_squared(3).scale(8))

    def test_generic_input_cancels_nothing(self):
        for p in (catalog.cube(3), catalog.tetrahedron()):
            with self.subTest(p=p.name), self.assertNoLogs('ibody.intersection_body', 'WARNING'):
                body = compute_intersection_body(p)
            self.assertTrue(all(piece.cancelled == () for piece in body))

    def test_q_has_distinct_factors(self):
        body = compute_intersection_body(catalog.cube(3))
        for piece in body.nonzero_pieces():
            self.assertEqual(piece.q.total_degree(), piece.degree)
