"""
End-to-end checks of the cube chamber table and the exactness suites.

The five-cube and the full random sweeps take minutes; they carry the
``slow`` tag (``manage.py test --exclude-tag slow`` skips them).
"""
import random
import time
from fractions import Fraction
from types import SimpleNamespace

from django.test import SimpleTestCase, tag

from ibody import catalog
from ibody.intersection_body import (
    boundary_components, compute_intersection_body, degree_bound, degree_table,
)
from ibody.oracle import pyramid_decomposition_check, rotate2d_check
from ibody.verification import exterior_apexes, run_checks

# d: (chambers, degree histogram, degree bound)
CUBE_TABLE = {
    2: (4, {1: 4}, 1),
    3: (14, {1: 6, 3: 8}, 5),
    4: (104, {1: 8, 3: 32, 4: 64}, 14),
    5: (1882, {1: 10, 3: 80, 4: 320, 5: 1472}, 38),
}

# Wall-clock budget for computing the five-cube table.
FIVE_CUBE_SECONDS = 600


class CubeTableTests(SimpleTestCase):
    def check_cube(self, d):
        chambers, histogram, bound = CUBE_TABLE[d]
        body = compute_intersection_body(catalog.cube(d))
        report = degree_table(body)
        self.assertEqual(len(body), chambers)
        self.assertEqual(report.histogram, histogram)
        self.assertEqual(degree_bound(body.polytope), (bound, True))
        self.assertTrue(report.satisfied)

        linear = [c for c in boundary_components(body) if c.degree == 1]
        self.assertEqual(len(linear), 2 * d)
        axis_chambers = set()
        for i in range(d):
            for s in (1, -1):
                e = tuple(s if j == i else 0 for j in range(d))
                piece = body.piece_for_signs(body.normals.signs_at(e))
                self.assertEqual(piece.degree, 1)
                axis_chambers.add(piece.chamber_id)
        self.assertEqual(axis_chambers, {c.chamber_id for c in linear})
        return body

    def test_square(self):
        self.check_cube(2)

    def test_cube(self):
        self.check_cube(3)

    def test_four_cube(self):
        self.check_cube(4)

    @tag('slow')
    def test_four_cube_suites(self):
        report = run_checks(compute_intersection_body(catalog.cube(4)), samples=5)
        self.assertTrue(report.passed, report.first_failure)

    @tag('slow')
    def test_five_cube(self):
        started = time.monotonic()
        body = self.check_cube(5)
        self.assertLess(time.monotonic() - started, FIVE_CUBE_SECONDS)
        report = run_checks(body, samples=1)
        self.assertTrue(report.passed, report.first_failure)


class SuitePolytopeTests(SimpleTestCase):
    def test_suites_pass(self):
        suite = (
            catalog.tetrahedron(),
            catalog.simplex4(),
            catalog.cube(3, shift=(Fraction(1, 2), 0, 0), name='cube3-half-shift'),
        )
        for p in suite:
            report = run_checks(compute_intersection_body(p), samples=5, seed=11)
            with self.subTest(p=p.name):
                self.assertTrue(report.passed, report.first_failure)


class RandomPolytopeTests(SimpleTestCase):
    def sweep(self, seeds):
        for seed in seeds:
            rng = random.Random(seed)
            p = catalog.random_polytope(3, rng.randint(5, 10), seed)
            report = run_checks(compute_intersection_body(p), samples=5, seed=seed)
            with self.subTest(seed=seed, p=p.name):
                self.assertTrue(report.passed, report.first_failure)

    @tag('slow')
    def test_oracle_sweep(self):
        self.sweep(range(20))

    def test_pyramid_decomposition(self):
        rng = random.Random(42)
        for seed in range(20):
            p = catalog.random_polytope(3, rng.randint(4, 10), seed)
            for apex in exterior_apexes(SimpleNamespace(polytope=p), 5, rng):
                with self.subTest(seed=seed, apex=apex):
                    self.assertTrue(pyramid_decomposition_check(p, apex))


class PlaneLawTests(SimpleTestCase):
    def test_symmetric_polygons(self):
        for seed in range(10):
            body = compute_intersection_body(catalog.random_symmetric_polygon(seed))
            with self.subTest(seed=seed):
                self.assertTrue(rotate2d_check(body, samples=100, seed=seed))
