"""
Named polytopes and seeded random inputs.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

from .exceptions import PolytopeValidationError
from .polytope import VPolytope


def cube(d: int, lo: int = -1, hi: int = 1, shift: tuple | None = None, name: str = '') -> VPolytope:
    shift = shift or (0,) * d
    vertices = [
        tuple(Fraction(c) + s for c, s in zip(corner, shift))
        for corner in itertools.product((lo, hi), repeat=d)
    ]
    return VPolytope(vertices, name=name or f'cube{d}')


def corner_cube() -> VPolytope:
    """[0, 2]^3: the origin is a vertex."""
    return VPolytope(itertools.product((0, 2), repeat=3), name='cube3-corner')


def lifted_cube() -> VPolytope:
    """[-1, 1]^3 + (0, 0, 1): the origin lies inside the facet z = 0."""
    return cube(3, shift=(0, 0, 1), name='cube3-lifted')


def tetrahedron() -> VPolytope:
    """Alternate vertices of [-1, 1]^3; same arrangement as the cube."""
    return VPolytope(
        [(-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)], name='tetrahedron',
    )


def simplex4() -> VPolytope:
    """A 4-simplex whose edge between (0, 1, 0, 0) and (0, -1, 0, 0) contains the origin."""
    return VPolytope(
        [(1, 1, 0, 0), (0, 1, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 0, -1)],
        name='simplex4',
    )


def hexagon() -> VPolytope:
    return VPolytope(
        [(2, 0), (-2, 0), (1, 2), (-1, -2), (-1, 2), (1, -2)], name='hexagon',
    )


def random_polytope(d: int, n: int, seed: int, radius: int = 5) -> VPolytope:
    """Convex hull of ``n`` seeded integer points; retried until full-dimensional."""
    rng = random.Random(seed)
    for _ in range(100):
        points = [tuple(rng.randint(-radius, radius) for _ in range(d)) for _ in range(n)]
        try:
            return VPolytope.from_points(points, name=f'random{d}-{n}-{seed}')
        except PolytopeValidationError:
            continue
    raise PolytopeValidationError(f'no full-dimensional sample for d={d}, n={n}, seed={seed}')


def random_symmetric_polygon(seed: int, k: int = 3, radius: int = 6) -> VPolytope:
    """Centrally symmetric polygon from ``k`` seeded points and their negatives."""
    rng = random.Random(seed)
    for _ in range(100):
        half = [(rng.randint(-radius, radius), rng.randint(-radius, radius)) for _ in range(k)]
        points = half + [(-x, -y) for x, y in half]
        try:
            return VPolytope.from_points(points, name=f'symmetric-polygon-{seed}')
        except PolytopeValidationError:
            continue
    raise PolytopeValidationError(f'no symmetric polygon for seed={seed}')


CATALOG: dict[str, Callable[[], VPolytope]] = {
    'cube2': lambda: cube(2),
    'cube3': lambda: cube(3),
    'cube4': lambda: cube(4),
    'cube5': lambda: cube(5),
    'cube3-corner': corner_cube,
    'cube3-lifted': lifted_cube,
    'tetrahedron': tetrahedron,
    'simplex4': simplex4,
    'hexagon': hexagon,
}


def get(name: str) -> VPolytope:
    try:
        return CATALOG[name]()
    except KeyError:
        raise PolytopeValidationError(
            f'unknown polytope {name!r}; known: {", ".join(sorted(CATALOG))}'
        ) from None
