"""
V-polytopes with exact facet and edge enumeration.

Facets come from a brute-force scan over d-subsets of vertices, which is
robust at the sizes this engine targets (a few dozen vertices, d <= 5).
The regular triangulation used by volume computations and by the section
pipeline also lives here.
"""
from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .choices import OriginPosition
from .exact_linalg import (
    RatVec, dot, det, kernel_basis, rank, rref, sign, solve, sub, vector,
)
from .exceptions import ConsistencyError, PolytopeValidationError, PreconditionError

logger = logging.getLogger(__name__)

MAX_LIFTING_ATTEMPTS = 8


@dataclass(frozen=True)
class HFacet:
    """Supporting inequality ``<normal, x> <= offset`` with its incident vertices."""
    normal: tuple[int, ...]
    offset: Fraction
    vertices: tuple[int, ...]

    def slack(self, point: Sequence) -> Fraction:
        return self.offset - dot(self.normal, point)


@dataclass(frozen=True, order=True)
class Edge:
    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise PreconditionError(f'edge endpoints must satisfy i < j, got ({self.i}, {self.j})')

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.i, self.j


@dataclass(frozen=True)
class OriginClassification:
    position: OriginPosition
    origin_is_vertex: bool
    origin_on_facet_span: frozenset[int] = field(default_factory=frozenset)
    # The origin lies strictly inside an edge of P.
    origin_in_edge: bool = False

    @property
    def counts_as_section_vertex(self) -> bool:
        """Whether the origin is a vertex of every central section through P."""
        return self.origin_is_vertex or self.origin_in_edge


# ── Triangulation by lifting ──────────────────────────────────────

class _DegenerateLifting(Exception):
    pass


def _affine_coordinates(points: Sequence[RatVec]) -> tuple[list[RatVec], int]:
    """Project onto coordinates that are injective on the affine hull."""
    origin = points[0]
    diffs = [sub(p, origin) for p in points[1:]]
    if not diffs:
        return [()], 0
    _, pivots = rref(diffs)
    return [tuple(p[c] for c in pivots) for p in points], len(pivots)


def _lower_hull_cells(projected: Sequence[RatVec], heights: Sequence[int], k: int) -> list[tuple[int, ...]]:
    n = len(projected)
    if k == 0:
        return [(0,)]
    cells = []
    for subset in itertools.combinations(range(n), k + 1):
        rows = [list(projected[s]) + [1] for s in subset]
        plane = solve(rows, [heights[s] for s in subset])
        if plane is None:
            continue
        *slope, constant = plane
        below = tie = False
        for j in range(n):
            if j in subset:
                continue
            lifted = dot(slope, projected[j]) + constant
            if heights[j] < lifted:
                below = True
                break
            if heights[j] == lifted:
                tie = True
        if below:
            continue
        if tie:
            raise _DegenerateLifting
        cells.append(subset)
    return cells


def regular_triangulation(points: Sequence[Sequence], base: int = 3) -> list[tuple[int, ...]]:
    """Triangulate the convex hull of ``points`` into simplices of its affine hull.

    Point ``i`` is lifted to height ``base**(i+1)`` and the lower hull is
    projected back. When the heights are not generic for this point set the
    base is raised by two and the lifting repeated.
    """
    if not points:
        raise PreconditionError('cannot triangulate an empty point set')
    pts = [vector(p) for p in points]
    projected, k = _affine_coordinates(pts)
    attempt_base = base
    for _ in range(MAX_LIFTING_ATTEMPTS):
        heights = [attempt_base ** (i + 1) for i in range(len(pts))]
        try:
            return sorted(_lower_hull_cells(projected, heights, k))
        except _DegenerateLifting:
            logger.warning('lifting base %d is degenerate for %d points; retrying with %d',
                           attempt_base, len(pts), attempt_base + 2)
            attempt_base += 2
    raise ConsistencyError(f'no generic lifting found for {len(pts)} points starting at base {base}')


# ── Polytope ──────────────────────────────────────────────────────

class VPolytope:
    """Full-dimensional convex polytope given by its vertices."""

    def __init__(self, vertices: Iterable[Sequence], name: str = ''):
        self.name = name
        self.vertices: tuple[RatVec, ...] = tuple(vector(v) for v in vertices)
        self._validate_shape()
        self.dimension = len(self.vertices[0])
        self.facets: tuple[HFacet, ...] = tuple(_enumerate_facets(self.vertices))
        redundant = _redundant_points(self.vertices, self.facets)
        if redundant:
            raise PolytopeValidationError(
                f'points {redundant} are not vertices of the convex hull'
            )
        self.edges: tuple[Edge, ...] = tuple(_enumerate_edges(self.vertices, self.facets))
        logger.debug('polytope %s: %d vertices, %d facets, %d edges',
                      name or '<unnamed>', len(self.vertices), len(self.facets), len(self.edges))

    @classmethod
    def from_points(cls, points: Iterable[Sequence], name: str = '') -> 'VPolytope':
        """Convex hull of ``points``: duplicates and non-vertices are dropped."""
        unique = list(dict.fromkeys(vector(p) for p in points))
        _validate_points(unique)
        facets = _enumerate_facets(unique)
        redundant = set(_redundant_points(unique, facets))
        return cls([p for i, p in enumerate(unique) if i not in redundant], name=name)

    def _validate_shape(self) -> None:
        _validate_points(self.vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise PolytopeValidationError('vertices must be pairwise distinct')

    def __repr__(self) -> str:
        return f'VPolytope({self.name or "?"}, d={self.dimension}, f0={len(self.vertices)})'

    # ── Combinatorics ─────────────────────────────────────────────

    def f01(self) -> tuple[int, int]:
        return len(self.vertices), len(self.edges)

    @cached_property
    def edge_facets(self) -> dict[Edge, tuple[int, ...]]:
        """Indices of the facets containing each edge."""
        return {
            e: tuple(k for k, f in enumerate(self.facets) if e.i in f.vertices and e.j in f.vertices)
            for e in self.edges
        }

    def classify_origin(self) -> OriginClassification:
        offsets = [f.offset for f in self.facets]
        if all(o > 0 for o in offsets):
            position = OriginPosition.INTERIOR
        elif any(o < 0 for o in offsets):
            position = OriginPosition.EXTERIOR
        else:
            position = OriginPosition.BOUNDARY
        in_edge = False
        for e in self.edges:
            a, b = self.vertices[e.i], self.vertices[e.j]
            if any(a) and any(b) and rank([a, b]) == 1 and dot(a, b) < 0:
                in_edge = True
                break
        return OriginClassification(
            position=position,
            origin_is_vertex=any(not any(v) for v in self.vertices),
            origin_on_facet_span=frozenset(k for k, o in enumerate(offsets) if o == 0),
            origin_in_edge=in_edge,
        )

    def contains(self, point: Sequence) -> bool:
        return all(f.slack(point) >= 0 for f in self.facets)

    def is_centrally_symmetric(self) -> bool:
        """P = -P."""
        return set(self.vertices) == {tuple(-c for c in v) for v in self.vertices}

    def digest(self) -> str:
        text = ';'.join(','.join(str(c) for c in v) for v in sorted(self.vertices))
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    # ── Volumes ───────────────────────────────────────────────────

    def facet_simplices(self, k: int, base: int = 3) -> list[tuple[RatVec, ...]]:
        """Triangulation of facet ``k`` in ascending vertex order."""
        facet = self.facets[k]
        pts = [self.vertices[i] for i in facet.vertices]
        return [tuple(pts[i] for i in cell) for cell in regular_triangulation(pts, base)]

    def _cone_volume(self, apex: RatVec, simplex: Sequence[RatVec]) -> Fraction:
        return abs(det([sub(v, apex) for v in simplex])) / factorial(self.dimension)

    @cached_property
    def barycenter(self) -> RatVec:
        n = len(self.vertices)
        return tuple(sum(v[c] for v in self.vertices) / n for c in range(self.dimension))

    def volume(self) -> Fraction:
        """Exact volume: pyramids from the barycenter over triangulated facets."""
        center = self.barycenter
        total = Fraction(0)
        for k in range(len(self.facets)):
            for simplex in self.facet_simplices(k):
                total += self._cone_volume(center, simplex)
        return total

    def signed_pyramid_volume(self, apex: Sequence) -> Fraction:
        """Sum over facets of ``sgn(F) * vol(conv(F, apex))`` for an exterior apex.

        ``sgn(F)`` is +1 when apex and P lie on the same side of the facet
        hyperplane; facets whose hyperplane contains the apex contribute 0.
        """
        apex = vector(apex)
        if len(apex) != self.dimension:
            raise PreconditionError(f'apex of length {len(apex)} in dimension {self.dimension}')
        slacks = [f.slack(apex) for f in self.facets]
        if all(s >= 0 for s in slacks):
            raise PreconditionError('apex must lie strictly outside the polytope')
        total = Fraction(0)
        for k, s in enumerate(slacks):
            if s == 0:
                continue
            part = sum((self._cone_volume(apex, simplex) for simplex in self.facet_simplices(k)), Fraction(0))
            total += sign(s) * part
        return total


def _validate_points(points: Sequence[RatVec]) -> None:
    if not points:
        raise PolytopeValidationError('a polytope needs at least one vertex')
    d = len(points[0])
    if d < 2:
        raise PolytopeValidationError(f'dimension must be at least 2, got {d}')
    if any(len(p) != d for p in points):
        raise PolytopeValidationError('all vertices must have the same dimension')
    if len(points) < d + 1 or rank([sub(p, points[0]) for p in points[1:]]) < d:
        raise PolytopeValidationError(f'points do not span a full-dimensional polytope in R^{d}')


def _enumerate_facets(points: Sequence[RatVec]) -> list[HFacet]:
    d = len(points[0])
    found: dict[tuple[tuple[int, ...], Fraction], HFacet] = {}
    for subset in itertools.combinations(range(len(points)), d):
        if any(all(i in f.vertices for i in subset) for f in found.values()):
            continue
        base = points[subset[0]]
        diffs = [sub(points[i], base) for i in subset[1:]]
        kernel = kernel_basis(diffs, d) if diffs else []
        if len(kernel) != 1:
            continue
        normal = kernel[0]
        offset = dot(normal, base)
        values = [dot(normal, p) - offset for p in points]
        if all(v <= 0 for v in values):
            pass
        elif all(v >= 0 for v in values):
            normal = tuple(-c for c in normal)
            offset = -offset
        else:
            continue
        incident = tuple(i for i, v in enumerate(values) if v == 0)
        found[(normal, offset)] = HFacet(normal=normal, offset=offset, vertices=incident)
    return [found[key] for key in sorted(found)]


def _redundant_points(points: Sequence[RatVec], facets: Sequence[HFacet]) -> list[int]:
    """Indices of points that are not vertices (incident normals do not span R^d)."""
    d = len(points[0])
    redundant = []
    for i in range(len(points)):
        normals = [f.normal for f in facets if i in f.vertices]
        if not normals or rank(normals) < d:
            redundant.append(i)
    return redundant


def _enumerate_edges(points: Sequence[RatVec], facets: Sequence[HFacet]) -> list[Edge]:
    edges = []
    for i, j in itertools.combinations(range(len(points)), 2):
        common = [set(f.vertices) for f in facets if i in f.vertices and j in f.vertices]
        if common and set.intersection(*common) == {i, j}:
            edges.append(Edge(i, j))
    return edges
