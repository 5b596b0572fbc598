"""
Independent cross-checks for the symbolic pipeline.

The volume oracle never touches ``intersection_body``: section vertices,
facet grouping and the triangulation are recomputed per direction with
another vertex formula, another lifting (base 2, reversed order) and an
orientation-determinant lower-hull test.
"""
from __future__ import annotations

import itertools
import logging
import math
import random
from fractions import Fraction
from math import factorial
from typing import Sequence

import numpy as np

from .choices import NormalizationMode
from .conf import setting
from .exact_linalg import RatVec, det, dot, rref, sub, vector
from .exceptions import ConsistencyError, PreconditionError
from .intersection_body import IntersectionBody, evaluate_radial
from .polytope import VPolytope

logger = logging.getLogger(__name__)

MC_CHUNK = 1 << 16


def _section_points(p: VPolytope, x: RatVec) -> dict[int, RatVec]:
    """Edge index -> point of the edge on ``x⊥`` for every transversally crossed edge."""
    heights = [dot(v, x) for v in p.vertices]
    points = {}
    for idx, e in enumerate(p.edges):
        ha, hb = heights[e.i], heights[e.j]
        if ha * hb >= 0:
            continue
        a, b = p.vertices[e.i], p.vertices[e.j]
        t = ha / (ha - hb)
        point = tuple(ac + t * (bc - ac) for ac, bc in zip(a, b))
        if not any(point):
            continue
        points[idx] = point
    return points


class _Tie(Exception):
    pass


def _lifted_cells(points: Sequence[RatVec], base: int) -> list[tuple[int, ...]]:
    """Lower-hull simplices; point ``i`` of the reversed order sits at ``base**(i+1)``."""
    n = len(points)
    origin = points[0]
    _, cols = rref([sub(pt, origin) for pt in points[1:]]) if n > 1 else ([], [])
    k = len(cols)
    if k == 0:
        return [(0,)]
    ys = [[pt[c] for c in cols] for pt in points]
    hs = [base ** (i + 1) for i in range(n)]
    cells = []
    for subset in itertools.combinations(range(n), k + 1):
        orientation = det([ys[s] + [1] for s in subset])
        if orientation == 0:
            continue
        lower = True
        for j in range(n):
            if j in subset:
                continue
            lifted = det([ys[s] + [hs[s], 1] for s in subset] + [ys[j] + [hs[j], 1]])
            if lifted == 0:
                raise _Tie
            if lifted * orientation > 0:
                lower = False
                break
        if lower:
            cells.append(subset)
    return cells


def _cells_with_retry(points: Sequence[RatVec], base: int) -> list[tuple[int, ...]]:
    for attempt in range(8):
        try:
            return _lifted_cells(points, base + attempt)
        except _Tie:
            logger.debug('oracle lifting base %d not generic for %d points', base + attempt, len(points))
    raise ConsistencyError(f'oracle found no generic lifting for {len(points)} points')


def section_volume_scaled(p: VPolytope, x: Sequence, base: int | None = None) -> Fraction:
    """``|x| * Vol_{d-1}(P ∩ x⊥)``, exactly."""
    x = vector(x)
    base = setting('IBODY_ORACLE_LIFTING_BASE') if base is None else base
    if not any(x):
        raise PreconditionError('section direction must be nonzero')
    if any(any(v) and dot(v, x) == 0 for v in p.vertices):
        raise PreconditionError(f'{x} lies on a wall of the arrangement')
    d = p.dimension
    points = _section_points(p, x)
    total = Fraction(0)
    for facet in p.facets:
        if facet.offset == 0:
            continue
        members = sorted(
            (idx for idx in points
             if p.edges[idx].i in facet.vertices and p.edges[idx].j in facet.vertices),
            reverse=True,
        )
        if not members:
            continue
        group = [points[idx] for idx in members]
        for cell in _cells_with_retry(group, base):
            if len(cell) != d - 1:
                raise ConsistencyError(f'oracle cell of size {len(cell)} in dimension {d}')
            volume = abs(det([group[i] for i in cell] + [x])) / factorial(d - 1)
            total += volume if facet.offset > 0 else -volume
    return total


def radial_identity_holds(p_tilde_value: Fraction, q_value: Fraction, x: RatVec, w_value: Fraction,
                          mode: str = NormalizationMode.TRUE_VOLUME) -> bool:
    """``p_tilde(x) |x|^2 = q(x) W(x)``, with the factor d in paper mode."""
    lhs = p_tilde_value * dot(x, x)
    if mode == NormalizationMode.PAPER:
        lhs *= len(x)
    return lhs == q_value * w_value


def pyramid_decomposition_check(p: VPolytope, apex: Sequence) -> bool:
    """Signed pyramid decomposition from an exterior apex reproduces the volume."""
    return p.signed_pyramid_volume(apex) == p.volume()


def polygon_radial(p: VPolytope, y: Sequence) -> Fraction:
    """Radial function of a polytope containing the origin in its interior."""
    ratios = [f.offset / dot(f.normal, y) for f in p.facets if dot(f.normal, y) > 0]
    if not ratios:
        raise PreconditionError('polytope is unbounded in this direction')
    return min(ratios)


def rotate2d_check(body: IntersectionBody, samples: int = 100, seed: int = 0) -> bool:
    """``rho_IP(x) = c * rho_P(-x2, x1)`` with ``c = 2`` (true volume) or 1 (paper)."""
    p = body.polytope
    if p.dimension != 2 or not p.is_centrally_symmetric():
        raise PreconditionError('the rotation law needs a centrally symmetric polygon')
    factor = 1 if body.mode == NormalizationMode.PAPER else 2
    rng = random.Random(seed)
    for _ in range(samples):
        x = (0, 0)
        while not any(x):
            x = (Fraction(rng.randint(-50, 50), rng.randint(1, 9)),
                 Fraction(rng.randint(-50, 50), rng.randint(1, 9)))
        expected = factor * polygon_radial(p, (-x[1], x[0]))
        if evaluate_radial(body, x) != expected:
            logger.warning('rotation law fails at %s: %s != %s', x, evaluate_radial(body, x), expected)
            return False
    return True


# ── Monte Carlo ───────────────────────────────────────────────────

def _orthonormal_complement(x: np.ndarray) -> np.ndarray:
    """Rows spanning ``x⊥``."""
    _, _, vt = np.linalg.svd(x.reshape(1, -1))
    return vt[1:]


def montecarlo_section_volume(p: VPolytope, x: Sequence, n: int, seed: int = 0) -> tuple[float, float]:
    """Hit-or-miss estimate of ``Vol_{d-1}(P ∩ x⊥)`` and its standard error.

    Samples are drawn in chunks, each from its own Philox stream spawned from
    ``seed``, so the result does not depend on how chunks are scheduled.
    """
    if n <= 0:
        raise PreconditionError('sample count must be positive')
    x = vector(x)
    if not any(x):
        raise PreconditionError('section direction must be nonzero')
    corners = list(_section_points(p, x).values())
    corners += [v for v in p.vertices if dot(v, x) == 0]
    if not corners:
        return 0.0, 0.0

    basis = _orthonormal_complement(np.array([float(c) for c in x]))
    coords = np.array([[float(c) for c in pt] for pt in corners]) @ basis.T
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    box = float(np.prod(hi - lo))
    if box == 0.0:
        return 0.0, 0.0

    normals = np.array([[float(c) for c in f.normal] for f in p.facets])
    offsets = np.array([float(f.offset) for f in p.facets])
    chunks = math.ceil(n / MC_CHUNK)
    streams = np.random.SeedSequence(seed).spawn(chunks)
    hits = 0
    for i, stream in enumerate(streams):
        size = min(MC_CHUNK, n - i * MC_CHUNK)
        rng = np.random.Generator(np.random.Philox(stream))
        y = lo + (hi - lo) * rng.random((size, len(lo)))
        samples = y @ basis
        inside = np.all(samples @ normals.T <= offsets + 1e-12, axis=1)
        hits += int(inside.sum())
    fraction = hits / n
    estimate = box * fraction
    stderr = box * math.sqrt(fraction * (1 - fraction) / n)
    logger.debug('Monte Carlo section volume along %s: %.6f ± %.6f (%d samples)', x, estimate, stderr, n)
    return estimate, stderr
