"""
Invariant suite behind ``ibody check``.

Each check returns a ``CheckResult``; a report lists them in the order they
ran and names the first one that failed.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arrangement import Chamber, Wall, adjacency_graph
from .choices import NormalizationMode, OriginPosition
from .exact_linalg import RatVec, dot, vector
from .exceptions import IntersectionBodyError
from .intersection_body import (
    ChamberPiece, IntersectionBody, compute_intersection_body, degree_table,
)
from .oracle import (
    pyramid_decomposition_check, montecarlo_section_volume, radial_identity_holds, rotate2d_check,
    section_volume_scaled,
)
from .polynomial import normalize

logger = logging.getLogger(__name__)

# Exact points compared on each wall, witness included.
WALL_POINTS = 5


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ''


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.passed), None)

    def add(self, name: str, fn: Callable[[], str | None]) -> CheckResult:
        """Run ``fn``; a returned string is a failure message."""
        try:
            problem = fn()
        except IntersectionBodyError as exc:
            problem = f'{type(exc).__name__}: {exc}'
        result = CheckResult(name, problem is None, problem or 'ok')
        logger.debug('check %s: %s', name, result.detail)
        self.results.append(result)
        return result


def chamber_samples(chamber: Chamber, count: int, rng: random.Random) -> list[RatVec]:
    """The witness plus ``count`` exact points of the open chamber."""
    points = [chamber.witness]
    for _ in range(count):
        x = list(chamber.witness)
        for ray in chamber.rays:
            weight = Fraction(rng.randint(0, 5), rng.randint(1, 7))
            x = [a + weight * r for a, r in zip(x, ray)]
        points.append(tuple(x))
    return points


def _check_oracle(body: IntersectionBody, samples: int, rng: random.Random) -> str | None:
    for chamber, piece in zip(body.chambers, body.pieces):
        for x in chamber_samples(chamber, samples, rng):
            w = section_volume_scaled(body.polytope, x)
            if piece.is_zero_piece:
                if w != 0:
                    return f'chamber {chamber.id}: zero piece but section volume {w} at {x}'
                continue
            if not radial_identity_holds(piece.p_tilde.evaluate(x), piece.q.evaluate(x), x, w, body.mode):
                return f'chamber {chamber.id}: p_tilde |x|^2 != q W at {x}'
    return None


def _check_homogeneity(body: IntersectionBody) -> str | None:
    for piece in body.nonzero_pieces():
        dq = piece.q.is_homogeneous()
        if dq is None or piece.p_tilde.is_homogeneous() != dq - 1:
            return f'chamber {piece.chamber_id}: pieces are not homogeneous of degrees (k-1, k)'
    return None


def _check_degrees(body: IntersectionBody) -> str | None:
    report = degree_table(body, strict=False)
    return report.violations[0] if report.violations else None


def wall_samples(body: IntersectionBody, wall: Wall, count: int, rng: random.Random) -> list[RatVec]:
    """The wall witness plus ``count`` exact points of the same open wall."""
    normal = body.normals.normals[wall.hyperplane]
    chamber = next(c for c in body.chambers if c.id == wall.a)
    rays = [r for r in chamber.rays if dot(normal, r) == 0]
    points = [wall.witness]
    for _ in range(count):
        x = list(wall.witness)
        for ray in rays:
            weight = Fraction(rng.randint(0, 5), rng.randint(1, 7))
            x = [a + weight * r for a, r in zip(x, ray)]
        points.append(tuple(x))
    return points


def _check_continuity(body: IntersectionBody, rng: random.Random) -> str | None:
    graph = adjacency_graph(body.normals, body.chambers)
    for wall in graph.walls:
        a, b = body[wall.a], body[wall.b]
        for x in wall_samples(body, wall, WALL_POINTS - 1, rng):
            va, vb = a.value(x), b.value(x)
            if va is None or vb is None:
                continue
            if va != vb:
                return f'chambers {wall.a} and {wall.b} disagree on their wall at {x}: {va} != {vb}'
    return None


def _antipodal_equal(piece: ChamberPiece, other: ChamberPiece) -> bool:
    if piece.is_zero_piece or other.is_zero_piece:
        return piece.is_zero_piece == other.is_zero_piece
    return piece.p_tilde.antipode() * other.q == other.p_tilde * piece.q.antipode()


def _check_symmetry(body: IntersectionBody) -> str | None:
    for chamber, piece in zip(body.chambers, body.pieces):
        other = body.piece_for_signs(chamber.antipodal_signs())
        if other is None:
            return f'chamber {chamber.id} has no antipodal chamber'
        if not _antipodal_equal(piece, other):
            return f'chambers {chamber.id} and {other.chamber_id} are not antipodal images'
    return None


def exterior_apexes(body: IntersectionBody, count: int, rng: random.Random) -> list[RatVec]:
    p = body.polytope
    reach = 2 * max(abs(c) for v in p.vertices for c in v) + 1
    apexes = []
    while len(apexes) < count:
        apex = [Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(p.dimension)]
        apex[rng.randrange(p.dimension)] = reach * rng.choice((1, -1))
        apexes.append(tuple(apex))
    return apexes


def _check_pyramid_decomposition(body: IntersectionBody, samples: int, rng: random.Random) -> str | None:
    for apex in exterior_apexes(body, max(samples, 1), rng):
        if not pyramid_decomposition_check(body.polytope, apex):
            return f'signed pyramid volume from {apex} differs from the volume'
    return None


def _check_montecarlo(body: IntersectionBody, n: int, seed: int) -> str | None:
    piece = next(iter(body.nonzero_pieces()), None)
    if piece is None:
        return None
    x = body.chambers[piece.chamber_id].witness
    exact = float(section_volume_scaled(body.polytope, x)) / float(dot(x, x)) ** 0.5
    estimate, stderr = montecarlo_section_volume(body.polytope, x, n, seed)
    if abs(estimate - exact) > 5 * stderr + 1e-9:
        return f'Monte Carlo estimate {estimate:.6f} ± {stderr:.6f} misses the exact {exact:.6f}'
    return None


def run_checks(body: IntersectionBody, samples: int = 5, seed: int = 0,
               mc_samples: int = 0) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport()
    report.add('homogeneity', lambda: _check_homogeneity(body))
    report.add('oracle', lambda: _check_oracle(body, samples, rng))
    report.add('degree_bounds', lambda: _check_degrees(body))
    if body.origin.position == OriginPosition.INTERIOR:
        report.add('continuity', lambda: _check_continuity(body, rng))
    if body.polytope.is_centrally_symmetric():
        report.add('symmetry', lambda: _check_symmetry(body))
    report.add('pyramid_decomposition', lambda: _check_pyramid_decomposition(body, samples, rng))
    if body.dimension == 2 and body.polytope.is_centrally_symmetric():
        report.add('rotation_law', lambda: None if rotate2d_check(body, 100, seed) else 'rotation law violated')
    if mc_samples > 0:
        report.add('montecarlo', lambda: _check_montecarlo(body, mc_samples, seed))
    return report


# ── Replay ────────────────────────────────────────────────────────

def replay(body_factory: Callable[[str], IntersectionBody], document: dict,
           polytope_hash: str) -> CheckReport:
    """Re-verify a stored result document against its polytope.

    ``body_factory(mode)`` recomputes the pipeline for the document's mode.
    """
    report = CheckReport()
    rows = document['chambers']

    def polytope_matches():
        stored = document['polytope'].get('hash')
        if stored != polytope_hash:
            return f'result was computed for polytope {stored}, not {polytope_hash}'
        return None

    def pieces_consistent():
        for row in rows:
            if row['is_zero']:
                if row['boundary_poly'] is not None or row['degree'] is not None:
                    return f'chamber {row["id"]}: zero piece carries a boundary'
                continue
            expected, _ = normalize(row['q_poly'] - row['p_tilde_poly'])
            if row['boundary_poly'] != expected:
                return f'chamber {row["id"]}: boundary is not normalize(q - p_tilde)'
            if row['degree'] != expected.total_degree():
                return f'chamber {row["id"]}: degree {row["degree"]} != {expected.total_degree()}'
        return None

    def oracle_agrees():
        body = body_factory(document['mode'])
        for row in rows:
            x = vector(row['witness'])
            w = section_volume_scaled(body.polytope, x)
            if row['is_zero']:
                if w != 0:
                    return f'chamber {row["id"]}: stored as zero but section volume is {w}'
                continue
            if not radial_identity_holds(row['p_tilde_poly'].evaluate(x), row['q_poly'].evaluate(x),
                                         x, w, document['mode']):
                return f'chamber {row["id"]}: stored p_tilde and q disagree with the volume oracle'
        return None

    def arrangement_matches():
        body = body_factory(document['mode'])
        if document['m'] != body.normals.m:
            return f'm = {document["m"]}, recomputed {body.normals.m}'
        if len(rows) != len(body.chambers):
            return f'{len(rows)} chambers stored, {len(body.chambers)} recomputed'
        for row, chamber in zip(rows, body.chambers):
            if tuple(row['signs']) != chamber.signs:
                return f'chamber {row["id"]}: sign vector differs from the recomputed chamber {chamber.id}'
            if body.normals.signs_at(vector(row['witness'])) != chamber.signs:
                return f'chamber {row["id"]}: witness is not inside its chamber'
        return None

    def histogram_matches():
        counts: dict[str, int] = {}
        for row in rows:
            if not row['is_zero']:
                counts[str(row['degree'])] = counts.get(str(row['degree']), 0) + 1
        if counts != dict(document['degree_histogram']):
            return f'degree histogram {dict(document["degree_histogram"])} does not match the chambers {counts}'
        return None

    report.add('polytope_hash', polytope_matches)
    report.add('arrangement', arrangement_matches)
    report.add('boundary', pieces_consistent)
    report.add('oracle', oracle_agrees)
    report.add('degree_histogram', histogram_matches)
    return report


def cached_factory(p, jobs: int | None = None) -> Callable[[str], IntersectionBody]:
    cache: dict[str, IntersectionBody] = {}

    def factory(mode: str) -> IntersectionBody:
        if mode not in cache:
            cache[mode] = compute_intersection_body(p, NormalizationMode(mode), jobs=jobs)
        return cache[mode]
    return factory
