"""
Triangle meshes of the boundary of a 3-dimensional intersection body.

Every sample direction ``w`` is rational and is pushed to ``rho(w) * w``,
which lies exactly on the boundary. Rendering to decimals happens only in
``to_obj``.
"""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_linalg import RatVec, scale, vector
from .exceptions import PreconditionError
from .intersection_body import ChamberPiece, IntersectionBody, evaluate_radial

logger = logging.getLogger(__name__)


@dataclass
class Mesh:
    vertices: list[RatVec] = field(default_factory=list)
    triangles: list[tuple[int, int, int]] = field(default_factory=list)
    # Chamber id -> indices into ``triangles``.
    groups: dict[int, list[int]] = field(default_factory=dict)
    _index: dict[RatVec, int] = field(default_factory=dict, repr=False)

    def add_vertex(self, point: RatVec) -> int:
        index = self._index.get(point)
        if index is None:
            index = len(self.vertices)
            self.vertices.append(point)
            self._index[point] = index
        return index


def _angular_order(rays: list[tuple[int, ...]], axis: RatVec) -> list[tuple[int, ...]]:
    """Rays sorted counterclockwise around ``axis``."""
    a = np.array([float(c) for c in axis])
    _, _, vt = np.linalg.svd(a.reshape(1, -1))
    e1, e2 = vt[1], vt[2]
    if np.linalg.det(np.array([e1, e2, a])) < 0:
        e1, e2 = e2, e1
    def angle(r):
        v = np.array([float(c) for c in r])
        return math.atan2(float(v @ e2), float(v @ e1))
    return sorted(rays, key=angle)


def _subdivide(triangle: tuple[RatVec, RatVec, RatVec], levels: int) -> list[tuple[RatVec, RatVec, RatVec]]:
    triangles = [triangle]
    half = Fraction(1, 2)
    for _ in range(levels):
        refined = []
        for a, b, c in triangles:
            ab = tuple(half * (x + y) for x, y in zip(a, b))
            bc = tuple(half * (x + y) for x, y in zip(b, c))
            ca = tuple(half * (x + y) for x, y in zip(c, a))
            refined += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
        triangles = refined
    return triangles


def boundary_point(body: IntersectionBody, piece: ChamberPiece, w: RatVec) -> RatVec:
    """``rho(w) * w`` using the chamber's own piece where it is defined."""
    rho = piece.value(w)
    if rho is None:
        rho = evaluate_radial(body, w)
    return scale(rho, w)


def mesh_boundary(body: IntersectionBody, refinement: int = 0) -> Mesh:
    if body.dimension != 3:
        raise PreconditionError(f'meshes are only built in dimension 3, not {body.dimension}')
    if refinement < 0:
        raise PreconditionError('refinement must be nonnegative')
    mesh = Mesh()
    for chamber, piece in zip(body.chambers, body.pieces):
        if piece.is_zero_piece:
            continue
        rays = [vector(r) for r in _angular_order(list(chamber.rays), chamber.witness)]
        faces = []
        for k in range(1, len(rays) - 1):
            for a, b, c in _subdivide((rays[0], rays[k], rays[k + 1]), refinement):
                tri = tuple(mesh.add_vertex(boundary_point(body, piece, w)) for w in (a, b, c))
                faces.append(len(mesh.triangles))
                mesh.triangles.append(tri)
        mesh.groups[chamber.id] = faces
    logger.info('mesh: %d vertices, %d triangles in %d groups',
                len(mesh.vertices), len(mesh.triangles), len(mesh.groups))
    return mesh


def to_obj(mesh: Mesh, name: str = '') -> str:
    lines = [f'# intersection body {name}'.rstrip()]
    for v in mesh.vertices:
        lines.append('v ' + ' '.join(f'{float(c):.12g}' for c in v))
    for chamber_id, faces in mesh.groups.items():
        lines.append(f'g chamber_{chamber_id}')
        for f in faces:
            lines.append('f ' + ' '.join(str(i + 1) for i in mesh.triangles[f]))
    return '\n'.join(lines) + '\n'


def reflex_edges(mesh: Mesh, tol: float = 1e-9) -> list[tuple[int, int]]:
    """Mesh edges whose two triangles meet at a reflex dihedral angle."""
    points = np.array([[float(c) for c in v] for v in mesh.vertices])
    incident: dict[tuple[int, int], list[int]] = defaultdict(list)
    for t, tri in enumerate(mesh.triangles):
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            incident[(min(a, b), max(a, b))].append(t)

    reflex = []
    for edge, faces in incident.items():
        if len(faces) != 2:
            continue
        first, second = (mesh.triangles[f] for f in faces)
        p0, p1, p2 = points[list(first)]
        normal = np.cross(p1 - p0, p2 - p0)
        length = np.linalg.norm(normal)
        if length < tol:
            continue
        normal /= length
        if normal @ ((p0 + p1 + p2) / 3) < 0:
            normal = -normal
        opposite = next(v for v in second if v not in edge)
        reach = np.linalg.norm(points[edge[1]] - points[edge[0]])
        if normal @ (points[opposite] - points[edge[0]]) > tol * max(reach, 1.0):
            reflex.append(edge)
    return sorted(reflex)
