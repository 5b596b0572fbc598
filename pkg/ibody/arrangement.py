"""
The central arrangement of hyperplanes orthogonal to the vertices of P.

Chambers are found by inserting one hyperplane at a time: every partial
chamber keeps an exact interior witness, which already certifies one side
of the new hyperplane, so only the other side costs a margin LP.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .exact_linalg import (
    RatVec, canonical_direction, dot, kernel_basis, max_margin_point, sign, vector,
)
from .exceptions import ConsistencyError, DimensionError, PolytopeValidationError, PreconditionError
from .jobs import parallel_map
from .polytope import VPolytope

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalSet:
    """Vertex directions of P up to nonzero scalar, origin skipped."""
    normals: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.normals)

    @property
    def dimension(self) -> int:
        return len(self.normals[0])

    def signs_at(self, x: Sequence) -> tuple[int, ...]:
        return tuple(sign(dot(n, x)) for n in self.normals)


@dataclass(frozen=True)
class Chamber:
    id: int
    signs: tuple[int, ...]
    witness: RatVec
    rays: tuple[tuple[int, ...], ...] = ()

    def antipodal_signs(self) -> tuple[int, ...]:
        return tuple(-s for s in self.signs)


@dataclass(frozen=True)
class OnWall:
    """A direction lying on the hyperplanes with the given indices."""
    hyperplanes: tuple[int, ...]
    # Signs with zeros on the hyperplanes containing the point.
    signs: tuple[int, ...]

    def closure_matches(self, chamber_signs: Sequence[int]) -> bool:
        return all(s == 0 or s == c for s, c in zip(self.signs, chamber_signs))


@dataclass(frozen=True)
class Wall:
    a: int
    b: int
    hyperplane: int
    witness: RatVec


@dataclass
class ChamberGraph:
    nodes: list[int]
    walls: list[Wall] = field(default_factory=list)

    def neighbors(self, chamber_id: int) -> list[int]:
        result = []
        for w in self.walls:
            if w.a == chamber_id:
                result.append(w.b)
            elif w.b == chamber_id:
                result.append(w.a)
        return sorted(result)

    def to_dot(self, labels: dict[int, str] | None = None, name: str = 'chambers') -> str:
        labels = labels or {}
        lines = [f'graph {name} {{']
        for node in self.nodes:
            label = labels.get(node, str(node))
            lines.append(f'  c{node} [label="{label}"];')
        for w in self.walls:
            lines.append(f'  c{w.a} -- c{w.b};')
        lines.append('}')
        return '\n'.join(lines) + '\n'


def _sign_key(signs: Sequence[int]) -> tuple[int, ...]:
    # Lexicographic with + before -.
    return tuple(0 if s > 0 else 1 for s in signs)


# ── Normals ───────────────────────────────────────────────────────

def build_normals(p: VPolytope) -> NormalSet:
    seen: dict[tuple[int, ...], None] = {}
    for v in p.vertices:
        if not any(v):
            continue
        seen.setdefault(canonical_direction(v), None)
    if not seen:
        raise PolytopeValidationError('every vertex is the origin')
    logger.debug('arrangement of %s: m = %d', p.name or '<unnamed>', len(seen))
    return NormalSet(normals=tuple(seen))


def zonotope_generators(p: VPolytope) -> tuple[tuple[int, ...], ...]:
    """Generators of the zonotope sum of segments [-v, v] over the vertices of P.

    Its normal fan is the fan of the arrangement: the chambers are the
    normal cones of the zonotope's vertices.
    """
    return build_normals(p).normals


# ── Chambers ──────────────────────────────────────────────────────

def _open_cone_point(normals: Sequence[Sequence], signs: Sequence[int]) -> RatVec | None:
    x, t = max_margin_point(list(zip(normals, signs)))
    return x if t > 0 else None


def _split(args) -> list[tuple[tuple[int, ...], RatVec]]:
    normals, signs, witness = args
    new = normals[-1]
    s = sign(dot(new, witness))
    children = []
    for side in (1, -1):
        extended = signs + (side,)
        if side == s:
            children.append((extended, witness))
        else:
            point = _open_cone_point(normals, extended)
            if point is not None:
                children.append((extended, point))
    return children


def enumerate_chambers(ns: NormalSet, jobs: int = 1) -> list[Chamber]:
    """All open chambers with strict witnesses, in canonical order."""
    if ns.m < 1:
        raise PreconditionError('an arrangement needs at least one hyperplane')
    first = vector(ns.normals[0])
    partial = [((1,), first), ((-1,), tuple(-c for c in first))]
    for k in range(1, ns.m):
        normals = ns.normals[:k + 1]
        rounds = parallel_map(_split, [(normals, signs, w) for signs, w in partial], jobs=jobs)
        partial = [child for children in rounds for child in children]
        logger.debug('inserted hyperplane %d/%d: %d partial chambers', k + 1, ns.m, len(partial))

    partial.sort(key=lambda item: _sign_key(item[0]))
    lines = candidate_lines(ns)
    chambers = [
        Chamber(id=i, signs=signs, witness=w, rays=_rays_for(ns, signs, lines))
        for i, (signs, w) in enumerate(partial)
    ]
    bound = sum(comb(ns.m, j) for j in range(ns.dimension + 1))
    if len(chambers) > bound:
        raise ConsistencyError(f'{len(chambers)} chambers exceed the bound {bound} for m = {ns.m}')
    logger.info('enumerated %d chambers for %d hyperplanes in dimension %d',
                len(chambers), ns.m, ns.dimension)
    return chambers


# ── Rays ──────────────────────────────────────────────────────────

def candidate_lines(ns: NormalSet) -> list[tuple[int, ...]]:
    """Lines cut out by (d-1)-subsets of independent normals."""
    d = ns.dimension
    lines = set()
    for subset in itertools.combinations(ns.normals, d - 1):
        kernel = kernel_basis(list(subset), d)
        if len(kernel) == 1:
            lines.add(kernel[0])
    return sorted(lines)


def _rays_for(ns: NormalSet, signs: Sequence[int], lines: Sequence[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    rays = []
    for line in lines:
        for r in (line, tuple(-c for c in line)):
            if all(s * dot(n, r) >= 0 for n, s in zip(ns.normals, signs)):
                rays.append(r)
    return tuple(sorted(rays))


def chamber_rays(ns: NormalSet, c: Chamber) -> tuple[tuple[int, ...], ...]:
    """Extreme rays of the closed chamber cone, as coprime integer vectors."""
    return c.rays or _rays_for(ns, c.signs, candidate_lines(ns))


# ── Adjacency and location ────────────────────────────────────────

def _wall_point(ns: NormalSet, signs: Sequence[int], k: int) -> RatVec | None:
    d = ns.dimension
    basis = kernel_basis([ns.normals[k]], d)
    restricted = []
    for i, (n, s) in enumerate(zip(ns.normals, signs)):
        if i == k:
            continue
        restricted.append((tuple(dot(n, b) for b in basis), s))
    if not restricted:
        # Only one hyperplane: the whole of it is the wall.
        return vector(basis[0])
    y, t = max_margin_point(restricted)
    if t <= 0:
        return None
    return tuple(sum(yj * b[c] for yj, b in zip(y, basis)) for c in range(d))


def adjacency_graph(ns: NormalSet, chambers: Sequence[Chamber]) -> ChamberGraph:
    """Chambers sharing a (d-1)-dimensional wall."""
    by_signs = {c.signs: c for c in chambers}
    graph = ChamberGraph(nodes=[c.id for c in chambers])
    for c in chambers:
        for k in range(ns.m):
            flipped = c.signs[:k] + (-c.signs[k],) + c.signs[k + 1:]
            other = by_signs.get(flipped)
            if other is None or other.id < c.id:
                continue
            point = _wall_point(ns, c.signs, k)
            if point is not None:
                graph.walls.append(Wall(a=c.id, b=other.id, hyperplane=k, witness=point))
    graph.walls.sort(key=lambda w: (w.a, w.b))
    logger.debug('adjacency graph: %d nodes, %d walls', len(graph.nodes), len(graph.walls))
    return graph


def locate(ns: NormalSet, x: Sequence, chambers: Sequence[Chamber] | None = None) -> int | OnWall | tuple[int, ...]:
    """Chamber id of ``x``, or ``OnWall`` when ``x`` lies on a hyperplane.

    Without ``chambers`` the sign vector itself is returned in place of an id.
    """
    x = vector(x)
    if len(x) != ns.dimension:
        raise DimensionError(f'point of length {len(x)} in dimension {ns.dimension}')
    if not any(x):
        raise PreconditionError('the origin lies on every hyperplane')
    signs = ns.signs_at(x)
    zeros = tuple(i for i, s in enumerate(signs) if s == 0)
    if zeros:
        return OnWall(hyperplanes=zeros, signs=signs)
    if chambers is None:
        return signs
    for c in chambers:
        if c.signs == signs:
            return c.id
    raise ConsistencyError(f'no chamber has the sign vector of {x}')
