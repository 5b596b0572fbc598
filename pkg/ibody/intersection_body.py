"""
Symbolic radial function of the intersection body of a polytope.

For every chamber of the vertex arrangement the section ``P ∩ x⊥`` has a
fixed combinatorial type. Its vertices are rational functions of ``x``
(one per crossed edge), and coning the section from the origin over the
triangulated facets of the section gives

    rho(x) = p_tilde(x) / q(x)

with ``q`` a product of linear forms ``<b - a, x>``. All sign decisions are
taken once, exactly, at the chamber witness.
"""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterator, Mapping, Sequence

from .arrangement import Chamber, NormalSet, OnWall, build_normals, enumerate_chambers, locate
from .choices import NormalizationMode, OriginPosition
from .conf import setting
from .exact_linalg import RatVec, dot, rank, scale, sign, sub, vector
from .exceptions import ConsistencyError, InvalidEdgeError
from .jobs import default_jobs, parallel_map
from .polynomial import LinForm, Poly, RatFun, exact_divide, normalize, normalize_pair, poly_det, render
from .polytope import OriginClassification, VPolytope, regular_triangulation

logger = logging.getLogger(__name__)

DEFAULT_LIFTING_BASE = 3


@dataclass(frozen=True)
class SectionCombinatorics:
    chamber_id: int
    # Indices into ``VPolytope.edges``.
    crossed_edges: tuple[int, ...]
    section_facets: Mapping[int, tuple[int, ...]]
    cells: tuple[tuple[int, ...], ...]
    cell_signs: tuple[int, ...]
    cell_facets: tuple[int, ...]
    origin_is_section_vertex: bool = False

    @property
    def f0(self) -> int:
        """Vertex count of the section polytope."""
        return len(self.crossed_edges) + int(self.origin_is_section_vertex)

    @property
    def is_empty(self) -> bool:
        return not self.cells


@dataclass(frozen=True)
class ChamberPiece:
    chamber_id: int
    signs: tuple[int, ...]
    p_tilde: Poly
    q: Poly
    boundary_poly: Poly | None
    degree: int | None
    is_zero_piece: bool
    normalization_mode: str
    f0: int = 0
    # Edge forms that divided both p_tilde and q and were cancelled.
    cancelled: tuple[str, ...] = ()

    def value(self, x: Sequence) -> Fraction | None:
        """``p_tilde(x) / q(x)``; ``None`` on a pole of ``q``."""
        if self.is_zero_piece:
            return Fraction(0)
        qv = self.q.evaluate(x)
        if not qv:
            return None
        return self.p_tilde.evaluate(x) / qv


@dataclass
class IntersectionBody:
    """Pieces of the radial function with the arrangement they live on."""
    polytope: VPolytope
    mode: str
    normals: NormalSet
    chambers: list[Chamber]
    combinatorics: list[SectionCombinatorics]
    pieces: list[ChamberPiece]
    origin: OriginClassification
    _by_signs: dict[tuple[int, ...], ChamberPiece] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_signs = {piece.signs: piece for piece in self.pieces}

    def __iter__(self) -> Iterator[ChamberPiece]:
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __getitem__(self, chamber_id: int) -> ChamberPiece:
        return self.pieces[chamber_id]

    def piece_for_signs(self, signs: tuple[int, ...]) -> ChamberPiece | None:
        return self._by_signs.get(signs)

    @property
    def dimension(self) -> int:
        return self.polytope.dimension

    def nonzero_pieces(self) -> list[ChamberPiece]:
        return [piece for piece in self.pieces if not piece.is_zero_piece]


# ── Section vertices ──────────────────────────────────────────────

def _check_edge(a: RatVec, b: RatVec) -> None:
    if a == b:
        raise InvalidEdgeError('edge of zero length')
    if rank([a, b]) < 2:
        raise InvalidEdgeError(f'the line through {a} and {b} contains the origin')


def section_numerators(a: Sequence, b: Sequence) -> list[Poly]:
    """Rows ``<b, x> a - <a, x> b`` of the cone matrix, one Poly per coordinate."""
    a, b = vector(a), vector(b)
    la, lb = Poly.linear(a), Poly.linear(b)
    return [lb.scale(a[k]) - la.scale(b[k]) for k in range(len(a))]


def symbolic_vertex(a: Sequence, b: Sequence) -> tuple[RatFun, ...]:
    """The point where the edge ``[a, b]`` meets ``x⊥``, as rational functions of ``x``."""
    a, b = vector(a), vector(b)
    _check_edge(a, b)
    denominator = Poly.linear(sub(b, a))
    return tuple(RatFun(n, denominator) for n in section_numerators(a, b))


def concrete_vertex(a: RatVec, b: RatVec, x: RatVec) -> RatVec:
    ax, bx = dot(a, x), dot(b, x)
    return scale(1 / (bx - ax), sub(scale(bx, a), scale(ax, b)))


# ── Combinatorics ─────────────────────────────────────────────────

def crossed_edges(p: VPolytope, x: RatVec) -> list[int]:
    """Edges whose endpoints lie strictly on opposite sides of ``x⊥``.

    Edges touching the origin, or whose line passes through it, meet every
    hyperplane at the origin and are left out.
    """
    values = [dot(v, x) for v in p.vertices]
    result = []
    for idx, e in enumerate(p.edges):
        a, b = p.vertices[e.i], p.vertices[e.j]
        if not any(a) or not any(b):
            continue
        sa, sb = sign(values[e.i]), sign(values[e.j])
        if sa == 0 or sb == 0:
            raise ConsistencyError(f'vertex of edge {e.endpoints} lies on the hyperplane of {x}')
        if sa == sb:
            continue
        if rank([a, b]) < 2:
            continue
        result.append(idx)
    return result


def section_combinatorics(p: VPolytope, c: Chamber, base: int = DEFAULT_LIFTING_BASE,
                          origin: OriginClassification | None = None) -> SectionCombinatorics:
    origin = origin or p.classify_origin()
    w = c.witness
    crossed = crossed_edges(p, w)
    section_facets: dict[int, tuple[int, ...]] = {}
    for k in range(len(p.facets)):
        members = tuple(idx for idx in crossed if k in p.edge_facets[p.edges[idx]])
        if members:
            section_facets[k] = members

    d = p.dimension
    cells, cell_signs, cell_facets = [], [], []
    for k, members in section_facets.items():
        offset = p.facets[k].offset
        if offset == 0:
            continue
        points = [
            concrete_vertex(p.vertices[p.edges[idx].i], p.vertices[p.edges[idx].j], w)
            for idx in members
        ]
        for cell in regular_triangulation(points, base):
            if len(cell) != d - 1:
                raise ConsistencyError(
                    f'section of facet {k} in chamber {c.id} triangulated into a {len(cell)}-point cell'
                )
            cells.append(tuple(members[i] for i in cell))
            cell_signs.append(sign(offset))
            cell_facets.append(k)
    return SectionCombinatorics(
        chamber_id=c.id,
        crossed_edges=tuple(crossed),
        section_facets=section_facets,
        cells=tuple(cells),
        cell_signs=tuple(cell_signs),
        cell_facets=tuple(cell_facets),
        origin_is_section_vertex=origin.counts_as_section_vertex,
    )


# ── Radial pieces ─────────────────────────────────────────────────

def _mode_divisor(d: int, mode: str) -> int:
    if mode == NormalizationMode.PAPER:
        return factorial(d)
    return factorial(d - 1)


def _zero_piece(c: Chamber, mode: str, f0: int) -> ChamberPiece:
    d = len(c.witness)
    return ChamberPiece(
        chamber_id=c.id, signs=c.signs,
        p_tilde=Poly.zero(d), q=Poly.constant(d, 1),
        boundary_poly=None, degree=None, is_zero_piece=True,
        normalization_mode=str(mode), f0=f0,
    )


@lru_cache(maxsize=None)
def cell_numerator(edges: tuple[tuple[RatVec, RatVec], ...]) -> tuple[Poly, tuple[tuple[int, ...], ...], Fraction]:
    """Cone determinant of one cell over the distinct forms of its edges.

    Returns ``(D, keys, magnitude)`` with ``det / prod(<b - a, x>) =
    D / (magnitude * prod(keys))``. Crossed edges sharing a form ``L`` make
    the rows agree up to ``L`` on ``L = 0``, so ``L^(m-1)`` divides the
    determinant exactly.
    """
    d = len(edges[0][0])
    x_row = [Poly.variable(d, i) for i in range(d)]
    D = poly_det([section_numerators(a, b) for a, b in edges] + [x_row])
    forms = [LinForm(sub(b, a)).canonical() for a, b in edges]
    multiplicity = Counter(key for key, _ in forms)
    for key, n in multiplicity.items():
        for _ in range(n - 1):
            reduced = exact_divide(D, Poly.linear(key))
            if reduced is None:
                raise ConsistencyError(f'repeated edge form {key} does not divide the cell determinant')
            D = reduced
    magnitude = abs(math.prod((s for _, s in forms), start=Fraction(1)))
    return D, tuple(sorted(multiplicity)), magnitude


def chamber_radial(p: VPolytope, c: Chamber, sc: SectionCombinatorics,
                   mode: str = NormalizationMode.TRUE_VOLUME) -> ChamberPiece:
    """Exact ``p_tilde / q`` on the chamber ``c``.

    ``q`` is the product of the distinct crossed-edge forms. A form that
    still divides ``p_tilde`` afterwards is cancelled, logged and recorded
    in ``ChamberPiece.cancelled``.
    """
    d = p.dimension
    w = c.witness
    if sc.is_empty:
        return _zero_piece(c, mode, sc.f0)

    endpoints = {}
    for idx in sc.crossed_edges:
        a, b = p.vertices[p.edges[idx].i], p.vertices[p.edges[idx].j]
        _check_edge(a, b)
        endpoints[idx] = (a, b)

    # Cells over the same set of forms share a denominator; sum them first.
    by_keys: dict[tuple[tuple[int, ...], ...], Poly] = {}
    for cell, cell_sign in zip(sc.cells, sc.cell_signs):
        D, keys, magnitude = cell_numerator(tuple(endpoints[idx] for idx in cell))
        d_value = D.evaluate(w)
        l_value = math.prod((LinForm(k).evaluate(w) for k in keys), start=Fraction(1))
        if not d_value or not l_value:
            raise ConsistencyError(f'cell {cell} of chamber {c.id} is degenerate at the witness')
        orient = cell_sign * sign(d_value) * sign(l_value)
        term = D.scale(Fraction(orient) / magnitude)
        by_keys[keys] = by_keys[keys] + term if keys in by_keys else term

    all_keys = sorted({key for keys in by_keys for key in keys})
    factors = {key: Poly.linear(key) for key in all_keys}
    q = Poly.constant(d, 1)
    for key in all_keys:
        q = q * factors[key]
    raw = Poly.zero(d)
    for keys, term in by_keys.items():
        for key in all_keys:
            if key not in keys:
                term = term * factors[key]
        raw = raw + term

    if not raw:
        logger.debug('chamber %d: cell contributions cancel, zero piece', c.id)
        return _zero_piece(c, mode, sc.f0)

    p_tilde = exact_divide(raw, Poly.norm_squared(d))
    if p_tilde is None:
        raise ConsistencyError(f'raw numerator of chamber {c.id} is not divisible by |x|^2')
    p_tilde = p_tilde.scale(Fraction(1, _mode_divisor(d, mode)))

    cancelled = []
    for key in all_keys:
        reduced = exact_divide(p_tilde, factors[key])
        if reduced is None:
            continue
        cancelled.append(render(factors[key]))
        p_tilde = reduced
        q = exact_divide(q, factors[key])
    if cancelled:
        logger.warning('chamber %d: p_tilde and q share %s; cancelled', c.id, ', '.join(cancelled))
    p_tilde, q = normalize_pair(p_tilde, q)

    q_value = q.evaluate(w)
    if not q_value:
        raise ConsistencyError(f'q vanishes at the witness of chamber {c.id}')
    rho = p_tilde.evaluate(w) / q_value
    if rho <= 0:
        raise ConsistencyError(f'nonpositive radial value {rho} at the witness of chamber {c.id}')
    if q.is_homogeneous() is None or p_tilde.is_homogeneous() != q.total_degree() - 1:
        raise ConsistencyError(f'chamber {c.id}: deg p_tilde is not deg q - 1')

    boundary, _ = normalize(q - p_tilde)
    return ChamberPiece(
        chamber_id=c.id, signs=c.signs, p_tilde=p_tilde, q=q,
        boundary_poly=boundary, degree=boundary.total_degree(),
        is_zero_piece=False, normalization_mode=str(mode), f0=sc.f0,
        cancelled=tuple(cancelled),
    )


def _chamber_task(args) -> tuple[SectionCombinatorics, ChamberPiece]:
    p, c, mode, base, origin = args
    sc = section_combinatorics(p, c, base, origin)
    return sc, chamber_radial(p, c, sc, mode)


def compute_intersection_body(p: VPolytope, mode: str = NormalizationMode.TRUE_VOLUME,
                              jobs: int | None = None, base: int | None = None) -> IntersectionBody:
    """Full pipeline: arrangement, chambers, one piece per chamber."""
    mode = NormalizationMode(mode)
    base = setting('IBODY_LIFTING_BASE') if base is None else base
    jobs = default_jobs() if jobs is None else jobs
    origin = p.classify_origin()
    normals = build_normals(p)
    chambers = enumerate_chambers(normals, jobs=jobs)
    results = parallel_map(_chamber_task, [(p, c, mode, base, origin) for c in chambers], jobs=jobs)
    combinatorics = [sc for sc, _ in results]
    pieces = [piece for _, piece in results]
    logger.info('%s: %d pieces (%d zero), mode %s', p.name or '<unnamed>', len(pieces),
                sum(piece.is_zero_piece for piece in pieces), mode.value)
    return IntersectionBody(
        polytope=p, mode=mode.value, normals=normals, chambers=chambers,
        combinatorics=combinatorics, pieces=pieces, origin=origin,
    )


def radial_function(p: VPolytope, mode: str = NormalizationMode.TRUE_VOLUME,
                    jobs: int | None = None) -> list[ChamberPiece]:
    return compute_intersection_body(p, mode, jobs).pieces


# ── Boundary and degrees ──────────────────────────────────────────

@dataclass(frozen=True)
class BoundaryComponent:
    chamber_id: int
    polynomial: Poly
    degree: int


def boundary_components(body: IntersectionBody) -> list[BoundaryComponent]:
    return [
        BoundaryComponent(piece.chamber_id, piece.boundary_poly, piece.degree)
        for piece in body.nonzero_pieces()
    ]


def boundary_summary(body: IntersectionBody) -> list[tuple[Poly, list[int]]]:
    """Distinct boundary polynomials with the chambers that carry them."""
    grouped: dict[Poly, list[int]] = {}
    for component in boundary_components(body):
        grouped.setdefault(component.polynomial, []).append(component.chamber_id)
    return sorted(grouped.items(), key=lambda item: item[1][0])


@dataclass
class DegreeReport:
    histogram: dict[int, int]
    f0_per_chamber: dict[int, int]
    global_bound: int
    halved: bool
    max_degree: int
    violations: list[str]

    @property
    def satisfied(self) -> bool:
        return not self.violations


def degree_bound(p: VPolytope) -> tuple[int, bool]:
    """Global bound ``f1 - (d-1)``, halved for centrally symmetric P."""
    _, f1 = p.f01()
    bound = f1 - (p.dimension - 1)
    if p.is_centrally_symmetric():
        return bound // 2, True
    return bound, False


def degree_table(body: IntersectionBody, strict: bool = True) -> DegreeReport:
    histogram: Counter = Counter()
    violations = []
    f0s = {}
    for piece in body.nonzero_pieces():
        histogram[piece.degree] += 1
        f0s[piece.chamber_id] = piece.f0
        if piece.degree > piece.f0:
            violations.append(
                f'chamber {piece.chamber_id}: degree {piece.degree} exceeds f0(Q) = {piece.f0}'
            )
    bound, halved = degree_bound(body.polytope)
    max_degree = max(histogram, default=0)
    if max_degree > bound:
        violations.append(f'maximal degree {max_degree} exceeds the global bound {bound}')
    report = DegreeReport(
        histogram=dict(sorted(histogram.items())),
        f0_per_chamber=f0s,
        global_bound=bound,
        halved=halved,
        max_degree=max_degree,
        violations=violations,
    )
    if strict and violations:
        raise ConsistencyError('degree bound violated: ' + '; '.join(violations))
    return report


# ── Evaluation ────────────────────────────────────────────────────

def evaluate_radial(body: IntersectionBody, x: Sequence) -> Fraction | float:
    """Radial function at ``x``; on a wall the largest adjacent value."""
    x = vector(x)
    if not any(x):
        if body.origin.position == OriginPosition.EXTERIOR:
            return Fraction(0)
        return math.inf
    location = locate(body.normals, x)
    if isinstance(location, OnWall):
        candidates = [piece for piece in body.pieces if location.closure_matches(piece.signs)]
    else:
        piece = body.piece_for_signs(location)
        if piece is None:
            raise ConsistencyError(f'no piece for the sign vector of {x}')
        candidates = [piece]
    values = [v for v in (piece.value(x) for piece in candidates) if v is not None]
    return max(values, default=Fraction(0))


def membership(body: IntersectionBody, x: Sequence) -> bool:
    """``x`` lies in the intersection body, i.e. ``rho(x) >= 1``."""
    return evaluate_radial(body, x) >= 1


def classify_point(body: IntersectionBody, x: Sequence) -> tuple[str, Fraction | float]:
    rho = evaluate_radial(body, x)
    if rho > 1:
        return 'inside', rho
    if rho == 1:
        return 'boundary', rho
    return 'outside', rho

