"""
Exact rational linear algebra.

Vectors and matrices are plain tuples of ``Fraction`` so they are immutable,
hashable and cheap to pickle across worker processes. Nothing in here ever
rounds: determinants and solves go through fraction-free (Bareiss)
elimination on integer-scaled rows, the kernel through an exact RREF, and
the chamber-witness LP through a tableau simplex with Bland's rule.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exceptions import ConsistencyError, DimensionError, PreconditionError

logger = logging.getLogger(__name__)

RatVec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vector(values: Iterable) -> RatVec:
    return tuple(Fraction(v) for v in values)


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f'dot product of lengths {len(u)} and {len(v)}')
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def sub(u: Sequence, v: Sequence) -> RatVec:
    if len(u) != len(v):
        raise DimensionError(f'difference of lengths {len(u)} and {len(v)}')
    return tuple(Fraction(a) - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> RatVec:
    c = Fraction(c)
    return tuple(c * a for a in v)


def sign(value) -> int:
    return (value > 0) - (value < 0)


def _integral_rows(m: Sequence[Sequence]) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers.

    Returns the integer rows and the product of the row multipliers, so a
    determinant of the scaled rows divided by that product is the original.
    """
    rows = []
    multiplier = ONE
    for row in m:
        entries = [Fraction(x) for x in row]
        den = lcm(*(x.denominator for x in entries)) if entries else 1
        rows.append([x.numerator * (den // x.denominator) for x in entries])
        multiplier *= den
    return rows, multiplier


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by Bareiss elimination with row pivoting."""
    n, k = shape(m)
    if n == 0 or n != k:
        raise DimensionError(f'determinant of a {n}x{k} matrix')
    a, multiplier = _integral_rows(m)
    negate = False
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if a[r][i] != 0), None)
            if swap is None:
                return ZERO
            a[i], a[swap] = a[swap], a[i]
            negate = not negate
        pivot = a[i][i]
        for r in range(i + 1, n):
            row, lead = a[r], a[r][i]
            for c in range(i + 1, n):
                row[c] = (row[c] * pivot - lead * a[i][c]) // prev
        prev = pivot
    value = Fraction(a[n - 1][n - 1]) / multiplier
    return -value if negate else value


def solve(m: Sequence[Sequence], rhs: Sequence) -> RatVec | None:
    """Unique solution of ``m x = rhs``; ``None`` when ``m`` is singular."""
    n, k = shape(m)
    if n == 0 or n != k:
        raise DimensionError(f'solve needs a square matrix, got {n}x{k}')
    if len(rhs) != n:
        raise DimensionError(f'right-hand side has length {len(rhs)}, expected {n}')
    a, _ = _integral_rows([list(row) + [b] for row, b in zip(m, rhs)])
    prev = 1
    for i in range(n):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if a[r][i] != 0), None)
            if swap is None:
                return None
            a[i], a[swap] = a[swap], a[i]
        pivot = a[i][i]
        for r in range(i + 1, n):
            row, lead = a[r], a[r][i]
            for c in range(i + 1, n + 1):
                row[c] = (row[c] * pivot - lead * a[i][c]) // prev
            row[i] = 0
        prev = pivot
    x = [ZERO] * n
    for i in reversed(range(n)):
        acc = Fraction(a[i][n])
        for j in range(i + 1, n):
            if a[i][j]:
                acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return tuple(x)


def rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    rows = [[Fraction(x) for x in row] for row in m]
    width = len(rows[0]) if rows else (ncols or 0)
    if ncols is not None and rows and width != ncols:
        raise DimensionError(f'matrix has {width} columns, expected {ncols}')
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == len(rows):
            break
        found = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if found is None:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        pivot_row = rows[r]
        for i, row in enumerate(rows):
            if i != r and row[c] != 0:
                f = row[c]
                rows[i] = [a - f * b for a, b in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1]) if m else 0


def primitive_integer_vector(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``v`` with coprime integer entries."""
    entries = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in entries)) if entries else 1
    ints = [x.numerator * (den // x.denominator) for x in entries]
    g = gcd(*ints) if ints else 0
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical_direction(v: Sequence) -> tuple[int, ...]:
    """Primitive integer representative of the line through ``v``."""
    ints = primitive_integer_vector(v)
    lead = next((x for x in ints if x != 0), 0)
    return tuple(-x for x in ints) if lead < 0 else ints


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Basis of the right kernel, one coprime integer vector per free column.

    ``ncols`` is only needed for a matrix without rows.
    """
    if not m and ncols is None:
        raise DimensionError('kernel of an empty matrix needs ncols')
    width = len(m[0]) if m else ncols
    rows, pivots = rref(m, width)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = [ZERO] * width
        v[free] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[free]
        basis.append(canonical_direction(v))
    return basis


class _Tableau:
    """Dense tableau for ``max c.z`` subject to ``A z <= b``, ``z >= 0``, ``b >= 0``.

    The slack basis is feasible from the start. Pivoting follows Bland's
    rule (smallest improving column, smallest basic index on ratio ties),
    which terminates on the degenerate vertices symmetric inputs produce.
    """

    def __init__(self, rows: Sequence[tuple[Sequence, object]], objective: Sequence):
        self.n = len(objective)
        self.m = len(rows)
        self.table: list[list[Fraction]] = []
        for i, (coeffs, rhs) in enumerate(rows):
            rhs = Fraction(rhs)
            if rhs < 0:
                raise PreconditionError('tableau right-hand sides must be nonnegative')
            row = [Fraction(c) for c in coeffs] + [ZERO] * self.m + [rhs]
            row[self.n + i] = ONE
            self.table.append(row)
        self.basis = list(range(self.n, self.n + self.m))
        self.cost = [Fraction(c) for c in objective] + [ZERO] * self.m
        self.pivots = 0

    def _pivot(self, r: int, c: int) -> None:
        row = self.table[r]
        p = row[c]
        if p != 1:
            row = [x / p for x in row]
            self.table[r] = row
        for i, other in enumerate(self.table):
            if i != r and other[c] != 0:
                f = other[c]
                self.table[i] = [a - f * b for a, b in zip(other, row)]
        f = self.cost[c]
        self.cost = [a - f * b for a, b in zip(self.cost, row)]
        self.basis[r] = c
        self.pivots += 1

    def maximize(self) -> list[Fraction]:
        while True:
            entering = next((j for j, cj in enumerate(self.cost) if cj > 0), None)
            if entering is None:
                break
            best = None
            for i, row in enumerate(self.table):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ConsistencyError('margin LP is unbounded despite the box constraints')
            self._pivot(best[1], entering)
        values = [ZERO] * (self.n + self.m)
        for i, var in enumerate(self.basis):
            values[var] = self.table[i][-1]
        return values[:self.n]


def max_margin_point(strict_rows: Sequence[tuple[Sequence, int]]) -> tuple[RatVec, Fraction]:
    """Maximize ``t`` subject to ``sign_i <n_i, x> >= t`` and ``|x_j| <= 1``.

    The open cone ``{x : sign_i <n_i, x> > 0}`` is nonempty exactly when the
    returned margin is positive, and then ``x`` is a strict interior point.
    ``x = 0, t = 0`` is always feasible, so an empty cone reports ``t = 0``.
    """
    if not strict_rows:
        raise PreconditionError('max_margin_point needs at least one constraint')
    d = len(strict_rows[0][0])
    for normal, s in strict_rows:
        if len(normal) != d:
            raise DimensionError(f'normal of length {len(normal)} in a {d}-dimensional LP')
        if s not in (1, -1):
            raise PreconditionError(f'sign must be +1 or -1, got {s!r}')
        if not any(normal):
            raise PreconditionError('zero normal in margin LP')

    # Columns: x+ (d), x- (d), t. x = x+ - x-, each part boxed by 1.
    width = 2 * d + 1
    rows = []
    for normal, s in strict_rows:
        coeffs = [-s * Fraction(a) for a in normal] + [s * Fraction(a) for a in normal] + [ONE]
        rows.append((coeffs, ZERO))
    for j in range(2 * d):
        coeffs = [ZERO] * width
        coeffs[j] = ONE
        rows.append((coeffs, ONE))
    objective = [ZERO] * (2 * d) + [ONE]

    tableau = _Tableau(rows, objective)
    values = tableau.maximize()
    logger.debug('margin LP: %d constraints, %d pivots', len(strict_rows), tableau.pivots)
    x = tuple(values[j] - values[d + j] for j in range(d))
    return x, values[2 * d]
