"""
Sparse multivariate polynomials over the rationals.

A ``Poly`` maps exponent tuples to nonzero ``Fraction`` coefficients. The
monomial order is graded lexicographic with x1 > x2 > ... > xd everywhere:
leading terms, rendering and normalization all use it, so two polynomials
that agree up to scalar normalize to the same text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .exceptions import DimensionError, PreconditionError

Monomial = tuple[int, ...]


def _grlex_key(exps: Monomial) -> tuple[int, Monomial]:
    return sum(exps), exps


def variable_names(nvars: int) -> tuple[str, ...]:
    if nvars <= 4:
        return ('x', 'y', 'z', 'w')[:nvars]
    return tuple(f'x{i + 1}' for i in range(nvars))


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ('nvars', '_terms', '_hash')

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionError(f'monomial {exps} in a {nvars}-variable polynomial')
            if any(e < 0 for e in exps):
                raise PreconditionError(f'negative exponent in {exps}')
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, 0) + coeff
        self._init(nvars, {e: c for e, c in clean.items() if c})

    def _init(self, nvars: int, terms: dict[Monomial, Fraction]) -> None:
        self.nvars = nvars
        self._terms = terms
        self._hash = None

    @classmethod
    def _make(cls, nvars: int, terms: dict[Monomial, Fraction]) -> 'Poly':
        # Trusted path: terms already cleaned of zeros.
        p = cls.__new__(cls)
        p._init(nvars, terms)
        return p

    # ── Constructors ──────────────────────────────────────────────

    @classmethod
    def zero(cls, nvars: int) -> 'Poly':
        return cls._make(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value) -> 'Poly':
        value = Fraction(value)
        return cls._make(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> 'Poly':
        if not 0 <= index < nvars:
            raise DimensionError(f'variable {index} of {nvars}')
        exps = [0] * nvars
        exps[index] = 1
        return cls._make(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def linear(cls, coefficients: Sequence) -> 'Poly':
        """The linear form ``sum c_i x_i``."""
        nvars = len(coefficients)
        terms = {}
        for i, c in enumerate(coefficients):
            c = Fraction(c)
            if c:
                exps = [0] * nvars
                exps[i] = 1
                terms[tuple(exps)] = c
        return cls._make(nvars, terms)

    @classmethod
    def norm_squared(cls, nvars: int) -> 'Poly':
        terms = {}
        for i in range(nvars):
            exps = [0] * nvars
            exps[i] = 2
            terms[tuple(exps)] = Fraction(1)
        return cls._make(nvars, terms)

    # ── Inspection ────────────────────────────────────────────────

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def total_degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> int | None:
        degrees = {sum(e) for e in self._terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise PreconditionError('the zero polynomial has no leading term')
        exps = max(self._terms, key=_grlex_key)
        return exps, self._terms[exps]

    def coefficients(self) -> Iterable[Fraction]:
        return self._terms.values()

    # ── Arithmetic ────────────────────────────────────────────────

    def _check(self, other: 'Poly') -> None:
        if other.nvars != self.nvars:
            raise DimensionError(f'{self.nvars}-variable and {other.nvars}-variable polynomials')

    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Poly._make(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> 'Poly':
        return Poly._make(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> 'Poly':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> 'Poly':
        return (-self) + other

    def __mul__(self, other) -> 'Poly':
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return Poly._make(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'Poly':
        if k < 0:
            raise PreconditionError('negative power of a polynomial')
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> 'Poly':
        c = Fraction(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._make(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f'Poly({render(self)!r})'

    def __str__(self) -> str:
        return render(self)

    # ── Substitution ──────────────────────────────────────────────

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError(f'point of length {len(point)} for {self.nvars} variables')
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(point, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def signed_permutation(self, perm: Sequence[int], signs: Sequence[int]) -> 'Poly':
        """The polynomial ``x -> p(y)`` with ``y_i = signs[i] * x[perm[i]]``."""
        if len(perm) != self.nvars or len(signs) != self.nvars:
            raise DimensionError('signed permutation of the wrong length')
        terms = {}
        for exps, c in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] += e
                if e % 2 and signs[i] < 0:
                    c = -c
            terms[tuple(new)] = c
        return Poly._make(self.nvars, terms)

    def antipode(self) -> 'Poly':
        """``p(-x)``."""
        return self.signed_permutation(range(self.nvars), [-1] * self.nvars)


# ── Division and normal forms ─────────────────────────────────────

def exact_divide(p: Poly, f: Poly) -> Poly | None:
    """``g`` with ``p = f * g``, or ``None`` when ``f`` does not divide ``p``.

    Division by the grlex leading term of ``f``; the working polynomial
    stays a multiple of ``f`` exactly when ``f | p``, so the first leading
    term that ``LT(f)`` cannot divide proves a nonzero remainder.
    """
    if not f:
        raise PreconditionError('division by the zero polynomial')
    p._check(f)
    lead_e, lead_c = f.leading_term()
    f_terms = list(f._terms.items())
    work = dict(p._terms)
    quotient: dict[Monomial, Fraction] = {}
    while work:
        e = max(work, key=_grlex_key)
        if any(a < b for a, b in zip(e, lead_e)):
            return None
        qe = tuple(a - b for a, b in zip(e, lead_e))
        qc = work[e] / lead_c
        quotient[qe] = qc
        for fe, fc in f_terms:
            te = tuple(a + b for a, b in zip(qe, fe))
            v = work.get(te, 0) - qc * fc
            if v:
                work[te] = v
            else:
                work.pop(te, None)
    return Poly._make(p.nvars, quotient)


def _integral_scale(coefficients: Iterable[Fraction]) -> Fraction:
    """Positive ``c`` making every coefficient integral with content 1."""
    coefficients = list(coefficients)
    den = lcm(*(c.denominator for c in coefficients))
    g = gcd(*(c.numerator * (den // c.denominator) for c in coefficients))
    return Fraction(den, g)


def normalize(p: Poly) -> tuple[Poly, Fraction]:
    """Scale to coprime integer coefficients with a positive leading term."""
    if not p:
        raise PreconditionError('cannot normalize the zero polynomial')
    c = _integral_scale(p.coefficients())
    if p.leading_term()[1] < 0:
        c = -c
    return p.scale(c), c


def normalize_pair(numerator: Poly, denominator: Poly) -> tuple[Poly, Poly]:
    """Scale a quotient jointly: both integral, joint content 1, denominator lead positive."""
    if not denominator:
        raise PreconditionError('zero denominator')
    c = _integral_scale(list(numerator.coefficients()) + list(denominator.coefficients()))
    if denominator.leading_term()[1] < 0:
        c = -c
    return numerator.scale(c), denominator.scale(c)


def poly_det(grid: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    n = len(grid)
    if n == 0 or any(len(row) != n for row in grid):
        raise DimensionError('poly_det needs a nonempty square grid')
    nvars = grid[0][0].nvars
    for row in grid:
        for entry in row:
            if entry.nvars != nvars:
                raise DimensionError('grid entries have different variable counts')
    one = Poly.constant(nvars, 1)
    memo: dict[tuple[int, ...], Poly] = {}

    def minor(cols: tuple[int, ...]) -> Poly:
        row = n - len(cols)
        if not cols:
            return one
        cached = memo.get(cols)
        if cached is not None:
            return cached
        total = Poly.zero(nvars)
        for k, c in enumerate(cols):
            entry = grid[row][c]
            if not entry:
                continue
            term = entry * minor(cols[:k] + cols[k + 1:])
            total = total + term if k % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


# ── Linear forms and rational functions ───────────────────────────

@dataclass(frozen=True)
class LinForm:
    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', tuple(Fraction(c) for c in self.coefficients))

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError('linear form evaluated at a point of the wrong length')
        return sum((c * Fraction(v) for c, v in zip(self.coefficients, point)), Fraction(0))

    def canonical(self) -> tuple[tuple[int, ...], Fraction]:
        """``(key, s)`` with ``self = s * key``, key coprime with first nonzero positive."""
        if self.is_zero():
            raise PreconditionError('the zero form has no canonical representative')
        den = lcm(*(c.denominator for c in self.coefficients))
        ints = [c.numerator * (den // c.denominator) for c in self.coefficients]
        g = gcd(*ints)
        key = [x // g for x in ints]
        s = Fraction(g, den)
        if next(x for x in key if x) < 0:
            key = [-x for x in key]
            s = -s
        return tuple(key), s


@dataclass(frozen=True)
class RatFun:
    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if not self.denominator:
            raise PreconditionError('rational function with zero denominator')
        num, den = normalize_pair(self.numerator, self.denominator)
        object.__setattr__(self, 'numerator', num)
        object.__setattr__(self, 'denominator', den)

    def evaluate(self, point: Sequence) -> Fraction:
        den = self.denominator.evaluate(point)
        if not den:
            raise PreconditionError('rational function evaluated on its pole')
        return self.numerator.evaluate(point) / den

    def __str__(self) -> str:
        return f'({render(self.numerator)}) / ({render(self.denominator)})'


# ── Text form ─────────────────────────────────────────────────────

def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f'{c.numerator}/{c.denominator}'


def render(p: Poly, names: Sequence[str] | None = None) -> str:
    """Canonical text, e.g. ``3*x*y*z - x^2 - 2*x*y``."""
    names = names or variable_names(p.nvars)
    if not p:
        return '0'
    parts = []
    for exps, c in p.sorted_terms():
        factors = [
            name if e == 1 else f'{name}^{e}'
            for name, e in zip(names, exps) if e
        ]
        magnitude = abs(c)
        if not factors:
            body = _format_coefficient(magnitude)
        elif magnitude == 1:
            body = '*'.join(factors)
        else:
            body = '*'.join([_format_coefficient(magnitude)] + factors)
        if not parts:
            parts.append(f'-{body}' if c < 0 else body)
        else:
            parts.append(f'- {body}' if c < 0 else f'+ {body}')
    return ' '.join(parts)


_TERM = re.compile(r'([+-]?)([^+-]+)')
_NUMBER = re.compile(r'^\d+(/\d+)?$')


def parse(text: str, nvars: int, names: Sequence[str] | None = None) -> Poly:
    """Inverse of ``render``."""
    names = list(names or variable_names(nvars))
    index = {name: i for i, name in enumerate(names)}
    compact = text.replace(' ', '')
    if not compact:
        raise PreconditionError('empty polynomial text')
    if compact == '0':
        return Poly.zero(nvars)
    terms: dict[Monomial, Fraction] = {}
    consumed = 0
    for match in _TERM.finditer(compact):
        if match.start() != consumed:
            raise PreconditionError(f'cannot parse polynomial {text!r}')
        consumed = match.end()
        coeff = Fraction(-1 if match.group(1) == '-' else 1)
        exps = [0] * nvars
        for factor in match.group(2).split('*'):
            if _NUMBER.match(factor):
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition('^')
            if name not in index or (power and not power.isdigit()):
                raise PreconditionError(f'unknown factor {factor!r} in {text!r}')
            exps[index[name]] += int(power) if power else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    if consumed != len(compact):
        raise PreconditionError(f'cannot parse polynomial {text!r}')
    return Poly(nvars, terms)
