"""
Polytope and result documents.

Rationals travel as strings ("4/3") or integers, never floats.
"""
import json
import re
from fractions import Fraction

from rest_framework import serializers

from .arrangement import Chamber
from .choices import NormalizationMode
from .exceptions import PolytopeValidationError, PreconditionError
from .intersection_body import ChamberPiece, DegreeReport, IntersectionBody
from .polynomial import parse, render
from .polytope import VPolytope

_RATIONAL = re.compile(r'^[+-]?\d+(/\d+)?$')
_IRRATIONAL = re.compile(r'sqrt|√|\^\s*\(?\s*1\s*/|phi|golden|pi\b', re.IGNORECASE)


# ── Fields ────────────────────────────────────────────────────────

class RationalField(serializers.Field):
    default_error_messages = {
        'invalid': 'Expected an integer or a "p/q" string, got {value!r}.',
        'float': 'Floats are not exact; write {value!r} as a "p/q" string.',
        'irrational': 'irrational coordinates unsupported: {value!r}',
        'zero_denominator': 'Zero denominator in {value!r}.',
    }

    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid', value=data)
        if isinstance(data, int):
            return Fraction(data)
        if isinstance(data, float):
            self.fail('float', value=data)
        if not isinstance(data, str):
            self.fail('invalid', value=data)
        text = data.strip()
        if _IRRATIONAL.search(text):
            self.fail('irrational', value=data)
        if not _RATIONAL.match(text):
            self.fail('invalid', value=data)
        try:
            return Fraction(text)
        except ZeroDivisionError:
            self.fail('zero_denominator', value=data)

    def to_representation(self, value):
        return str(Fraction(value))


# ── Polytope files ────────────────────────────────────────────────

class PolytopeFileSerializer(serializers.Serializer):
    dimension = serializers.IntegerField(min_value=2)
    vertices = serializers.ListField(
        child=serializers.ListField(child=RationalField()), min_length=1,
    )
    name = serializers.CharField(required=False, allow_blank=True, default='')

    def validate(self, attrs):
        d = attrs['dimension']
        for i, v in enumerate(attrs['vertices']):
            if len(v) != d:
                raise serializers.ValidationError(
                    {'vertices': f'vertex {i} has {len(v)} coordinates, expected {d}'}
                )
        try:
            attrs['polytope'] = VPolytope(attrs['vertices'], name=attrs.get('name', ''))
        except PolytopeValidationError as exc:
            raise serializers.ValidationError({'vertices': str(exc)})
        return attrs


def polytope_document(p: VPolytope) -> dict:
    return {
        'dimension': p.dimension,
        'vertices': [[RationalField().to_representation(c) for c in v] for v in p.vertices],
        'name': p.name,
    }


def _flatten_errors(errors, prefix='') -> str:
    if isinstance(errors, dict):
        return '; '.join(_flatten_errors(v, f'{prefix}{k}.') for k, v in errors.items())
    if isinstance(errors, list):
        return '; '.join(_flatten_errors(v, prefix) for v in errors if v)
    return f'{prefix.rstrip(".")}: {errors}'


def load_polytope(text: str) -> VPolytope:
    """Parse and validate a PolytopeFile; problems raise PolytopeValidationError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeValidationError(f'not valid JSON: {exc}') from exc
    serializer = PolytopeFileSerializer(data=data)
    if not serializer.is_valid():
        raise PolytopeValidationError(_flatten_errors(serializer.errors))
    return serializer.validated_data['polytope']


# ── Result files ──────────────────────────────────────────────────

class ChamberResultSerializer(serializers.Serializer):
    id = serializers.IntegerField(min_value=0)
    signs = serializers.ListField(child=serializers.ChoiceField(choices=[1, -1]))
    witness = serializers.ListField(child=RationalField())
    rays = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))
    p_tilde = serializers.CharField()
    q = serializers.CharField()
    boundary = serializers.CharField(allow_null=True)
    degree = serializers.IntegerField(allow_null=True, min_value=0)
    is_zero = serializers.BooleanField()
    cancelled = serializers.ListField(child=serializers.CharField(), required=False, default=list)

    def validate(self, attrs):
        d = len(attrs['witness'])
        try:
            attrs['p_tilde_poly'] = parse(attrs['p_tilde'], d)
            attrs['q_poly'] = parse(attrs['q'], d)
            attrs['boundary_poly'] = parse(attrs['boundary'], d) if attrs['boundary'] is not None else None
        except PreconditionError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs


class ResultFileSerializer(serializers.Serializer):
    polytope = serializers.DictField()
    mode = serializers.ChoiceField(choices=NormalizationMode.values)
    m = serializers.IntegerField(min_value=1)
    chambers = ChamberResultSerializer(many=True)
    degree_histogram = serializers.DictField(child=serializers.IntegerField(min_value=0))
    bounds = serializers.DictField()


def chamber_row(chamber: Chamber, piece: ChamberPiece) -> dict:
    return {
        'id': chamber.id,
        'signs': list(chamber.signs),
        'witness': list(chamber.witness),
        'rays': [list(r) for r in chamber.rays],
        'p_tilde': render(piece.p_tilde),
        'q': render(piece.q),
        'boundary': render(piece.boundary_poly) if piece.boundary_poly is not None else None,
        'degree': piece.degree,
        'is_zero': piece.is_zero_piece,
        'cancelled': list(piece.cancelled),
    }


def result_document(body: IntersectionBody, report: DegreeReport) -> dict:
    p = body.polytope
    return {
        'polytope': {'name': p.name, 'hash': p.digest()},
        'mode': body.mode,
        'm': body.normals.m,
        'chambers': [
            ChamberResultSerializer(chamber_row(c, piece)).data
            for c, piece in zip(body.chambers, body.pieces)
        ],
        'degree_histogram': {str(k): v for k, v in report.histogram.items()},
        'bounds': {
            'f0_per_chamber': {str(k): v for k, v in report.f0_per_chamber.items()},
            'global': report.global_bound,
            'halved': report.halved,
            'satisfied': report.satisfied,
        },
    }


def dump_document(document: dict) -> str:
    return json.dumps(document, indent=2) + '\n'


def load_result(text: str) -> dict:
    """Validated ResultFile; problems raise PolytopeValidationError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeValidationError(f'result file is not valid JSON: {exc}') from exc
    serializer = ResultFileSerializer(data=data)
    if not serializer.is_valid():
        raise PolytopeValidationError(_flatten_errors(serializer.errors))
    return serializer.validated_data
