"""
Plumbing shared by the ibody management commands.

Exit codes: 0 ok, 2 bad input, 3 broken engine invariant.
"""
import logging
from contextlib import contextmanager
from pathlib import Path

from django.core.management.base import CommandError
from rest_framework import serializers

from ibody import catalog
from ibody.choices import NormalizationMode
from ibody.conf import setting
from ibody.exceptions import IntersectionBodyError, PolytopeValidationError
from ibody.polytope import VPolytope
from ibody.serializers import RationalField, load_polytope

logger = logging.getLogger('ibody.commands')

INPUT_ERROR = 2
ENGINE_ERROR = 3


def add_input_argument(parser):
    parser.add_argument(
        'input',
        help='PolytopeFile (JSON) or the name of a catalog polytope, e.g. cube3',
    )


def add_mode_argument(parser):
    parser.add_argument(
        '--mode',
        default=None,
        help='Normalization: "true" (Euclidean volume) or "paper" (1/d! assembly). Default: IBODY_MODE',
    )


def add_jobs_argument(parser):
    parser.add_argument(
        '--jobs', type=int, default=None,
        help='Worker processes for per-chamber work. Default: IBODY_JOBS',
    )


def input_error(message: str) -> CommandError:
    return CommandError(message, returncode=INPUT_ERROR)


def read_polytope(source: str) -> VPolytope:
    path = Path(source)
    if not path.exists() and source in catalog.CATALOG:
        return catalog.get(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise input_error(f'cannot read {source}: {exc.strerror or exc}')
    try:
        return load_polytope(text)
    except PolytopeValidationError as exc:
        raise input_error(f'{source}: {exc}')


def parse_mode(flag: str | None) -> NormalizationMode:
    try:
        return NormalizationMode.from_flag(flag or setting('IBODY_MODE'))
    except ValueError as exc:
        raise input_error(str(exc))


def parse_point(text: str, dimension: int) -> tuple:
    field = RationalField()
    parts = [part.strip() for part in text.split(',')]
    if len(parts) != dimension:
        raise input_error(f'point {text!r} has {len(parts)} coordinates, expected {dimension}')
    try:
        return tuple(field.to_internal_value(part) for part in parts)
    except serializers.ValidationError as exc:
        raise input_error(f'point {text!r}: {exc.detail[0]}')


@contextmanager
def engine_errors():
    """Translate engine exceptions into CommandError with the matching exit code."""
    try:
        yield
    except IntersectionBodyError as exc:
        logger.debug('engine error', exc_info=True)
        raise CommandError(f'{type(exc).__name__}: {exc}', returncode=exc.exit_code)


def write_text(command, path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)
        logger.info('wrote %s', path)
    else:
        command.stdout.write(text, ending='')
