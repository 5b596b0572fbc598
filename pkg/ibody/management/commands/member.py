"""
Decide whether a point lies in the intersection body.

Usage:
    python manage.py member cube3.json --point "0,0,3"
"""
from django.core.management.base import BaseCommand

from ibody.intersection_body import classify_point, compute_intersection_body

from ._common import (
    add_input_argument, add_jobs_argument, add_mode_argument, engine_errors, parse_mode,
    parse_point, read_polytope,
)


class Command(BaseCommand):
    help = 'Classify a point as inside, outside or on the boundary of the intersection body'

    def add_arguments(self, parser):
        add_input_argument(parser)
        parser.add_argument('--point', required=True, help='Comma-separated rationals, e.g. "1/2,0,3"')
        add_mode_argument(parser)
        add_jobs_argument(parser)

    def handle(self, *args, **options):
        p = read_polytope(options['input'])
        point = parse_point(options['point'], p.dimension)
        mode = parse_mode(options['mode'])
        with engine_errors():
            body = compute_intersection_body(p, mode, jobs=options['jobs'])
            verdict, rho = classify_point(body, point)
        self.stdout.write(f'{verdict} rho={rho}')
