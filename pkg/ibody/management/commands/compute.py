"""
Compute the radial function of the intersection body of a polytope.

Usage:
    python manage.py compute cube3.json --mode paper --output cube3.result.json
    ibody compute cube4 --jobs 4 --save
"""
from django.core.management.base import BaseCommand

from ibody.intersection_body import boundary_summary, compute_intersection_body, degree_table
from ibody.models import ComputationRun
from ibody.serializers import dump_document, result_document

from ._common import (
    add_input_argument, add_jobs_argument, add_mode_argument, engine_errors, parse_mode,
    read_polytope, write_text,
)


class Command(BaseCommand):
    help = 'Compute the piecewise radial function of the intersection body'

    def add_arguments(self, parser):
        add_input_argument(parser)
        add_mode_argument(parser)
        add_jobs_argument(parser)
        parser.add_argument('--output', help='Write the ResultFile here instead of stdout')
        parser.add_argument(
            '--save', action='store_true',
            help='Record the run in the database',
        )

    def handle(self, *args, **options):
        p = read_polytope(options['input'])
        mode = parse_mode(options['mode'])
        with engine_errors():
            body = compute_intersection_body(p, mode, jobs=options['jobs'])
            report = degree_table(body)
            document = result_document(body, report)
        write_text(self, options['output'], dump_document(document))

        if options['save']:
            run = ComputationRun.record(document, p.dimension)
            self.stderr.write(f'Saved run #{run.pk}')
        if options['output']:
            histogram = ', '.join(f'{k}: {v}' for k, v in report.histogram.items())
            self.stdout.write(self.style.SUCCESS(
                f'{p.name or options["input"]}: {len(body)} chambers, m = {body.normals.m}, '
                f'degrees {{{histogram}}}, bound {report.global_bound}, '
                f'{len(boundary_summary(body))} distinct boundaries'
            ))
            flagged = [piece.chamber_id for piece in body if piece.cancelled]
            if flagged:
                self.stdout.write(self.style.WARNING(
                    f'common factors cancelled in chambers {", ".join(map(str, flagged))}'
                ))
