"""
Run the invariant suite (``ibody check``) on a polytope, or replay a stored result against it.

Usage:
    python manage.py verify cube3.json
    python manage.py verify cube5.json --samples 1
    python manage.py verify cube3.json --replay cube3.result.json
    python manage.py verify cube3.json --run 12
"""
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from ibody.conf import setting
from ibody.exceptions import PolytopeValidationError
from ibody.intersection_body import compute_intersection_body
from ibody.models import ComputationRun
from ibody.serializers import ResultFileSerializer, load_result
from ibody.verification import cached_factory, replay, run_checks

from ._common import (
    ENGINE_ERROR, add_input_argument, add_jobs_argument, add_mode_argument, engine_errors,
    input_error, parse_mode, read_polytope,
)


class Command(BaseCommand):
    help = 'Verify the intersection body of a polytope'

    def add_arguments(self, parser):
        add_input_argument(parser)
        parser.add_argument('--samples', type=int, default=5, help='Random points per chamber')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument(
            '--mc-samples', type=int, default=None,
            help='Monte Carlo samples for the float cross-check; 0 disables. Default: IBODY_MC_SAMPLES',
        )
        source = parser.add_mutually_exclusive_group()
        source.add_argument('--replay', help='ResultFile to re-verify instead of recomputing')
        source.add_argument('--run', type=int, help='Saved run to re-verify')
        add_mode_argument(parser)
        add_jobs_argument(parser)

    def handle(self, *args, **options):
        p = read_polytope(options['input'])
        if options['samples'] < 0:
            raise input_error('--samples must be nonnegative')
        with engine_errors():
            if options['replay'] or options['run'] is not None:
                document = self._stored_document(options)
                report = replay(cached_factory(p, options['jobs']), document, p.digest())
            else:
                mode = parse_mode(options['mode'])
                body = compute_intersection_body(p, mode, jobs=options['jobs'])
                mc = options['mc_samples']
                report = run_checks(
                    body, samples=options['samples'], seed=options['seed'],
                    mc_samples=setting('IBODY_MC_SAMPLES') if mc is None else mc,
                )

        for result in report.results:
            style = self.style.SUCCESS if result.passed else self.style.ERROR
            self.stdout.write(style(f'{"PASS" if result.passed else "FAIL"} {result.name}: {result.detail}'))
        failure = report.first_failure
        if failure is not None:
            raise CommandError(f'check {failure.name} failed: {failure.detail}', returncode=ENGINE_ERROR)
        self.stdout.write(self.style.SUCCESS(f'All {len(report.results)} checks passed'))

    def _stored_document(self, options) -> dict:
        if options['run'] is not None:
            try:
                run = ComputationRun.objects.get(pk=options['run'])
            except ComputationRun.DoesNotExist:
                raise input_error(f'no saved run #{options["run"]}')
            serializer = ResultFileSerializer(data=run.result)
            if not serializer.is_valid():
                raise input_error(f'saved run #{run.pk} is not a valid ResultFile')
            return serializer.validated_data
        try:
            text = Path(options['replay']).read_text()
        except OSError as exc:
            raise input_error(f'cannot read {options["replay"]}: {exc.strerror or exc}')
        try:
            return load_result(text)
        except PolytopeValidationError as exc:
            raise input_error(f'{options["replay"]}: {exc}')
