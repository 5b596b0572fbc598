"""
Write the catalog polytopes as PolytopeFiles.

Usage:
    python manage.py seed_examples examples/
    python manage.py seed_examples examples/ --only cube3 tetrahedron
"""
from pathlib import Path

from django.core.management.base import BaseCommand

from ibody import catalog
from ibody.exceptions import PolytopeValidationError
from ibody.serializers import dump_document, polytope_document

from ._common import input_error


class Command(BaseCommand):
    help = 'Write the named example polytopes as JSON input files'

    def add_arguments(self, parser):
        parser.add_argument('directory', help='Target directory (created if missing)')
        parser.add_argument('--only', nargs='+', metavar='NAME', help='Subset of catalog names')
        parser.add_argument('--force', action='store_true', help='Overwrite existing files')

    def handle(self, *args, **options):
        target = Path(options['directory'])
        target.mkdir(parents=True, exist_ok=True)
        names = options['only'] or sorted(catalog.CATALOG)
        written = 0
        for name in names:
            try:
                p = catalog.get(name)
            except PolytopeValidationError as exc:
                raise input_error(str(exc))
            path = target / f'{name}.json'
            if path.exists() and not options['force']:
                self.stdout.write(self.style.WARNING(f'  {path} exists, skipped'))
                continue
            path.write_text(dump_document(polytope_document(p)))
            written += 1
            self.stdout.write(f'  {path}')
        self.stdout.write(self.style.SUCCESS(f'Wrote {written} polytope file(s)'))
