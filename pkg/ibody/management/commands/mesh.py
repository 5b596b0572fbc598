"""
Export the boundary of a 3-dimensional intersection body as a Wavefront OBJ mesh.

Usage:
    python manage.py mesh cube3.json --refine 2 --obj cube3.obj
"""
from django.core.management.base import BaseCommand

from ibody.intersection_body import compute_intersection_body
from ibody.mesh import mesh_boundary, reflex_edges, to_obj

from ._common import (
    add_input_argument, add_jobs_argument, add_mode_argument, engine_errors, input_error,
    parse_mode, read_polytope, write_text,
)


class Command(BaseCommand):
    help = 'Write an OBJ mesh of the intersection body boundary (d = 3)'

    def add_arguments(self, parser):
        add_input_argument(parser)
        parser.add_argument('--refine', type=int, default=0, help='Midpoint subdivision levels')
        parser.add_argument('--obj', help='Write the mesh here instead of stdout')
        add_mode_argument(parser)
        add_jobs_argument(parser)

    def handle(self, *args, **options):
        p = read_polytope(options['input'])
        if p.dimension != 3:
            raise input_error(f'meshes need d = 3, the input has d = {p.dimension}')
        if options['refine'] < 0:
            raise input_error('--refine must be nonnegative')
        mode = parse_mode(options['mode'])
        with engine_errors():
            body = compute_intersection_body(p, mode, jobs=options['jobs'])
            mesh = mesh_boundary(body, options['refine'])
        write_text(self, options['obj'], to_obj(mesh, p.name))
        if options['obj']:
            reflex = reflex_edges(mesh)
            self.stdout.write(self.style.SUCCESS(
                f'{len(mesh.groups)} groups, {len(mesh.vertices)} vertices, '
                f'{len(mesh.triangles)} triangles, {len(reflex)} reflex edges'
            ))
