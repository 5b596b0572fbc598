"""
Chamber adjacency graph in DOT, nodes labeled by boundary degree (0 for zero pieces).

Usage:
    python manage.py graph cube3.json --dot cube3.dot
"""
from django.core.management.base import BaseCommand

from ibody.arrangement import adjacency_graph
from ibody.intersection_body import compute_intersection_body

from ._common import (
    add_input_argument, add_jobs_argument, add_mode_argument, engine_errors, parse_mode,
    read_polytope, write_text,
)


class Command(BaseCommand):
    help = 'Write the chamber graph of the arrangement as DOT'

    def add_arguments(self, parser):
        add_input_argument(parser)
        parser.add_argument('--dot', help='Write the graph here instead of stdout')
        add_mode_argument(parser)
        add_jobs_argument(parser)

    def handle(self, *args, **options):
        p = read_polytope(options['input'])
        mode = parse_mode(options['mode'])
        with engine_errors():
            body = compute_intersection_body(p, mode, jobs=options['jobs'])
            graph = adjacency_graph(body.normals, body.chambers)
        labels = {piece.chamber_id: str(piece.degree or 0) for piece in body}
        write_text(self, options['dot'], graph.to_dot(labels))
        if options['dot']:
            self.stdout.write(self.style.SUCCESS(
                f'{len(graph.nodes)} nodes, {len(graph.walls)} edges'
            ))
