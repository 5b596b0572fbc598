"""Shared helpers for the ibody test suite."""
import itertools
import json
from pathlib import Path

from ibody.polynomial import Poly, normalize, parse
from ibody.serializers import dump_document, polytope_document


def signed_permutations(n):
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield perm, signs


def orbit(text, nvars=3):
    """Normalized images of a polynomial under all signed coordinate permutations."""
    p = parse(text, nvars)
    return {normalize(p.signed_permutation(perm, signs))[0] for perm, signs in signed_permutations(nvars)}


def same_ratio_up_to_symmetry(piece, numerator: Poly, denominator: Poly) -> bool:
    """``p_tilde / q`` equals ``±numerator / denominator`` after a signed permutation."""
    for perm, signs in signed_permutations(numerator.nvars):
        n = numerator.signed_permutation(perm, signs)
        d = denominator.signed_permutation(perm, signs)
        lhs = piece.p_tilde * d
        if lhs == n * piece.q or lhs == -(n * piece.q):
            return True
    return False


def write_polytope(directory, p, name=None) -> str:
    path = Path(directory) / f'{name or p.name}.json'
    path.write_text(dump_document(polytope_document(p)))
    return str(path)


def write_json(directory, name, data) -> str:
    path = Path(directory) / name
    path.write_text(json.dumps(data))
    return str(path)
