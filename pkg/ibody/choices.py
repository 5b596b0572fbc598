from django.db import models


class NormalizationMode(models.TextChoices):
    # Euclidean (d-1)-volume of the section.
    TRUE_VOLUME = 'true-volume', 'True volume'
    # 1/d! assembly, reproduces the printed example polynomials.
    PAPER = 'paper', 'Paper normalization'

    @classmethod
    def from_flag(cls, flag: str) -> 'NormalizationMode':
        """Accept the short CLI spelling (``true`` / ``paper``) or the stored value."""
        aliases = {'true': cls.TRUE_VOLUME, 'true-volume': cls.TRUE_VOLUME, 'paper': cls.PAPER}
        try:
            return aliases[flag.strip().lower()]
        except KeyError:
            raise ValueError(f'unknown mode {flag!r}; expected "true" or "paper"') from None


class OriginPosition(models.TextChoices):
    INTERIOR = 'interior', 'Interior'
    BOUNDARY = 'boundary', 'Boundary'
    EXTERIOR = 'exterior', 'Exterior'
