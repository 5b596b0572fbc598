"""
Run store.

Every ``compute --save`` leaves one ComputationRun behind, so past results
can be listed, compared and replayed through ``check --replay``.
"""
from django.core.exceptions import ValidationError
from django.db import models

from .choices import NormalizationMode


class ComputationRun(models.Model):
    """One full pipeline run over a polytope."""

    polytope_name = models.CharField(max_length=200, blank=True)
    polytope_hash = models.CharField(max_length=64, db_index=True)
    dimension = models.PositiveSmallIntegerField()
    mode = models.CharField(
        max_length=20,
        choices=NormalizationMode.choices,
        default=NormalizationMode.TRUE_VOLUME,
    )
    m = models.PositiveIntegerField(help_text='Number of distinct vertex hyperplanes')
    chamber_count = models.PositiveIntegerField()
    zero_chambers = models.PositiveIntegerField(default=0)
    degree_histogram = models.JSONField(default=dict, blank=True)
    bounds_satisfied = models.BooleanField(default=True)
    result = models.JSONField(help_text='The full result document')
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']
        indexes = [models.Index(fields=['polytope_hash', 'mode'], name='ibody_run_hash_mode_idx')]

    def __str__(self):
        return f'{self.polytope_name or self.polytope_hash} ({self.mode}, {self.chamber_count} chambers)'

    def clean(self):
        if self.zero_chambers > self.chamber_count:
            raise ValidationError('More zero chambers than chambers.')
        if self.result.get('polytope', {}).get('hash') != self.polytope_hash:
            raise ValidationError('Result document belongs to another polytope.')

    @classmethod
    def record(cls, document: dict, dimension: int) -> 'ComputationRun':
        chambers = document['chambers']
        run = cls(
            polytope_name=document['polytope'].get('name', ''),
            polytope_hash=document['polytope']['hash'],
            dimension=dimension,
            mode=document['mode'],
            m=document['m'],
            chamber_count=len(chambers),
            zero_chambers=sum(1 for c in chambers if c['is_zero']),
            degree_histogram=document['degree_histogram'],
            bounds_satisfied=document['bounds']['satisfied'],
            result=document,
        )
        run.full_clean()
        run.save()
        return run
