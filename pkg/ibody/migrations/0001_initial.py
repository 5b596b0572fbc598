# Generated by Django 5.2.11 on 2026-10-19 09:00

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ComputationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('polytope_name', models.CharField(blank=True, max_length=200)),
                ('polytope_hash', models.CharField(db_index=True, max_length=64)),
                ('dimension', models.PositiveSmallIntegerField()),
                ('mode', models.CharField(choices=[('true-volume', 'True volume'), ('paper', 'Paper normalization')], default='true-volume', max_length=20)),
                ('m', models.PositiveIntegerField(help_text='Number of distinct vertex hyperplanes')),
                ('chamber_count', models.PositiveIntegerField()),
                ('zero_chambers', models.PositiveIntegerField(default=0)),
                ('degree_histogram', models.JSONField(blank=True, default=dict)),
                ('bounds_satisfied', models.BooleanField(default=True)),
                ('result', models.JSONField(help_text='The full result document')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at', '-id'],
                'indexes': [models.Index(fields=['polytope_hash', 'mode'], name='ibody_run_hash_mode_idx')],
            },
        ),
    ]
