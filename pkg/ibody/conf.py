"""Engine settings with defaults, readable with or without configured Django settings."""
from django.conf import settings

DEFAULTS = {
    'IBODY_JOBS': 1,
    'IBODY_MODE': 'true',
    'IBODY_LIFTING_BASE': 3,
    'IBODY_ORACLE_LIFTING_BASE': 2,
    'IBODY_MC_SAMPLES': 100_000,
}


def setting(name: str):
    if not settings.configured:
        return DEFAULTS[name]
    return getattr(settings, name, DEFAULTS[name])
