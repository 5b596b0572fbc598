""" ibody - exact intersection bodies of rational polytopes. Django settings. """
import os
from pathlib import Path

from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / '.env')
# --- Security ---
SECRET_KEY = os.environ.get(
    'SECRET_KEY',
    'django-insecure-CHANGE-ME-'
     'ibody-dev-key'
    )
DEBUG = os.environ.get('DEBUG', 'True').lower() in ('true', '1', 'yes')
ALLOWED_HOSTS = os.environ.get('ALLOWED_HOSTS', 'localhost,127.0.0.1').split(',')
# --- Application ---
INSTALLED_APPS = [ 'django.contrib.auth',
                   'django.contrib.contenttypes',
                   # Third-party
                   'rest_framework',
                   # Local
                   'ibody.apps.IbodyConfig',
                   ]
# --- Database ---
# Default: SQLite for the run store. Swap to PostgreSQL for shared deployments.
DATABASE_URL = os.environ.get('DATABASE_URL', '')
if DATABASE_URL.startswith('postgresql'):
    DATABASES = { 'default': {
        'ENGINE': 'django.db.backends.postgresql',
        'NAME': os.environ.get('DB_NAME', 'ibody'),
        'USER': os.environ.get('DB_USER', 'ibody'),
        'PASSWORD': os.environ.get('DB_PASSWORD', 'ibody'),
        'HOST': os.environ.get('DB_HOST', 'localhost'),
        'PORT': os.environ.get('DB_PORT', '5432'),
        }
    }
else:
    DATABASES = {
        'default': {
            'ENGINE': 'django.db.backends.sqlite3',
            'NAME': BASE_DIR / 'db.sqlite3',
        }
    }
# --- DRF ---
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
}
# --- i18n ---
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
# --- Logging ---
IBODY_LOG_LEVEL = os.environ.get('IBODY_LOG_LEVEL', 'INFO').upper()
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'compact': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'console': {'class': 'logging.StreamHandler', 'formatter': 'compact'},
    },
    'loggers': {
        'ibody': {'handlers': ['console'], 'level': IBODY_LOG_LEVEL, 'propagate': False},
    },
}
# --- Engine ---
# Worker processes for per-chamber work; every --jobs flag defaults to this.
IBODY_JOBS = int(os.environ.get('IBODY_JOBS', '1'))
IBODY_MODE = os.environ.get('IBODY_MODE', 'true')
IBODY_LIFTING_BASE = int(os.environ.get('IBODY_LIFTING_BASE', '3'))
IBODY_ORACLE_LIFTING_BASE = int(os.environ.get('IBODY_ORACLE_LIFTING_BASE', '2'))
IBODY_MC_SAMPLES = int(os.environ.get('IBODY_MC_SAMPLES', '100000'))
