"""
Settings for the mz_lab project.

The project has no web surface and no database; Django provides the command
runner, the form validation layer, logging configuration and the test runner.
"""
import math
import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'mz-lab-local-only')

DEBUG = os.environ.get('DJANGO_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'interferometry',
]

MIDDLEWARE = []

# No models, so no database. SimpleTestCase never touches it.
DATABASES = {}

USE_I18N = False

USE_TZ = True

TIME_ZONE = 'UTC'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# --- EXPERIMENT / ORACLE DEFAULTS ---

INTERFEROMETRY = {
    'ORACLE_SEED': int(os.environ.get('INTERFEROMETRY_SEED', 42)),
    'ORACLE_SAMPLES': int(os.environ.get('INTERFEROMETRY_SAMPLES', 100)),
    'GRID_RESOLUTION': math.pi / 16,
    'TOLERANCE': float(os.environ.get('INTERFEROMETRY_TOLERANCE', 1e-10)),
    # |alpha|^2 + |beta|^2 may be off by this much before the CLI re-normalizes
    'INPUT_TOLERANCE': 1e-6,
    'SWEEP_MAX_STEPS': 100000,
    'DEFAULT_INPUT': (1 / math.sqrt(2), 0.0, 1 / math.sqrt(2), 0.0),
}


# --- LOGGING ---
# stdout carries JSON/CSV, so everything goes to stderr.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'interferometry': {
            'handlers': ['console'],
            'level': os.environ.get('INTERFEROMETRY_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
