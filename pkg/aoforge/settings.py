"""
Django settings for the aoforge project.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
SETTINGS_DIR = Path(__file__).resolve().parent


# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/5.1/howto/deployment/checklist/

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('AOFORGE_SECRET_KEY', 'django-insecure-aoforge-7v$k2m!q0w9e8r7t6y5u4i3o2p1')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('AOFORGE_DEBUG', '') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    # 3rd party apps
    'rest_framework',

    # Local apps
    'aoforge.apps.graphs',
    'aoforge.apps.complexes',
    'aoforge.apps.ideals',
    'aoforge.apps.trees',
    'aoforge.apps.chains',
    'aoforge.apps.expectation',
    'aoforge.apps.percolation',
    'aoforge.apps.reports',
]

# Pure computation, no persistence.
DATABASES = {}


# Internationalization
# https://docs.djangoproject.com/en/5.1/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


# REST Framework configs
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_RENDERER_CLASSES': ['rest_framework.renderers.JSONRenderer'],
    'COERCE_DECIMAL_TO_STRING': True,
}


# Logging
AOFORGE_LOG_LEVEL = os.environ.get('AOFORGE_LOG_LEVEL', 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'aoforge': {
            'handlers': ['console'],
            'level': AOFORGE_LOG_LEVEL,
            'propagate': False,
        },
        'libraries': {
            'handlers': ['console'],
            'level': AOFORGE_LOG_LEVEL,
            'propagate': False,
        },
    },
}


# aoforge configs
AOFORGE_VERSION = '0.1.0'

# Vertex-count and state-space limits for the exhaustive kernels.
AOFORGE_GUARD_RAILS = {
    'pao_n': 16,
    'nc_chain_n': 7,
    'forest_n': 8,
    'parking_n': 7,
    'bruteforce_n': 5,
    'percolation_n': 20,
    'chain_states': 20000,
    'depiction_bruteforce_n': 6,
    'staircase_box': 2000000,
}

# Raises every vertex-count guard to at least this value when set (at the user's own risk).
AOFORGE_MAX_N = int(os.environ['AOFORGE_MAX_N']) if os.environ.get('AOFORGE_MAX_N') else None

AOFORGE_DEFAULT_SEED = 42

# Random connected graphs per vertex count in the built-in corpus.
AOFORGE_CORPUS_RANDOM_GRAPHS = 10

FIXTURE_DIRS = (
    BASE_DIR / "tests/fixtures",
)


try:
    from .local_settings import *  # noqa
except ImportError:
    pass
