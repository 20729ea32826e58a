import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.environ.get('OMEGALAB_SECRET_KEY', 'omegalab-local-only-not-served')

DEBUG = False

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'rest_framework',
    'lab',
]

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_PARSER_CLASSES': [
        'rest_framework.parsers.JSONParser',
    ],
}

# Lab limits. MAX_STEPS is a hard cap applied to every simulation.
OMEGALAB = {
    'MAX_STEPS': int(os.environ.get('OMEGALAB_MAX_STEPS', 1_000_000)),
    'DEFAULT_BUDGET': 4096,
    'DEFAULT_DEPTH': 16,
    'DISPATCH_CACHE_SIZE': 65536,
    'FIXTURE_DIR': BASE_DIR / 'lab' / 'fixtures' / 'closed_world',
}

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {'format': '%(levelname)s %(name)s: %(message)s'},
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'lab': {
            'handlers': ['stderr'],
            'level': os.environ.get('OMEGALAB_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
