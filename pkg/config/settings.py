from pathlib import Path
from decouple import config
import dj_database_url
import os

BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='django-insecure-arbor-CHANGE-THIS')
DEBUG = config('DEBUG', default=False, cast=bool)
ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'rest_framework',
    'apps.core',
    'apps.tree_core',
    'apps.parity_functionals',
    'apps.pink_subgroup',
    'apps.finite_field',
    'apps.frobenius_lab',
    'apps.square_classes',
    'apps.verification',
]

# El ledger de corridas es la única tabla; sqlite por defecto
DATABASES = {
    'default': dj_database_url.config(
        default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}",
    )
}

LANGUAGE_CODE = 'es-mx'
TIME_ZONE = 'America/Mexico_City'
USE_I18N = True
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ✅ REST FRAMEWORK - solo serializers y renderer JSON (no hay vistas)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
}

# ============================================
# Límites de cómputo
# ============================================
ARBOR_SEED = config('ARBOR_SEED', default=20240601, cast=int)
ARBOR_THREADS = config('ARBOR_THREADS', default=1, cast=int)
ARBOR_MAX_DEPTH = config('ARBOR_MAX_DEPTH', default=24, cast=int)
ARBOR_ENUM_CAP = config('ARBOR_ENUM_CAP', default=4, cast=int)
ARBOR_CLOSURE_CAP = config('ARBOR_CLOSURE_CAP', default=2 ** 24, cast=int)
ARBOR_FIELD_DEGREE_CAP = config('ARBOR_FIELD_DEGREE_CAP', default=1024, cast=int)
ARBOR_PRIME_CAP = config('ARBOR_PRIME_CAP', default=2 ** 40, cast=int)
ARBOR_SCAN_CAP = config('ARBOR_SCAN_CAP', default=2 ** 24, cast=int)
ARBOR_TRIAL_DIVISION_LIMIT = config('ARBOR_TRIAL_DIVISION_LIMIT', default=10 ** 6, cast=int)

# ============================================
# Logging
# ============================================
LOG_LEVEL = config('LOG_LEVEL', default='INFO')

os.makedirs(BASE_DIR / 'logs', exist_ok=True)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': BASE_DIR / 'logs' / 'arbor.log',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'apps': {
            'handlers': ['console', 'file'],
            'level': LOG_LEVEL,
            'propagate': False,
        },
    },
}
