# Settings para pruebas: sqlite en memoria y logs silenciosos
from .settings import *  # noqa: F401,F403

SECRET_KEY = 'test-secret-key-for-arbor'

DEBUG = True

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    }
}

ARBOR_THREADS = 1

LOGGING['handlers'] = {  # noqa: F405
    'console': {
        'class': 'logging.StreamHandler',
        'formatter': 'simple',
    },
}
LOGGING['loggers']['apps'] = {  # noqa: F405
    'handlers': ['console'],
    'level': 'WARNING',
    'propagate': False,
}
