"""
Oct-2026

Local dev, test and command-line settings.
A standalone settings module: no database, an in-memory cache and
console logging. dimerctl points DJANGO_SETTINGS_MODULE here when it
is not already set.
"""
from pathlib import Path

import environ
import os

ROOT_DIR = Path(__file__).resolve(strict=True).parent.parent.parent
APPS_DIR = ROOT_DIR / "aztec_dimers"
env = environ.Env()

READ_DOT_ENV_FILE = env.bool("DJANGO_READ_DOT_ENV_FILE", default=False)
if READ_DOT_ENV_FILE:
    ENV_PATH = os.path.join(ROOT_DIR, ".env")
    print("Loading environment variables from {ENV_PATH}".format(ENV_PATH=ENV_PATH))
    env.read_env(ENV_PATH)

# your local dev & test settings go here
# -----------------------------------------------------------------------------
AZTEC_DIMERS_WORKERS = env.int("AZTEC_DIMERS_WORKERS", 0)
AZTEC_DIMERS_EXACT_MAX_ORDER = env.int("AZTEC_DIMERS_EXACT_MAX_ORDER", 12)
AZTEC_DIMERS_ENUMERATION_MAX_ORDER = env.int("AZTEC_DIMERS_ENUMERATION_MAX_ORDER", 5)
AZTEC_DIMERS_PRECISION_BITS_PER_ORDER = env.int("AZTEC_DIMERS_PRECISION_BITS_PER_ORDER", 4)
AZTEC_DIMERS_MIN_PRECISION_BITS = env.int("AZTEC_DIMERS_MIN_PRECISION_BITS", 64)
AZTEC_DIMERS_MAX_PRECISION_BITS = env.int("AZTEC_DIMERS_MAX_PRECISION_BITS", 16384)
AZTEC_DIMERS_QUADRATURE_TOLERANCE = env.float("AZTEC_DIMERS_QUADRATURE_TOLERANCE", 1e-14)
AZTEC_DIMERS_QUADRATURE_MAX_NODES = env.int("AZTEC_DIMERS_QUADRATURE_MAX_NODES", 65536)
AZTEC_DIMERS_FREDHOLM_TAIL = env.float("AZTEC_DIMERS_FREDHOLM_TAIL", 16.0)
AZTEC_DIMERS_FREDHOLM_TOLERANCE = env.float("AZTEC_DIMERS_FREDHOLM_TOLERANCE", 1e-6)
AZTEC_DIMERS_CACHE_EXPIRATION = env.int("AZTEC_DIMERS_CACHE_EXPIRATION", 60 * 60)
AZTEC_DIMERS_RUN_SLOW_TESTS = env.bool("AZTEC_DIMERS_RUN_SLOW_TESTS", False)

# -----------------------------------------------------------------------------
# Required to run ./manage.py and dimerctl
# -----------------------------------------------------------------------------
DEBUG = True
USE_I18N = False
USE_TZ = True
TIME_ZONE = "UTC"
LANGUAGE_CODE = "en-us"
SECRET_KEY = env.str("DJANGO_SECRET_KEY", "aztec-diamond-local-only")
ALLOWED_HOSTS = [
    "127.0.0.1",
    "0.0.0.0",
]

CACHES = {
    "default": {
        "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
        "LOCATION": "aztec-dimers",
    }
}

# no models, no database
DATABASES = {}
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

INSTALLED_APPS = [
    "aztec_dimers",
]

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [str(APPS_DIR / "templates")],
        "APP_DIRS": True,
    }
]

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "%(asctime)s %(levelname)s %(name)s %(message)s"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "verbose"},
    },
    "loggers": {
        "aztec_dimers": {
            "handlers": ["console"],
            "level": env.str("AZTEC_DIMERS_LOG_LEVEL", "WARNING"),
        },
    },
}
