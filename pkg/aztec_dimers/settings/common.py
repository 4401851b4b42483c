"""
Common Pluggable Django App settings

Handling of environment variables, see: https://django-environ.readthedocs.io/en/latest/
"""
from path import Path as path
import environ
import os

env = environ.Env(
    # set casting, default value
    AZTEC_DIMERS_WORKERS=(int, 0),
    AZTEC_DIMERS_EXACT_MAX_ORDER=(int, 12),
    AZTEC_DIMERS_ENUMERATION_MAX_ORDER=(int, 5),
    AZTEC_DIMERS_PRECISION_BITS_PER_ORDER=(int, 4),
    AZTEC_DIMERS_MIN_PRECISION_BITS=(int, 64),
    AZTEC_DIMERS_MAX_PRECISION_BITS=(int, 16384),
    AZTEC_DIMERS_QUADRATURE_TOLERANCE=(float, 1e-14),
    AZTEC_DIMERS_QUADRATURE_MAX_NODES=(int, 65536),
    AZTEC_DIMERS_FREDHOLM_TAIL=(float, 16.0),
    AZTEC_DIMERS_FREDHOLM_TOLERANCE=(float, 1e-6),
    AZTEC_DIMERS_CACHE_EXPIRATION=(int, 60 * 60),
    AZTEC_DIMERS_RUN_SLOW_TESTS=(bool, False),
)

# path to this file.
HERE = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
APP_ROOT = path(__file__).abspath().dirname().dirname()  # /blah/blah/blah/.../aztec_dimers
REPO_ROOT = APP_ROOT.dirname()  # /blah/blah/blah/.../django-aztec-dimers
TEMPLATES_DIR = APP_ROOT / "templates"

environ.Env.read_env(os.path.join(REPO_ROOT, ".env"))

SETTING_NAMES = [
    "AZTEC_DIMERS_WORKERS",
    "AZTEC_DIMERS_EXACT_MAX_ORDER",
    "AZTEC_DIMERS_ENUMERATION_MAX_ORDER",
    "AZTEC_DIMERS_PRECISION_BITS_PER_ORDER",
    "AZTEC_DIMERS_MIN_PRECISION_BITS",
    "AZTEC_DIMERS_MAX_PRECISION_BITS",
    "AZTEC_DIMERS_QUADRATURE_TOLERANCE",
    "AZTEC_DIMERS_QUADRATURE_MAX_NODES",
    "AZTEC_DIMERS_FREDHOLM_TAIL",
    "AZTEC_DIMERS_FREDHOLM_TOLERANCE",
    "AZTEC_DIMERS_CACHE_EXPIRATION",
    "AZTEC_DIMERS_RUN_SLOW_TESTS",
]


def plugin_settings(settings):
    """
    Injects local settings into django settings. Values the host project
    already set are left alone.
    """
    for name in SETTING_NAMES:
        if not hasattr(settings, name):
            setattr(settings, name, env(name))
