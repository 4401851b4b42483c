"""
Production Pluggable Django App settings
"""


def plugin_settings(settings):
    """
    Injects production settings into django settings
    """

    settings.AZTEC_DIMERS_WORKERS = 0  # noqa: F841
    settings.AZTEC_DIMERS_CACHE_EXPIRATION = 60 * 60 * 24  # noqa: F841
    settings.AZTEC_DIMERS_RUN_SLOW_TESTS = False  # noqa: F841
