"""
Oct-2026

Aztec diamond dimers for Django - App Configuration
"""
# python stuff
import logging

# django stuff
from django.apps import AppConfig
from django.conf import settings


log = logging.getLogger(__name__)


class AztecDimersConfig(AppConfig):
    name = "aztec_dimers"
    label = "aztec_dimers"

    # This is the text that appears in the Django admin console in all caps.
    verbose_name = "Aztec diamond dimer models"

    def ready(self):
        # host projects only need to add the app; every AZTEC_DIMERS_* setting has a default.
        from .settings.common import plugin_settings

        plugin_settings(settings)
        log.info("{label} is ready.".format(label=self.label))
