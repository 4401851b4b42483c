"""
Oct-2026

Aztec diamond dimers for Django - the dimerctl console script.

Runs the dimerctl management command outside of a Django project, with
aztec_dimers.settings.local as the settings module unless
DJANGO_SETTINGS_MODULE says otherwise.
"""
# python stuff
import os
import sys


def main(argv=None):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "aztec_dimers.settings.local")

    # django stuff
    from django.core.management import execute_from_command_line

    argv = sys.argv[1:] if argv is None else list(argv)
    execute_from_command_line(["dimerctl", "dimerctl"] + argv)


if __name__ == "__main__":
    main()
