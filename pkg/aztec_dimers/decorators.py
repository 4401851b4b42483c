"""
Oct-2026

Aztec diamond dimers for Django - decorators.
computation_manager() - common error handling for numeric entry points
app_logger() - better logging for top-level operations
kernel_cache() - Django cache for kernel entries
"""
# python stuff
import json
import functools
import hashlib
import logging

import numpy as np

# django stuff
from django.conf import settings
from django.core.cache import cache

# our stuff
from .exceptions import AztecDimersError, ComputationError
from .utils import AztecJSONEncoder

# module initializations
logger = logging.getLogger(__name__)


def computation_manager(method):
    """
    Decorate a numeric entry point so that
    - domain errors (AztecDimersError) pass through untouched.
    - arithmetic and linear algebra failures are re-raised as ComputationError, with
      the operation and its arguments added to the message.
    """

    @functools.wraps(method)
    def wrapper(*args, **kwargs):
        try:
            return method(*args, **kwargs)
        except AztecDimersError:
            raise
        except (ArithmeticError, FloatingPointError, np.linalg.LinAlgError) as e:
            operation = kwargs.get("operation", "")
            if operation:
                operation = " " + operation
            raise ComputationError(
                "aztec_dimers.decorators.computation_manager(){operation} an unhandled exception '{error_message}', was raised by {method}(): args={args}, kwargs={kwargs}".format(
                    operation=operation,
                    method=method.__name__,
                    args=json.dumps([repr(a) for a in args], cls=AztecJSONEncoder),
                    kwargs=json.dumps(kwargs, cls=AztecJSONEncoder),
                    error_message=str(e),
                )
            ) from e

    return wrapper


def app_logger(func):
    """
    Decorate a function to add an entry to the app log with the function name,
    its positional arguments, and keyword pairs presented as a formatted dict.

    sample output:
        2026-10-07 19:45:26,869 INFO app_logger: aztec_dimers.shuffler.sample_tilings() ['SamplerConfig(n=64, a=Fraction(1, 1), count=10, seed=7)'] keyword args: {
            "workers": 4
        }
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        name_of_def = func.__name__
        logged_args = args
        kwargs_dict_repr = ""

        # methods log their class; plain functions log their module
        if args and func.__qualname__ != func.__name__ and hasattr(args[0], "__class__"):
            cls = args[0].__class__
            name_of_class = cls.__name__ + "()."
            name_of_module = cls.__module__
            # slice off the 'self' positional argument
            logged_args = args[1:]
        else:
            name_of_class = ""
            name_of_module = func.__module__

        positional_args = [repr(a) for a in logged_args]

        if len(kwargs.keys()) > 0:
            kwargs_dict_repr = "keyword args: "
            kwargs_dict_repr += json.dumps(kwargs, cls=AztecJSONEncoder, indent=4)

        logger.info(
            "app_logger: {name_of_module}.{name_of_class}{name_of_def}() {args} {kwargs}".format(
                name_of_module=name_of_module,
                name_of_class=name_of_class,
                name_of_def=name_of_def,
                args=positional_args if len(positional_args) > 0 else "",
                kwargs=kwargs_dict_repr,
            )
        )
        return func(*args, **kwargs)

    return wrapper


def _cache_part(value):
    token = getattr(value, "cache_token", None)
    return value if token is None else token


def kernel_cache(func):
    """
    Memoize a kernel entry in the Django cache. The key is an md5 digest of
    the function name and the repr of its arguments; an argument with a
    cache_token property contributes that token instead of its repr.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        parts = [_cache_part(arg) for arg in args]
        named = sorted((key, _cache_part(value)) for key, value in kwargs.items())
        fingerprint = repr((func.__module__, func.__qualname__, parts, named))
        cache_key = "aztec_dimers:{name}:{digest}".format(
            name=func.__name__, digest=hashlib.md5(fingerprint.encode("utf-8")).hexdigest()
        )
        value = cache.get(cache_key)
        if value is not None:
            return value
        value = func(*args, **kwargs)
        cache.set(cache_key, value, settings.AZTEC_DIMERS_CACHE_EXPIRATION)
        return value

    return wrapper
