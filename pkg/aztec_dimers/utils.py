"""
Oct-2026

Aztec diamond dimers for Django - utility and helper functions.
"""
# python stuff
import json
import logging
import numbers
from fractions import Fraction

import mpmath
import numpy as np


logger = logging.getLogger(__name__)


class AztecJSONEncoder(json.JSONEncoder):
    """
    a custom encoder class.
    - exact scalars keep their "p/q" spelling.
    - numpy and mpmath numbers become plain python numbers.
    - velvety smooth error handling, understanding that we mostly use
      this class for generating log data.
    """

    def default(self, obj):
        if isinstance(obj, Fraction):
            return format_scalar(obj)
        if hasattr(obj, "re") and hasattr(obj, "im") and isinstance(obj.re, Fraction):
            return format_scalar(obj)
        if isinstance(obj, complex):
            return {"re": obj.real, "im": obj.imag}
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, mpmath.mpf):
            return float(obj)
        if isinstance(obj, mpmath.mpc):
            return {"re": float(obj.real), "im": float(obj.imag)}
        if isinstance(obj, (set, frozenset, tuple)):
            return list(obj)
        try:
            return json.JSONEncoder.default(self, obj)
        except Exception:
            # obj probably is not json serializable.
            return ""


def parse_number(text):
    """
    Parse a finite real number: "p/q" and integers give an exact Fraction,
    decimal spellings give a float. Raises ValueError for anything else.
    """
    if isinstance(text, bool):
        raise ValueError("expected a number, got {text!r}".format(text=text))
    if isinstance(text, (Fraction, int)):
        value = Fraction(text)
    elif isinstance(text, float):
        value = text
    else:
        spelling = str(text).strip()
        try:
            if any(c in spelling for c in ".eE") and "/" not in spelling:
                value = float(spelling)
            else:
                value = Fraction(spelling)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError("could not parse {text!r} as a number".format(text=text)) from e
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError("expected a finite number, got {text!r}".format(text=text))
    return value


def parse_weight(text):
    """Parse a weight a > 0 with parse_number()."""
    value = parse_number(text)
    if value <= 0:
        raise ValueError("weight must be positive, got {text!r}".format(text=text))
    return value


def format_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "{p}/{q}".format(p=value.numerator, q=value.denominator)


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def format_scalar(value) -> str:
    """
    Locale-independent text for any scalar this package produces.

    Rationals print as "p/q", Gaussian rationals as "re+im*i", floats with
    17 significant digits.
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if hasattr(value, "re") and hasattr(value, "im") and isinstance(value.re, Fraction):
        if value.im == 0:
            return format_fraction(value.re)
        imaginary = "i" if abs(value.im) == 1 else "{im}*i".format(im=format_fraction(abs(value.im)))
        if value.re == 0:
            return ("-" if value.im < 0 else "") + imaginary
        return "{re}{sign}{im}".format(re=format_fraction(value.re), sign="-" if value.im < 0 else "+", im=imaginary)
    if isinstance(value, (complex, mpmath.mpc, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return format_float(value.real)
        return "{re}{sign}{im}*i".format(
            re=format_float(value.real), sign="-" if value.imag < 0 else "+", im=format_float(abs(value.imag))
        )
    return format_float(value)


def log_precompute(caller: str, operation: str, details: dict) -> None:
    """
    add an application log entry immediately prior to an expensive evaluation.
    """
    logger.info(
        "aztec_dimers.{caller}() {operation}, request: {details}".format(
            caller=caller,
            operation=operation,
            details=json.dumps(details, cls=AztecJSONEncoder),
        )
    )


def log_postcompute(caller: str, operation: str, details: dict, error: float = 0.0, tolerance: float = None) -> None:
    """
    log the outcome of an expensive evaluation. Heuristic error estimates
    above the tolerance are logged as warnings.
    """
    log_message = "aztec_dimers.{caller}() {operation}, result: error={error}, {details}".format(
        caller=caller,
        operation=operation,
        error=error,
        details=json.dumps(details, cls=AztecJSONEncoder),
    )
    if tolerance is None or error <= tolerance:
        logger.info(log_message)
    else:
        logger.warning(log_message + ", tolerance={tolerance}".format(tolerance=tolerance))
