"""
Oct-2026

Aztec diamond dimers for Django - invariant suites run by dimerctl validate.

Each suite checks one identity over every case at a given (n, a) and
returns a SuiteReport that carries the first counterexample it found.
"""
# python stuff
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional

from scipy import stats

# django stuff
from django.conf import settings

# our stuff
from .constants import CHI_SQUARE_SIGNIFICANCE, Regimes, ValidationSuites
from .decorators import app_logger
from .exactdimer import (
    build_kasteleyn,
    closed_form_partition_function,
    enumerate_tilings,
    invert_direct,
    partition_function,
    tiling_weight,
)
from .kernelcalc import choose_regime, f1, five_term_sum, inverse_entry
from .lattice import AztecDiamond, Vertex
from .scalinglimits import airy_kernel, airy_kernel_formula, edge_params, ellipse_residual, saddle_derivatives
from .shuffler import SamplerConfig, grid_of_tiling, sample_kind_grids
from .utils import format_scalar


logger = logging.getLogger(__name__)

NUMERIC_TOLERANCE = 1e-10


@dataclass
class SuiteReport:
    suite: str
    passed: bool = True
    checked: int = 0
    counterexample: Optional[str] = None
    details: dict = field(default_factory=dict)

    def fail(self, message: str) -> None:
        if self.passed:
            self.passed = False
            self.counterexample = message

    def to_dict(self) -> dict:
        return asdict(self)


def _close(x, y, regime: str) -> bool:
    if regime == Regimes.EXACT:
        return x == y
    return abs(complex(x) - complex(y)) <= NUMERIC_TOLERANCE * max(1.0, abs(complex(y)))


def inverse_suite(diamond: AztecDiamond, regime: Optional[str] = None) -> SuiteReport:
    """f1/f2 entries against the direct inverse of the Kasteleyn matrix."""
    report = SuiteReport(ValidationSuites.INVERSE)
    regime = choose_regime(diamond, regime)
    direct = invert_direct(build_kasteleyn(diamond, regime))
    for w in diamond.whites:
        for b in diamond.blacks:
            report.checked += 1
            value = inverse_entry(w, b, diamond, regime).value
            if not _close(value, direct[w, b], regime):
                report.fail(
                    "K^-1({w}, {b}) = {value}, direct inverse gives {direct}".format(
                        w=tuple(w), b=tuple(b), value=format_scalar(value), direct=format_scalar(direct[w, b])
                    )
                )
    return report


def five_term_suite(diamond: AztecDiamond, regime: Optional[str] = None) -> SuiteReport:
    """sum_w K(x, w) K^-1(w, y) = 1_{x = y} for all black x, y; f1 vanishes one column left of the diamond."""
    report = SuiteReport(ValidationSuites.FIVE_TERM)
    regime = choose_regime(diamond, regime)
    for x in diamond.blacks:
        for y in diamond.blacks:
            report.checked += 1
            total = five_term_sum(x, y, diamond, regime)
            expected = 1 if x == y else 0
            if not _close(total, expected, regime):
                report.fail(
                    "(K K^-1)({x}, {y}) = {total}, expected {expected}".format(
                        x=tuple(x), y=tuple(y), total=format_scalar(total), expected=expected
                    )
                )
    for x2 in range(0, 2 * diamond.n + 1, 2):
        outside = Vertex(-1, x2)
        for y in diamond.blacks:
            report.checked += 1
            value = f1(outside, y, diamond, regime).value
            if not _close(value, 0, regime):
                report.fail(
                    "f1({x}, {y}) = {value}, expected 0".format(
                        x=tuple(outside), y=tuple(y), value=format_scalar(value)
                    )
                )
    return report


def partition_suite(diamond: AztecDiamond, regime: Optional[str] = None) -> SuiteReport:
    """|det K| against (1 + a^2)^(n(n+1)/2) and, for small n, the enumerated sum of weights."""
    report = SuiteReport(ValidationSuites.PARTITION)
    regime = Regimes.EXACT if diamond.is_exact and regime != Regimes.NUMERIC else Regimes.NUMERIC
    value = partition_function(diamond, regime)
    closed = closed_form_partition_function(diamond)
    report.checked += 1
    if not _close(value, closed, regime):
        report.fail("|det K| = {v}, closed form gives {c}".format(v=format_scalar(value), c=format_scalar(closed)))
    report.details["partition_function"] = format_scalar(value)
    if diamond.n <= min(3, settings.AZTEC_DIMERS_ENUMERATION_MAX_ORDER):
        total = sum((tiling_weight(t) for t in enumerate_tilings(diamond)), Fraction(0) if diamond.is_exact else 0.0)
        report.checked += 1
        if not _close(value, total, regime):
            report.fail(
                "|det K| = {v}, enumeration gives {e}".format(v=format_scalar(value), e=format_scalar(total))
            )
    return report


def sampler_chi_square(config: SamplerConfig, workers: Optional[int] = None):
    """
    (statistic, p-value, observed counts) of the sampled tiling frequencies
    against a^#vertical / Z over every tiling.
    """
    tilings = enumerate_tilings(config.diamond)
    keys = [grid_of_tiling(t).tobytes() for t in tilings]
    a = float(config.a)
    weights = [a ** t.vertical_count for t in tilings]
    total = sum(weights)
    observed = Counter(grid.tobytes() for grid in sample_kind_grids(config, workers))
    counts = [observed.get(key, 0) for key in keys]
    if sum(counts) != config.count:
        raise AssertionError("sampled a tiling outside the enumeration")
    expected = [config.count * w / total for w in weights]
    statistic, p_value = stats.chisquare(counts, expected)
    return float(statistic), float(p_value), counts


def sampler_suite(
    diamond: AztecDiamond, samples: int = 100000, seed: int = 0, workers: Optional[int] = None
) -> SuiteReport:
    report = SuiteReport(ValidationSuites.SAMPLER)
    if diamond.n > 3:
        report.fail("the sampler suite enumerates tilings and needs n <= 3, got n={n}".format(n=diamond.n))
        return report
    config = SamplerConfig(n=diamond.n, a=diamond.a, seed=seed, count=samples)
    statistic, p_value, counts = sampler_chi_square(config, workers)
    report.checked = len(counts)
    report.details.update({"statistic": statistic, "p_value": p_value, "samples": samples})
    if p_value < CHI_SQUARE_SIGNIFICANCE:
        report.fail("chi-square p-value {p} below {alpha}".format(p=p_value, alpha=CHI_SQUARE_SIGNIFICANCE))
    return report


ASYMPTOTIC_SLOPES = (Fraction(1, 2), Fraction(1), Fraction(2))


def asymptotics_suite(diamond: AztecDiamond) -> SuiteReport:
    """saddle point and ellipse identities at a few slopes, and the Airy kernel diagonal."""
    report = SuiteReport(ValidationSuites.ASYMPTOTICS)
    exact = diamond.is_exact
    for k in ASYMPTOTIC_SLOPES:
        params = edge_params(k if exact else float(k), diamond.a)
        first, second = saddle_derivatives(params)
        residual = ellipse_residual(params.u, params.v, diamond.a)
        for name, value in (("g'(z_c)", first), ("g''(z_c)", second), ("ellipse residual", residual)):
            report.checked += 1
            ok = value == 0 if exact else abs(float(value)) <= NUMERIC_TOLERANCE
            if not ok:
                report.fail("{name} = {value} at k={k}".format(name=name, value=format_scalar(value), k=k))
    for x in (-4.0, -1.0, 0.0, 1.5):
        report.checked += 1
        integral, closed = airy_kernel(x, x), float(airy_kernel_formula(x, x))
        if abs(integral - closed) > 1e-8:
            report.fail("K_Ai({x}, {x}) = {i} by quadrature, {c} in closed form".format(x=x, i=integral, c=closed))
    return report


@app_logger
def run_suites(
    diamond: AztecDiamond,
    suites: Iterable[str],
    regime: Optional[str] = None,
    samples: int = 100000,
    seed: int = 0,
    workers: Optional[int] = None,
) -> List[SuiteReport]:
    reports = []
    for suite in suites:
        if suite == ValidationSuites.INVERSE:
            reports.append(inverse_suite(diamond, regime))
        elif suite == ValidationSuites.FIVE_TERM:
            reports.append(five_term_suite(diamond, regime))
        elif suite == ValidationSuites.PARTITION:
            reports.append(partition_suite(diamond, regime))
        elif suite == ValidationSuites.SAMPLER:
            reports.append(sampler_suite(diamond, samples=samples, seed=seed, workers=workers))
        elif suite == ValidationSuites.ASYMPTOTICS:
            reports.append(asymptotics_suite(diamond))
        else:
            raise ValueError("unknown suite {suite!r}".format(suite=suite))
        logger.info(
            "run_suites() {suite} passed={passed} checked={checked}".format(
                suite=suite, passed=reports[-1].passed, checked=reports[-1].checked
            )
        )
    return reports


def geometric_goodness_of_fit(sizes: Iterable[int], beta, pooled_from: int = 4):
    """
    chi-square of cluster sizes against (1 - beta) beta^(k-1), sizes >= pooled_from
    pooled into one cell. pooled_from must be at least 2. Returns (observed,
    expected, p-value); the p-value is nan when there are no clusters.
    """
    if pooled_from < 2:
        raise ValueError("pooled_from must be at least 2, got {p}".format(p=pooled_from))
    sizes = list(sizes)
    if not sizes:
        return [0] * pooled_from, [0.0] * pooled_from, float("nan")
    total = len(sizes)
    beta = float(beta)
    observed = [sum(1 for s in sizes if s == k) for k in range(1, pooled_from)]
    observed.append(sum(1 for s in sizes if s >= pooled_from))
    expected = [total * (1 - beta) * beta ** (k - 1) for k in range(1, pooled_from)]
    expected.append(total * beta ** (pooled_from - 1))
    _, p_value = stats.chisquare(observed, expected)
    return observed, expected, float(p_value)
