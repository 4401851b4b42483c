"""
Oct-2026

Aztec diamond dimers for Django - inverse Kasteleyn entries, edge
correlations, the south-domino line kernel and the particle kernel.

Every kernel here is a contour integral of a rational function. The exact
regime takes iterated residues over Q(i): the inner integral over a small
circle around z = 0 reduces to the principal part PP(w) of the inner
integrand (1/(w - z) expanded in z), and the outer integral to residues of
G(w) PP(w) at the enclosed poles. The numeric regime keeps PP exact as a
series and integrates G PP on circles with the trapezoidal rule in mpmath,
doubling the nodes until two sums agree and the working precision until the
sum shows no catastrophic cancellation.
"""
# python stuff
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

# django stuff
from django.conf import settings

# our stuff
from .constants import Regimes
from .decorators import computation_manager, kernel_cache
from .exactdimer import GaussianRational, VertexMatrix, exact_elimination, i_power, kasteleyn_entry
from .exceptions import ComputationError, InvalidLine, OutOfRange, PrecisionExhausted, TruncationTooShort
from .lattice import AztecDiamond, Dimer, Vertex, is_black, is_white, make_dimer, particle_coords
from .utils import log_postcompute, log_precompute


logger = logging.getLogger(__name__)


# series
# -----------------------------------------------------------------------------
class LaurentSeries:
    """
    A Laurent series about a point, known exactly for every exponent below
    order (math.inf for a finite Laurent polynomial). Coefficients are
    Fractions, GaussianRationals or mpmath numbers.
    """

    def __init__(self, center, coefficients: Dict[int, object], order=math.inf):
        self.center = center
        self.coefficients = {k: c for k, c in coefficients.items() if k < order and c != 0}
        self.order = order

    def __repr__(self):
        return "LaurentSeries(center={center}, terms={terms}, order={order})".format(
            center=self.center, terms=len(self.coefficients), order=self.order
        )

    @property
    def valuation(self):
        return min(self.coefficients) if self.coefficients else self.order

    def coefficient(self, k: int):
        if k >= self.order:
            raise TruncationTooShort(
                "coefficient of exponent {k} requested from a series known below {order}".format(k=k, order=self.order)
            )
        return self.coefficients.get(k, 0)

    def residue(self):
        return self.coefficient(-1)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.center, {k: c * other for k, c in self.coefficients.items()}, self.order)
        if other.center != self.center:
            raise ValueError("series about different points cannot be multiplied")
        order = min(self.order + other.valuation, other.order + self.valuation)
        product = {}
        for i, a in self.coefficients.items():
            for j, b in other.coefficients.items():
                if i + j < order:
                    product[i + j] = product.get(i + j, 0) + a * b
        return LaurentSeries(self.center, product, order)

    __rmul__ = __mul__

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        order = min(self.order, other.order)
        total = dict(self.coefficients)
        for k, c in other.coefficients.items():
            total[k] = total.get(k, 0) + c
        return LaurentSeries(self.center, total, order)

    def reciprocal(self, terms: Optional[int] = None) -> "LaurentSeries":
        """
        1/s for a series with a nonzero leading coefficient. A Laurent
        polynomial has an infinite reciprocal, so terms bounds the result.
        """
        if not self.coefficients:
            raise ZeroDivisionError("reciprocal of a zero series")
        v = self.valuation
        known = self.order - v if self.order != math.inf else terms
        if known is None:
            raise TruncationTooShort("the reciprocal of a Laurent polynomial needs a term count")
        if terms is not None:
            known = min(known, terms)
        lead = self.coefficients[v]
        inverse = [1 / lead]
        for j in range(1, known):
            acc = 0
            for i in range(1, j + 1):
                c = self.coefficients.get(v + i, 0)
                if c != 0:
                    acc = acc + c * inverse[j - i]
            inverse.append(-acc / lead)
        return LaurentSeries(self.center, {j - v: c for j, c in enumerate(inverse)}, known - v)


def residue_at_zero(integrand: LaurentSeries):
    """coefficient of z^-1 of a series about 0."""
    if integrand.center != 0:
        raise ValueError("residue_at_zero needs a series about 0, got one about {c}".format(c=integrand.center))
    return integrand.residue()


def _binomial_series(exponent: int, d, terms: int) -> List[object]:
    """first terms of (t + d)^exponent = sum_j binom(exponent, j) d^(exponent-j) t^j."""
    coefficients = []
    binomial = 1
    for j in range(terms):
        coefficients.append(binomial * d ** (exponent - j))
        binomial = binomial * (exponent - j) // (j + 1)
        if binomial == 0:
            coefficients.extend([0] * (terms - j - 1))
            break
    return coefficients


class RationalIntegrand:
    """constant * prod (w - root)^exponent with integer exponents."""

    def __init__(self, constant, factors: Dict[object, int]):
        self.constant = constant
        self.factors = {root: e for root, e in factors.items() if e != 0}

    def __repr__(self):
        return "RationalIntegrand({constant}, {factors})".format(constant=self.constant, factors=self.factors)

    def shifted(self, root, delta: int) -> "RationalIntegrand":
        factors = dict(self.factors)
        factors[root] = factors.get(root, 0) + delta
        return RationalIntegrand(self.constant, factors)

    def laurent(self, center, order: int) -> LaurentSeries:
        """the expansion about center, exact for exponents below order."""
        valuation = sum(e for root, e in self.factors.items() if root == center)
        others = [(root, e) for root, e in self.factors.items() if root != center]
        if not others:
            return LaurentSeries(center, {valuation: self.constant})
        terms = order - valuation
        if terms <= 0:
            return LaurentSeries(center, {}, order)
        regular = [self.constant] + [0] * (terms - 1)
        for root, e in others:
            expansion = _binomial_series(e, center - root, terms)
            product = [0] * terms
            for i, a in enumerate(regular):
                if a == 0:
                    continue
                for j in range(terms - i):
                    b = expansion[j]
                    if b != 0:
                        product[i + j] = product[i + j] + a * b
            regular = product
        return LaurentSeries(center, {valuation + j: c for j, c in enumerate(regular)}, order)

    def residue(self, pole):
        if pole == 0:
            return residue_at_zero(self.laurent(0, 0))
        return self.laurent(pole, 0).coefficient(-1)

    def evaluate(self, w):
        value = self.constant
        for root, e in self.factors.items():
            value = value * (w - root) ** e
        return value


def principal_part(integrand: RationalIntegrand) -> Dict[int, object]:
    """negative-exponent coefficients of the expansion about 0."""
    series = integrand.laurent(0, 0)
    return {k: c for k, c in series.coefficients.items() if k < 0}


# kernel entries
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class KernelEntry:
    value: object
    regime: str
    precision_bits: Optional[int] = None
    error: float = 0.0
    heuristic: bool = False

    def __complex__(self):
        return complex(self.value)


def choose_regime(diamond: AztecDiamond, regime: Optional[str] = None) -> str:
    regime = regime or Regimes.AUTO
    if regime == Regimes.AUTO:
        if diamond.is_exact and diamond.n <= settings.AZTEC_DIMERS_EXACT_MAX_ORDER:
            return Regimes.EXACT
        return Regimes.NUMERIC
    if regime == Regimes.EXACT and not diamond.is_exact:
        raise ValueError("exact arithmetic needs a rational weight, got {a!r}".format(a=diamond.a))
    if regime not in (Regimes.EXACT, Regimes.NUMERIC):
        raise ValueError("unknown regime {regime!r}".format(regime=regime))
    return regime


@dataclass(frozen=True)
class DoubleContour:
    """
    (1/(2 pi i)^2) int dw int dz G(w) F(z) / (w - z) with the z-contour a small
    circle around 0 inside the w-contour, reduced to sum over the enclosed
    outer poles of Res G(w) PP(w).
    """

    inner: RationalIntegrand
    outer: RationalIntegrand
    poles: Tuple[object, ...]

    def exact(self):
        total = 0
        for k, f_k in principal_part(self.inner).items():
            shifted = self.outer.shifted(0, k)
            for pole in self.poles:
                total = total + f_k * shifted.residue(pole)
        return total


def _mp_weight(a):
    if isinstance(a, Fraction):
        return mpmath.mpf(a.numerator) / a.denominator
    return mpmath.mpf(a)


def _starting_precision(diamond: AztecDiamond) -> int:
    return max(
        settings.AZTEC_DIMERS_MIN_PRECISION_BITS,
        settings.AZTEC_DIMERS_PRECISION_BITS_PER_ORDER * diamond.n,
    )


def _trapezoid(h, center, radius, operation: str) -> Tuple[object, float, int, object]:
    """
    (1/(2 pi i)) * contour integral of h over |w - center| = radius by the
    trapezoidal rule, doubling the nodes (old nodes are reused) until two
    successive sums agree. Returns (value, error estimate, nodes, largest term).
    """
    tolerance = settings.AZTEC_DIMERS_QUADRATURE_TOLERANCE
    max_nodes = settings.AZTEC_DIMERS_QUADRATURE_MAX_NODES
    largest = mpmath.mpf(0)

    def node_sum(count: int, offset: int, stride: int):
        nonlocal largest
        total = mpmath.mpc(0)
        for j in range(offset, count, stride):
            step = radius * mpmath.expjpi(mpmath.mpf(2 * j) / count)
            term = h(center + step) * step
            largest = max(largest, abs(term))
            total += term
        return total

    nodes = 32
    running = node_sum(nodes, 0, 1)
    value = running / nodes
    while True:
        if 2 * nodes > max_nodes:
            raise PrecisionExhausted(
                "{operation}: trapezoidal rule did not settle within {max_nodes} nodes".format(
                    operation=operation, max_nodes=max_nodes
                )
            )
        running += node_sum(2 * nodes, 1, 2)
        nodes *= 2
        refined = running / nodes
        error = abs(refined - value)
        value = refined
        if error <= tolerance * max(1, abs(value)):
            return value, float(error), nodes, largest / nodes


def _numeric(diamond: AztecDiamond, operation: str, evaluate) -> KernelEntry:
    """
    run evaluate() at escalating working precision. evaluate builds its
    integrands inside the precision context and returns the list of
    (value, error, nodes, largest term) of the contours it summed.
    """
    bits = _starting_precision(diamond)
    max_bits = settings.AZTEC_DIMERS_MAX_PRECISION_BITS
    details = {"n": diamond.n, "a": diamond.a}
    log_precompute(operation, "numeric contour quadrature", dict(details, precision_bits=bits))
    while bits <= max_bits:
        with mpmath.workprec(bits):
            pieces = evaluate()
            value = sum((piece[0] for piece in pieces), mpmath.mpc(0))
            error = sum(piece[1] for piece in pieces)
            largest = max(piece[3] for piece in pieces)
            floor = mpmath.mpf(2) ** -64
            loss = mpmath.log(max(largest, floor), 2) - mpmath.log(max(abs(value), floor), 2)
            if loss + 64 <= bits:
                log_postcompute(
                    operation,
                    "numeric contour quadrature",
                    dict(details, precision_bits=bits, nodes=[piece[2] for piece in pieces]),
                    error=error,
                    tolerance=settings.AZTEC_DIMERS_QUADRATURE_TOLERANCE * max(1, float(abs(value))),
                )
                return KernelEntry(
                    value=complex(value), regime=Regimes.NUMERIC, precision_bits=bits, error=error, heuristic=True
                )
        logger.info(
            "{operation}: {loss:.0f} bits of cancellation at {bits} bits, escalating".format(
                operation=operation, loss=float(loss), bits=bits
            )
        )
        bits *= 2
    raise PrecisionExhausted(
        "{operation}: cancellation persists at the ceiling of {max_bits} bits".format(
            operation=operation, max_bits=max_bits
        )
    )


def _outer_trapezoid(inner: RationalIntegrand, outer: RationalIntegrand, center, radius, operation: str):
    """trapezoidal rule for the outer integral of G(w) PP(w)."""
    pp = principal_part(inner)
    lowest = min(pp) if pp else 0
    coefficients = [pp.get(k, 0) for k in range(lowest, 0)]

    def h(w):
        acc = mpmath.mpc(0)
        for c in reversed(coefficients):
            acc = acc * w + c
        return outer.evaluate(w) * acc * w**lowest

    if not coefficients:
        return (mpmath.mpc(0), 0.0, 0, mpmath.mpf(0))
    return _trapezoid(h, center, radius, operation)


# inverse Kasteleyn matrix
# -----------------------------------------------------------------------------
def _check_pair(x, y, diamond: AztecDiamond, bounds: bool = True):
    if not is_white(x) or not is_black(y):
        raise ValueError("{x} must be white and {y} black".format(x=tuple(x), y=tuple(y)))
    if bounds and not (diamond.contains(x) and diamond.contains(y)):
        raise OutOfRange(
            "{x}, {y} are not both vertices of {diamond!r}".format(x=tuple(x), y=tuple(y), diamond=diamond)
        )


def _f1_integrands(x, y, n: int, a, one):
    """(inner F(z), outer G(w)) of f1 over the field of a."""
    A, B, C = y[0] // 2, (x[0] + 1) // 2, x[1] // 2
    D, E, F = n - C, (2 * n + 1 - y[1]) // 2, (y[1] + 1) // 2
    inverse_a = one / a
    inner = RationalIntegrand(a**D, {0: -B, -a: C, inverse_a: D})
    outer = RationalIntegrand(a**-E, {0: A, inverse_a: -E, -a: -F})
    return inner, outer


def _f2_integrand(x, y, a, one):
    p, q, t = (y[1] - x[1] - 1) // 2, (y[0] - x[0] - 1) // 2, (y[1] - x[1] + 1) // 2
    inverse_a = one / a
    return RationalIntegrand(a**p, {0: p, -inverse_a: q, -(a + inverse_a): -t})


def _phase(x, y) -> int:
    return (x[0] + x[1] + y[0] + y[1]) // 2


@computation_manager
def f1(x, y, diamond: AztecDiamond, regime: Optional[str] = None) -> KernelEntry:
    """
    The double contour part of K^-1(x, y): z around 0, w around 1/a.
    x may lie one column outside the diamond (boundary identities).
    """
    _check_pair(x, y, diamond, bounds=False)
    regime = choose_regime(diamond, regime)
    n = diamond.n
    if regime == Regimes.EXACT:
        a = diamond.a
        inner, outer = _f1_integrands(x, y, n, a, Fraction(1))
        value = DoubleContour(inner, outer, (1 / a,)).exact()
        return KernelEntry(value=i_power(_phase(x, y)) * value, regime=Regimes.EXACT)

    def evaluate():
        a = _mp_weight(diamond.a)
        inner, outer = _f1_integrands(x, y, n, a, mpmath.mpf(1))
        value, error, nodes, largest = _outer_trapezoid(inner, outer, 1 / a, 1 / (4 * a), "f1")
        phase = mpmath.mpc(1j) ** (_phase(x, y) % 4)
        return [(phase * value, error, nodes, largest)]

    return _numeric(diamond, "kernelcalc.f1", evaluate)


@computation_manager
def f2(x, y, diamond: AztecDiamond, regime: Optional[str] = None) -> KernelEntry:
    """The single contour part of K^-1(x, y): a residue at z = 0."""
    _check_pair(x, y, diamond, bounds=False)
    regime = choose_regime(diamond, regime)
    if regime == Regimes.EXACT:
        value = _f2_integrand(x, y, diamond.a, Fraction(1)).residue(0)
        return KernelEntry(value=i_power(_phase(x, y)) * value, regime=Regimes.EXACT)

    def evaluate():
        a = _mp_weight(diamond.a)
        integrand = _f2_integrand(x, y, a, mpmath.mpf(1))
        value, error, nodes, largest = _trapezoid(integrand.evaluate, 0, min(a, 1 / a) / 4, "f2")
        phase = mpmath.mpc(1j) ** (_phase(x, y) % 4)
        return [(phase * value, error, nodes, largest)]

    return _numeric(diamond, "kernelcalc.f2", evaluate)


def _combine(first: KernelEntry, second: KernelEntry, sign: int = -1) -> KernelEntry:
    if first.regime == Regimes.EXACT:
        return KernelEntry(value=first.value + sign * second.value, regime=Regimes.EXACT)
    return KernelEntry(
        value=complex(first.value) + sign * complex(second.value),
        regime=Regimes.NUMERIC,
        precision_bits=max(first.precision_bits or 0, second.precision_bits or 0),
        error=first.error + second.error,
        heuristic=True,
    )


@kernel_cache
def inverse_entry(x, y, diamond: AztecDiamond, regime: Optional[str] = None) -> KernelEntry:
    """K^-1(x, y) = f1 for x1 < y1 + 1, f1 - f2 otherwise."""
    x, y = Vertex(*x), Vertex(*y)
    _check_pair(x, y, diamond)
    regime = choose_regime(diamond, regime)
    first = f1(x, y, diamond, regime)
    if x[0] < y[0] + 1:
        return first
    return _combine(first, f2(x, y, diamond, regime))


def inverse_matrix(diamond: AztecDiamond, regime: Optional[str] = None) -> VertexMatrix:
    """every entry of K^-1, rows white and columns black in canonical order."""
    regime = choose_regime(diamond, regime)
    rows = []
    for w in diamond.whites:
        rows.append([inverse_entry(w, b, diamond, regime).value for b in diamond.blacks])
    if regime == Regimes.EXACT:
        return VertexMatrix(diamond.whites, diamond.blacks, rows, regime)
    return VertexMatrix(diamond.whites, diamond.blacks, np.array(rows, dtype=np.complex128), regime)


def five_term_sum(x, y, diamond: AztecDiamond, regime: Optional[str] = None):
    """
    (K K^-1)(x, y) for black x and y through the four white neighbours of x
    that lie in the diamond; the identity matrix entry when K^-1 is right.
    """
    regime = choose_regime(diamond, regime)
    total = 0
    for step in ((1, 1), (-1, -1), (-1, 1), (1, -1)):
        w = Vertex(x[0] + step[0], x[1] + step[1])
        if not diamond.contains(w):
            continue
        a = diamond.a if regime == Regimes.EXACT else float(diamond.a)
        total = total + kasteleyn_entry(x, w, a) * inverse_entry(w, y, diamond, regime).value
    return total


# correlations
# -----------------------------------------------------------------------------
def _real_probability(value, regime: str):
    if regime == Regimes.EXACT:
        if value.im != 0:
            raise ComputationError("edge correlation came out non-real: {value}".format(value=value))
        return value.re
    return float(complex(value).real)


@computation_manager
def correlation_probability(edges: Sequence[Dimer], diamond: AztecDiamond, regime: Optional[str] = None):
    """P(all edges in the tiling) = det[K(b_i, w_i) K^-1(w_j, b_i)]."""
    edges = list(edges)
    if len(set(edges)) != len(edges):
        raise ValueError("edges must be distinct")
    for e in edges:
        if not (diamond.contains(e.b) and diamond.contains(e.w)):
            raise OutOfRange("{e} is not an edge of {diamond!r}".format(e=e, diamond=diamond))
    regime = choose_regime(diamond, regime)
    if not edges:
        return Fraction(1) if regime == Regimes.EXACT else 1.0
    a = diamond.a if regime == Regimes.EXACT else float(diamond.a)
    matrix = [
        [kasteleyn_entry(ei.b, ei.w, a) * inverse_entry(ej.w, ei.b, diamond, regime).value for ej in edges]
        for ei in edges
    ]
    if regime == Regimes.EXACT:
        det = exact_elimination([[GaussianRational.coerce(v) for v in row] for row in matrix])
    else:
        det = complex(np.linalg.det(np.array(matrix, dtype=np.complex128)))
    return _real_probability(det, regime)


def edge_probability_field(diamond: AztecDiamond, regime: Optional[str] = None) -> Dict[Dimer, object]:
    """single-edge probabilities K(b,w) K^-1(w,b) of every edge."""
    regime = choose_regime(diamond, regime)
    a = diamond.a if regime == Regimes.EXACT else float(diamond.a)
    field = {}
    for e in diamond.edges():
        value = kasteleyn_entry(e.b, e.w, a) * inverse_entry(e.w, e.b, diamond, regime).value
        field[e] = _real_probability(value, regime)
    return field


# south-domino line kernel
# -----------------------------------------------------------------------------
def _check_line(x1: int, x2: int, r: int, diamond: AztecDiamond):
    n = diamond.n
    if not 1 <= r <= n - 1:
        raise InvalidLine("line index must lie in 1..{last}, got {r}".format(last=n - 1, r=r))
    for x in (x1, x2):
        if not 1 <= x <= n:
            raise OutOfRange("line position must lie in 1..{n}, got {x}".format(n=n, x=x))


def south_dimer(position: int, r: int) -> Dimer:
    """the south dimer with white end (2s-1, 2r) and black end (2s, 2r+1)."""
    return make_dimer((2 * position, 2 * r + 1), (2 * position - 1, 2 * r))


def _line_integrands(x1: int, x2: int, r: int, n: int, a, one):
    inverse_a = one / a
    inner = RationalIntegrand(a ** (n - r), {0: -x1, -a: r, inverse_a: n - r})
    outer = RationalIntegrand(a ** -(n - r), {0: x2, inverse_a: -(n - r), -a: -(r + 1)})
    return inner, outer


@kernel_cache
@computation_manager
def south_line_kernel(x1: int, x2: int, r: int, diamond: AztecDiamond, regime: Optional[str] = None) -> KernelEntry:
    """correlation kernel of the south dominoes on the line y = r, positions 1..n."""
    _check_line(x1, x2, r, diamond)
    regime = choose_regime(diamond, regime)
    n = diamond.n
    if regime == Regimes.EXACT:
        a = diamond.a
        inner, outer = _line_integrands(x1, x2, r, n, a, Fraction(1))
        value = -DoubleContour(inner, outer, (1 / a,)).exact()
        return KernelEntry(value=GaussianRational.coerce(value), regime=Regimes.EXACT)

    def evaluate():
        a = _mp_weight(diamond.a)
        inner, outer = _line_integrands(x1, x2, r, n, a, mpmath.mpf(1))
        value, error, nodes, largest = _outer_trapezoid(inner, outer, 1 / a, 1 / (4 * a), "south_line_kernel")
        return [(-value, error, nodes, largest)]

    return _numeric(diamond, "kernelcalc.south_line_kernel", evaluate)


def south_line_kernel_matrix(positions: Sequence[int], r: int, diamond: AztecDiamond, regime: Optional[str] = None):
    regime = choose_regime(diamond, regime)
    values = [[south_line_kernel(p, q, r, diamond, regime).value for q in positions] for p in positions]
    if regime == Regimes.EXACT:
        return values
    return np.array(values, dtype=np.complex128)


def hole_kernel(x1: int, x2: int, r: int, diamond: AztecDiamond, z_c, regime: Optional[str] = None) -> KernelEntry:
    """L*(x1, x2) = delta(x1, x2) - z_c^(x1 - x2) L(x1, x2), the kernel of the holes."""
    entry = south_line_kernel(x1, x2, r, diamond, regime)
    delta = 1 if x1 == x2 else 0
    if entry.regime == Regimes.EXACT and isinstance(z_c, (int, Fraction)):
        value = delta - Fraction(z_c) ** (x1 - x2) * entry.value
        return KernelEntry(value=value, regime=Regimes.EXACT)
    value = delta - float(z_c) ** (x1 - x2) * complex(entry.value)
    return KernelEntry(
        value=value,
        regime=Regimes.NUMERIC,
        precision_bits=entry.precision_bits or 53,
        error=entry.error * abs(float(z_c)) ** (x1 - x2),
        heuristic=entry.heuristic,
    )


# particle kernel
# -----------------------------------------------------------------------------
def decode_level(u1: int) -> Tuple[int, int]:
    """u1 = 2r - eps with eps in {0, 1}: returns (r, eps)."""
    if u1 % 2:
        return (u1 + 1) // 2, 1
    return u1 // 2, 0


def _particle_integrands(u1, u2, v1, v2, n: int, a, one):
    r, eps1 = decode_level(u1)
    s, eps2 = decode_level(v1)
    inverse_a = one / a
    inner_power = n - s + eps2
    outer_power = n - r + eps1
    # (1 - a z)^m = (-a)^m (z - 1/a)^m
    inner = RationalIntegrand((-a) ** inner_power, {0: v2 - 1 - s, -a: s, inverse_a: inner_power})
    outer = RationalIntegrand((-a) ** -outer_power, {0: r - u2, -a: -r, inverse_a: -outer_power})
    if 2 * r - eps1 < 2 * s - eps2:
        m = r - s + eps2 - eps1
        step = RationalIntegrand((-a) ** m, {0: v2 - u2 - 1 + r - s, inverse_a: m, -a: -(r - s)})
    else:
        step = None
    return inner, outer, step


@computation_manager
def particle_kernel(u1: int, u2: int, v1: int, v2: int, diamond: AztecDiamond, regime: Optional[str] = None):
    """
    K_n(u1, u2; v1, v2) = K~_n - phi. The outer contour of K~_n encloses
    0 and -a but not 1/a; phi is a residue at 0.
    """
    for value in (u1, u2, v1, v2):
        if isinstance(value, Fraction) and value.denominator != 1:
            raise ValueError("particle coordinates must be integers, got {value}".format(value=value))
    u1, u2, v1, v2 = int(u1), int(u2), int(v1), int(v2)
    regime = choose_regime(diamond, regime)
    n = diamond.n
    if regime == Regimes.EXACT:
        a = diamond.a
        inner, outer, step = _particle_integrands(u1, u2, v1, v2, n, a, Fraction(1))
        value = DoubleContour(inner, outer, (0, -a)).exact()
        if step is not None:
            value = value - step.residue(0)
        return KernelEntry(value=GaussianRational.coerce(value), regime=Regimes.EXACT)

    def evaluate():
        a = _mp_weight(diamond.a)
        inner, outer, step = _particle_integrands(u1, u2, v1, v2, n, a, mpmath.mpf(1))
        pieces = []
        if a < 1:
            pieces.append(_outer_trapezoid(inner, outer, 0, mpmath.mpf(1), "particle_kernel"))
        else:
            pieces.append(_outer_trapezoid(inner, outer, 0, a + 1 / a + 1, "particle_kernel"))
            value, error, nodes, largest = _outer_trapezoid(inner, outer, 1 / a, 1 / (4 * a), "particle_kernel")
            pieces.append((-value, error, nodes, largest))
        if step is not None:
            value, error, nodes, largest = _trapezoid(step.evaluate, 0, min(a, 1 / a) / 4, "particle_kernel")
            pieces.append((-value, error, nodes, largest))
        return pieces

    return _numeric(diamond, "kernelcalc.particle_kernel", evaluate)


def particle_density(vertex, diamond: AztecDiamond, regime: Optional[str] = None) -> KernelEntry:
    """probability of a particle at vertex: the diagonal of K_n at its particle coordinates."""
    if not diamond.contains(vertex):
        raise OutOfRange("{v} is not a vertex of {diamond!r}".format(v=tuple(vertex), diamond=diamond))
    u1, u2 = particle_coords(vertex)
    return particle_kernel(u1, u2, u1, u2, diamond, regime)


def inverse_entry_via_particles(x, y, diamond: AztecDiamond, regime: Optional[str] = None) -> KernelEntry:
    """
    K^-1(x, y) = -i^((x1 - x2 + y1 - y2 + 2)/2) K_n(y2, (y2-y1+1)/2; x2, (x2-x1+1)/2).
    """
    _check_pair(x, y, diamond)
    regime = choose_regime(diamond, regime)
    entry = particle_kernel(y[1], (y[1] - y[0] + 1) // 2, x[1], (x[1] - x[0] + 1) // 2, diamond, regime)
    k = (x[0] - x[1] + y[0] - y[1] + 2) // 2
    if entry.regime == Regimes.EXACT:
        return KernelEntry(value=-i_power(k) * entry.value, regime=Regimes.EXACT)
    return KernelEntry(
        value=-(1j ** (k % 4)) * complex(entry.value),
        regime=entry.regime,
        precision_bits=entry.precision_bits,
        error=entry.error,
        heuristic=True,
    )

