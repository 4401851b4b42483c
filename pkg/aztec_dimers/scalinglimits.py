"""
Oct-2026

Aztec diamond dimers for Django - asymptotic predictions: the arctic
ellipse, edge parameters, the Airy kernel and its Fredholm determinants,
thinned and thickened generating functionals, the Poisson limit and the
bulk Gibbs kernel.

Algebraic quantities (u, v, z_c, alpha, beta, lambda^3, the ellipse) are
exact in Q(sqrt(1 + a^2)) when a is rational; transcendental steps use
floats through numpy and scipy.
"""
# python stuff
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special

# django stuff
from django.conf import settings

# our stuff
from .constants import AIRY_DOMAIN, Boundaries, DominoKinds, GapModes, GibbsPrefactors, Regimes
from .decorators import computation_manager
from .exceptions import NotConverged, OutOfRange, OutsideLiquidRegion, PoleOnContour
from .kernelcalc import choose_regime, south_line_kernel
from .lattice import AztecDiamond
from .utils import format_fraction, parse_weight


logger = logging.getLogger(__name__)


# exact quadratic surds
# -----------------------------------------------------------------------------
class QuadraticNumber:
    """p + q*sqrt(d) with rational p, q and d; q is 0 when the value is rational."""

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d=0):
        p, q, d = Fraction(p), Fraction(q), Fraction(d)
        if q != 0:
            if d < 0:
                raise ValueError("square root of a negative number")
            root = _rational_sqrt(d)
            if root is not None:
                p, q, d = p + q * root, Fraction(0), Fraction(0)
        if q == 0:
            d = Fraction(0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    def __reduce__(self):
        return (QuadraticNumber, (self.p, self.q, self.d))

    @classmethod
    def sqrt(cls, d) -> "QuadraticNumber":
        return cls(0, 1, d)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def __repr__(self):
        if self.is_rational:
            return "QuadraticNumber({p})".format(p=format_fraction(self.p))
        return "QuadraticNumber({p} + {q}*sqrt({d}))".format(
            p=format_fraction(self.p), q=format_fraction(self.q), d=format_fraction(self.d)
        )

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if self.q != 0 and other.q != 0 and self.d != other.d:
                raise ValueError("cannot mix sqrt({a}) and sqrt({b})".format(a=self.d, b=other.d))
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other)
        return None

    def _field(self, other) -> Fraction:
        return self.d if self.q != 0 else other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) + other
        return QuadraticNumber(self.p + o.p, self.q + o.q, self._field(o))

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.p, -self.q, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) * other
        d = self._field(o)
        return QuadraticNumber(self.p * o.p + self.q * o.q * d, self.p * o.q + self.q * o.p, d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def reciprocal(self) -> "QuadraticNumber":
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("QuadraticNumber division by zero")
        return QuadraticNumber(self.p / norm, -self.q / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return float(self) / other
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / float(self)
        return o * self.reciprocal()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return float(self) ** exponent
        base = self if exponent >= 0 else self.reciprocal()
        result = QuadraticNumber(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def sign(self) -> int:
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        if self.p >= 0 and self.q > 0:
            return 1
        if self.p <= 0 and self.q < 0:
            return -1
        # opposite signs: compare p^2 with q^2 d
        rational_part_wins = self.p * self.p > self.q * self.q * self.d
        return (1 if self.p > 0 else -1) if rational_part_wins else (1 if self.q > 0 else -1)

    def _compare(self, other) -> Optional[int]:
        o = self._coerce(other)
        if o is None:
            if isinstance(other, float):
                return (float(self) > other) - (float(self) < other)
            return None
        return (self - o).sign()

    def __eq__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c == 0

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c >= 0


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    p, q = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if p * p == value.numerator and q * q == value.denominator:
        return Fraction(p, q)
    return None


def _sqrt(value):
    """exact square root of a rational, float square root otherwise."""
    if isinstance(value, (int, Fraction)):
        return QuadraticNumber.sqrt(value)
    return math.sqrt(value)


def _exact_weight(a):
    """a as a Fraction when it is rational, a float otherwise."""
    a = parse_weight(a)
    return a if isinstance(a, Fraction) else float(a)


# arctic ellipse and edge parameters
# -----------------------------------------------------------------------------
def ellipse_residual(u, v, a):
    """(v-u)^2/(1-p) + (u+v-1)^2/p - 1 with p = 1/(1+a^2); negative inside."""
    a = _exact_weight(a)
    p = 1 / (1 + a * a)
    return (v - u) * (v - u) / (1 - p) + (u + v - 1) * (u + v - 1) / p - 1


def ellipse_points(a, count: int = 4096) -> np.ndarray:
    """count points on the arctic ellipse as a (count, 2) array of (u, v)."""
    p = 1.0 / (1.0 + float(a) ** 2)
    phi = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    s = np.sqrt(1.0 - p) * np.cos(phi)
    t = np.sqrt(p) * np.sin(phi)
    return np.column_stack(((t + 1.0 - s) / 2.0, (t + 1.0 + s) / 2.0))


def distance_to_ellipse(u: float, v: float, a, resolution: int = 4096) -> float:
    points = ellipse_points(a, resolution)
    return float(np.min(np.hypot(points[:, 0] - u, points[:, 1] - v)))


@dataclass(frozen=True)
class EdgeParams:
    k: object
    a: object
    boundary: str
    u: object
    v: object
    z_c: object
    alpha: object
    beta: object
    lambda_cubed: object

    @property
    def lam(self) -> float:
        return float(np.cbrt(float(self.lambda_cubed)))

    @property
    def s(self):
        return _sqrt(1 + self.a * self.a)


def edge_params(k, a) -> EdgeParams:
    """
    Parameters of the boundary point (u(k), 1 - k^2 u(k)) of the ellipse:
    k > 0 on the north boundary, -sqrt(1+a^2)/a < k < -a/sqrt(1+a^2) on the south.
    """
    a = _exact_weight(a)
    if isinstance(k, str):
        k = Fraction(k)
    k = k if isinstance(k, (int, Fraction)) and isinstance(a, Fraction) else float(k)
    s = _sqrt(1 + a * a)
    if k > 0:
        boundary = Boundaries.NORTH
    elif -s / a < k < -a / s:
        boundary = Boundaries.SOUTH
    else:
        raise OutOfRange("k={k} is on neither the north nor the south boundary for a={a}".format(k=k, a=a))
    u = 1 / ((1 + a * a) * (1 + k * k) + 2 * a * k * s)
    v = 1 - k * k * u
    z_c = 1 / (a + k * s)
    beta = -a * (a + k * s)
    alpha = 1 / (1 - beta)
    sign = 1 if boundary == Boundaries.NORTH else -1
    lambda_cubed = sign * a * (a + k * s) * (a + k * s) * u / ((1 + a * a) * (a * k * k + k * s))
    return EdgeParams(
        k=k, a=a, boundary=boundary, u=u, v=v, z_c=z_c, alpha=alpha, beta=beta, lambda_cubed=lambda_cubed
    )


def saddle_derivatives(params: EdgeParams, z=None):
    """
    (g'(z), g''(z)) for g(z) = v log(a+z) + k^2 u log(az-1) - u log z; both
    vanish at z_c.
    """
    z = params.z_c if z is None else z
    a, u, v, k = params.a, params.u, params.v, params.k
    first = v / (a + z) + k * k * u * a / (a * z - 1) - u / z
    second = -v / ((a + z) * (a + z)) - k * k * u * a * a / ((a * z - 1) * (a * z - 1)) + u / (z * z)
    return first, second


def bulk_saddle_function(z: complex, xi1: float, xi2: float, a) -> complex:
    """g(z; xi) = xi2 log(a+z) + (1-xi2) log(az-1) - xi1 log z."""
    a = float(a)
    return xi2 * np.log(a + z) + (1 - xi2) * np.log(a * z - 1) - xi1 * np.log(z)


# bulk
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class GibbsPoint:
    xi1: float
    xi2: float
    z_xi: complex
    r1: float
    r2: float


def omega_map(xi1, xi2, a) -> complex:
    """the critical point z_xi of g(z; xi) in the upper half plane."""
    a = float(a)
    xi1, xi2 = float(xi1), float(xi2)
    b = xi2 - xi1 + a * a * (xi1 + xi2 - 1)
    discriminant = 4 * a * a * (1 - xi1) * xi1 - b * b
    if discriminant <= 0:
        raise OutsideLiquidRegion(
            "({xi1}, {xi2}) is not strictly inside the arctic ellipse for a={a}".format(xi1=xi1, xi2=xi2, a=a)
        )
    denominator = 2 * a * (1 - xi1)
    return complex(b / denominator, math.sqrt(discriminant) / denominator)


def gibbs_point(xi1, xi2, a) -> GibbsPoint:
    z = omega_map(xi1, xi2, a)
    xi1, xi2 = float(xi1), float(xi2)
    return GibbsPoint(
        xi1=xi1, xi2=xi2, z_xi=z, r1=math.sqrt(xi1 / (1 - xi1)), r2=math.sqrt(xi2 / (1 - xi2))
    )


# a Gibbs edge probability is c_e * J(m_e, q_e); vertical edges also carry the weight a
GIBBS_EDGES = {
    DominoKinds.WEST: (1j, 0, 0),
    DominoKinds.SOUTH: (-1, -1, 0),
    DominoKinds.NORTH: (1, 0, -1),
    DominoKinds.EAST: (-1j, -1, -1),
}


def _gauss_legendre(f: Callable, start: float, end: float, tolerance: float = 1e-12) -> complex:
    previous = None
    nodes = 32
    while nodes <= 4096:
        x, w = np.polynomial.legendre.leggauss(nodes)
        theta = 0.5 * (end - start) * x + 0.5 * (end + start)
        value = 0.5 * (end - start) * np.sum(w * f(theta))
        if previous is not None and abs(value - previous) <= tolerance * max(1.0, abs(value)):
            return complex(value)
        previous = value
        nodes *= 2
    raise NotConverged("Gauss-Legendre quadrature did not settle on [{a}, {b}]".format(a=start, b=end))


@computation_manager
def gibbs_j(m: int, q: int, X: float, Y: float, a) -> complex:
    """
    (1/(2 pi)) int W^(q+1) chi(theta) d^m c^(-m-1) dtheta with W = Y e^(i theta),
    c = a i W + 1, d = W + a i, where chi restricts m >= 0 to sin(theta) < s*
    and m < 0 (sign flipped) to sin(theta) > s*.
    """
    a = float(a)
    s_star = (X * X * (1 + a * a * Y * Y) - Y * Y - a * a) / (2 * a * Y * (1 + X * X))
    if abs(abs(s_star) - 1) < 1e-12:
        raise PoleOnContour("the integration torus meets the spectral curve (s*={s})".format(s=s_star))

    def integrand(theta):
        W = Y * np.exp(1j * theta)
        return W ** (q + 1) * (W + a * 1j) ** m * (a * 1j * W + 1) ** (-m - 1)

    if m >= 0:
        if s_star <= -1:
            return 0j
        if s_star >= 1:
            return _full_circle(integrand)
        theta1 = math.asin(s_star)
        return _gauss_legendre(integrand, math.pi - theta1, 2 * math.pi + theta1) / (2 * math.pi)
    if s_star >= 1:
        return 0j
    if s_star <= -1:
        return -_full_circle(integrand)
    theta1 = math.asin(s_star)
    return -_gauss_legendre(integrand, theta1, math.pi - theta1) / (2 * math.pi)


def _full_circle(integrand: Callable, tolerance: float = 1e-13) -> complex:
    """(1/(2 pi)) times the integral over a full period, trapezoidal rule with node doubling."""
    nodes = 64
    previous = None
    while nodes <= 1 << 16:
        theta = 2 * np.pi * np.arange(nodes) / nodes
        value = np.mean(integrand(theta))
        if previous is not None and abs(value - previous) <= tolerance * max(1.0, abs(value)):
            return complex(value)
        previous = value
        nodes *= 2
    raise NotConverged("trapezoidal rule on the unit circle did not settle")


def gibbs_inverse_entry(alpha1: int, alpha2: int, beta1: int, beta2: int, Bx: float, By: float, a) -> complex:
    """
    K_mu^-1 between a white vertex at offset alpha and a black vertex at
    offset beta for the magnetic field (Bx, By): X^-m Y^-q J(m, q) with
    m = alpha1 - beta1, q = beta2 - alpha2, X = e^Bx, Y = e^By.
    """
    X, Y = math.exp(Bx), math.exp(By)
    m, q = alpha1 - beta1, beta2 - alpha2
    return X ** (-m) * Y ** (-q) * gibbs_j(m, q, X, Y, a)


def gibbs_edge(kind: str, a) -> Tuple[complex, int, int]:
    """(K_mu(b, w), m, q) for the edge of the given kind at a white vertex."""
    c, m, q = GIBBS_EDGES[kind]
    if kind in (DominoKinds.WEST, DominoKinds.EAST):
        c = c * float(a)
    return c, m, q


def gibbs_edge_probability(kind: str, Bx: float, By: float, a) -> float:
    """K_mu(b, w) K_mu^-1(w, b) for the edge of the given kind at a white vertex."""
    c, m, q = gibbs_edge(kind, a)
    value = c * gibbs_j(m, q, math.exp(Bx), math.exp(By), a)
    return float(value.real)


def gibbs_prefactor(alpha: Tuple[int, int], beta: Tuple[int, int], r1: float, r2: float, convention: str) -> float:
    if convention == GibbsPrefactors.BALANCED:
        return r1 ** (-alpha[0] + beta[0]) * r2 ** (-beta[1] + alpha[1])
    if convention == GibbsPrefactors.SHIFTED:
        return r1 ** (alpha[0] + beta[0]) * r2 ** (-beta[1] + alpha[1])
    raise ValueError("unknown prefactor convention {c!r}".format(c=convention))


def bulk_field(xi1: float, xi2: float, a) -> Tuple[float, float]:
    """the magnetic field (-log r1, -log r2) of the local Gibbs measure at xi."""
    point = gibbs_point(xi1, xi2, a)
    return -math.log(point.r1), -math.log(point.r2)


def bulk_prediction(kind: str, xi1: float, xi2: float, a) -> float:
    """limiting probability that the white vertex nearest (2 xi1 n, 2 xi2 n) carries a dimer of this kind."""
    Bx, By = bulk_field(xi1, xi2, a)
    return gibbs_edge_probability(kind, Bx, By, a)


def bulk_white_vertex(xi1: float, xi2: float, n: int, offset: Tuple[int, int] = (0, 0)) -> Tuple[int, int]:
    """([2 xi1 n]_even + 2 alpha1 + 1, [2 xi2 n]_even + 2 alpha2)."""
    x0 = 2 * int(math.floor(xi1 * n))
    y0 = 2 * int(math.floor(xi2 * n))
    return x0 + 2 * offset[0] + 1, y0 + 2 * offset[1]


# Airy kernel
# -----------------------------------------------------------------------------
def _check_airy_domain(*values: float):
    low, high = AIRY_DOMAIN
    for x in values:
        if not low <= x <= high:
            raise OutOfRange("Airy evaluation is supported on [{low}, {high}], got {x}".format(low=low, high=high, x=x))


def airy_ai(x: float) -> float:
    _check_airy_domain(x)
    return float(special.airy(x)[0])


def airy_ai_prime(x: float) -> float:
    _check_airy_domain(x)
    return float(special.airy(x)[1])


def airy_kernel_formula(x, y):
    """
    (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y), with Ai'(x)^2 - x Ai(x)^2 on the
    diagonal. Vectorized over numpy arrays.
    """
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    ax, apx, _, _ = special.airy(x)
    ay, apy, _, _ = special.airy(y)
    diff = x - y
    near = np.abs(diff) < 1e-8
    safe = np.where(near, 1.0, diff)
    off_diagonal = (ax * apy - apx * ay) / safe
    mid = 0.5 * (x + y)
    am, apm, _, _ = special.airy(mid)
    diagonal = apm * apm - mid * am * am
    return np.where(near, diagonal, off_diagonal)


def airy_kernel(x: float, y: float) -> float:
    """int_0^inf Ai(x+t) Ai(y+t) dt by adaptive quadrature."""
    _check_airy_domain(x, y)
    upper = max(10.0 - min(x, y), 5.0)
    value, error = integrate.quad(
        lambda t: special.airy(x + t)[0] * special.airy(y + t)[0], 0.0, upper, epsabs=1e-14, epsrel=1e-12, limit=400
    )
    # beyond x + t >= 10 the integrand is below 1e-20
    return float(value)


ROW_INTEGRAL_CUTOFF = 400.0


def airy_kernel_row_integral(x: float, cutoff: float = ROW_INTEGRAL_CUTOFF) -> float:
    """
    int K_Ai(x, y)^2 dy over the real line: quadrature on [-cutoff, 12] in
    unit chunks plus the averaged asymptotic tail below -cutoff.
    """
    _check_airy_domain(x)

    def squared(y):
        return float(airy_kernel_formula(x, y)) ** 2

    edges = np.arange(-cutoff, 12.0 + 1.0, 1.0)
    body = 0.0
    for low, high in zip(edges[:-1], edges[1:]):
        body += integrate.quad(squared, low, high, epsabs=1e-13, epsrel=1e-11, limit=200)[0]
    ai, aip, _, _ = special.airy(x)

    def tail(s):
        return (ai * ai * math.sqrt(s) + aip * aip / math.sqrt(s)) / (2 * math.pi * (s + x) ** 2)

    return body + integrate.quad(tail, cutoff, np.inf, epsabs=1e-14)[0]


def thickened_intensity(xi: float, beta) -> float:
    """intensity of the thickened Airy process counted with multiplicity."""
    return float(airy_kernel_formula(xi, xi)) / (1 - float(beta))


def geometric_multiplicity(k: int, beta) -> float:
    beta = float(beta)
    return (1 - beta) * beta ** (k - 1)


# finite point processes
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class DiscreteKernel:
    points: Tuple[object, ...]
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix)
        if matrix.shape != (len(self.points), len(self.points)):
            raise ValueError("kernel matrix must be square over its points")
        object.__setattr__(self, "matrix", matrix)


def _kernel_matrix(kernel) -> np.ndarray:
    if isinstance(kernel, DiscreteKernel):
        return kernel.matrix
    return np.asarray(kernel)


def thinned_gen_functional(kernel, phi: Sequence[float], alpha) -> float:
    """E[prod (1 - phi(x))] over the alpha-thinned process: det(I - alpha phi K)."""
    matrix = _kernel_matrix(kernel)
    weights = float(alpha) * np.asarray(phi, dtype=float)
    return float(np.real(np.linalg.det(np.eye(len(weights)) - weights[:, None] * matrix)))


def thickened_gen_functional(kernel, phi: Sequence[float], beta) -> float:
    """
    E[prod (1 - phi(x))^multiplicity] with geometric multiplicities of
    parameter beta: det(I - phi/(1 - beta + beta phi) K).
    """
    matrix = _kernel_matrix(kernel)
    phi = np.asarray(phi, dtype=float)
    beta = float(beta)
    weights = phi / (1.0 - beta + beta * phi)
    return float(np.real(np.linalg.det(np.eye(len(weights)) - weights[:, None] * matrix)))


# Fredholm determinants
# -----------------------------------------------------------------------------
def airy_gen_functional(
    phi: Callable, parameter, mode: str, start: float, tail: Optional[float] = None, tolerance: Optional[float] = None
) -> float:
    """
    det(I - w K_Ai) on L^2(start, start + tail) by Gauss-Legendre Nystrom,
    with w = parameter * phi (thinned) or phi/(1 - parameter + parameter phi)
    (thickened). Nodes double until two determinants agree.
    """
    tail = settings.AZTEC_DIMERS_FREDHOLM_TAIL if tail is None else tail
    tolerance = settings.AZTEC_DIMERS_FREDHOLM_TOLERANCE if tolerance is None else tolerance
    parameter = float(parameter)
    if mode not in GapModes.all():
        raise ValueError("unknown mode {mode!r}".format(mode=mode))
    previous = None
    nodes = 16
    while nodes <= 1024:
        x, w = np.polynomial.legendre.leggauss(nodes)
        points = start + 0.5 * tail * (x + 1.0)
        weights = 0.5 * tail * w
        values = np.asarray([phi(p) for p in points], dtype=float)
        if mode == GapModes.THINNED:
            factors = parameter * values
        else:
            factors = values / (1.0 - parameter + parameter * values)
        root = np.sqrt(weights)
        kernel = airy_kernel_formula(points[:, None], points[None, :])
        matrix = np.eye(nodes) - factors[:, None] * root[:, None] * kernel * root[None, :]
        value = float(np.linalg.det(matrix))
        if previous is not None and abs(value - previous) <= tolerance:
            logger.info(
                "airy_gen_functional() {mode} start={start} converged with {nodes} nodes".format(
                    mode=mode, start=start, nodes=nodes
                )
            )
            return value
        previous = value
        nodes *= 2
    raise NotConverged("Fredholm determinant did not settle on [{s}, {e}]".format(s=start, e=start + tail))


def fredholm_gap(parameter, start: float, mode: str = GapModes.THINNED, tail: Optional[float] = None) -> float:
    """
    Probability of no points in (start, infinity). Thinned: det(I - alpha K_Ai).
    Thickened: multiplicities do not change emptiness, det(I - K_Ai).
    """
    return airy_gen_functional(lambda x: 1.0, parameter, mode, start, tail=tail)


# Poisson limit
# -----------------------------------------------------------------------------
def poisson_constant(k, a) -> float:
    """c(a) = pi^(2/3) (1 + 1/k)^(1/3) a^(2/3)."""
    k, a = float(k), float(a)
    if k <= 0:
        raise OutOfRange("the Poisson limit needs k > 0, got {k}".format(k=k))
    return math.pi ** (2.0 / 3.0) * (1.0 + 1.0 / k) ** (1.0 / 3.0) * a ** (2.0 / 3.0)


def poisson_prediction(k, a, xi) -> Tuple[float, float]:
    """(density sqrt((1 - xi)_+), c(a))."""
    constant = poisson_constant(k, a)
    return math.sqrt(max(1.0 - float(xi), 0.0)), constant


# finite n against the edge limit
# -----------------------------------------------------------------------------
def edge_line(params: EdgeParams, n: int) -> int:
    """the line index r = [(1 - k^2 u) n] through the boundary point."""
    return int(math.floor(float(params.v) * n))


def edge_position(params: EdgeParams, n: int, xi: float) -> int:
    """x = round(u n - lambda n^(1/3) xi)."""
    return int(round(float(params.u) * n - params.lam * n ** (1.0 / 3.0) * xi))


def scaled_finite_kernel(n: int, a, k, xi: float, eta: float, regime: Optional[str] = None) -> float:
    """
    lambda n^(1/3) z_c^(x1 - x2) L(x1, x2) at the north boundary point of
    slope k; approaches alpha K_Ai(xi, eta).
    """
    params = edge_params(k, a)
    if params.boundary != Boundaries.NORTH:
        raise OutOfRange("scaled_finite_kernel is the north boundary limit, k must be positive")
    diamond = AztecDiamond(n, a)
    regime = choose_regime(diamond, regime or Regimes.NUMERIC)
    r = edge_line(params, n)
    x1, x2 = edge_position(params, n, xi), edge_position(params, n, eta)
    entry = south_line_kernel(x1, x2, r, diamond, regime)
    z_c = float(params.z_c)
    return float((params.lam * n ** (1.0 / 3.0) * z_c ** (x1 - x2) * complex(entry.value)).real)
