"""
Oct-2026

Aztec diamond dimers for Django - Kasteleyn matrix, exact linear algebra
over Q(i) and the brute-force tiling enumeration used as an oracle.
"""
# python stuff
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

# django stuff
from django.conf import settings

# our stuff
from .constants import E1, E2, Regimes
from .decorators import computation_manager
from .exceptions import Singular, TooLarge
from .lattice import AztecDiamond, Tiling, Vertex, make_dimer, shift
from .utils import format_scalar


logger = logging.getLogger(__name__)

FLOAT_PRECISION_BITS = 53


class GaussianRational:
    """An exact element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value, 0)
        raise TypeError("cannot use {value!r} as an exact scalar".format(value=value))

    def __repr__(self):
        return "GaussianRational({s})".format(s=format_scalar(self))

    def __str__(self):
        return format_scalar(self)

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            other = GaussianRational.coerce(other)
            return self.re == other.re and self.im == other.im
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def reciprocal(self) -> "GaussianRational":
        norm = self.abs2()
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.reciprocal()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.reciprocal()
        result = GaussianRational(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result


I = GaussianRational(0, 1)


def i_power(k: int) -> GaussianRational:
    return (GaussianRational(1), I, GaussianRational(-1), -I)[k % 4]


def exact_modulus(z: GaussianRational):
    """|z| as a Fraction when it is rational, a float otherwise."""
    if z.im == 0:
        return abs(z.re)
    if z.re == 0:
        return abs(z.im)
    norm = z.abs2()
    p, q = math.isqrt(norm.numerator), math.isqrt(norm.denominator)
    if p * p == norm.numerator and q * q == norm.denominator:
        return Fraction(p, q)
    return math.sqrt(norm)


class VertexMatrix:
    """
    A dense matrix whose rows and columns are indexed by vertices.

    Exact matrices hold GaussianRational entries in nested lists, numeric
    ones a complex128 numpy array. precision_bits is None when exact.
    """

    def __init__(self, rows: Sequence[Vertex], columns: Sequence[Vertex], entries, regime: str):
        self.rows = tuple(rows)
        self.columns = tuple(columns)
        self.row_index = {v: i for i, v in enumerate(self.rows)}
        self.column_index = {v: j for j, v in enumerate(self.columns)}
        self.entries = entries
        self.regime = regime

    @property
    def precision_bits(self) -> Optional[int]:
        return None if self.regime == Regimes.EXACT else FLOAT_PRECISION_BITS

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.columns)

    def __getitem__(self, key):
        row, column = key
        i, j = self.row_index[tuple(row)], self.column_index[tuple(column)]
        if self.regime == Regimes.EXACT:
            return self.entries[i][j]
        return complex(self.entries[i, j])

    def to_numpy(self) -> np.ndarray:
        if self.regime == Regimes.EXACT:
            return np.array([[complex(x) for x in row] for row in self.entries], dtype=np.complex128)
        return np.array(self.entries, dtype=np.complex128)

    def nonzero_count(self) -> int:
        if self.regime == Regimes.EXACT:
            return sum(1 for row in self.entries for x in row if x)
        return int(np.count_nonzero(self.entries))


class KasteleynMatrix(VertexMatrix):
    """rows are black vertices, columns white vertices, both in canonical order."""

    def __init__(self, diamond: AztecDiamond, entries, regime: str):
        super().__init__(diamond.blacks, diamond.whites, entries, regime)
        self.diamond = diamond


def kasteleyn_entry(b, w, a):
    """
    K(b,w) with s = (-1)^((x1+x2-1)/2) for b = (x1,x2): s and -s on w = b +- e1,
    s*a*i and -s*a*i on w = b -+ e2, zero otherwise. a is exact or a float.
    """
    s = -1 if ((b[0] + b[1] - 1) // 2) % 2 else 1
    step = (w[0] - b[0], w[1] - b[1])
    exact = isinstance(a, Fraction)
    ai = GaussianRational(0, a) if exact else complex(0, a)
    if step == E1:
        value = s
    elif step == (-E1[0], -E1[1]):
        value = -s
    elif step == (-E2[0], -E2[1]):
        value = s * ai
    elif step == E2:
        value = -s * ai
    else:
        value = 0
    return GaussianRational.coerce(value) if exact else complex(value)


def choose_matrix_regime(diamond: AztecDiamond, regime: str = Regimes.AUTO) -> str:
    if regime == Regimes.AUTO:
        return Regimes.EXACT if diamond.is_exact else Regimes.NUMERIC
    if regime == Regimes.EXACT and not diamond.is_exact:
        raise ValueError("exact arithmetic needs a rational weight, got {a!r}".format(a=diamond.a))
    return regime


def build_kasteleyn(diamond: AztecDiamond, regime: str = Regimes.AUTO) -> KasteleynMatrix:
    regime = choose_matrix_regime(diamond, regime)
    a = diamond.a if regime == Regimes.EXACT else float(diamond.a)
    if regime == Regimes.EXACT:
        zero = GaussianRational(0)
        entries = [[zero] * len(diamond.whites) for _ in diamond.blacks]
    else:
        entries = np.zeros((len(diamond.blacks), len(diamond.whites)), dtype=np.complex128)
    column_index = {w: j for j, w in enumerate(diamond.whites)}
    for i, b in enumerate(diamond.blacks):
        for step in (E1, E2, (-E1[0], -E1[1]), (-E2[0], -E2[1])):
            w = shift(b, step)
            if diamond.contains(w):
                j = column_index[w]
                if regime == Regimes.EXACT:
                    entries[i][j] = kasteleyn_entry(b, w, a)
                else:
                    entries[i, j] = kasteleyn_entry(b, w, a)
    return KasteleynMatrix(diamond, entries, regime)


def face_products(K: KasteleynMatrix) -> dict:
    """product of the four entries around every interior face, keyed by face centre."""
    diamond = K.diamond
    products = {}
    for x2 in range(1, 2 * diamond.n):
        for x1 in range(1, 2 * diamond.n):
            if (x1 + x2) % 2:
                continue
            corners = [Vertex(x1 + d1, x2 + d2) for d1, d2 in ((-1, 0), (1, 0), (0, -1), (0, 1))]
            if not all(diamond.contains(v) for v in corners):
                continue
            blacks = [v for v in corners if v.is_black]
            whites = [v for v in corners if v.is_white]
            product = 1
            for b in blacks:
                for w in whites:
                    product = product * K[b, w]
            products[Vertex(x1, x2)] = product
    return products


def exact_elimination(matrix: List[List[GaussianRational]], augment: Optional[List[List[GaussianRational]]] = None):
    """
    Gauss-Jordan elimination in place with nonzero pivoting. Returns the
    determinant; when augment is given it is reduced alongside, leaving the
    inverse in it.
    """
    size = len(matrix)
    det = GaussianRational(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if matrix[r][col]), None)
        if pivot is None:
            return GaussianRational(0)
        if pivot != col:
            matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
            if augment is not None:
                augment[col], augment[pivot] = augment[pivot], augment[col]
            det = -det
        pivot_value = matrix[col][col]
        det = det * pivot_value
        inverse_pivot = pivot_value.reciprocal()
        matrix[col] = [x * inverse_pivot for x in matrix[col]]
        if augment is not None:
            augment[col] = [x * inverse_pivot for x in augment[col]]
        rows = range(size) if augment is not None else range(col + 1, size)
        for r in rows:
            if r == col:
                continue
            factor = matrix[r][col]
            if not factor:
                continue
            pivot_row = matrix[col]
            matrix[r] = [x - factor * y if y else x for x, y in zip(matrix[r], pivot_row)]
            if augment is not None:
                augment_row = augment[col]
                augment[r] = [x - factor * y if y else x for x, y in zip(augment[r], augment_row)]
    return det


@computation_manager
def determinant(K: VertexMatrix):
    if K.regime == Regimes.EXACT:
        return exact_elimination([list(row) for row in K.entries])
    return complex(np.linalg.det(np.asarray(K.entries)))


def closed_form_partition_function(diamond: AztecDiamond):
    """(1 + a^2)^(n(n+1)/2)."""
    return (1 + diamond.a * diamond.a) ** (diamond.n * (diamond.n + 1) // 2)


@computation_manager
def partition_function(diamond: AztecDiamond, regime: str = Regimes.AUTO):
    """|det K|, exact in the exact regime."""
    K = build_kasteleyn(diamond, regime)
    det = determinant(K)
    if K.regime == Regimes.EXACT:
        return exact_modulus(det)
    return abs(det)


@computation_manager
def invert_direct(K: VertexMatrix) -> VertexMatrix:
    """the W x B inverse of a Kasteleyn matrix by Gauss-Jordan elimination."""
    size = len(K.rows)
    if K.regime == Regimes.EXACT:
        one, zero = GaussianRational(1), GaussianRational(0)
        augment = [[one if i == j else zero for j in range(size)] for i in range(size)]
        det = exact_elimination([list(row) for row in K.entries], augment)
        if not det:
            raise Singular("Kasteleyn matrix of {diamond!r} is singular".format(diamond=getattr(K, "diamond", None)))
        # rows of the inverse are indexed by the columns of K
        return VertexMatrix(K.columns, K.rows, augment, K.regime)
    entries = np.asarray(K.entries)
    try:
        inverse = np.linalg.inv(entries)
    except np.linalg.LinAlgError as e:
        raise Singular(str(e)) from e
    return VertexMatrix(K.columns, K.rows, inverse, K.regime)


def tiling_weight(t: Tiling, a=None):
    """a^(number of vertical dimers)."""
    a = t.diamond.a if a is None else a
    return a ** t.vertical_count


def enumerate_tilings(diamond: AztecDiamond) -> List[Tiling]:
    """
    Every perfect matching, by backtracking from the first unmatched white
    vertex in canonical order.
    """
    limit = settings.AZTEC_DIMERS_ENUMERATION_MAX_ORDER
    if diamond.n > limit:
        raise TooLarge(
            "enumeration is limited to n <= {limit}, got n={n}".format(limit=limit, n=diamond.n)
        )
    whites = diamond.whites
    options = {
        w: [make_dimer(shift(w, step, -1), w) for step in (E1, E2, (-E1[0], -E1[1]), (-E2[0], -E2[1]))]
        for w in whites
    }
    options = {w: [d for d in dimers if diamond.contains(d.b)] for w, dimers in options.items()}
    used = set()
    chosen = []
    tilings = []

    def extend(index: int):
        if index == len(whites):
            tilings.append(Tiling(diamond=diamond, dimers=frozenset(chosen)))
            return
        for d in options[whites[index]]:
            if d.b in used:
                continue
            used.add(d.b)
            chosen.append(d)
            extend(index + 1)
            chosen.pop()
            used.discard(d.b)

    extend(0)
    logger.info("enumerated {count} tilings of {diamond!r}".format(count=len(tilings), diamond=diamond))
    return tilings

