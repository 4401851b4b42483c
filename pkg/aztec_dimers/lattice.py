"""
Oct-2026

Aztec diamond dimers for Django - coordinates, domino classification,
particles and the height function of the Aztec diamond graph.

Vertices use Kasteleyn coordinates: white vertices have x1 odd and x2 even,
black vertices have x1 even and x2 odd. Every vertex is the centre of a unit
cell whose corners are the primal points v ± (1,0), v ± (0,1).
"""
# python stuff
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, NamedTuple, Optional, Tuple

# our stuff
from .constants import E1, KIND_ORDER, KIND_STEPS, DominoKinds
from .exceptions import HeightInconsistency, InvalidTiling, NotAdjacent
from .utils import format_scalar, parse_weight


logger = logging.getLogger(__name__)

STEP_KINDS = {step: kind for kind, step in KIND_STEPS.items()}


class Vertex(NamedTuple):
    x1: int
    x2: int

    @property
    def is_white(self) -> bool:
        return is_white(self)

    @property
    def is_black(self) -> bool:
        return is_black(self)

    @property
    def color(self) -> str:
        if is_white(self):
            return "white"
        if is_black(self):
            return "black"
        raise ValueError("{v} is not a vertex of the Aztec diamond graph".format(v=tuple(self)))


def is_white(v) -> bool:
    return v[0] % 2 == 1 and v[1] % 2 == 0


def is_black(v) -> bool:
    return v[0] % 2 == 0 and v[1] % 2 == 1


def shift(v, step, sign: int = 1) -> Vertex:
    return Vertex(v[0] + sign * step[0], v[1] + sign * step[1])


@dataclass(frozen=True)
class AztecDiamond:
    """
    The Aztec diamond of order n with vertical dominoes weighted a and
    horizontal dominoes weighted 1. a is kept exact (Fraction) when it was
    given as an integer or a fraction.
    """

    n: int
    a: object = Fraction(1)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ValueError("order must be a positive integer, got {n!r}".format(n=self.n))
        object.__setattr__(self, "a", parse_weight(self.a))

    def __repr__(self):
        return "AztecDiamond(n={n}, a={a})".format(n=self.n, a=format_scalar(self.a))

    @property
    def cache_token(self) -> tuple:
        # 1 and 1.0 print alike but select different regimes
        return ("AztecDiamond", self.n, type(self.a).__name__, repr(self.a))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.a, Fraction)

    def contains(self, v) -> bool:
        x1, x2 = v
        n2 = 2 * self.n
        if is_white(v):
            return 1 <= x1 <= n2 - 1 and 0 <= x2 <= n2
        if is_black(v):
            return 0 <= x1 <= n2 and 1 <= x2 <= n2 - 1
        return False

    @cached_property
    def whites(self) -> Tuple[Vertex, ...]:
        """white vertices in canonical order: increasing x2, then x1."""
        return tuple(Vertex(x1, x2) for x2 in range(0, 2 * self.n + 1, 2) for x1 in range(1, 2 * self.n, 2))

    @cached_property
    def blacks(self) -> Tuple[Vertex, ...]:
        """black vertices in canonical order: increasing x2, then x1."""
        return tuple(Vertex(x1, x2) for x2 in range(1, 2 * self.n, 2) for x1 in range(0, 2 * self.n + 1, 2))

    @property
    def dimer_count(self) -> int:
        return self.n * (self.n + 1)

    def edges(self):
        """every dimer of the graph, by black vertex in canonical order."""
        for b in self.blacks:
            for kind in KIND_ORDER:
                w = shift(b, KIND_STEPS[kind])
                if self.contains(w):
                    yield Dimer(b=b, w=w, kind=kind)

    def primal_points(self) -> Tuple[Vertex, ...]:
        """corners of the cells of the diamond: the faces of the height function."""
        points = set()
        for v in self.whites + self.blacks:
            for step in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                points.add(shift(v, step))
        return tuple(sorted(points, key=lambda p: (p[1], p[0])))


def vertices(diamond: AztecDiamond):
    """(set of white vertices, set of black vertices); each has n(n+1) elements."""
    return set(diamond.whites), set(diamond.blacks)


def classify_dimer(b, w) -> str:
    if not is_black(b) or not is_white(w):
        raise NotAdjacent("{b} must be black and {w} white".format(b=tuple(b), w=tuple(w)))
    step = (w[0] - b[0], w[1] - b[1])
    try:
        return STEP_KINDS[step]
    except KeyError:
        raise NotAdjacent("{b} and {w} are not adjacent".format(b=tuple(b), w=tuple(w)))


@dataclass(frozen=True)
class Dimer:
    b: Vertex
    w: Vertex
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "b", Vertex(*self.b))
        object.__setattr__(self, "w", Vertex(*self.w))
        if classify_dimer(self.b, self.w) != self.kind:
            raise NotAdjacent(
                "{b}-{w} is not a {kind} dimer".format(b=tuple(self.b), w=tuple(self.w), kind=self.kind)
            )

    @property
    def is_vertical(self) -> bool:
        return self.kind in (DominoKinds.EAST, DominoKinds.WEST)


def make_dimer(b, w) -> Dimer:
    return Dimer(b=Vertex(*b), w=Vertex(*w), kind=classify_dimer(b, w))


def dimer_from_kind(b, kind: str) -> Dimer:
    if kind not in KIND_STEPS:
        raise ValueError("unknown domino kind {kind!r}".format(kind=kind))
    return Dimer(b=Vertex(*b), w=shift(b, KIND_STEPS[kind]), kind=kind)


@dataclass(frozen=True)
class TilingReport:
    """the violation report of validate_tiling(); truthy iff ok."""

    uncovered: Tuple[Vertex, ...] = ()
    doubly_covered: Tuple[Vertex, ...] = ()
    foreign: Tuple[Dimer, ...] = ()

    @property
    def ok(self) -> bool:
        return not (self.uncovered or self.doubly_covered or self.foreign)

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        return "uncovered={uncovered}, doubly covered={doubly}, outside the diamond={foreign}".format(
            uncovered=[tuple(v) for v in self.uncovered],
            doubly=[tuple(v) for v in self.doubly_covered],
            foreign=[(tuple(d.b), tuple(d.w)) for d in self.foreign],
        )


@dataclass(frozen=True)
class Tiling:
    diamond: AztecDiamond
    dimers: FrozenSet[Dimer] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "dimers", frozenset(self.dimers))

    def __repr__(self):
        return "Tiling({diamond!r}, {count} dimers)".format(diamond=self.diamond, count=len(self.dimers))

    @cached_property
    def report(self) -> TilingReport:
        return validate_tiling(self)

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    @cached_property
    def _by_white(self) -> Dict[Vertex, Dimer]:
        return {d.w: d for d in self.dimers}

    @cached_property
    def _by_black(self) -> Dict[Vertex, Dimer]:
        return {d.b: d for d in self.dimers}

    def dimer_at(self, v) -> Optional[Dimer]:
        v = Vertex(*v)
        return self._by_white.get(v) if is_white(v) else self._by_black.get(v)

    def kind_at(self, w) -> Optional[str]:
        d = self._by_white.get(Vertex(*w))
        return d.kind if d is not None else None

    def covers(self, b, w) -> bool:
        d = self._by_black.get(Vertex(*b))
        return d is not None and d.w == tuple(w)

    def kind_counts(self) -> Dict[str, int]:
        counts = Counter(d.kind for d in self.dimers)
        return {kind: counts.get(kind, 0) for kind in KIND_ORDER}

    @property
    def vertical_count(self) -> int:
        return sum(1 for d in self.dimers if d.is_vertical)


def validate_tiling(t: Tiling) -> TilingReport:
    diamond = t.diamond
    outside = [d for d in t.dimers if not (diamond.contains(d.b) and diamond.contains(d.w))]
    foreign = tuple(sorted(outside, key=_dimer_key))
    cover = Counter()
    for d in t.dimers:
        cover[d.b] += 1
        cover[d.w] += 1
    order = diamond.whites + diamond.blacks
    uncovered = tuple(sorted((v for v in order if cover[v] == 0), key=_vertex_key))
    doubly = tuple(sorted((v for v in order if cover[v] > 1), key=_vertex_key))
    return TilingReport(uncovered=uncovered, doubly_covered=doubly, foreign=foreign)


def tiling_from_dimers(diamond: AztecDiamond, dimers: Iterable[Dimer]) -> Tiling:
    t = Tiling(diamond=diamond, dimers=frozenset(dimers))
    if not t.report.ok:
        raise InvalidTiling("not a perfect matching: {report}".format(report=t.report), report=t.report)
    return t


def horizontal_tiling(diamond: AztecDiamond) -> Tiling:
    """the all-horizontal brickwork: South below the diagonal x1 = x2, North on and above it."""
    dimers = []
    for w in diamond.whites:
        if w[1] < w[0]:
            dimers.append(Dimer(b=shift(w, E1), w=w, kind=DominoKinds.SOUTH))
        else:
            dimers.append(Dimer(b=shift(w, E1, -1), w=w, kind=DominoKinds.NORTH))
    return tiling_from_dimers(diamond, dimers)


def particle_coords(x) -> Tuple[object, object]:
    """(u1, u2) = (x2, (x2 - x1 + 1)/2); u2 is an integer on every vertex and a half-integer on faces."""
    u2 = Fraction(x[1] - x[0] + 1, 2)
    return x[1], int(u2) if u2.denominator == 1 else u2


@dataclass(frozen=True)
class ParticleConfiguration:
    blue: FrozenSet[Vertex]
    red: FrozenSet[Vertex]


def particles_of_tiling(t: Tiling) -> ParticleConfiguration:
    """particles sit on the white and black ends of the south and west dimers."""
    if not t.is_valid:
        raise InvalidTiling("particles need a valid tiling: {report}".format(report=t.report), report=t.report)
    placed = [d for d in t.dimers if d.kind in (DominoKinds.SOUTH, DominoKinds.WEST)]
    return ParticleConfiguration(blue=frozenset(d.w for d in placed), red=frozenset(d.b for d in placed))


def _vertex_key(v):
    return (v[1], v[0])


def _dimer_key(d: Dimer):
    return (d.b[1], d.b[0], d.w[1], d.w[0])


# height function
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class HeightField:
    """heights at the corner points of the cells, keyed by point."""

    diamond: AztecDiamond
    heights: Dict[Vertex, int]

    def __getitem__(self, p) -> int:
        return self.heights[Vertex(*p)]

    def __contains__(self, p) -> bool:
        return Vertex(*p) in self.heights

    def __len__(self):
        return len(self.heights)

    def check(self, t: "Tiling") -> bool:
        """re-verify the increment rule on every diamond edge between stored points."""
        for p, h in self.heights.items():
            for d in DIAGONAL_STEPS:
                q = shift(p, d)
                if q not in self.heights or not _is_diamond_edge(self.diamond, p, d):
                    continue
                if self.heights[q] - h != height_increment(t, p, q):
                    raise HeightInconsistency(
                        "increment {p} -> {q} does not follow the domino rule".format(p=tuple(p), q=tuple(q))
                    )
        return True


REFERENCE_POINT = Vertex(0, 0)
DIAGONAL_STEPS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def edge_cells(p, d) -> Tuple[Vertex, Vertex]:
    """(left cell, right cell) of the oriented primal edge p -> p + d."""
    d1, d2 = d
    left = Vertex(p[0] + (d1 - d2) // 2, p[1] + (d1 + d2) // 2)
    right = Vertex(p[0] + (d1 + d2) // 2, p[1] + (d2 - d1) // 2)
    return left, right


def height_increment(t: Tiling, p, q) -> int:
    """
    h(q) - h(p) across one side of a cell: +-3 inside a domino, -+1 along a
    domino boundary, positive when the cell on the left is black.
    """
    left, right = edge_cells(p, (q[0] - p[0], q[1] - p[1]))
    partner = t.dimer_at(left) if t.diamond.contains(left) else None
    covered = partner is not None and right in (partner.b, partner.w)
    if is_black(left):
        return 3 if covered else -1
    return -3 if covered else 1


def _is_diamond_edge(diamond: AztecDiamond, p, d) -> bool:
    left, right = edge_cells(p, d)
    return diamond.contains(left) or diamond.contains(right)


def height_function(t: Tiling) -> HeightField:
    """integrate the increments outward from (0,0) by breadth-first search."""
    if not t.is_valid:
        raise InvalidTiling("heights need a valid tiling: {report}".format(report=t.report), report=t.report)
    diamond = t.diamond
    heights = {REFERENCE_POINT: 0}
    queue = deque([REFERENCE_POINT])
    while queue:
        p = queue.popleft()
        for d in DIAGONAL_STEPS:
            if not _is_diamond_edge(diamond, p, d):
                continue
            q = shift(p, d)
            h = heights[p] + height_increment(t, p, q)
            if q not in heights:
                heights[q] = h
                queue.append(q)
            elif heights[q] != h:
                raise HeightInconsistency(
                    "height at {q} is {old} along one path and {new} along another".format(
                        q=tuple(q), old=heights[q], new=h
                    )
                )
    return HeightField(diamond=diamond, heights=heights)


def cell_circulation(t: Tiling, v) -> int:
    """sum of the increments counterclockwise around the cell of vertex v; 0 for a valid tiling."""
    corners = [shift(v, step) for step in ((0, -1), (1, 0), (0, 1), (-1, 0))]
    return sum(height_increment(t, corners[i], corners[(i + 1) % 4]) for i in range(4))


def edge_from_spelling(spelling: str) -> Dimer:
    """parse "bx,by,K" into a dimer, e.g. "0,1,W"."""
    parts = [part.strip() for part in spelling.split(",")]
    if len(parts) != 3:
        raise ValueError("an edge is spelled bx,by,K, got {spelling!r}".format(spelling=spelling))
    return dimer_from_kind((int(parts[0]), int(parts[1])), parts[2].upper())
