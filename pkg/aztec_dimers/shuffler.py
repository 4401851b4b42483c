"""
Oct-2026

Aztec diamond dimers for Django - biased domino shuffling and the
statistics drawn from sampled tilings.

The sampler grows the diamond one order at a time on square boolean arrays
of cells (i, j), |i + 1/2| + |j + 1/2| <= m, stored at [j + m, i + m]. A
domino is recorded at its lower-left cell in the array of its kind. Each
step destroys colliding pairs, slides every domino one cell in its
direction and fills the empty 2x2 blocks, horizontally with probability
1/(1 + a^2).

Sample i of a batch draws from
numpy.random.default_rng(SeedSequence(entropy=seed, spawn_key=(i,))), so a
batch is reproducible and independent of how it is split across workers.
"""
# python stuff
import logging
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

# django stuff
from django.conf import settings

# our stuff
from .constants import KIND_ORDER, KIND_STEPS, DominoKinds
from .decorators import app_logger
from .exceptions import InvalidLine, OutOfRange
from .lattice import AztecDiamond, Dimer, Tiling, Vertex, tiling_from_dimers


logger = logging.getLogger(__name__)

KIND_CODES = {kind: code for code, kind in enumerate(KIND_ORDER)}


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    a: object = 1
    seed: int = 0
    count: int = 1

    def __post_init__(self):
        # AztecDiamond validates n and parses a
        diamond = AztecDiamond(self.n, self.a)
        object.__setattr__(self, "a", diamond.a)
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer, got {seed!r}".format(seed=self.seed))
        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 0:
            raise ValueError("count must be a non-negative integer, got {count!r}".format(count=self.count))

    @property
    def diamond(self) -> AztecDiamond:
        return AztecDiamond(self.n, self.a)

    @property
    def horizontal_probability(self) -> float:
        a = float(self.a)
        return 1.0 / (1.0 + a * a)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


# shuffling
# -----------------------------------------------------------------------------
@dataclass
class DominoArrays:
    """the dominoes of an order-n tiling by kind, anchored at their lower-left cell."""

    n: int
    north: np.ndarray
    south: np.ndarray
    east: np.ndarray
    west: np.ndarray

    @classmethod
    def empty(cls, n: int) -> "DominoArrays":
        size = 2 * n
        return cls(n, *(np.zeros((size, size), dtype=bool) for _ in range(4)))

    def by_kind(self) -> Dict[str, np.ndarray]:
        return {
            DominoKinds.NORTH: self.north,
            DominoKinds.SOUTH: self.south,
            DominoKinds.EAST: self.east,
            DominoKinds.WEST: self.west,
        }

    def occupancy(self) -> np.ndarray:
        cover = np.zeros((2 * self.n, 2 * self.n), dtype=np.int16)
        for horizontal in (self.north, self.south):
            cover += horizontal
            cover[:, 1:] += horizontal[:, :-1]
        for vertical in (self.east, self.west):
            cover += vertical
            cover[1:, :] += vertical[:-1, :]
        return cover

    def white_cells(self, kind: str) -> Tuple[np.ndarray, np.ndarray]:
        """(x1, x2) arrays of the white ends of every domino of this kind."""
        rows, cols = np.nonzero(self.by_kind()[kind])
        i, j = cols - self.n, rows - self.n
        # the white end is the anchor for S and W, the upper or right cell for N and E
        if kind == DominoKinds.NORTH:
            i = i + 1
        elif kind == DominoKinds.EAST:
            j = j + 1
        return i - j + self.n, i + j + 1 + self.n

    def kind_grid(self) -> np.ndarray:
        """
        kind code (KIND_ORDER index) of every white vertex, indexed
        [x2 / 2, (x1 - 1) / 2]: shape (n + 1, n).
        """
        grid = np.full((self.n + 1, self.n), -1, dtype=np.int8)
        for kind in KIND_ORDER:
            x1, x2 = self.white_cells(kind)
            grid[x2 // 2, (x1 - 1) // 2] = KIND_CODES[kind]
        assert (grid >= 0).all(), "every white vertex is matched"
        return grid

    def to_tiling(self, a) -> Tiling:
        diamond = AztecDiamond(self.n, a)
        dimers = []
        for kind in KIND_ORDER:
            step = KIND_STEPS[kind]
            x1, x2 = self.white_cells(kind)
            for w1, w2 in zip(x1.tolist(), x2.tolist()):
                dimers.append(Dimer(b=Vertex(w1 - step[0], w2 - step[1]), w=Vertex(w1, w2), kind=kind))
        return tiling_from_dimers(diamond, dimers)


def diamond_mask(m: int) -> np.ndarray:
    centers = np.abs(np.arange(-m, m) + 0.5)
    return (centers[:, None] + centers[None, :]) <= m


def _odd_cells(m: int) -> np.ndarray:
    """cells with i + j + m odd: lower-left corners of new blocks, anchors of S and W."""
    coordinate = np.arange(-m, m)
    return (coordinate[:, None] + coordinate[None, :] + m) % 2 == 1


def _destroy(state: DominoArrays) -> None:
    collide_ns = state.north[:-1, :] & state.south[1:, :]
    state.north[:-1, :][collide_ns] = False
    state.south[1:, :][collide_ns] = False
    collide_ew = state.east[:, :-1] & state.west[:, 1:]
    state.east[:, :-1][collide_ew] = False
    state.west[:, 1:][collide_ew] = False


def _slide(state: DominoArrays) -> DominoArrays:
    size = 2 * state.n
    grown = DominoArrays.empty(state.n + 1)
    grown.north[2 : 2 + size, 1 : 1 + size] = state.north
    grown.south[0:size, 1 : 1 + size] = state.south
    grown.east[1 : 1 + size, 2 : 2 + size] = state.east
    grown.west[1 : 1 + size, 0:size] = state.west
    return grown


def _create(state: DominoArrays, horizontal_probability: float, rng: np.random.Generator) -> None:
    m = state.n
    empty = diamond_mask(m) & (state.occupancy() == 0)
    rows = np.arange(2 * m)[:, None]
    last_filled = np.maximum.accumulate(np.where(~empty, rows, -1), axis=0)
    # empty runs in a column stack whole blocks, so block bottoms sit at even offsets
    bottom = empty & ((rows - last_filled - 1) % 2 == 0)
    corners = np.nonzero(bottom & _odd_cells(m))
    horizontal = rng.random(len(corners[0])) < horizontal_probability
    r, c = corners[0][horizontal], corners[1][horizontal]
    state.south[r, c] = True
    state.north[r + 1, c] = True
    r, c = corners[0][~horizontal], corners[1][~horizontal]
    state.west[r, c] = True
    state.east[r, c + 1] = True


def shuffle(n: int, horizontal_probability: float, rng: np.random.Generator) -> DominoArrays:
    """a random tiling of order n with law proportional to a^#vertical."""
    state = DominoArrays.empty(0)
    for _ in range(n):
        _destroy(state)
        state = _slide(state)
        _create(state, horizontal_probability, rng)
        cover = state.occupancy()
        assert (cover == diamond_mask(state.n)).all(), "shuffling covers the order-{m} diamond exactly".format(
            m=state.n
        )
    return state


def _shuffle_task(n: int, horizontal_probability: float, seed: int, index: int) -> DominoArrays:
    # runs in worker processes: parameters only, no settings access
    return shuffle(n, horizontal_probability, sample_rng(seed, index))


def resolve_workers(workers: Optional[int] = None) -> int:
    workers = settings.AZTEC_DIMERS_WORKERS if workers is None else workers
    if workers < 0:
        raise ValueError("workers must be non-negative, got {workers}".format(workers=workers))
    return workers or os.cpu_count() or 1


def sample_arrays(config: SamplerConfig, workers: Optional[int] = None) -> Iterable[DominoArrays]:
    """the samples 0..count-1 of the batch, in index order."""
    workers = resolve_workers(workers)
    p = config.horizontal_probability
    indices = range(config.count)
    if workers == 1 or config.count <= 1:
        for index in indices:
            yield _shuffle_task(config.n, p, config.seed, index)
        return
    logger.info(
        "sample_arrays() n={n} count={count} on {workers} workers".format(
            n=config.n, count=config.count, workers=workers
        )
    )
    with ProcessPoolExecutor(max_workers=workers) as executor:
        tasks = executor.map(
            _shuffle_task,
            [config.n] * config.count,
            [p] * config.count,
            [config.seed] * config.count,
            indices,
            chunksize=max(1, config.count // (4 * workers)),
        )
        yield from tasks


def sample_kind_grids(config: SamplerConfig, workers: Optional[int] = None) -> Iterable[np.ndarray]:
    for arrays in sample_arrays(config, workers):
        yield arrays.kind_grid()


def sample_tiling(config: SamplerConfig, index: int = 0) -> Tiling:
    """sample number index of the batch described by config."""
    return _shuffle_task(config.n, config.horizontal_probability, config.seed, index).to_tiling(config.a)


@app_logger
def sample_tilings(config: SamplerConfig, workers: Optional[int] = None) -> List[Tiling]:
    return [arrays.to_tiling(config.a) for arrays in sample_arrays(config, workers)]


def grid_of_tiling(t: Tiling) -> np.ndarray:
    """the kind grid of a tiling, in the layout of DominoArrays.kind_grid()."""
    n = t.diamond.n
    grid = np.full((n + 1, n), -1, dtype=np.int8)
    for w in t.diamond.whites:
        kind = t.kind_at(w)
        if kind is not None:
            grid[w[1] // 2, (w[0] - 1) // 2] = KIND_CODES[kind]
    return grid


# edge frequencies
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class EdgeFrequency:
    frequency: float
    stderr: float
    count: int


def frequencies_from_grids(grids: Iterable[np.ndarray], n: int) -> Dict[Dimer, EdgeFrequency]:
    totals = np.zeros((len(KIND_ORDER), n + 1, n), dtype=np.int64)
    samples = 0
    for grid in grids:
        samples += 1
        for code in range(len(KIND_ORDER)):
            totals[code] += grid == code
    if samples == 0:
        return {}
    result = {}
    diamond = AztecDiamond(n)
    for d in diamond.edges():
        hits = int(totals[KIND_CODES[d.kind], d.w[1] // 2, (d.w[0] - 1) // 2])
        p = hits / samples
        result[d] = EdgeFrequency(frequency=p, stderr=float(np.sqrt(p * (1 - p) / samples)), count=hits)
    return result


@app_logger
def empirical_edge_frequencies(config: SamplerConfig, workers: Optional[int] = None) -> Dict[Dimer, EdgeFrequency]:
    """per-edge sample frequencies with binomial standard errors; empty for count = 0."""
    return frequencies_from_grids(sample_kind_grids(config, workers), config.n)


# south dominoes on a line
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class LineStatistics:
    r: int
    positions: Tuple[int, ...]
    holes: Tuple[Tuple[int, int], ...]

    @property
    def hole_positions(self) -> Tuple[int, ...]:
        return tuple(s for start, length in self.holes for s in range(start, start + length))


def _hole_clusters(positions: Iterable[int], n: int) -> Tuple[Tuple[int, int], ...]:
    """maximal runs (start, length) of consecutive holes in 1..n."""
    occupied = set(positions)
    clusters = []
    start = None
    for s in range(1, n + 2):
        if s <= n and s not in occupied:
            if start is None:
                start = s
        elif start is not None:
            clusters.append((start, s - start))
            start = None
    return tuple(clusters)


def line_statistics_from_grid(grid: np.ndarray, r: int) -> LineStatistics:
    n = grid.shape[1]
    if not 1 <= r <= n - 1:
        raise InvalidLine("line index must lie in 1..{last}, got {r}".format(last=n - 1, r=r))
    # the south domino at s has its white end at (2s - 1, 2r)
    positions = tuple(int(s) + 1 for s in np.nonzero(grid[r] == KIND_CODES[DominoKinds.SOUTH])[0])
    return LineStatistics(r=r, positions=positions, holes=_hole_clusters(positions, n))


def south_line_statistics(t: Tiling, r: int) -> LineStatistics:
    """positions s of the south dominoes ((2s, 2r+1), (2s-1, 2r)) on the line y = r."""
    n = t.diamond.n
    if not 1 <= r <= n - 1:
        raise InvalidLine("line index must lie in 1..{last}, got {r}".format(last=n - 1, r=r))
    positions = tuple(s for s in range(1, n + 1) if t.kind_at((2 * s - 1, 2 * r)) == DominoKinds.SOUTH)
    return LineStatistics(r=r, positions=positions, holes=_hole_clusters(positions, n))


def hole_cluster_sizes(statistics: LineStatistics, window: Optional[Tuple[float, float]] = None) -> List[int]:
    """lengths of the hole clusters, restricted to clusters starting inside window when given."""
    if window is None:
        return [length for _, length in statistics.holes]
    low, high = window
    return [length for start, length in statistics.holes if low <= start <= high]


# local patterns
# -----------------------------------------------------------------------------
def window_slices(grid_shape: Tuple[int, int], center, radius: int) -> Tuple[slice, slice]:
    """rows and columns of the kind grid within radius white steps of the white vertex center."""
    x1, x2 = center
    if x1 % 2 != 1 or x2 % 2 != 0:
        raise ValueError("window center {c} is not a white vertex".format(c=tuple(center)))
    row, col = x2 // 2, (x1 - 1) // 2
    rows, cols = grid_shape
    if not (0 <= row < rows and 0 <= col < cols):
        raise OutOfRange("window center {c} is outside the diamond".format(c=tuple(center)))
    row_slice = slice(max(0, row - radius), min(rows, row + radius + 1))
    return row_slice, slice(max(0, col - radius), min(cols, col + radius + 1))


def local_kind_frequencies(grids: Iterable[np.ndarray], center, radius: int) -> Counter:
    """counts of the four orientations over the white vertices of a window, summed over grids."""
    counts = Counter({kind: 0 for kind in KIND_ORDER})
    for grid in grids:
        rows, cols = window_slices(grid.shape, center, radius)
        values, hits = np.unique(grid[rows, cols], return_counts=True)
        for code, hit in zip(values.tolist(), hits.tolist()):
            counts[KIND_ORDER[code]] += hit
    return counts


# frozen boundary
# -----------------------------------------------------------------------------
def _scan(grid: np.ndarray, line: int, along_rows: bool, reverse: bool) -> Optional[Tuple[int, int]]:
    """grid index of the first vertex whose 2x2 neighbourhood leaves the starting kind."""
    rows, cols = grid.shape
    length = cols if along_rows else rows
    step = -1 if reverse else 1
    positions = range(length - 1, -1, -1) if reverse else range(length)
    start = None
    for p in positions:
        if along_rows:
            cells = [(line, p), (line, p + step), (line + 1, p), (line + 1, p + step)]
        else:
            cells = [(p, line), (p + step, line), (p, line + 1), (p + step, line + 1)]
        kinds = {int(grid[r, c]) for r, c in cells if 0 <= r < rows and 0 <= c < cols}
        if start is None:
            start = int(grid[(line, p) if along_rows else (p, line)])
        if kinds != {start}:
            return (line, p) if along_rows else (p, line)
    return None


def frozen_boundary_points(grid: np.ndarray) -> List[Tuple[float, float]]:
    """
    scan every white row and column of a kind grid from both ends; the first
    vertex whose neighbourhood leaves the brickwork of the starting corner is
    a boundary point, reported as (x1, x2) / 2n.
    """
    n = grid.shape[1]
    points = []
    for along_rows, count in ((True, grid.shape[0]), (False, grid.shape[1])):
        for line in range(count):
            for reverse in (False, True):
                hit = _scan(grid, line, along_rows, reverse)
                if hit is not None:
                    row, col = hit
                    points.append(((2 * col + 1) / (2 * n), (2 * row) / (2 * n)))
    return points


@app_logger
def frozen_boundary_estimate(config: SamplerConfig, workers: Optional[int] = None) -> List[Tuple[float, float]]:
    points = []
    for grid in sample_kind_grids(config, workers):
        points.extend(frozen_boundary_points(grid))
    return points
