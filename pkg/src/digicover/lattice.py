"""Digital images: finite subsets of Z^n under a c_u adjacency."""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import comb
from typing import Iterable, Sequence

from .errors import DigitalTopologyError, DimensionError, NotInImageError, UnrealizableCurveError

Point = tuple[int, ...]

# numeric alias -> (u, n)
_ALIASES = {2: (1, 1), 4: (1, 2), 8: (2, 2), 6: (1, 3), 18: (2, 3), 26: (3, 3)}


def neighbor_count(u: int, n: int) -> int:
    """Number of c_u neighbors of a point of Z^n."""
    return sum(comb(n, k) * 2**k for k in range(1, u + 1))


@dataclass(frozen=True, order=True)
class Adjacency:
    """The c_u adjacency on Z^n."""

    u: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.u, int) and isinstance(self.n, int)):
            raise DigitalTopologyError(f"adjacency parameters must be integers, got u={self.u!r}, n={self.n!r}")
        if not 1 <= self.u <= self.n:
            raise DigitalTopologyError(f"c_u adjacency needs 1 <= u <= n, got u={self.u}, n={self.n}")

    @classmethod
    def parse(cls, spec, dim: int | None = None) -> "Adjacency":
        """Accept an Adjacency, "c2", "c_2", or a numeric alias such as 8 or "26".

        `dim` is required for the "c<u>" form and cross-checked otherwise.
        """
        named = re.fullmatch(r"c_?(\d+)", spec.strip().lower()) if isinstance(spec, str) else None
        if isinstance(spec, Adjacency):
            adj = spec
        elif named:
            if dim is None:
                raise DigitalTopologyError(f"adjacency {spec!r} needs an ambient dimension")
            adj = cls(int(named.group(1)), dim)
        else:
            try:
                k = int(spec)
            except (TypeError, ValueError):
                raise DigitalTopologyError(f"unknown adjacency {spec!r}") from None
            if dim is None:
                if k not in _ALIASES:
                    raise DigitalTopologyError(f"unknown adjacency alias {spec!r}")
                adj = cls(*_ALIASES[k])
            else:
                matches = [u for u in range(1, dim + 1) if neighbor_count(u, dim) == k]
                if not matches and k in _ALIASES:
                    raise DimensionError(f"{k}-adjacency lives in Z^{_ALIASES[k][1]}, image is in Z^{dim}")
                if not matches:
                    raise DigitalTopologyError(f"no c_u adjacency in Z^{dim} has {k} neighbors")
                adj = cls(matches[0], dim)
        if dim is not None and adj.n != dim:
            raise DimensionError(f"adjacency {adj.name} lives in Z^{adj.n}, image is in Z^{dim}")
        return adj

    @property
    def name(self) -> str:
        return f"c{self.u}"

    @property
    def alias(self) -> int:
        return neighbor_count(self.u, self.n)

    @cached_property
    def offsets(self) -> tuple[Point, ...]:
        return tuple(
            d for d in product((-1, 0, 1), repeat=self.n) if 1 <= sum(map(abs, d)) <= self.u
        )

    def __str__(self):
        return f"{self.name} (={self.alias}-adjacency in Z^{self.n})"


def adjacent(adj: Adjacency, x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff x != y and x, y differ by exactly 1 in at most u coordinates and agree elsewhere."""
    if len(x) != adj.n or len(y) != adj.n:
        raise DimensionError(f"points {tuple(x)}, {tuple(y)} do not both lie in Z^{adj.n}")
    differing = 0
    for a, b in zip(x, y):
        d = abs(a - b)
        if d > 1:
            return False
        differing += d
    return 1 <= differing <= adj.u


def as_point(coords: Iterable[int]) -> Point:
    pt = tuple(coords)
    if not pt or not all(isinstance(c, int) and not isinstance(c, bool) for c in pt):
        raise DigitalTopologyError(f"not a lattice point: {coords!r}")
    return pt


@dataclass(frozen=True)
class DigitalImage:
    """A finite set of lattice points together with a c_u adjacency; a graph."""

    points: frozenset
    adjacency: Adjacency

    def __post_init__(self):
        if not isinstance(self.points, frozenset):
            object.__setattr__(self, "points", frozenset(map(tuple, self.points)))
        n = self.adjacency.n
        for p in self.points:
            if len(p) != n:
                raise DimensionError(f"point {p} is not in Z^{n}")

    @classmethod
    def of(cls, points: Iterable[Iterable[int]], adjacency, dim: int | None = None) -> "DigitalImage":
        pts = frozenset(as_point(p) for p in points)
        if dim is None:
            dims = {len(p) for p in pts}
            if len(dims) > 1:
                raise DimensionError(f"points of mixed dimension {sorted(dims)}")
            if dims:
                dim = dims.pop()
            elif isinstance(adjacency, Adjacency):
                dim = adjacency.n
        return cls(pts, Adjacency.parse(adjacency, dim))

    @property
    def dim(self) -> int:
        return self.adjacency.n

    def __len__(self):
        return len(self.points)

    def __contains__(self, x):
        return x in self.points

    def __iter__(self):
        return iter(self.sorted_points)

    @cached_property
    def sorted_points(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points))

    @cached_property
    def _neighbors(self) -> dict[Point, frozenset]:
        pts = self.points
        offs = self.adjacency.offsets
        out = {}
        for p in pts:
            out[p] = frozenset(q for q in (tuple(a + b for a, b in zip(p, d)) for d in offs) if q in pts)
        return out

    def _check_member(self, x):
        if x not in self.points:
            raise NotInImageError(f"{x} is not a point of the image")

    def neighbors(self, x: Point) -> frozenset:
        """Punctured neighborhood N(X, x, kappa)."""
        self._check_member(x)
        return self._neighbors[x]

    def closed_neighborhood(self, x: Point) -> frozenset:
        self._check_member(x)
        return self._neighbors[x] | {x}

    def neighborhood(self, x: Point, punctured: bool = False) -> frozenset:
        return self.neighbors(x) if punctured else self.closed_neighborhood(x)

    def adjacent(self, x: Point, y: Point) -> bool:
        """Adjacency test for two members; faster than the free function."""
        return y in self._neighbors[x]

    def subimage(self, points: Iterable[Point]) -> "DigitalImage":
        pts = frozenset(points)
        extra = pts - self.points
        if extra:
            raise NotInImageError(f"{sorted(extra)[0]} is not a point of the parent image")
        return DigitalImage(pts, self.adjacency)

    def with_adjacency(self, adjacency) -> "DigitalImage":
        return DigitalImage(self.points, Adjacency.parse(adjacency, self.dim))

    def edges(self) -> list[tuple[Point, Point]]:
        return [(x, y) for x in self.sorted_points for y in sorted(self._neighbors[x]) if x < y]

    def degree_sequence(self) -> list[int]:
        return sorted(len(v) for v in self._neighbors.values())

    def __repr__(self):
        return f"DigitalImage({list(self.sorted_points)}, {self.adjacency.name})"


def neighborhood(X: DigitalImage, x: Point, punctured: bool = False) -> frozenset:
    return X.neighborhood(x, punctured)


def is_connected(X: DigitalImage) -> bool:
    """Breadth-first search; the empty image counts as connected."""
    if not X.points:
        return True
    start = X.sorted_points[0]
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in X.neighbors(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(X.points)


def is_path(X: DigitalImage, seq: Sequence[Point]) -> bool:
    """Consecutive entries equal or adjacent, all in X."""
    if not all(p in X.points for p in seq):
        return False
    return all(a == b or X.adjacent(a, b) for a, b in zip(seq, seq[1:]))


class CurveKind(enum.Enum):
    NOT_CLOSED = "not-closed"
    CLOSED = "closed-curve"
    SIMPLE = "simple-closed-curve"


def classify_curve(X: DigitalImage, seq: Sequence[Point]) -> CurveKind:
    """Decide whether the path `seq` (with seq[0] == seq[-1] for a curve) is a closed or simple closed curve.

    Closed traversals with fewer than 3 steps are reported NOT_CLOSED and
    simple closed curves need at least 4 steps.
    """
    seq = [tuple(p) for p in seq]
    if len(seq) < 2:
        raise DigitalTopologyError("a curve needs at least one step")
    missing = [p for p in seq if p not in X.points]
    if missing:
        raise NotInImageError(f"{missing[0]} is not a point of the image")
    if not is_path(X, seq):
        raise DigitalTopologyError("sequence is not a path: consecutive points must be equal or adjacent")
    m = len(seq) - 1
    if seq[0] != seq[m] or m < 3:
        return CurveKind.NOT_CLOSED
    # 0 < |i - j| < m implies s_i != s_j  <=>  s_0..s_{m-1} pairwise distinct
    if len(set(seq[:m])) != m:
        return CurveKind.NOT_CLOSED
    if m < 4:
        return CurveKind.CLOSED
    trace = set(seq[:m])
    for i in range(m):
        expected = {seq[(i - 1) % m], seq[(i + 1) % m]}
        if set(X.neighbors(seq[i])) & trace != expected:
            return CurveKind.CLOSED
    return CurveKind.SIMPLE


def make_scc(adjacency, length: int) -> tuple[DigitalImage, tuple[Point, ...]]:
    """Build a 4-adjacency simple closed curve in Z^2 with `length` points.

    Length 4 is the unit square; even lengths >= 8 are perimeters of a
    3-wide rectangle. Returns the image and the closed traversal (first point
    repeated at the end).
    """
    adj = Adjacency.parse(adjacency, 2)
    if adj != Adjacency(1, 2):
        raise UnrealizableCurveError(f"only 4-adjacency in Z^2 is supported, got {adj.name}")
    if length < 4 or length % 2 or length == 6:
        # 6 is excluded: the only 6-cycles of the grid are domino boundaries, which have chords
        raise UnrealizableCurveError(f"no 4-adjacency simple closed curve in Z^2 has {length} points")
    if length == 4:
        cycle = [(0, 0), (1, 0), (1, 1), (0, 1)]
    else:
        w, h = 3, length // 2 - 1
        cycle = [(x, 0) for x in range(w)]
        cycle += [(w - 1, y) for y in range(1, h)]
        cycle += [(x, h - 1) for x in range(w - 2, -1, -1)]
        cycle += [(0, y) for y in range(h - 2, 0, -1)]
    X = DigitalImage(frozenset(cycle), adj)
    return X, tuple(cycle + [cycle[0]])
