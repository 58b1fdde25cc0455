"""Maps between digital images: continuity, isomorphism, restriction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Mapping

from .errors import DigitalTopologyError, MapError, NotInImageError
from .lattice import DigitalImage, Point, is_connected


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure.

    `witness` is a counterexample when `holds` is false and supporting
    evidence (a bijection, a sheet decomposition, ...) when it is true.
    """

    holds: bool
    witness: Any = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class DigitalMap:
    source: DigitalImage
    target: DigitalImage
    table: Mapping[Point, Point]

    def __post_init__(self):
        table = {tuple(k): tuple(v) for k, v in dict(self.table).items()}
        missing = self.source.points - table.keys()
        if missing:
            raise MapError(f"map is not total: no value at {min(missing)}")
        extra = table.keys() - self.source.points
        if extra:
            raise NotInImageError(f"{min(extra)} is not a point of the source image")
        for x, y in table.items():
            if y not in self.target.points:
                raise NotInImageError(f"value {y} at {x} is not a point of the target image")
        object.__setattr__(self, "table", table)

    @classmethod
    def identity(cls, X: DigitalImage) -> "DigitalMap":
        return cls(X, X, {x: x for x in X.points})

    @classmethod
    def inclusion(cls, A: DigitalImage, X: DigitalImage) -> "DigitalMap":
        return cls(A, X, {a: a for a in A.points})

    def __call__(self, x: Point) -> Point:
        return self.table[x]

    def __eq__(self, other):
        if not isinstance(other, DigitalMap):
            return NotImplemented
        return (self.source, self.target, self.table) == (other.source, other.target, other.table)

    def __repr__(self):
        pairs = ", ".join(f"{x}->{self.table[x]}" for x in self.source.sorted_points)
        return f"DigitalMap({self.source.adjacency.name}->{self.target.adjacency.name}: {pairs})"

    def values(self) -> tuple[Point, ...]:
        """Value vector in sorted source order."""
        return tuple(self.table[x] for x in self.source.sorted_points)

    def image_of(self, points: Iterable[Point]) -> frozenset:
        return frozenset(self.table[x] for x in points)

    @cached_property
    def _fibers(self) -> dict[Point, tuple[Point, ...]]:
        fibers: dict[Point, list] = {y: [] for y in self.target.points}
        for x in self.source.sorted_points:
            fibers[self.table[x]].append(x)
        return {y: tuple(xs) for y, xs in fibers.items()}

    def fiber(self, y: Point) -> tuple[Point, ...]:
        if y not in self.target.points:
            raise NotInImageError(f"{y} is not a point of the target image")
        return self._fibers[y]

    def preimage(self, ys: Iterable[Point]) -> frozenset:
        return frozenset(x for y in ys for x in self._fibers[y])

    def is_surjective(self) -> bool:
        return all(self._fibers.values())

    def is_injective(self) -> bool:
        return len(set(self.table.values())) == len(self.table)

    def inverse(self) -> "DigitalMap":
        if not (self.is_injective() and self.is_surjective()):
            raise MapError("only a bijection has an inverse")
        return DigitalMap(self.target, self.source, {y: x for x, y in self.table.items()})

    def then(self, g: "DigitalMap") -> "DigitalMap":
        """The composite g o self."""
        if g.source.points != self.target.points:
            raise MapError("maps are not composable")
        return DigitalMap(self.source, g.target, {x: g.table[y] for x, y in self.table.items()})


def is_continuous(f: DigitalMap) -> Verdict:
    """Adjacent source points must go to equal or adjacent target points.

    The witness on failure is the first violating pair (x, x') in sorted order.
    """
    X, Y, t = f.source, f.target, f.table
    for x in X.sorted_points:
        fx = t[x]
        for x2 in sorted(X.neighbors(x)):
            fx2 = t[x2]
            if fx != fx2 and not Y.adjacent(fx, fx2):
                return Verdict(False, (x, x2))
    return Verdict(True)


def continuity_by_neighborhoods(f: DigitalMap) -> Verdict:
    """The f(N(x)) <= N(f(x)) formulation of continuity; witness is the failing x."""
    for x in f.source.sorted_points:
        if not f.image_of(f.source.closed_neighborhood(x)) <= f.target.closed_neighborhood(f.table[x]):
            return Verdict(False, x)
    return Verdict(True)


MAX_SUBSET_POINTS = 16


def continuity_by_connectedness(f: DigitalMap) -> Verdict:
    """Continuity as preservation of connected subsets, by brute force over all subsets.

    Exponential; meant as an independent cross-check on small sources.
    The witness on failure is a connected subset with disconnected image.
    """
    pts = f.source.sorted_points
    if len(pts) > MAX_SUBSET_POINTS:
        raise DigitalTopologyError(f"subset enumeration limited to {MAX_SUBSET_POINTS} points")
    for r in range(2, len(pts) + 1):
        for A in combinations(pts, r):
            if is_connected(f.source.subimage(A)) and not is_connected(f.target.subimage(f.image_of(A))):
                return Verdict(False, A)
    return Verdict(True)


def restriction_is_isomorphism(
    f: DigitalMap, domain: Iterable[Point], codomain: Iterable[Point] | None = None
) -> bool:
    """Is f restricted to `domain` an isomorphism onto `codomain` (default: onto its image)?

    Both sides carry the adjacency induced from their parent images.
    """
    dom = list(domain)
    t = f.table
    img = [t[x] for x in dom]
    img_set = set(img)
    if len(img_set) != len(dom):
        return False
    if codomain is not None and img_set != set(codomain):
        return False
    X, Y = f.source, f.target
    for i, j in combinations(range(len(dom)), 2):
        if X.adjacent(dom[i], dom[j]) != Y.adjacent(img[i], img[j]):
            return False
    return True


def is_isomorphism(f: DigitalMap) -> Verdict:
    """Continuous bijection with continuous inverse.

    Witness on failure: "not injective", "not surjective", or the first
    pair of source points whose adjacency is not matched by their images.
    """
    if not f.is_injective():
        return Verdict(False, "not injective")
    if not f.is_surjective():
        return Verdict(False, "not surjective")
    X, Y, t = f.source, f.target, f.table
    for x, x2 in combinations(X.sorted_points, 2):
        if X.adjacent(x, x2) != Y.adjacent(t[x], t[x2]):
            return Verdict(False, (x, x2))
    return Verdict(True)


def restrict(f: DigitalMap, S: DigitalImage | Iterable[Point], corestrict: Iterable[Point] | None = None) -> DigitalMap:
    """f restricted to the sub-image S; optionally corestricted to a sub-image of the target."""
    pts = S.points if isinstance(S, DigitalImage) else frozenset(S)
    source = f.source.subimage(pts)
    target = f.target if corestrict is None else f.target.subimage(corestrict)
    return DigitalMap(source, target, {x: f.table[x] for x in pts})


def subimages_isomorphic(A: DigitalImage, B: DigitalImage) -> Verdict:
    """Is there a bijection A -> B preserving adjacency in both directions?

    Backtracking over bijections after a degree-sequence filter; the witness
    is the bijection as a dict.
    """
    if len(A) != len(B) or A.degree_sequence() != B.degree_sequence():
        return Verdict(False)
    a_pts = sorted(A.points, key=lambda p: (-len(A.neighbors(p)), p))
    b_pts = B.sorted_points
    deg_b = {q: len(B.neighbors(q)) for q in b_pts}
    assign: dict[Point, Point] = {}
    used: set[Point] = set()

    def extend(i: int) -> bool:
        if i == len(a_pts):
            return True
        a = a_pts[i]
        da = len(A.neighbors(a))
        for b in b_pts:
            if b in used or deg_b[b] != da:
                continue
            if all(A.adjacent(a, a2) == B.adjacent(b, assign[a2]) for a2 in a_pts[:i]):
                assign[a] = b
                used.add(b)
                if extend(i + 1):
                    return True
                del assign[a]
                used.discard(b)
        return False

    if extend(0):
        return Verdict(True, dict(sorted(assign.items())))
    return Verdict(False)
