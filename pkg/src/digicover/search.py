"""Exhaustive enumeration of small digital images and maps, and equivalence sweeps over them."""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .errors import DigitalTopologyError, NotApplicable, OverflowCap
from .lattice import Adjacency, CurveKind, DigitalImage, Point, classify_curve, is_connected
from .lifting import upl_bounded, upl_onestep
from .maps import DigitalMap, Verdict, continuity_by_connectedness, continuity_by_neighborhoods, is_continuous
from .predicates import (
    CHECKERS,
    classify,
    is_covering,
    is_han_pseudocovering,
    is_local_isomorphism,
    is_pak_pseudocovering,
    is_pl_isomorphism,
    is_wl_isomorphism,
)

log = logging.getLogger(__name__)

DEFAULT_MAP_CAP = 10**7
CONNECTEDNESS_CHECK_MAX_POINTS = 4


@dataclass(frozen=True)
class EnumBounds:
    box: tuple[int, ...]
    max_points: int
    adjacencies: tuple[Adjacency, ...] = ()
    require_connected: bool = True
    require_surjective: bool = True
    require_continuous: bool = True

    def __post_init__(self):
        box = tuple(self.box)
        if not box or any(b < 1 for b in box):
            raise DigitalTopologyError(f"box extents must be >= 1, got {box}")
        if self.max_points < 1:
            raise DigitalTopologyError("max_points must be >= 1")
        adjs = tuple(Adjacency.parse(a, len(box)) for a in self.adjacencies) or (Adjacency(1, len(box)),)
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "adjacencies", adjs)


def default_bounds() -> EnumBounds:
    return EnumBounds((3, 3), 5, ("c1", "c2"))


def default_workers() -> int:
    return int(os.environ.get("DIGICOVER_WORKERS", "1"))


def enumerate_images(b: EnumBounds) -> Iterator[DigitalImage]:
    """Point subsets of the box up to translation, each paired with each adjacency.

    A translation class is represented by its member touching every lower
    face of the box (per-axis minimum 0). Order: size, then lexicographic
    point order, then the order of `b.adjacencies`.
    """
    cells = list(product(*(range(k) for k in b.box)))
    dim = len(b.box)
    for r in range(1, min(b.max_points, len(cells)) + 1):
        for subset in combinations(cells, r):
            if any(min(p[i] for p in subset) != 0 for i in range(dim)):
                continue
            pts = frozenset(subset)
            for adj in b.adjacencies:
                X = DigitalImage(pts, adj)
                if b.require_connected and not is_connected(X):
                    continue
                yield X


def _map_values(X: DigitalImage, Y: DigitalImage, continuous: bool, surjective: bool) -> Iterator[tuple[Point, ...]]:
    xs = X.sorted_points
    ys = Y.sorted_points
    index = {x: i for i, x in enumerate(xs)}
    earlier = [[index[x2] for x2 in X.neighbors(x) if index[x2] < i] for i, x in enumerate(xs)]
    closed = {y: Y.closed_neighborhood(y) for y in ys}
    n, k = len(xs), len(ys)
    values: list[Point] = [None] * n  # type: ignore[list-item]
    counts = {y: 0 for y in ys}
    state = {"covered": 0}

    def extend(i: int):
        if surjective and k - state["covered"] > n - i:
            return
        if i == n:
            yield tuple(values)
            return
        for y in ys:
            if continuous and any(values[j] not in closed[y] for j in earlier[i]):
                continue
            values[i] = y
            counts[y] += 1
            if counts[y] == 1:
                state["covered"] += 1
            yield from extend(i + 1)
            counts[y] -= 1
            if counts[y] == 0:
                state["covered"] -= 1

    yield from extend(0)


def enumerate_maps(
    X: DigitalImage,
    Y: DigitalImage,
    bounds: EnumBounds | None = None,
    *,
    continuous: bool = True,
    surjective: bool = True,
    cap: int = DEFAULT_MAP_CAP,
) -> Iterator[DigitalMap]:
    """Total functions X -> Y passing the filters, in lexicographic order of value vectors.

    `bounds`, when given, supplies the continuity and surjectivity filters.
    Raises OverflowCap when |Y|^|X| exceeds `cap`.
    """
    if bounds is not None:
        continuous, surjective = bounds.require_continuous, bounds.require_surjective
    if len(Y) ** len(X) > cap:
        raise OverflowCap(f"{len(Y)}^{len(X)} candidate functions exceed the cap of {cap}")
    xs = X.sorted_points
    for vals in _map_values(X, Y, continuous, surjective):
        yield DigitalMap(X, Y, dict(zip(xs, vals)))


# ---------------------------------------------------------------- sweeps

EQUIVALENT = ("covering", "local_iso", "han_pseudo", "wl_and_upl")
IMPLICATIONS = {
    "local_iso=>pl_iso": ("local_iso", "pl_iso"),
    "covering=>upl": ("covering", "upl"),
    "covering=>pak_pseudo": ("covering", "pak_pseudo"),
    "local_iso=>wl_iso": ("local_iso", "wl_iso"),
}


def _instance_vector(p: DigitalMap) -> dict[str, bool]:
    wl = is_wl_isomorphism(p).holds
    upl = upl_onestep(p).holds
    return {
        "covering": is_covering(p).holds,
        "local_iso": is_local_isomorphism(p).holds,
        "han_pseudo": is_han_pseudocovering(p).holds,
        "wl_iso": wl,
        "upl": upl,
        "wl_and_upl": wl and upl,
        "pl_iso": is_pl_isomorphism(p).holds,
        "pak_pseudo": is_pak_pseudocovering(p).holds,
    }


def describe(p: DigitalMap) -> dict:
    return {
        "source": {"adjacency": p.source.adjacency.name, "points": [list(x) for x in p.source.sorted_points]},
        "target": {"adjacency": p.target.adjacency.name, "points": [list(y) for y in p.target.sorted_points]},
        "values": [list(v) for v in p.values()],
    }


@dataclass
class EquivalenceReport:
    instances_checked: int = 0
    image_count: int = 0
    violations: list = field(default_factory=list)
    implication_violations: dict = field(default_factory=dict)
    oracle_disagreements: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.violations or any(self.implication_violations.values()) or any(self.oracle_disagreements.values()))

    def merge(self, other: "EquivalenceReport"):
        self.instances_checked += other.instances_checked
        self.violations += other.violations
        for d_self, d_other in ((self.implication_violations, other.implication_violations), (self.oracle_disagreements, other.oracle_disagreements)):
            for k, v in d_other.items():
                d_self.setdefault(k, []).extend(v)
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v

    def to_dict(self) -> dict:
        """JSON body; elapsed time is deliberately left out."""
        key = lambda item: repr(item)
        return {
            "instances_checked": self.instances_checked,
            "image_count": self.image_count,
            "violations": sorted(self.violations, key=key),
            "implication_violations": {k: sorted(v, key=key) for k, v in sorted(self.implication_violations.items())},
            "oracle_disagreements": {k: sorted(v, key=key) for k, v in sorted(self.oracle_disagreements.items())},
            "counts": dict(sorted(self.counts.items())),
        }


def _sweep_sources(args) -> EquivalenceReport:
    sources, images, cross_checks, cap = args
    rep = EquivalenceReport(
        implication_violations={k: [] for k in IMPLICATIONS},
        oracle_disagreements={"upl_onestep_vs_bounded": [], "continuity_vs_connectedness": [], "continuity_vs_neighborhoods": []},
    )
    counts = rep.counts
    for X in sources:
        for Y in images:
            if len(Y) > len(X):
                continue
            for p in enumerate_maps(X, Y, continuous=True, surjective=True, cap=cap):
                rep.instances_checked += 1
                vec = _instance_vector(p)
                for k, v in vec.items():
                    if v:
                        counts[k] = counts.get(k, 0) + 1
                if vec["pl_iso"] and not vec["local_iso"]:
                    counts["pl_not_local"] = counts.get("pl_not_local", 0) + 1
                if vec["wl_iso"] and not vec["pl_iso"]:
                    counts["wl_not_pl"] = counts.get("wl_not_pl", 0) + 1
                if vec["pl_iso"] and not vec["wl_iso"]:
                    counts["pl_not_wl"] = counts.get("pl_not_wl", 0) + 1
                if vec["pak_pseudo"] and not vec["upl"]:
                    counts["pak_not_upl"] = counts.get("pak_not_upl", 0) + 1
                if len({vec[k] for k in EQUIVALENT}) != 1:
                    rep.violations.append((describe(p), {k: vec[k] for k in EQUIVALENT}))
                for name, (a, b) in IMPLICATIONS.items():
                    if vec[a] and not vec[b]:
                        rep.implication_violations[name].append(describe(p))
                if not cross_checks:
                    continue
                if upl_bounded(p, len(X) + 1).holds != vec["upl"]:
                    rep.oracle_disagreements["upl_onestep_vs_bounded"].append(describe(p))
                if not continuity_by_neighborhoods(p):
                    rep.oracle_disagreements["continuity_vs_neighborhoods"].append(describe(p))
                if len(X) <= CONNECTEDNESS_CHECK_MAX_POINTS:
                    counts["connectedness_checked"] = counts.get("connectedness_checked", 0) + 1
                    if not continuity_by_connectedness(p):
                        rep.oracle_disagreements["continuity_vs_connectedness"].append(describe(p))
    return rep


def verify_cover_equivalences(
    b: EnumBounds | None = None,
    workers: int | None = None,
    cross_checks: bool = True,
    cap: int = DEFAULT_MAP_CAP,
) -> EquivalenceReport:
    """Check that covering, local iso, Han pseudo-covering and WL-iso with UPL coincide.

    Every continuous surjection between enumerated images is examined; the
    one-directional implications and the UPL/continuity oracle cross-checks
    run on the same instances.
    """
    b = b or default_bounds()
    start = time.perf_counter()
    images = list(enumerate_images(b))
    workers = workers or default_workers()
    report = EquivalenceReport(
        image_count=len(images),
        implication_violations={k: [] for k in IMPLICATIONS},
        oracle_disagreements={"upl_onestep_vs_bounded": [], "continuity_vs_connectedness": [], "continuity_vs_neighborhoods": []},
    )
    if workers <= 1:
        report.merge(_sweep_sources((images, images, cross_checks, cap)))
    else:
        chunks = [images[i::workers * 4] for i in range(workers * 4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_sweep_sources, [(c, images, cross_checks, cap) for c in chunks if c]):
                report.merge(part)
    report.elapsed = time.perf_counter() - start
    log.info("checked %d maps over %d images in %.1fs", report.instances_checked, len(images), report.elapsed)
    return report


# ---------------------------------------------------------------- counterexamples

WANT_KEYS = {
    "continuous": "continuous",
    "isomorphism": "isomorphism",
    "wl": "wl_iso",
    "pl": "pl_iso",
    "local": "local_iso",
    "covering": "covering",
    "han": "han_pseudo",
    "pak": "pak_pseudo",
    "upl": "upl",
}


def parse_want(text: str) -> dict[str, bool]:
    """Parse "wl=true,pl=false"; "any" entries are dropped."""
    want = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, _, val = item.partition("=")
        key, val = key.strip().lower(), val.strip().lower()
        name = WANT_KEYS.get(key) or (key if key in WANT_KEYS.values() else None)
        if name is None:
            raise DigitalTopologyError(f"unknown predicate {key!r}; choose from {sorted(WANT_KEYS)}")
        if val in ("true", "t", "1", "yes"):
            want[name] = True
        elif val in ("false", "f", "0", "no"):
            want[name] = False
        elif val not in ("any", "*"):
            raise DigitalTopologyError(f"bad value {val!r} for {key}; use true, false or any")
    return want


def _matches(p: DigitalMap, want: dict[str, bool]) -> bool:
    for name, wanted in want.items():
        try:
            if CHECKERS[name](p).holds != wanted:
                return False
        except NotApplicable:
            return False
    return True


@dataclass
class Counterexample:
    source: DigitalImage
    target: DigitalImage
    map: DigitalMap
    vector: dict


def find_counterexample(
    want: dict[str, bool] | str,
    b: EnumBounds,
    target_bounds: EnumBounds | None = None,
    targets: Sequence[DigitalImage] | None = None,
    cap: int = DEFAULT_MAP_CAP,
) -> Counterexample | None:
    """First map, in enumeration order, whose predicate values match `want`.

    Sources come from `b`; targets from `targets`, else `target_bounds`,
    else `b`. The hit is re-classified from scratch before it is returned.
    """
    if isinstance(want, str):
        want = parse_want(want)
    sources = list(enumerate_images(b))
    if targets is None:
        targets = list(enumerate_images(target_bounds or b))
    for X in sources:
        for Y in targets:
            if b.require_surjective and len(Y) > len(X):
                continue
            for p in enumerate_maps(X, Y, b, cap=cap):
                if _matches(p, want):
                    vector = classify(p).vector()
                    if any(vector[k] != v for k, v in want.items()):
                        raise AssertionError(f"re-certification failed for {p}")
                    return Counterexample(X, Y, p, vector)
    return None


# ---------------------------------------------------------------- embeddings

def scc_embeds(S1: tuple[DigitalImage, Sequence[Point]], S2: tuple[DigitalImage, Sequence[Point]]) -> Verdict:
    """Is there an injection S1 -> S2 that is an isomorphism onto its image?

    Both inputs are (image, closed traversal) pairs certified as simple
    closed curves. The graph of a simple closed curve is a cycle, so by its
    rotations and reflections the first curve point may be sent to the first
    point of S2, and the second point to a neighbor on one fixed side.
    Witness: the embedding as a dict.
    """
    (X, p1), (Y, p2) = S1, S2
    for img, path in ((X, p1), (Y, p2)):
        if classify_curve(img, path) is not CurveKind.SIMPLE:
            raise DigitalTopologyError("scc_embeds needs simple closed curves")
        if set(map(tuple, path)) != img.points:
            raise DigitalTopologyError("the curve must traverse its whole image")
    c1 = [tuple(p) for p in p1[:-1]]
    c2 = [tuple(p) for p in p2[:-1]]
    if len(c1) > len(c2):
        return Verdict(False)
    assign: list[Point] = []
    used: set[Point] = set()

    def extend(i: int) -> bool:
        if i == len(c1):
            return True
        if i == 0:
            candidates = [c2[0]]
        elif i == 1:
            candidates = [c2[1]]
        else:
            candidates = sorted(Y.neighbors(assign[i - 1]))
        for y in candidates:
            if y in used:
                continue
            if all(X.adjacent(c1[i], c1[j]) == Y.adjacent(y, assign[j]) for j in range(i)):
                assign.append(y)
                used.add(y)
                if extend(i + 1):
                    return True
                assign.pop()
                used.discard(y)
        return False

    if extend(0):
        return Verdict(True, dict(zip(c1, assign)))
    return Verdict(False)
