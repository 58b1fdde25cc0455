"""Path lifting through a map p: E -> B and the unique path lifting property."""

from __future__ import annotations

from typing import Sequence

from .errors import DigitalTopologyError, NotApplicable, NotInImageError, OverflowCap
from .lattice import Point, is_path
from .maps import DigitalMap, Verdict, is_continuous

DEFAULT_LIFT_CAP = 10**6


def _require_continuous_surjection(p: DigitalMap, surjective: bool = True):
    v = is_continuous(p)
    if not v:
        raise NotApplicable(f"map is not continuous: {v.witness[0]} ~ {v.witness[1]}")
    if surjective and not p.is_surjective():
        raise NotApplicable("map is not surjective")


def lift_paths(p: DigitalMap, base_path: Sequence[Point], start: Point, cap: int = DEFAULT_LIFT_CAP) -> list[tuple[Point, ...]]:
    """Every path in E starting at `start` that p maps pointwise onto `base_path`.

    Stationary base steps may lift to non-stationary steps; both are enumerated.
    Raises OverflowCap rather than truncating when more than `cap` lifts exist.
    """
    _require_continuous_surjection(p, surjective=False)
    base = [tuple(b) for b in base_path]
    start = tuple(start)
    if not base:
        raise DigitalTopologyError("base path is empty")
    if not is_path(p.target, base):
        raise DigitalTopologyError("base path is not a path in the target image")
    if start not in p.source.points:
        raise NotInImageError(f"start {start} is not a point of the source image")
    if p.table[start] != base[0]:
        raise DigitalTopologyError(f"start {start} does not lie over {base[0]}")

    return _lifts(p, base, start, cap)


def _lifts(p: DigitalMap, base, start: Point, cap: int = DEFAULT_LIFT_CAP) -> list[tuple[Point, ...]]:
    E = p.source
    lifts: list[tuple[Point, ...]] = [(start,)]
    for b in base[1:]:
        fiber = set(p.fiber(b))
        nxt = []
        for lift in lifts:
            for e in sorted(E.closed_neighborhood(lift[-1]) & fiber):
                nxt.append(lift + (e,))
            if len(nxt) > cap:
                raise OverflowCap(f"more than {cap} lifts")
        lifts = nxt
        if not lifts:
            break
    return lifts


def upl_onestep(p: DigitalMap) -> Verdict:
    """One-step test: for every e and every y' in N(p(e)), exactly one e' in N(e) lies over y'.

    Witness on failure: (e, y', count).
    """
    _require_continuous_surjection(p)
    E, B, t = p.source, p.target, p.table
    for e in E.sorted_points:
        ne = E.closed_neighborhood(e)
        for y2 in sorted(B.closed_neighborhood(t[e])):
            count = sum(1 for e2 in ne if t[e2] == y2)
            if count != 1:
                return Verdict(False, (e, y2, count))
    return Verdict(True)


def _base_paths(B, start: Point, max_steps: int):
    """All paths in B from `start` with 1..max_steps steps, depth-first in sorted order."""
    stack = [(start,)]
    while stack:
        path = stack.pop()
        if len(path) > 1:
            yield path
        if len(path) <= max_steps:
            for y in sorted(B.closed_neighborhood(path[-1]), reverse=True):
                stack.append(path + (y,))


def upl_bounded(p: DigitalMap, max_steps: int, memo: bool = True) -> Verdict:
    """Exhaustive oracle: every base path of at most `max_steps` steps, from every start, lifts uniquely.

    Witness on failure: (endpoint of the unique lift of the failing path's
    prefix, last base point, number of lifts). Without `memo` every base path
    is enumerated and handed to lift_paths. With `memo` the search walks
    base paths depth-first and skips a (lift endpoint, remaining steps) state
    once verified; the lift count of any extension depends only on that state.
    """
    _require_continuous_surjection(p)
    if max_steps < 1:
        raise DigitalTopologyError("max_steps must be at least 1")
    E, B, t = p.source, p.target, p.table
    if not memo:
        for e0 in E.sorted_points:
            for path in _base_paths(B, t[e0], max_steps):
                lifts = _lifts(p, path, e0)
                if len(lifts) != 1:
                    # the prefix lifted uniquely, else the search would have stopped there
                    (prefix,) = _lifts(p, path[:-1], e0)
                    return Verdict(False, (prefix[-1], path[-1], len(lifts)))
        return Verdict(True)

    verified: set[tuple[Point, int]] = set()

    def explore(e: Point, remaining: int):
        if remaining == 0 or (e, remaining) in verified:
            return None
        for y2 in sorted(B.closed_neighborhood(t[e])):
            ends = [e2 for e2 in E.closed_neighborhood(e) if t[e2] == y2]
            if len(ends) != 1:
                return (e, y2, len(ends))
            failure = explore(ends[0], remaining - 1)
            if failure:
                return failure
        verified.add((e, remaining))
        return None

    for e0 in E.sorted_points:
        failure = explore(e0, max_steps)
        if failure:
            return Verdict(False, failure)
    return Verdict(True)


def default_max_steps(p: DigitalMap) -> int:
    return len(p.source) + 1
