"""Decision procedures for covering maps and their variants.

Neighborhoods are closed (the point plus its neighbors). Sheet searches try
every nonempty subset of a fiber as the set of sheet centers, smallest
subsets first, so witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .errors import NotApplicable
from .lattice import Point
from .lifting import upl_onestep
from .maps import DigitalMap, Verdict, is_continuous, is_isomorphism, restriction_is_isomorphism, subimages_isomorphic


@dataclass(frozen=True)
class SheetDecomposition:
    base_point: Point
    sheet_centers: tuple[Point, ...]
    sheets: tuple[frozenset, ...]


def _require_continuous(p: DigitalMap):
    v = is_continuous(p)
    if not v:
        raise NotApplicable(f"map is not continuous: {v.witness[0]} ~ {v.witness[1]}")


def _require_surjective(p: DigitalMap):
    if not p.is_surjective():
        missing = min(y for y in p.target.points if not p.fiber(y))
        raise NotApplicable(f"map is not surjective: nothing maps to {missing}")


def _wl_on(p: DigitalMap, domain: frozenset) -> bool:
    """WL condition for p restricted to the sub-image `domain`."""
    E = p.source
    for x in domain:
        if not restriction_is_isomorphism(p, (E.closed_neighborhood(x) & domain)):
            return False
    return True


def _sheet_search(
    p: DigitalMap,
    b: Point,
    sheet_ok: Callable[[frozenset, frozenset], bool],
    exact_union: bool,
) -> SheetDecomposition | None:
    """Find centers e_i in the fiber over b with pairwise disjoint sheets N(e_i).

    `sheet_ok(sheet, base_nbhd)` is the per-sheet condition. With
    `exact_union` the sheets must cover p^-1(N(b)) exactly; otherwise they
    need only lie inside it.
    """
    E = p.source
    nb = p.target.closed_neighborhood(b)
    pre = p.preimage(nb)
    good = []
    for e in p.fiber(b):
        sheet = E.closed_neighborhood(e)
        if sheet <= pre and sheet_ok(sheet, nb):
            good.append((e, sheet))
    for r in range(1, len(good) + 1):
        for combo in combinations(good, r):
            union: set = set()
            disjoint = True
            for _, sheet in combo:
                if union & sheet:
                    disjoint = False
                    break
                union |= sheet
            if not disjoint:
                continue
            if exact_union and union != pre:
                continue
            return SheetDecomposition(b, tuple(e for e, _ in combo), tuple(s for _, s in combo))
    return None


def _all_base_points(p: DigitalMap, sheet_ok, exact_union: bool) -> Verdict:
    found = []
    for b in p.target.sorted_points:
        dec = _sheet_search(p, b, sheet_ok, exact_union)
        if dec is None:
            return Verdict(False, b)
        found.append(dec)
    return Verdict(True, tuple(found))


def is_covering(p: DigitalMap) -> Verdict:
    """Covering map test. Witness: one SheetDecomposition per base point, or the failing base point."""
    _require_continuous(p)
    _require_surjective(p)
    return _all_base_points(p, lambda sheet, nb: restriction_is_isomorphism(p, sheet, nb), exact_union=True)


def is_han_pseudocovering(p: DigitalMap) -> Verdict:
    """Sheets must cover p^-1(N(b)) exactly and map into N(b) by a WL-isomorphism.

    Only surjectivity is presupposed, not continuity.
    """
    _require_surjective(p)
    return _all_base_points(p, lambda sheet, nb: _wl_on(p, sheet), exact_union=True)


def is_pak_pseudocovering(p: DigitalMap) -> Verdict:
    """Sheets inside p^-1(N(b)), each mapped isomorphically onto its own image."""
    _require_surjective(p)
    return _all_base_points(p, lambda sheet, nb: restriction_is_isomorphism(p, sheet), exact_union=False)


def is_local_isomorphism(h: DigitalMap) -> Verdict:
    """Each N(x) maps isomorphically onto N(h(x)); witness is the first failing x."""
    _require_continuous(h)
    E, B, t = h.source, h.target, h.table
    for x in E.sorted_points:
        if not restriction_is_isomorphism(h, E.closed_neighborhood(x), B.closed_neighborhood(t[x])):
            return Verdict(False, x)
    return Verdict(True)


def is_wl_isomorphism(h: DigitalMap) -> Verdict:
    """Each N(x) maps isomorphically onto its own image h(N(x))."""
    _require_continuous(h)
    for x in h.source.sorted_points:
        if not restriction_is_isomorphism(h, h.source.closed_neighborhood(x)):
            return Verdict(False, x)
    return Verdict(True)


def is_pl_isomorphism(h: DigitalMap) -> Verdict:
    """h(N(x)) and N(h(x)) are isomorphic as sub-images of the target, by any bijection."""
    _require_continuous(h)
    E, B, t = h.source, h.target, h.table
    cache: dict[tuple[frozenset, Point], bool] = {}
    for x in E.sorted_points:
        img = h.image_of(E.closed_neighborhood(x))
        key = (img, t[x])
        if key not in cache:
            nb = B.closed_neighborhood(t[x])
            cache[key] = img == nb or bool(subimages_isomorphic(B.subimage(img), B.subimage(nb)))
        if not cache[key]:
            return Verdict(False, x)
    return Verdict(True)


PREDICATES = (
    "continuous",
    "isomorphism",
    "covering",
    "local_iso",
    "pl_iso",
    "wl_iso",
    "han_pseudo",
    "pak_pseudo",
    "upl",
)

CHECKERS: dict[str, Callable[[DigitalMap], Verdict]] = {
    "continuous": is_continuous,
    "isomorphism": is_isomorphism,
    "covering": is_covering,
    "local_iso": is_local_isomorphism,
    "pl_iso": is_pl_isomorphism,
    "wl_iso": is_wl_isomorphism,
    "han_pseudo": is_han_pseudocovering,
    "pak_pseudo": is_pak_pseudocovering,
    "upl": upl_onestep,
}


@dataclass
class ClassificationReport:
    """Per-predicate verdicts; a predicate whose precondition fails maps to its NotApplicable reason."""

    results: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.results[name]

    def value(self, name) -> bool | None:
        r = self.results[name]
        return r.holds if isinstance(r, Verdict) else None

    def vector(self) -> dict[str, bool | None]:
        return {name: self.value(name) for name in PREDICATES}


def classify(p: DigitalMap, checkers: dict | None = None) -> ClassificationReport:
    report = ClassificationReport()
    for name, check in (checkers or CHECKERS).items():
        try:
            report.results[name] = check(p)
        except NotApplicable as exc:
            report.results[name] = exc
    return report
