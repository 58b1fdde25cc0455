"""Command-line interface.

Exit codes: 0 the predicate holds / something was found, 1 it fails,
2 a precondition does not hold (not applicable), 3 I/O or file errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time

from .errors import DigitalTopologyError, MapError, NotApplicable
from .files import FileFormatError, MapFile, load_labeled_image, load_map_file, resolve, to_jsonable
from .lattice import DigitalImage, Point
from .lifting import default_max_steps, lift_paths, upl_bounded
from .maps import DigitalMap
from .predicates import CHECKERS, classify
from .search import (
    EnumBounds,
    default_workers,
    describe,
    enumerate_images,
    find_counterexample,
    parse_want,
    verify_cover_equivalences,
)

EXIT_HOLDS, EXIT_FAILS, EXIT_NA, EXIT_IO = 0, 1, 2, 3

PREDICATE_NAMES = {
    "continuous": "continuous",
    "isomorphism": "isomorphism",
    "covering": "covering",
    "local-iso": "local_iso",
    "pl-iso": "pl_iso",
    "wl-iso": "wl_iso",
    "han-pseudo": "han_pseudo",
    "pak-pseudo": "pak_pseudo",
    "upl": "upl",
}


def ascii_grid(image: DigitalImage) -> str:
    """'#' for points, '.' for the rest of the bounding box; 1-D and 2-D only."""
    if not image.points or image.dim > 2:
        return f"<{len(image)} points in Z^{image.dim}>"
    pts = {p if image.dim == 2 else (p[0], 0) for p in image.points}
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    rows = []
    for y in range(max(ys), min(ys) - 1, -1):
        rows.append("".join("#" if (x, y) in pts else "." for x in range(min(xs), max(xs) + 1)))
    return "\n".join(rows)


_INT_LIST = re.compile(r"\[\s+(-?\d+(?:,\s+-?\d+)*)\s+\]")
_POINT_LIST = re.compile(r"\[\s+(\[[-\d, ]*\](?:,\s+\[[-\d, ]*\])*)\s+\]")


def _emit(obj):
    text = json.dumps(to_jsonable(obj), indent=2)
    # keep coordinate lists on one line
    text = _INT_LIST.sub(lambda m: "[" + " ".join(m.group(1).split()) + "]", text)
    # and short point sequences too
    text = _POINT_LIST.sub(lambda m: "[" + " ".join(m.group(1).split()) + "]" if len(m.group(1)) < 200 else m.group(0), text)
    print(text)


def _load(args) -> MapFile:
    mf = load_map_file(resolve(args.map))
    p = mf.map
    if args.src_adjacency or args.dst_adjacency:
        src = p.source.with_adjacency(args.src_adjacency) if args.src_adjacency else p.source
        dst = p.target.with_adjacency(args.dst_adjacency) if args.dst_adjacency else p.target
        mf = MapFile(DigitalMap(src, dst, p.table), mf.source_labels, mf.target_labels)
    if args.verbose:
        print(f"source ({mf.map.source.adjacency.name}):\n{ascii_grid(mf.map.source)}", file=sys.stderr)
        print(f"target ({mf.map.target.adjacency.name}):\n{ascii_grid(mf.map.target)}", file=sys.stderr)
    return mf


def _parse_point(token: str, labels: dict, dim: int) -> Point:
    token = token.strip()
    if token in labels:
        return labels[token]
    try:
        pt = tuple(int(c) for c in token.replace(":", " ").split())
    except ValueError:
        raise DigitalTopologyError(f"unknown point {token!r}: not a label or colon-separated coordinates") from None
    if len(pt) != dim:
        raise DigitalTopologyError(f"point {token!r} does not have {dim} coordinates")
    return pt


def _parse_points(text: str, labels: dict, dim: int) -> list[Point]:
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DigitalTopologyError(f"bad point list: {exc.msg}") from None
        return [_parse_point(":".join(map(str, i)) if isinstance(i, list) else str(i), labels, dim) for i in items]
    return [_parse_point(tok, labels, dim) for tok in text.split(",")]


def _box(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.lower().replace(",", "x").split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad box {text!r}; use e.g. 3x3") from None


def _adjs(text: str) -> tuple[str, ...]:
    return tuple(a.strip() for a in text.split(",") if a.strip())


# ---------------------------------------------------------------- commands

def cmd_check(args) -> int:
    mf = _load(args)
    p = mf.map
    name = PREDICATE_NAMES[args.predicate]
    try:
        if name == "upl":
            steps = args.max_steps or default_max_steps(p)
            verdict = upl_bounded(p, steps)
        else:
            verdict = CHECKERS[name](p)
    except NotApplicable as exc:
        if args.json:
            _emit({"predicate": args.predicate, "applicable": False, "holds": None, "reason": str(exc)})
        else:
            print(f"{args.predicate}: not applicable ({exc})")
        return EXIT_NA
    if args.json:
        _emit({"predicate": args.predicate, "applicable": True, "holds": verdict.holds, "witness": verdict.witness})
    elif verdict.holds:
        print(f"{args.predicate}: holds")
    else:
        print(f"{args.predicate}: fails; witness {json.dumps(to_jsonable(verdict.witness))}")
    return EXIT_HOLDS if verdict.holds else EXIT_FAILS


def cmd_classify(args) -> int:
    p = _load(args).map
    report = classify(p)
    out = {}
    for name, result in report.results.items():
        if isinstance(result, NotApplicable):
            out[name] = {"applicable": False, "holds": None, "reason": str(result)}
        else:
            out[name] = {"applicable": True, "holds": result.holds, "witness": result.witness}
    _emit({"map": to_jsonable(p), "predicates": out})
    return EXIT_HOLDS


def cmd_lift(args) -> int:
    mf = _load(args)
    p = mf.map
    path = _parse_points(args.path, mf.target_labels, p.target.dim)
    (start,) = _parse_points(args.start, mf.source_labels, p.source.dim)
    lifts = lift_paths(p, path, start, cap=args.cap)
    _emit({"base_path": path, "start": start, "count": len(lifts), "lifts": lifts})
    return EXIT_HOLDS if lifts else EXIT_FAILS


def _default_adjs(box) -> tuple[str, ...]:
    return ("c1", "c2") if len(box) >= 2 else ("c1",)


def _bounds(args, surjective=True, continuous=True) -> EnumBounds:
    return EnumBounds(
        args.box,
        args.max_points,
        args.adjacency or _default_adjs(args.box),
        require_connected=not args.allow_disconnected,
        require_surjective=surjective,
        require_continuous=continuous,
    )


def cmd_enumerate(args) -> int:
    images = list(enumerate_images(_bounds(args)))
    if args.count:
        _emit({"count": len(images)})
    else:
        _emit({"count": len(images), "images": images})
    return EXIT_HOLDS


def cmd_find_counterexample(args) -> int:
    want = parse_want(args.want)
    b = _bounds(args, surjective=args.surjective, continuous=not args.allow_discontinuous)
    targets = None
    target_bounds = None
    if args.target:
        targets = [load_labeled_image(resolve(t)).image for t in args.target]
    elif args.target_box:
        target_bounds = EnumBounds(
            args.target_box,
            args.target_max_points or args.max_points,
            args.target_adjacency or _default_adjs(args.target_box),
            require_connected=not args.allow_disconnected,
        )
    start = time.perf_counter()
    hit = find_counterexample(want, b, target_bounds=target_bounds, targets=targets)
    print(f"search took {time.perf_counter() - start:.2f}s", file=sys.stderr)
    if hit is None:
        _emit({"found": False, "want": want})
        return EXIT_FAILS
    _emit({"found": True, "want": want, "map": describe(hit.map), "vector": hit.vector})
    return EXIT_HOLDS


def cmd_verify_equivalences(args) -> int:
    b = _bounds(args)
    report = verify_cover_equivalences(b, workers=args.workers, cross_checks=not args.no_cross_checks)
    print(f"checked {report.instances_checked} maps in {report.elapsed:.1f}s", file=sys.stderr)
    _emit(report.to_dict())
    return EXIT_HOLDS if report.ok else EXIT_FAILS


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digicover", description="Digital covering maps and their variants.")
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", "-v", action="store_true", help="draw images as ASCII grids on stderr")

    mapargs = argparse.ArgumentParser(add_help=False)
    mapargs.add_argument("--map", required=True, help="map file, or the name of a bundled example")
    mapargs.add_argument("--src-adjacency", help="override the source adjacency (c1, 4, 8, ...)")
    mapargs.add_argument("--dst-adjacency", help="override the target adjacency")

    boundargs = argparse.ArgumentParser(add_help=False)
    boundargs.add_argument("--box", type=_box, default=(3, 3))
    boundargs.add_argument("--max-points", type=int, default=5)
    boundargs.add_argument("--adjacency", type=_adjs, help="comma-separated, default c1,c2 (c1 in Z^1)")
    boundargs.add_argument("--allow-disconnected", action="store_true")

    p = sub.add_parser("check", parents=[common, mapargs], help="decide one predicate")
    p.add_argument("--predicate", required=True, choices=sorted(PREDICATE_NAMES))
    p.add_argument("--max-steps", type=int, help="path length bound for upl (default |E|+1)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common, mapargs], help="evaluate every predicate")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lift", parents=[common, mapargs], help="enumerate lifts of a base path")
    p.add_argument("--path", required=True, help='comma-separated labels or coordinates ("t0,t3", "0:0,1:0") or a JSON list')
    p.add_argument("--start", required=True)
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("enumerate", parents=[common, boundargs], help="list images up to translation")
    p.add_argument("--count", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("find-counterexample", parents=[common, boundargs], help="search for a map with given predicate values")
    p.add_argument("--want", required=True, help="e.g. wl=true,pl=false")
    p.add_argument("--surjective", action="store_true", help="only surjective maps")
    p.add_argument("--allow-discontinuous", action="store_true")
    p.add_argument("--target", action="append", help="fixed target image file (repeatable)")
    p.add_argument("--target-box", type=_box)
    p.add_argument("--target-max-points", type=int)
    p.add_argument("--target-adjacency", type=_adjs)
    p.set_defaults(func=cmd_find_counterexample)

    p = sub.add_parser("verify-equivalences", parents=[common, boundargs], help="sweep continuous surjections")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default $DIGICOVER_WORKERS or 1)")
    p.add_argument("--no-cross-checks", action="store_true")
    p.set_defaults(func=cmd_verify_equivalences)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "workers", None) is None and hasattr(args, "workers"):
        args.workers = default_workers()
    try:
        return args.func(args)
    except (OSError, FileFormatError, MapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DigitalTopologyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NA


if __name__ == "__main__":
    sys.exit(main())
