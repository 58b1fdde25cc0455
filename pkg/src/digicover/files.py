"""JSON image and map files, plus the bundled example corpus.

Image file::

    {"dim": 2, "adjacency": "c1", "points": [[0, 0], [1, 0]], "labels": {"a": [0, 0]}}

Map file::

    {"source": <image or relative path>, "target": <image or relative path>,
     "pairs": [[[0, 0], [0, 0]], ...]}

`labels` is optional and only used to name points on the command line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import DigitalTopologyError, MapError
from .lattice import Adjacency, DigitalImage, Point
from .maps import DigitalMap, Verdict
from .predicates import SheetDecomposition


class FileFormatError(DigitalTopologyError):
    pass


@dataclass
class LabeledImage:
    image: DigitalImage
    labels: dict[str, Point] = field(default_factory=dict)


@dataclass
class MapFile:
    map: DigitalMap
    source_labels: dict[str, Point] = field(default_factory=dict)
    target_labels: dict[str, Point] = field(default_factory=dict)


def _point(value: Any, dim: int, where: str) -> Point:
    if not isinstance(value, list) or len(value) != dim or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in value
    ):
        raise FileFormatError(f"{where}: expected a list of {dim} integers, got {value!r}")
    return tuple(value)


def parse_image(obj: Any, where: str = "image") -> LabeledImage:
    if not isinstance(obj, dict):
        raise FileFormatError(f"{where}: expected an object")
    for key in ("dim", "adjacency", "points"):
        if key not in obj:
            raise FileFormatError(f"{where}: missing field {key!r}")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FileFormatError(f"{where}.dim: expected a positive integer, got {dim!r}")
    try:
        adj = Adjacency.parse(str(obj["adjacency"]), dim)
    except DigitalTopologyError as exc:
        raise FileFormatError(f"{where}.adjacency: {exc}") from None
    if not isinstance(obj["points"], list):
        raise FileFormatError(f"{where}.points: expected a list")
    pts = [_point(v, dim, f"{where}.points[{i}]") for i, v in enumerate(obj["points"])]
    if len(set(pts)) != len(pts):
        raise FileFormatError(f"{where}.points: duplicate point")
    image = DigitalImage(frozenset(pts), adj)
    labels = {}
    raw = obj.get("labels", {})
    if not isinstance(raw, dict):
        raise FileFormatError(f"{where}.labels: expected an object")
    for name, v in raw.items():
        pt = _point(v, dim, f"{where}.labels[{name!r}]")
        if pt not in image.points:
            raise FileFormatError(f"{where}.labels[{name!r}]: {pt} is not a point of the image")
        labels[name] = pt
    return LabeledImage(image, labels)


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_labeled_image(path) -> LabeledImage:
    return parse_image(_read_json(Path(path)), str(path))


def load_image(path) -> DigitalImage:
    return load_labeled_image(path).image


def parse_map(obj: Any, base_dir: Path | None = None, where: str = "map") -> MapFile:
    if not isinstance(obj, dict):
        raise FileFormatError(f"{where}: expected an object")
    sides = {}
    for key in ("source", "target"):
        if key not in obj:
            raise FileFormatError(f"{where}: missing field {key!r}")
        ref = obj[key]
        if isinstance(ref, str):
            sides[key] = load_labeled_image((base_dir or Path.cwd()) / ref)
        else:
            sides[key] = parse_image(ref, f"{where}.{key}")
    src, dst = sides["source"].image, sides["target"].image
    if not isinstance(obj.get("pairs"), list):
        raise FileFormatError(f"{where}.pairs: expected a list")
    table = {}
    for i, pair in enumerate(obj["pairs"]):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise FileFormatError(f"{where}.pairs[{i}]: expected [source point, target point]")
        x = _point(pair[0], src.dim, f"{where}.pairs[{i}][0]")
        y = _point(pair[1], dst.dim, f"{where}.pairs[{i}][1]")
        if x in table:
            raise FileFormatError(f"{where}.pairs[{i}]: {x} is listed twice")
        table[x] = y
    try:
        p = DigitalMap(src, dst, table)
    except DigitalTopologyError as exc:
        raise MapError(f"{where}.pairs: {exc}") from None
    return MapFile(p, sides["source"].labels, sides["target"].labels)


def load_map_file(path) -> MapFile:
    path = Path(path)
    return parse_map(_read_json(path), path.parent, str(path))


def load_map(path) -> DigitalMap:
    return load_map_file(path).map


# ---------------------------------------------------------------- writing

def _dump(value) -> str:
    return json.dumps(value)


def _image_fields(image: DigitalImage, labels: dict | None) -> list[tuple[str, str]]:
    fields = [
        ("dim", _dump(image.dim)),
        ("adjacency", _dump(image.adjacency.name)),
        ("points", _dump([list(p) for p in image.sorted_points])),
    ]
    if labels:
        fields.append(("labels", _dump({k: list(v) for k, v in sorted(labels.items())})))
    return fields


def dumps_image(image: DigitalImage, labels: dict | None = None) -> str:
    """Canonical text: sorted points, normalized adjacency name, sorted labels."""
    body = ",\n".join(f'  "{k}": {v}' for k, v in _image_fields(image, labels))
    return "{\n" + body + "\n}\n"


def dumps_map(p: DigitalMap, source_labels: dict | None = None, target_labels: dict | None = None) -> str:
    def inline(image, labels):
        return "{" + ", ".join(f'"{k}": {v}' for k, v in _image_fields(image, labels)) + "}"

    pairs = ",\n".join(f"    {_dump([list(x), list(p.table[x])])}" for x in p.source.sorted_points)
    return (
        "{\n"
        f'  "source": {inline(p.source, source_labels)},\n'
        f'  "target": {inline(p.target, target_labels)},\n'
        '  "pairs": [\n' + pairs + "\n  ]\n}\n"
    )


def save_image(image: DigitalImage, path, labels: dict | None = None):
    Path(path).write_text(dumps_image(image, labels), encoding="utf-8")


def save_map(mf: MapFile | DigitalMap, path):
    if isinstance(mf, DigitalMap):
        mf = MapFile(mf)
    Path(path).write_text(dumps_map(mf.map, mf.source_labels, mf.target_labels), encoding="utf-8")


# ---------------------------------------------------------------- bundled corpus

CORPUS = ("han_4_3_4", "inclusion", "fold", "wrap", "pathwrap")


def bundled_path(name: str) -> Path:
    data = resources.files("digicover") / "data"
    for candidate in (name, f"{name}.map.json", f"{name}.image.json"):
        path = data / candidate
        if path.is_file():
            return Path(str(path))
    raise FileNotFoundError(f"no bundled file named {name!r}")


def resolve(path_or_name) -> Path:
    """A filesystem path if it exists, otherwise a bundled corpus entry."""
    path = Path(path_or_name)
    if path.exists():
        return path
    try:
        return bundled_path(str(path_or_name))
    except FileNotFoundError:
        raise FileNotFoundError(f"{path_or_name}: no such file or bundled example") from None


# ---------------------------------------------------------------- JSON output

def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Verdict):
        return {"holds": obj.holds, "witness": to_jsonable(obj.witness)}
    if isinstance(obj, SheetDecomposition):
        return {
            "base_point": list(obj.base_point),
            "sheet_centers": [list(e) for e in obj.sheet_centers],
            "sheets": [sorted(list(x) for x in s) for s in obj.sheets],
        }
    if isinstance(obj, DigitalImage):
        return {"dim": obj.dim, "adjacency": obj.adjacency.name, "points": [list(p) for p in obj.sorted_points]}
    if isinstance(obj, DigitalMap):
        return {
            "source": to_jsonable(obj.source),
            "target": to_jsonable(obj.target),
            "pairs": [[list(x), list(obj.table[x])] for x in obj.source.sorted_points],
        }
    if isinstance(obj, dict):
        if all(isinstance(k, str) for k in obj):
            return {k: to_jsonable(v) for k, v in obj.items()}
        return [[to_jsonable(k), to_jsonable(v)] for k, v in sorted(obj.items())]
    if isinstance(obj, (frozenset, set)):
        return [to_jsonable(v) for v in sorted(obj)]
    if isinstance(obj, (tuple, list)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, BaseException):
        return str(obj)
    return obj
