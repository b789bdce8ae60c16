"""JSON document formats for models, maps, chains and correspondences.

Model::

    {"name": str, "points": [str], "opens": [[str]] | "subbasis": [[str]] | "edges": [[str, str]],
     "regime": "classical" | "paraconsistent" | "paracomplete", "valuation": {atom: [str]}}

``edges`` imports a Kripke frame (classical regime only).  Map files hold
``{"from": path, "to": path, "mapping": {str: str}}`` and chain files
``{"source": path, "target": path, "maps": [mapping, ...]}``; paths are
relative to the referencing file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .bisim import KripkeModel, import_kripke
from .errors import InputError
from .homotopy import HomotopyChain
from .mappings import PointMap
from .semantics import TopoModel, new_model
from .topology import generate_from_subbasis, validate


class FileFormatError(InputError):
    code = "FileFormatError"


def read_json(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path.name}: invalid JSON at line {e.lineno}, col {e.colno}") from None
    if not isinstance(data, dict):
        raise FileFormatError(f"{path.name}: top level must be an object")
    return data


def _str_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FileFormatError(f"{what} must be a list of strings")
    return value


def _family(value, what: str) -> list[list[str]]:
    if not isinstance(value, list):
        raise FileFormatError(f"{what} must be a list of point lists")
    return [_str_list(v, what) for v in value]


def model_from_dict(data: dict, default_name: str = "") -> TopoModel:
    name = data.get("name", default_name)
    points = _str_list(data.get("points"), "points")
    valuation = data.get("valuation", {})
    if not isinstance(valuation, dict):
        raise FileFormatError("valuation must be an object")
    valuation = {a: _str_list(v, f"valuation[{a}]") for a, v in valuation.items()}
    regime = data.get("regime", "classical")
    if regime not in ("classical", "paraconsistent", "paracomplete"):
        raise FileFormatError(f"unknown regime {regime!r}")
    keys = [k for k in ("opens", "subbasis", "edges") if k in data]
    if len(keys) != 1:
        raise FileFormatError("give exactly one of opens, subbasis, edges")
    if keys[0] == "edges":
        if regime != "classical":
            raise FileFormatError("Kripke frames import into the classical regime only")
        edges = _family(data["edges"], "edges")
        if any(len(e) != 2 for e in edges):
            raise FileFormatError("each edge is a [from, to] pair")
        return import_kripke(KripkeModel(tuple(points), tuple(map(tuple, edges)), valuation, name))
    if keys[0] == "opens":
        T = validate(points, _family(data["opens"], "opens"))
    else:
        T = generate_from_subbasis(points, _family(data["subbasis"], "subbasis"))
    return new_model(T, regime, valuation, name)


def load_model(path: str | Path) -> TopoModel:
    path = Path(path)
    return model_from_dict(read_json(path), path.stem)


def _ref(base: Path, data: dict, key: str) -> Path:
    value = data.get(key)
    if not isinstance(value, str):
        raise FileFormatError(f"{key} must be a path string")
    return base.parent / value


def _mapping(value) -> dict[str, str]:
    if not isinstance(value, dict) or not all(isinstance(k, str) and isinstance(v, str) for k, v in value.items()):
        raise FileFormatError("mapping must be an object of point labels")
    return value


def load_map(path: str | Path) -> PointMap:
    path = Path(path)
    data = read_json(path)
    source = load_model(_ref(path, data, "from"))
    target = load_model(_ref(path, data, "to"))
    return PointMap.from_labels(source, target.topology, _mapping(data.get("mapping")))


def load_map_models(path: str | Path) -> tuple[PointMap, TopoModel]:
    """The map together with the full target model (valuation included)."""
    path = Path(path)
    data = read_json(path)
    source = load_model(_ref(path, data, "from"))
    target = load_model(_ref(path, data, "to"))
    return PointMap.from_labels(source, target.topology, _mapping(data.get("mapping"))), target


def load_chain(path: str | Path) -> HomotopyChain:
    path = Path(path)
    data = read_json(path)
    source = load_model(_ref(path, data, "source"))
    target = load_model(_ref(path, data, "target"))
    maps = data.get("maps")
    if not isinstance(maps, list) or not maps:
        raise FileFormatError("maps must be a nonempty list of mappings")
    return HomotopyChain(
        source, target.topology, tuple(PointMap.from_labels(source, target.topology, _mapping(m)) for m in maps)
    )


def load_correspondence(path: str | Path) -> dict[str, str]:
    data = read_json(path)
    return _mapping(data.get("mapping", data))
