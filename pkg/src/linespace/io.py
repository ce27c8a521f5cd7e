"""File formats: structures, derived models, check reports.

All three formats are JSON with sorted keys and sorted set members, so a
value round-trips to byte-identical text.  Structure files list skew pairs
rather than incident ones because the structures of interest are
incidence-dense; every unordered pair not listed is incident, and
reflexive incidence is implicit.  Line references in reports are labels.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import IncidenceStructure, StructureError
from .labeling import GeometryModel

STRUCTURE_FORMAT = "linespace-v1"
MODEL_FORMAT = "linespace-model-v1"
REPORT_FORMAT = "linespace-report-v1"
PG3_META_FORMAT = "linespace-pg3-meta-v1"


class ParseError(StructureError):
    """Malformed or inconsistent input file."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load_json(path: Union[str, Path]) -> dict:
    text = Path(path).read_text()
    if not text.strip():
        raise ParseError(f"{path}: file is empty")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return data


def structure_to_dict(s: IncidenceStructure) -> dict:
    return {
        "format": STRUCTURE_FORMAT,
        "name": s.name,
        "lines": list(s.labels),
        "skew_pairs": [list(p) for p in s.skew_pairs()],
    }


def structure_from_dict(data: dict, source: str = "<dict>") -> IncidenceStructure:
    if data.get("format") != STRUCTURE_FORMAT:
        raise ParseError(
            f"{source}: expected format {STRUCTURE_FORMAT!r}, got {data.get('format')!r}"
        )
    lines = data.get("lines")
    if not isinstance(lines, list) or not all(isinstance(x, str) for x in lines):
        raise ParseError(f"{source}: 'lines' must be a list of strings")
    if len(set(lines)) != len(lines):
        raise ParseError(f"{source}: line labels must be unique")
    raw_pairs = data.get("skew_pairs", [])
    if not isinstance(raw_pairs, list):
        raise ParseError(f"{source}: 'skew_pairs' must be a list")
    n = len(lines)
    pairs = []
    for entry in raw_pairs:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in entry)
        ):
            raise ParseError(f"{source}: skew pair {entry!r} must be two indices")
        i, j = entry
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"{source}: skew pair {entry!r} out of range")
        if i == j:
            raise ParseError(f"{source}: line {i} cannot be skew to itself")
        pairs.append((i, j))
    try:
        s = IncidenceStructure.from_skew_pairs(
            n, pairs, labels=lines, name=str(data.get("name", ""))
        )
    except StructureError as e:
        raise ParseError(f"{source}: {e}") from None
    # Construction enforces these; assert the loaded relation anyway.
    assert s.adjacency.diagonal().all() or n == 0
    assert (s.adjacency == s.adjacency.T).all()
    return s


def save_structure(s: IncidenceStructure, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_json(structure_to_dict(s)))


def load_structure(path: Union[str, Path]) -> IncidenceStructure:
    return structure_from_dict(_load_json(path), source=str(path))


def model_to_dict(m: GeometryModel) -> dict:
    data = structure_to_dict(m.structure)
    data["format"] = MODEL_FORMAT
    data["points"] = [list(e) for e in m.points]
    data["planes"] = [list(e) for e in m.planes]
    if m.seed is None:
        data["seed"] = None
    else:
        a, b, k = m.seed
        data["seed"] = {"pair": [a, b], "class_of": k}
    return data


def model_from_dict(data: dict, source: str = "<dict>") -> GeometryModel:
    if data.get("format") != MODEL_FORMAT:
        raise ParseError(
            f"{source}: expected format {MODEL_FORMAT!r}, got {data.get('format')!r}"
        )
    inner = dict(data)
    inner["format"] = STRUCTURE_FORMAT
    s = structure_from_dict(inner, source=source)
    n = s.line_count

    def family(key):
        raw = data.get(key)
        if not isinstance(raw, list):
            raise ParseError(f"{source}: '{key}' must be a list of line index lists")
        out = []
        for element in raw:
            if not isinstance(element, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) and 0 <= v < n
                for v in element
            ):
                raise ParseError(f"{source}: bad element {element!r} in '{key}'")
            out.append(tuple(sorted(element)))
        return tuple(sorted(out))

    points = family("points")
    planes = family("planes")
    raw_seed = data.get("seed")
    seed = None
    if raw_seed is not None:
        try:
            a, b = raw_seed["pair"]
            k = raw_seed["class_of"]
        except (TypeError, KeyError):
            raise ParseError(f"{source}: bad seed {raw_seed!r}") from None
        if not all(isinstance(v, int) for v in (a, b, k)):
            raise ParseError(f"{source}: bad seed {raw_seed!r}")
        if not (0 <= a < n and 0 <= b < n and k in (0, 1)):
            raise ParseError(f"{source}: seed {raw_seed!r} out of range")
        seed = (min(a, b), max(a, b), k)
    return GeometryModel(structure=s, points=points, planes=planes, seed=seed)


def save_model(m: GeometryModel, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_json(model_to_dict(m)))


def load_model(path: Union[str, Path]) -> GeometryModel:
    return model_from_dict(_load_json(path), source=str(path))


def reports_to_dict(reports) -> dict:
    return {
        "format": REPORT_FORMAT,
        "reports": [r.to_dict() for r in reports],
    }


def save_reports(reports, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_json(reports_to_dict(reports)))


def pg3_meta_to_dict(meta) -> dict:
    return {
        "format": PG3_META_FORMAT,
        "q": meta.q,
        "line_reps": [[list(row) for row in mat] for mat in meta.line_reps],
        "point_reps": [list(v) for v in meta.point_reps],
        "plane_reps": [[list(row) for row in mat] for mat in meta.plane_reps],
    }


def save_pg3_meta(meta, path: Union[str, Path]) -> None:
    Path(path).write_text(canonical_json(pg3_meta_to_dict(meta)))
