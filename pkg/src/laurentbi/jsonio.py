"""Canonical JSON: sorted keys, 2-space indent, floats with 17 significant digits."""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from .scalars import rational_str
from .series import LaurentSeries


def _float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x + 0.0, ".17g")  # folds -0.0 into 0


def _emit(obj, indent: int, out: list):
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(rational_str(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj)
        for i, k in enumerate(keys):
            out.append(f"{pad}  {json.dumps(str(k))}: ")
            _emit(obj[k], indent + 1, out)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            out.append("[")
            for i, v in enumerate(obj):
                _emit(v, indent, out)
                if i < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad + "  ")
            _emit(v, indent + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def canonical_dumps(obj) -> str:
    out: list[str] = []
    _emit(obj, 0, out)
    return "".join(out) + "\n"


def loads(text: str):
    return json.loads(text)


def write_json(path, obj):
    text = canonical_dumps(obj)
    if path is None or str(path) == "-":
        return text
    Path(path).write_text(text)
    return text


def read_json(path):
    return json.loads(Path(path).read_text())


def series_artifact(series: LaurentSeries, meta: dict | None = None) -> dict:
    obj = series.to_json_obj()
    if meta is not None:
        obj["meta"] = meta
    return obj


def load_series_artifact(obj) -> tuple[LaurentSeries, dict | None]:
    return LaurentSeries.from_json_obj(obj), obj.get("meta")
