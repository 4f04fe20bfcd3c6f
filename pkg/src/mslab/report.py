"""Deterministic report bundles: JSON with sorted keys and ``%.12e`` floats, CSV traces."""
import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .inner import is_infinity

FLOAT_FMT = "%.12e"


def claim(value, module, tolerance, **extra):
    """A numeric result tagged with its module of origin and tolerance."""
    out = {"value": value, "module": module, "tolerance": tolerance}
    out.update(extra)
    return out


@dataclass
class Bundle:
    name: str
    config: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    traces: dict = field(default_factory=dict)

    def to_json(self):
        return {"scenario": self.name, "config": self.config, "results": self.results,
                "traces": {k: list(v) for k, v in self.traces.items()}}


def _fmt_float(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return FLOAT_FMT % x


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode([obj.real, obj.imag], indent, level)
    if isinstance(obj, str):
        return _quote(obj)
    if is_infinity(obj):
        return '"inf"'
    if hasattr(obj, "to_json"):
        return _encode(obj.to_json(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = sorted((str(k), v) for k, v in obj.items())
        body = (",\n").join(f"{pad}{_quote(k)}: {_encode(v, indent, level + 1)}" for k, v in items)
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        parts = [_encode(v, indent, level + 1) for v in seq]
        if all("\n" not in p for p in parts):
            return "[" + ", ".join(parts) + "]"
        return "[\n" + ",\n".join(pad + p for p in parts) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _quote(s):
    return json.dumps(s, ensure_ascii=True)


def dumps(obj, indent=1):
    """Byte-stable JSON text (sorted keys, fixed float format)."""
    return _encode(obj, indent, 0) + "\n"


def trace_csv(values):
    lines = ["index,value"]
    for i, v in enumerate(values):
        if isinstance(v, (complex, np.complexfloating)):
            v = abs(v)
        lines.append(f"{i},{_fmt_float(float(v)).strip(chr(34))}")
    return "\n".join(lines) + "\n"


def emit_report(bundle, out_dir, formats=("json", "csv")):
    """Write ``<name>.json`` and ``<name>_<trace>.csv``; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    if "json" in formats:
        p = os.path.join(out_dir, f"{bundle.name}.json")
        with open(p, "w", encoding="ascii", newline="\n") as fh:
            fh.write(dumps(bundle.to_json()))
        paths.append(p)
    if "csv" in formats:
        for key in sorted(bundle.traces):
            p = os.path.join(out_dir, f"{bundle.name}_{key}.csv")
            with open(p, "w", encoding="ascii", newline="\n") as fh:
                fh.write(trace_csv(bundle.traces[key]))
            paths.append(p)
    return paths
