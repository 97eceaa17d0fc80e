"""JSON files for systems, boxes, points and solver outcomes.

JSON has no infinities, so infinite bounds are written as the strings
``"inf"`` and ``"-inf"`` and read back as floats.
"""

import json
import math
from pathlib import Path

import numpy as np

from .interval import IntervalArray
from .system import OilsSystem, SolveOutcome

__all__ = [
    "encode_floats", "decode_floats", "box_to_json", "box_from_json",
    "system_to_json", "system_from_json", "outcome_to_json", "outcome_from_json",
    "point_from_json", "read_json", "write_json",
]


def encode_floats(values):
    """Nested lists of floats with infinities as strings."""
    if isinstance(values, np.ndarray):
        values = values.tolist()
    if isinstance(values, (list, tuple)):
        return [encode_floats(v) for v in values]
    if isinstance(values, float) and math.isinf(values):
        return "inf" if values > 0 else "-inf"
    return values


def decode_floats(values):
    if isinstance(values, list):
        return [decode_floats(v) for v in values]
    return float(values)


def box_to_json(box: IntervalArray) -> dict:
    return {"lo": encode_floats(box.lo), "hi": encode_floats(box.hi)}


def box_from_json(data) -> IntervalArray:
    return IntervalArray(np.array(decode_floats(data["lo"])), np.array(decode_floats(data["hi"])))


def system_to_json(sys: OilsSystem) -> dict:
    return {"m": sys.m, "n": sys.n, "A": box_to_json(sys.A), "b": box_to_json(sys.b),
            "meta": _plain(sys.meta)}


def system_from_json(data) -> OilsSystem:
    A = box_from_json(data["A"])
    b = box_from_json(data["b"])
    if A.shape != (data["m"], data["n"]):
        raise ValueError(f"A has shape {A.shape}, header says ({data['m']}, {data['n']})")
    return OilsSystem(A, b, dict(data.get("meta", {})))


def _plain(value):
    """Best-effort conversion of stats and metadata to JSON values."""
    if isinstance(value, IntervalArray):
        return box_to_json(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.integer, np.floating, np.bool_)):
        value = value.item()
    if isinstance(value, float) and math.isinf(value):
        return encode_floats(value)
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if hasattr(value, "__dict__") or hasattr(value, "__dataclass_fields__"):
        return None  # certificates and other rich objects are not serialized
    return str(value)


def outcome_to_json(out: SolveOutcome) -> dict:
    stats = {k: v for k, v in (_plain(out.stats) or {}).items() if v is not None}
    return {
        "kind": out.kind,
        "box": box_to_json(out.box) if out.box is not None else None,
        "reason": out.reason,
        "stats": stats,
    }


def outcome_from_json(data) -> SolveOutcome:
    box = box_from_json(data["box"]) if data.get("box") else None
    return SolveOutcome(data["kind"], box, data.get("reason"), dict(data.get("stats", {})))


def point_from_json(data) -> np.ndarray:
    """A point is a bare list of numbers or an object with key ``"x"``."""
    if isinstance(data, dict):
        data = data["x"]
    return np.array(decode_floats(data), dtype=float)


def read_json(path):
    return json.loads(Path(path).read_text())


def write_json(data, path=None):
    """Write to ``path``, or return the text when no path is given."""
    text = json.dumps(data, indent=2)
    if path is None:
        return text
    Path(path).write_text(text + "\n")
    return text
