"""Deterministic JSON text for exports, API bodies, and content digests.

Every float is rendered with six significant digits so that repeated runs
over the same corpus produce byte-identical documents. Dict key order is
preserved as constructed; digest helpers sort keys instead so a digest does
not depend on construction order.
"""
from __future__ import annotations

import hashlib
import json
import math
from typing import Any

FLOAT_DIGITS = 6


def format_float(value: float) -> str:
    """Render a float with six significant digits ("%.6g", no negative zero)."""
    if not math.isfinite(value):
        raise ValueError(f"non-finite value not representable: {value!r}")
    text = f"{value:.{FLOAT_DIGITS}g}"
    if text == "-0":
        text = "0"
    return text


def _stabilize(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, float):
        # Round to the 6-significant-digit value; json.dumps then emits its
        # shortest round-tripping repr, which is stable across platforms.
        # (json's encoder calls float.__repr__ directly, so a __repr__
        # override on a float subclass would be bypassed.)
        return float(format_float(obj))
    if isinstance(obj, dict):
        return {key: _stabilize(val) for key, val in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stabilize(val) for val in obj]
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def canonical_dumps(obj: Any, *, indent: int | None = None, sort_keys: bool = False) -> str:
    """Serialize with stable float formatting and fixed separators."""
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(
        _stabilize(obj),
        ensure_ascii=False,
        indent=indent,
        separators=separators,
        sort_keys=sort_keys,
    )


def content_digest(obj: Any) -> str:
    """SHA-256 hex digest of the key-sorted canonical serialization."""
    text = canonical_dumps(obj, sort_keys=True)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
