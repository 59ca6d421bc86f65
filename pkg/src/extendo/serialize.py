"""Input loaders and canonical JSON output.

Output numbers carry 17 significant digits, so every double round-trips and
re-serialising a parsed document reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict
from pathlib import Path
from typing import Any, Optional

from .boundary import ContractSpec, DecisionBoundaries
from .errors import ContractError, CurveError, InputError
from .extendible import PriceReport
from .termstructure import MarketData, TermStructure

__all__ = [
    "dumps",
    "load_spec",
    "load_market",
    "read_curve_csv",
    "spec_to_dict",
    "market_to_dict",
    "boundaries_to_dict",
    "report_to_dict",
]


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "null"
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "__float__"):
        return _fmt_float(float(obj))
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Canonical JSON: insertion-ordered keys, 17-significant-digit floats."""
    return _encode(obj, indent, 0) + "\n"


# --- inputs ----------------------------------------------------------------


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}: invalid JSON ({exc.msg})") from None


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise InputError(f"{where}: value must be finite")
    return v


def _build_curve(rows: list[tuple[str, Any, Any]], positive: bool, what: str) -> TermStructure:
    """``rows`` holds ``(location, end_time, value)``; errors name the location."""
    if not rows:
        raise CurveError(f"{what}: curve has no segments")
    prev = 0.0
    ends, vals = [], []
    for where, t_raw, v_raw in rows:
        t = _number(t_raw, f"{where}: end_time")
        v = _number(v_raw, f"{where}: value")
        if t <= prev:
            raise CurveError(f"{where}: end_time {t!r} not strictly increasing (previous {prev!r})")
        if positive and v <= 0.0:
            raise CurveError(f"{where}: volatility {v!r} must be > 0")
        ends.append(t)
        vals.append(v)
        prev = t
    return TermStructure(tuple(ends), tuple(vals), positive=positive)


def read_curve_csv(path, positive: bool = False) -> TermStructure:
    """Curve file with header ``end_time,value``."""
    path = Path(path)
    try:
        handle = path.open(newline="")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["end_time", "value"]:
            raise CurveError(f"{path}:1: header must be 'end_time,value'")
        rows = []
        for line_no, rec in enumerate(reader, start=2):
            if not rec or all(not f.strip() for f in rec):
                continue
            if len(rec) != 2:
                raise CurveError(f"{path}:{line_no}: expected 2 fields, got {len(rec)}")
            try:
                t, v = float(rec[0]), float(rec[1])
            except ValueError:
                raise CurveError(f"{path}:{line_no}: non-numeric field in {rec!r}") from None
            rows.append((f"{path}:{line_no}", t, v))
    return _build_curve(rows, positive, str(path))


def _curve_from_json(doc: dict, key: str, path: Path, positive: bool) -> TermStructure:
    if key not in doc:
        raise InputError(f"{path}: missing '{key}'")
    entry = doc[key]
    if isinstance(entry, str):
        return read_curve_csv(path.parent / entry, positive)
    if not isinstance(entry, list):
        raise InputError(f"{path}: '{key}' must be a list of segments or a CSV path")
    rows = []
    for i, seg in enumerate(entry):
        where = f"{path}: {key}[{i}]"
        if not isinstance(seg, dict) or set(seg) != {"end_time", "value"}:
            raise InputError(f"{where}: expected {{\"end_time\": ..., \"value\": ...}}")
        rows.append((where, seg["end_time"], seg["value"]))
    return _build_curve(rows, positive, f"{path}: {key}")


def load_market(path, horizon: float = 1000.0) -> MarketData:
    """Market document: full curves, or the flat shorthand ``{spot, r, q, sigma}``."""
    path = Path(path)
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: market document must be a JSON object")
    if "spot" not in doc:
        raise InputError(f"{path}: missing 'spot'")
    spot = _number(doc["spot"], f"{path}: spot")
    if spot <= 0.0:
        raise InputError(f"{path}: spot must be > 0")
    if {"r", "q", "sigma"} <= set(doc):
        r = _number(doc["r"], f"{path}: r")
        q = _number(doc["q"], f"{path}: q")
        sigma = _number(doc["sigma"], f"{path}: sigma")
        if sigma <= 0.0:
            raise CurveError(f"{path}: sigma must be > 0")
        return MarketData.flat(spot, r, q, sigma, horizon)
    return MarketData(
        spot,
        _curve_from_json(doc, "rate", path, False),
        _curve_from_json(doc, "carry", path, False),
        _curve_from_json(doc, "vol", path, True),
    )


def load_spec(path) -> ContractSpec:
    path = Path(path)
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: contract document must be a JSON object")
    missing = [k for k in ("kind", "K1", "K2", "T1", "T2", "A") if k not in doc]
    if missing:
        raise InputError(f"{path}: missing {', '.join(missing)}")
    try:
        return ContractSpec(
            doc["kind"],
            *(_number(doc[k], f"{path}: {k}") for k in ("K1", "K2", "T1", "T2", "A")),
        )
    except ContractError as exc:
        raise ContractError(f"{path}: {exc}") from None


# --- outputs ---------------------------------------------------------------


def spec_to_dict(spec: ContractSpec) -> dict:
    return asdict(spec)


def _curve_to_list(curve: TermStructure) -> list:
    return [{"end_time": t, "value": v} for t, v in curve.segments]


def market_to_dict(market: MarketData) -> dict:
    return {
        "spot": market.spot,
        "rate": _curve_to_list(market.rate),
        "carry": _curve_to_list(market.carry),
        "vol": _curve_to_list(market.vol),
    }


def _level(x: Optional[float]):
    if x is None:
        return None
    if x == 0.0:
        return "zero"
    if x == math.inf:
        return "infinite"
    return x


def boundaries_to_dict(b: DecisionBoundaries) -> dict:
    return {
        "kind": b.kind,
        "never_extended": b.never_extended,
        "I1": _level(b.I1),
        "I2": _level(b.I2),
        "residual1": b.residual1,
        "residual2": b.residual2,
    }


def report_to_dict(r: PriceReport) -> dict:
    return {
        "kind": r.kind,
        "form": r.form,
        "price": r.price,
        "vanilla_component": r.vanilla_component,
        "terms": list(r.terms),
        "extension_probability": r.extension_probability,
        "boundaries": boundaries_to_dict(r.boundaries),
        "params": asdict(r.params),
        "constants": None if r.constants is None else asdict(r.constants),
    }
