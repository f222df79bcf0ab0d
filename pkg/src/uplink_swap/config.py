"""JSON configuration documents.

Keys mirror the dataclass fields and carry their unit in the name
(``altitude_m``, ``gating_window_s``, ``dark_count_rate_hz``...). Values are
SI. Unknown keys are rejected with their full dotted path. A top-level
``provenance`` object is accepted and ignored; the shipped defaults use it to
say where each number comes from.
"""
from __future__ import annotations

import dataclasses
import json
import typing
from functools import lru_cache
from importlib import resources
from typing import Any, Mapping, Optional, Union

from .errors import ConfigError
from .optimize import FreeParam, OptimizeSpec
from .scenario import ScenarioParams
from .sweep import Axis, SweepSpec

DEFAULTS_RESOURCE = "table1_defaults.json"
_DOC_KEYS = {"provenance", "schema_version"}


def _is_number(v: Any) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _dataclass_type(hint: Any) -> Optional[type]:
    if dataclasses.is_dataclass(hint):
        return hint
    for arg in typing.get_args(hint):
        if dataclasses.is_dataclass(arg):
            return arg
    return None


def _allows_none(hint: Any) -> bool:
    return typing.get_origin(hint) is Union and type(None) in typing.get_args(hint)


def to_document(obj: Any) -> Any:
    """Plain JSON-compatible structure for a (nested) parameter dataclass."""
    if dataclasses.is_dataclass(obj):
        return {f.name: to_document(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, tuple):
        return [to_document(v) for v in obj]
    return obj


def _build(cls: type, doc: Any, path: str, base: Any = None) -> Any:
    where = path or "scenario"
    if not isinstance(doc, Mapping):
        raise ConfigError(f"{where}: expected an object, got {type(doc).__name__}")
    hints = typing.get_type_hints(cls)
    names = {f.name for f in dataclasses.fields(cls)}
    updates: dict[str, Any] = {}
    for key, value in doc.items():
        kp = f"{path}.{key}" if path else key
        if key not in names:
            raise ConfigError(f"unknown key {kp!r}")
        hint = hints[key]
        sub = _dataclass_type(hint)
        if value is None:
            if not _allows_none(hint):
                raise ConfigError(f"{kp}: null not allowed")
            updates[key] = None
        elif sub is not None:
            updates[key] = _build(sub, value, kp, getattr(base, key) if base is not None else None)
        elif hint is str or typing.get_origin(hint) is typing.Literal:
            if not isinstance(value, str):
                raise ConfigError(f"{kp}: expected a string")
            updates[key] = value
        elif typing.get_origin(hint) is tuple:
            if not isinstance(value, list) or not all(_is_number(v) for v in value):
                raise ConfigError(f"{kp}: expected a list of numbers")
            updates[key] = tuple(float(v) for v in value)
        else:
            if not _is_number(value):
                raise ConfigError(f"{kp}: expected a number, got {value!r}")
            updates[key] = float(value)
    try:
        if base is None:
            return cls(**updates)
        return dataclasses.replace(base, **updates)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from None


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def defaults_text() -> str:
    return resources.files("uplink_swap.data").joinpath(DEFAULTS_RESOURCE).read_text()


@lru_cache(maxsize=1)
def default_scenario() -> ScenarioParams:
    doc = _load_json(defaults_text(), DEFAULTS_RESOURCE)
    return scenario_from_document(doc, base=ScenarioParams())


def scenario_from_document(doc: Any, base: Optional[ScenarioParams] = None) -> ScenarioParams:
    if not isinstance(doc, Mapping):
        raise ConfigError("scenario document must be an object")
    body = {k: v for k, v in doc.items() if k not in _DOC_KEYS}
    return _build(ScenarioParams, body, "", default_scenario() if base is None else base)


def _take(doc: Mapping, key: str, kind: type, default: Any = dataclasses.MISSING) -> Any:
    if key not in doc:
        if default is dataclasses.MISSING:
            raise ConfigError(f"missing required key {key!r}")
        return default
    v = doc[key]
    if kind is float:
        ok = _is_number(v)
    elif kind is int:
        ok = isinstance(v, int) and not isinstance(v, bool)
    else:
        ok = isinstance(v, kind)
    if not ok:
        raise ConfigError(f"{key}: expected {kind.__name__}")
    return float(v) if kind is float else v


def _check_keys(doc: Mapping, allowed: set[str], prefix: str = "") -> None:
    for k in doc:
        if k not in allowed and k not in _DOC_KEYS:
            raise ConfigError(f"unknown key {prefix + k!r}")


def sweep_from_document(doc: Any) -> SweepSpec:
    if not isinstance(doc, Mapping):
        raise ConfigError("sweep document must be an object")
    _check_keys(doc, {"baseline", "axes"})
    baseline = scenario_from_document(doc.get("baseline", {}))
    axes_doc = _take(doc, "axes", list)
    axes = []
    for i, ax in enumerate(axes_doc):
        where = f"axes[{i}]"
        if not isinstance(ax, Mapping):
            raise ConfigError(f"{where}: expected an object")
        _check_keys(ax, {"path", "values", "start", "stop", "step"}, where + ".")
        p = _take(ax, "path", str)
        try:
            if "values" in ax:
                vals = ax["values"]
                if not isinstance(vals, list) or not all(_is_number(v) for v in vals):
                    raise ConfigError(f"{where}.values: expected a list of numbers")
                axes.append(Axis(p, tuple(float(v) for v in vals)))
            else:
                axes.append(Axis.from_range(p, _take(ax, "start", float), _take(ax, "stop", float), _take(ax, "step", float)))
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    try:
        return SweepSpec(baseline, tuple(axes))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def optimize_from_document(doc: Any) -> OptimizeSpec:
    if not isinstance(doc, Mapping):
        raise ConfigError("optimize document must be an object")
    fields = {f.name for f in dataclasses.fields(OptimizeSpec)}
    _check_keys(doc, fields)
    baseline = scenario_from_document(doc.get("baseline", {}))
    free = []
    for i, fp in enumerate(_take(doc, "free", list)):
        where = f"free[{i}]"
        if not isinstance(fp, Mapping):
            raise ConfigError(f"{where}: expected an object")
        _check_keys(fp, {"path", "lower", "upper"}, where + ".")
        try:
            free.append(FreeParam(_take(fp, "path", str), _take(fp, "lower", float), _take(fp, "upper", float)))
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
    kwargs: dict[str, Any] = {}
    for key, kind in (
        ("objective", str), ("eta_floor", float), ("fidelity_weight", float), ("efficiency_weight", float),
        ("max_evaluations", int), ("tolerance", float), ("restarts", int), ("seed", int),
    ):
        if key in doc:
            kwargs[key] = _take(doc, key, kind)
    try:
        return OptimizeSpec(baseline, tuple(free), **kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


_PARSERS = {"scenario": scenario_from_document, "sweep": sweep_from_document, "optimize": optimize_from_document}


def parse_config(text: str, kind: str = "scenario", source: str = "<config>"):
    """Parse and validate a JSON document of the given kind."""
    if kind not in _PARSERS:
        raise ValueError(f"unknown document kind {kind!r}")
    return _PARSERS[kind](_load_json(text, source))


def serialize_scenario(p: ScenarioParams) -> str:
    return json.dumps(to_document(p), indent=2)
