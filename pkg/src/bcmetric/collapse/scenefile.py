"""Scene documents (JSON) and the builtin named scenes."""
from __future__ import annotations

import json
import math
from pathlib import Path

from .curves import CurveSpec
from .scenes import BallScene, StripScene

DEFAULT_BOX = ((-30.0, 30.0), (-30.0, 30.0))
AXES = "xyzw"


class SceneFormatError(ValueError):
    """Malformed scene document; the message names the offending field."""


def _num(doc: dict, key: str, where: str, default=None) -> float:
    if key not in doc:
        if default is None:
            raise SceneFormatError(f"{where}.{key}: required field is missing")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SceneFormatError(f"{where}.{key}: expected a finite number, got {v!r}")
    return float(v)


def _interval(v, where: str) -> tuple[float, float]:
    if not (isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(e, (int, float)) for e in v)):
        raise SceneFormatError(f"{where}: expected [lo, hi], got {v!r}")
    lo, hi = float(v[0]), float(v[1])
    if not lo < hi:
        raise SceneFormatError(f"{where}: lo must be below hi, got {v!r}")
    return lo, hi


def _domain(doc: dict, dim: int) -> tuple[tuple[float, float], ...]:
    if "domain" not in doc:
        raise SceneFormatError("domain: required field is missing")
    dom = doc["domain"]
    if isinstance(dom, dict):
        axes = AXES[:dim]
        missing = [a for a in axes if a not in dom]
        if missing:
            raise SceneFormatError(f"domain.{missing[0]}: required axis is missing")
        return tuple(_interval(dom[a], f"domain.{a}") for a in axes)
    if isinstance(dom, list) and len(dom) == dim:
        return tuple(_interval(v, f"domain[{i}]") for i, v in enumerate(dom))
    raise SceneFormatError(f"domain: expected an object keyed by axis or a list of {dim} intervals")


def _curve(doc, box) -> CurveSpec:
    if not isinstance(doc, dict):
        raise SceneFormatError("curve: expected an object")
    kind = doc.get("kind")
    if kind == "constant":
        return CurveSpec.constant(_num(doc, "level", "curve", 0.0))
    if kind == "sinusoid":
        return CurveSpec.sinusoid(
            _num(doc, "amplitude", "curve", 1.0),
            _num(doc, "frequency", "curve", 1.0),
            _num(doc, "phase", "curve", 0.0),
            _num(doc, "offset", "curve", 0.0),
        )
    if kind == "polynomial":
        coefs = doc.get("coefficients")
        if not (isinstance(coefs, list) and coefs and all(isinstance(c, (int, float)) for c in coefs)):
            raise SceneFormatError("curve.coefficients: expected a non-empty list of numbers")
        return CurveSpec.polynomial(coefs, box[0])
    raise SceneFormatError(f"curve.kind: expected constant, sinusoid or polynomial, got {kind!r}")


def scene_from_dict(doc: dict):
    if not isinstance(doc, dict):
        raise SceneFormatError("scene document must be an object")
    kind = doc.get("type")
    if kind == "strip2d":
        box = _domain(doc, 2)
        below = _num(doc, "half_width_below", "scene")
        above = _num(doc, "half_width_above", "scene")
        if below <= 0 or above <= 0:
            raise SceneFormatError("half_width_below/half_width_above: must be positive")
        return StripScene(_curve(doc.get("curve"), box), below, above, box)
    if kind == "ball":
        dim = doc.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise SceneFormatError(f"dim: expected a positive integer, got {dim!r}")
        center = doc.get("center")
        if not (isinstance(center, list) and len(center) == dim):
            raise SceneFormatError(f"center: expected a list of {dim} numbers")
        radius = _num(doc, "radius", "scene")
        if radius <= 0:
            raise SceneFormatError("radius: must be positive")
        return BallScene(tuple(center), radius, _domain(doc, dim))
    raise SceneFormatError(f"type: expected 'strip2d' or 'ball', got {kind!r}")


BUILTINS = {
    "sine_strip": {
        "type": "strip2d",
        "curve": {"kind": "sinusoid", "amplitude": 1.0, "frequency": 1.0, "phase": 0.0, "offset": 0.0},
        "half_width_below": 1.0,
        "half_width_above": 1.0,
        "domain": {"x": [-30.0, 30.0], "y": [-30.0, 30.0]},
    },
    "flat_strip": {
        "type": "strip2d",
        "curve": {"kind": "constant", "level": 0.0},
        "half_width_below": 1.0,
        "half_width_above": 1.0,
        "domain": {"x": [-30.0, 30.0], "y": [-30.0, 30.0]},
    },
    # cos(2t) written as a phase-shifted sine, inside a strip of total width 4.
    "cos2x_strip": {
        "type": "strip2d",
        "curve": {"kind": "sinusoid", "amplitude": 1.0, "frequency": 2.0, "phase": math.pi / 2, "offset": 0.0},
        "half_width_below": 2.0,
        "half_width_above": 2.0,
        "domain": {"x": [-30.0, 30.0], "y": [-30.0, 30.0]},
    },
    "unit_ball": {
        "type": "ball",
        "dim": 2,
        "center": [0.0, 0.0],
        "radius": 1.0,
        "domain": {"x": [-30.0, 30.0], "y": [-30.0, 30.0]},
    },
}
ALIASES = {"ball": "unit_ball"}


def load_scene(ref: str):
    """Resolve a builtin scene name or read a JSON scene file."""
    name = ALIASES.get(ref, ref)
    if name in BUILTINS:
        return scene_from_dict(BUILTINS[name])
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read scene file {ref!r}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneFormatError(f"{ref}: not valid JSON ({exc})") from exc
    return scene_from_dict(doc)
