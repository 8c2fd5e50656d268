"""Concrete collapsible scenes in Euclidean space and nearest-point queries."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ConvergenceError, DomainError
from ..metric import as_point
from .curves import CurveSpec
from .quadrature import golden_section

Box = tuple[tuple[float, float], ...]

MEMBERSHIP_TOL = 1e-9


def check_box(box) -> Box:
    box = tuple((float(lo), float(hi)) for lo, hi in box)
    if not box:
        raise ValueError("sampling box needs at least one axis")
    for lo, hi in box:
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"degenerate or non-finite box axis [{lo}, {hi}]")
    return box


@dataclass(frozen=True)
class StripScene:
    """Vertical strip ``center(t) - below <= y <= center(t) + above`` in the plane.

    The fibers are the vertical segments of the strip and the transversal is
    the graph of ``center``.
    """

    center: CurveSpec
    half_width_below: float
    half_width_above: float
    domain_box: Box

    def __post_init__(self):
        if not (self.half_width_below > 0 and self.half_width_above > 0):
            raise ValueError("strip half widths must be positive")
        object.__setattr__(self, "domain_box", check_box(self.domain_box))
        if len(self.domain_box) != 2:
            raise ValueError("strip scenes live in the plane; domain box needs 2 axes")

    dim = 2

    def lower(self, t: float) -> float:
        return self.center.value(t) - self.half_width_below

    def upper(self, t: float) -> float:
        return self.center.value(t) + self.half_width_above

    def contains(self, x, tol: float = 0.0) -> bool:
        t, y = x[0], x[1]
        c = self.center.value(t)
        return c - self.half_width_below - tol <= y <= c + self.half_width_above + tol

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        c = self.center.values(pts[:, 0])
        return (pts[:, 1] >= c - self.half_width_below) & (pts[:, 1] <= c + self.half_width_above)

    def on_transversal(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        return abs(x[1] - self.center.value(x[0])) <= tol * max(1.0, abs(x[1]))

    def summary(self) -> dict:
        cv = self.center
        curve = {"kind": cv.kind}
        if cv.kind == "constant":
            curve["level"] = cv.level
        elif cv.kind == "sinusoid":
            curve.update(amplitude=cv.amplitude, frequency=cv.frequency, phase=cv.phase, offset=cv.offset)
        else:
            curve.update(coefficients=list(cv.coefficients))
        return {
            "type": "strip2d",
            "curve": curve,
            "half_width_below": self.half_width_below,
            "half_width_above": self.half_width_above,
            "domain": {"x": list(self.domain_box[0]), "y": list(self.domain_box[1])},
        }


@dataclass(frozen=True)
class BallScene:
    center: tuple[float, ...]
    radius: float
    domain_box: Box

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(v) for v in as_point(self.center)))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "domain_box", check_box(self.domain_box))
        if len(self.domain_box) != len(self.center):
            raise ValueError("ball domain box dimension must match its center")

    @property
    def dim(self) -> int:
        return len(self.center)

    def contains(self, x, tol: float = 0.0) -> bool:
        return float(np.linalg.norm(np.asarray(x) - self.center)) <= self.radius + tol

    def contains_many(self, pts: np.ndarray) -> np.ndarray:
        return np.linalg.norm(pts - np.asarray(self.center), axis=1) <= self.radius

    def summary(self) -> dict:
        return {
            "type": "ball",
            "dim": self.dim,
            "center": list(self.center),
            "radius": self.radius,
            "domain": [list(ax) for ax in self.domain_box],
        }


Scene = Union[StripScene, BallScene]


def max_fiber_length(scene: Scene) -> float:
    if isinstance(scene, BallScene):
        return 2.0 * scene.radius
    return scene.half_width_below + scene.half_width_above


def fiber_project(scene: StripScene, x, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """The point where the transversal crosses the fiber through ``x``."""
    x = as_point(x)
    if not scene.contains(x, tol):
        raise DomainError(f"point {x.tolist()} is not in the collapsing strip")
    return np.array([x[0], scene.center.value(x[0])])


def _strip_nearest(scene: StripScene, x: np.ndarray, step: float | None = None):
    t0, y0 = float(x[0]), float(x[1])
    c0 = scene.center.value(t0)
    if c0 - scene.half_width_below <= y0 <= c0 + scene.half_width_above:
        return 0.0, x.copy()
    # A point above the strip is nearest to the upper boundary graph and vice versa.
    shift = scene.half_width_above if y0 > c0 else -scene.half_width_below
    r0 = abs(y0 - (c0 + shift))
    curve = scene.center

    def g(t):
        dy = curve.value(t) + shift - y0
        return (t - t0) ** 2 + dy * dy

    # Any minimiser satisfies |t - t0| <= r <= r0.
    lo, hi = t0 - r0, t0 + r0
    h = step or curve.grid_spacing()
    n = max(3, int(math.ceil((hi - lo) / h)) + 1)
    ts = np.linspace(lo, hi, n)
    gv = (ts - t0) ** 2 + (curve.values(ts) + shift - y0) ** 2
    left = np.r_[True, gv[1:] <= gv[:-1]]
    right = np.r_[gv[:-1] <= gv[1:], True]
    best_t, best_g = t0, r0 * r0
    for i in np.flatnonzero(left & right):
        a, b = ts[max(i - 1, 0)], ts[min(i + 1, n - 1)]
        t, gt = golden_section(g, a, b, xtol=1e-12)
        if gt < best_g:
            best_t, best_g = t, gt
    r = math.sqrt(best_g)
    if not math.isfinite(r):
        raise ConvergenceError(f"nearest-point search produced {r} for x={x.tolist()}")
    return r, np.array([best_t, curve.value(best_t) + shift])


def _ball_nearest(ball: BallScene, x: np.ndarray):
    c = np.asarray(ball.center)
    v = x - c
    n = float(np.linalg.norm(v))
    if n <= ball.radius:
        return 0.0, x.copy()
    return n - ball.radius, c + v * (ball.radius / n)


def nearest_distance_to_set(scene, x, step: float | None = None):
    """Least distance ``r`` from ``x`` to the collapsing set and a point attaining it.

    ``scene`` may be a strip, a ball, or anything with a ``scene`` attribute
    holding one (a collapsed space).
    """
    scene = getattr(scene, "scene", scene)
    x = as_point(x)
    if isinstance(scene, BallScene):
        return _ball_nearest(scene, x)
    return _strip_nearest(scene, x, step)
