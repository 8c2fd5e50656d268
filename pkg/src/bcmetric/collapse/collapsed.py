"""The collapsed distance on a strip scene."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..errors import DomainError
from ..metric import BcParams, as_point, euclidean
from .curves import ArcLength
from .scenes import StripScene, fiber_project, max_fiber_length, nearest_distance_to_set

VICINITY_FLAG_TOL = 1e-9


@dataclass(frozen=True)
class CollapsedDistanceBreakdown:
    rho: float
    in_vicinity: bool
    r_x: float
    r_y: float
    x_prime: np.ndarray
    y_prime: np.ndarray
    rho_p: float | None
    rho_phi: float

    @property
    def near_vicinity_boundary(self) -> bool:
        return abs(self.rho - (self.r_x + self.r_y)) < VICINITY_FLAG_TOL


class CollapsedSpace:
    """A strip scene together with everything needed to evaluate the collapsed distance.

    Nearest-point results are memoised per point, so the object is cheap to
    query repeatedly on a fixed sample.  The scene itself is immutable.
    """

    def __init__(self, scene: StripScene, ambient: BcParams = BcParams(1.0, 0.0), rtol: float = 1e-10):
        if not isinstance(scene, StripScene):
            raise TypeError("collapsed spaces are built on strip scenes")
        self.scene = scene
        self.ambient = ambient
        self.arc = ArcLength(scene.center, rtol=rtol)
        self._nearest: dict[bytes, tuple[float, np.ndarray]] = {}

    @property
    def f_max(self) -> float:
        return max_fiber_length(self.scene)

    @property
    def L(self) -> float:
        return self.scene.center.lipschitz

    @property
    def K_L(self) -> float:
        return math.sqrt(1.0 + self.L**2)

    def nearest(self, x) -> tuple[float, np.ndarray]:
        x = as_point(x)
        key = x.tobytes()
        hit = self._nearest.get(key)
        if hit is None:
            hit = nearest_distance_to_set(self.scene, x)
            self._nearest[key] = hit
        return hit

    def __call__(self, x, y) -> float:
        return collapsed_distance(self, x, y).rho_phi

    def summary(self) -> dict:
        return {
            **self.scene.summary(),
            "f_max": self.f_max,
            "L": self.L,
            "K_L": self.K_L,
            "ambient": {"b": self.ambient.b, "c": self.ambient.c},
        }


def collapse_representative(space: CollapsedSpace, x) -> np.ndarray:
    """Transversal point of the fiber through ``x`` (or through its nearest point of S)."""
    r, xs = space.nearest(x)
    return fiber_project(space.scene, xs)


def path_metric(space: CollapsedSpace, x_prime, y_prime) -> float:
    """Arc length along the transversal between two of its points."""
    for p in (x_prime, y_prime):
        if not space.scene.on_transversal(p):
            raise DomainError(f"point {np.asarray(p).tolist()} is not on the transversal")
    return space.arc.between(float(x_prime[0]), float(y_prime[0]))


def in_vicinity(space: CollapsedSpace, x, y) -> bool:
    rx, _ = space.nearest(x)
    ry, _ = space.nearest(y)
    return euclidean(x, y) > rx + ry


def collapsed_distance(space: CollapsedSpace, x, y) -> CollapsedDistanceBreakdown:
    x, y = as_point(x), as_point(y)
    rho = euclidean(x, y)
    rx, xs = space.nearest(x)
    ry, ys = space.nearest(y)
    xp = fiber_project(space.scene, xs)
    yp = fiber_project(space.scene, ys)
    if rho > rx + ry:
        rho_p = path_metric(space, xp, yp)
        return CollapsedDistanceBreakdown(rho, True, rx, ry, xp, yp, rho_p, rho_p + (rx + ry))
    return CollapsedDistanceBreakdown(rho, False, rx, ry, xp, yp, None, rho)


def lipschitz_estimates(space: CollapsedSpace, samples) -> tuple[float, float]:
    """Empirical slope bound and path-to-chord ratio over abscissae on the transversal."""
    ts = np.unique(np.asarray(samples, dtype=float).ravel())
    if ts.size < 2:
        raise ValueError("lipschitz_estimates needs at least two distinct abscissae")
    curve = space.scene.center
    ys = curve.values(ts)
    L_emp = 0.0
    K_emp = 1.0
    for i, j in combinations(range(ts.size), 2):
        dt = ts[j] - ts[i]
        dy = ys[j] - ys[i]
        L_emp = max(L_emp, abs(dy) / dt)
        chord = math.hypot(dt, dy)
        K_emp = max(K_emp, space.arc.between(ts[i], ts[j]) / chord)
    return L_emp, K_emp
