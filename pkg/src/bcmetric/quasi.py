"""Quasi-isometry constants, sandwich checks and empirical (K, C) frontiers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .errors import EvaluationError
from .metric import DistanceFunction, evaluate

PointMap = Callable[[Any], Any]


@dataclass(frozen=True)
class QiParams:
    """Constants of ``rho/K - C <= rho'(f x, f y) <= K rho + C``."""

    K: float = 1.0
    C: float = 0.0

    def __post_init__(self):
        if not (self.K >= 1.0 and math.isfinite(self.K)):
            raise ValueError(f"K must be a finite real >= 1, got {self.K}")
        if not (self.C >= 0.0 and math.isfinite(self.C)):
            raise ValueError(f"C must be a finite real >= 0, got {self.C}")

    def upper(self, rho):
        return self.K * rho + self.C

    def lower(self, rho):
        return rho / self.K - self.C


@dataclass(frozen=True)
class PairViolation:
    x: Any
    y: Any
    rho: float
    rho_image: float
    side: str  # "lower" | "upper"
    excess: float


@dataclass(frozen=True)
class QiEstimate:
    """Empirical quasi-isometry constants on a sample.

    ``frontier`` holds ``(K, least C)`` for each probed K; ``C_emp_at_K`` is
    the entry for the smallest probed K.  ``K_emp`` is the pure multiplicative
    distortion ``max(rho'/rho, rho/rho')``, i.e. the least K that works with
    C = 0 (``inf`` when some distinct pair collapses to distance zero).
    """

    K_emp: float
    C_emp_at_K: float
    frontier: tuple[tuple[float, float], ...]

    def c_at(self, K: float) -> float:
        for k, c in self.frontier:
            if k == K:
                return c
        raise KeyError(K)


def floor_map(x: float) -> int:
    return math.floor(x)


def floor_point(p) -> np.ndarray:
    """Coordinate-wise floor, for points of the real line stored as arrays."""
    return np.floor(np.asarray(p, dtype=float))


def _image_distance(f: PointMap, d_cod: DistanceFunction, x, y) -> float:
    try:
        fx, fy = f(x), f(y)
    except (ValueError, ArithmeticError) as exc:
        raise EvaluationError(f"map undefined at pair x={x!r}, y={y!r}: {exc}") from exc
    return evaluate(d_cod, fx, fy)


def pair_distances(f: PointMap, d_dom: DistanceFunction, d_cod: DistanceFunction, pairs: Sequence):
    """Arrays ``(rho, rho_image)`` over ``pairs``."""
    rho = np.array([evaluate(d_dom, x, y) for x, y in pairs], dtype=float)
    img = np.array([_image_distance(f, d_cod, x, y) for x, y in pairs], dtype=float)
    return rho, img


def sandwich_violations(rho: np.ndarray, img: np.ndarray, params: QiParams, tol: float):
    """Indices and excesses breaking either side, computed on distance arrays."""
    upper_excess = img - params.upper(rho)
    lower_excess = params.lower(rho) - img
    up = np.flatnonzero(upper_excess > tol)
    lo = np.flatnonzero(lower_excess > tol)
    return (up, upper_excess[up]), (lo, lower_excess[lo])


def check_qi(
    f: PointMap,
    d_dom: DistanceFunction,
    d_cod: DistanceFunction,
    params: QiParams,
    pairs: Sequence,
    tol: float = 1e-9,
) -> list[PairViolation]:
    pairs = list(pairs)
    rho, img = pair_distances(f, d_dom, d_cod, pairs)
    (up, up_ex), (lo, lo_ex) = sandwich_violations(rho, img, params, tol)
    out = [PairViolation(*pairs[i], rho[i], img[i], "upper", float(e)) for i, e in zip(up, up_ex)]
    out += [PairViolation(*pairs[i], rho[i], img[i], "lower", float(e)) for i, e in zip(lo, lo_ex)]
    return out


def least_C(rho: np.ndarray, img: np.ndarray, K: float) -> float:
    if rho.size == 0:
        return 0.0
    need = np.maximum(img - K * rho, rho / K - img)
    return float(max(0.0, need.max()))


def estimate_from_distances(rho: np.ndarray, img: np.ndarray, K_grid: Sequence[float]) -> QiEstimate:
    if any(not K >= 1.0 for K in K_grid):
        raise ValueError(f"every K must be >= 1, got {list(K_grid)}")
    if len(K_grid) == 0:
        raise ValueError("K_grid must not be empty")
    keep = rho > 0.0
    rho, img = rho[keep], img[keep]
    frontier = tuple((float(K), least_C(rho, img, K)) for K in sorted(K_grid))
    if rho.size == 0:
        K_emp = 1.0
    elif np.any(img <= 0.0):
        K_emp = math.inf
    else:
        # Subnormal separations can push the ratio to inf, which is the honest answer.
        with np.errstate(over="ignore"):
            K_emp = float(max(1.0, np.max(img / rho), np.max(rho / img)))
    return QiEstimate(K_emp, frontier[0][1], frontier)


def estimate_qi(
    f: PointMap,
    d_dom: DistanceFunction,
    d_cod: DistanceFunction,
    pairs: Sequence,
    K_grid: Sequence[float],
) -> QiEstimate:
    """Least C per K over the sampled pairs; coincident pairs are skipped."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("estimate_qi needs at least one pair")
    rho, img = pair_distances(f, d_dom, d_cod, pairs)
    return estimate_from_distances(rho, img, K_grid)
