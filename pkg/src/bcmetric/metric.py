"""Semi-metrics, b-metrics and (b,c)-metrics on finite samples.

A distance function here is any callable ``d(x, y) -> float``.  Nothing is
assumed about it beyond being total on the points it is given; the checkers
below report which axioms fail on a sample rather than trusting the caller.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .errors import EvaluationError

Point = np.ndarray
DistanceFunction = Callable[[Any, Any], float]


def as_point(coords) -> Point:
    """Coerce ``coords`` to a 1-D float array, rejecting NaN/inf and empty input."""
    p = np.atleast_1d(np.asarray(coords, dtype=float))
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"a point needs at least one coordinate, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError(f"point has non-finite coordinates: {p}")
    return p


def euclidean(x, y) -> float:
    diff = np.atleast_1d(np.subtract(x, y, dtype=float))
    return math.hypot(*diff.tolist())


@dataclass(frozen=True)
class BcParams:
    """Constants of the relaxed triangle inequality ``d(x,z) <= b(d(x,y)+d(y,z)) + c``."""

    b: float = 1.0
    c: float = 0.0

    def __post_init__(self):
        if not (self.b >= 1.0 and math.isfinite(self.b)):
            raise ValueError(f"b must be a finite real >= 1, got {self.b}")
        if not (self.c >= 0.0 and math.isfinite(self.c)):
            raise ValueError(f"c must be a finite real >= 0, got {self.c}")

    def bound(self, dxy: float, dyz: float) -> float:
        return self.b * (dxy + dyz) + self.c


@dataclass(frozen=True)
class AxiomViolation:
    kind: str  # "negative" | "asymmetric" | "nonzero_diagonal"
    x: Any
    y: Any
    value: float


@dataclass(frozen=True)
class TripleViolation:
    x: Any
    y: Any
    z: Any
    lhs: float
    rhs: float

    @property
    def deficit(self) -> float:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class BcFrontier:
    entries: tuple[tuple[float, float], ...]

    def entry(self, b: float) -> BcParams:
        for bb, c in self.entries:
            if bb == b:
                return BcParams(bb, c)
        raise KeyError(b)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def evaluate(d: DistanceFunction, x, y) -> float:
    """Call ``d`` and insist on a finite real result."""
    value = float(d(x, y))
    if not math.isfinite(value):
        raise EvaluationError(f"distance is not finite ({value}) for pair x={x!r}, y={y!r}")
    return value


def check_semimetric(
    d: DistanceFunction,
    pts: Sequence,
    tol: float = 1e-9,
    pairs: Iterable[tuple[Any, Any]] | None = None,
) -> list[AxiomViolation]:
    """Check non-negativity, symmetry and zero self-distance on a sample.

    All unordered pairs of ``pts`` are checked unless ``pairs`` is given, in
    which case only those pairs (plus the diagonal of ``pts``) are examined.
    """
    if len(pts) == 0:
        raise ValueError("check_semimetric needs at least one point")
    if tol < 0:
        raise ValueError("tol must be non-negative")
    out: list[AxiomViolation] = []
    for x in pts:
        dxx = evaluate(d, x, x)
        if dxx > tol:
            out.append(AxiomViolation("nonzero_diagonal", x, x, dxx))
    for x, y in combinations(pts, 2) if pairs is None else pairs:
        dxy = evaluate(d, x, y)
        dyx = evaluate(d, y, x)
        if dxy < -tol:
            out.append(AxiomViolation("negative", x, y, dxy))
        if dyx < -tol:
            out.append(AxiomViolation("negative", y, x, dyx))
        if abs(dxy - dyx) > tol:
            out.append(AxiomViolation("asymmetric", x, y, dxy - dyx))
    return out


def verify_bc(
    d: DistanceFunction,
    params: BcParams,
    triples: Iterable[tuple[Any, Any, Any]],
    tol: float = 1e-9,
) -> list[TripleViolation]:
    """Return every triple with ``d(x,z) > b(d(x,y)+d(y,z)) + c + tol``."""
    out = []
    for x, y, z in triples:
        lhs = evaluate(d, x, z)
        rhs = params.bound(evaluate(d, x, y), evaluate(d, y, z))
        if lhs > rhs + tol:
            out.append(TripleViolation(x, y, z, lhs, rhs))
    return out


def triple_distances(d: DistanceFunction, triples: Sequence) -> np.ndarray:
    """Rows of ``(d(x,z), d(x,y), d(y,z))`` for each triple."""
    return np.array(
        [(evaluate(d, x, z), evaluate(d, x, y), evaluate(d, y, z)) for x, y, z in triples],
        dtype=float,
    ).reshape(-1, 3)


def least_c(dists: np.ndarray, b: float) -> float:
    lhs, dxy, dyz = dists.T
    return float(max(0.0, np.max(lhs - b * (dxy + dyz))))


def estimate_bc(d: DistanceFunction, triples: Sequence, b_grid: Sequence[float]) -> BcFrontier:
    """Least additive slack ``c`` for each multiplicative slack ``b`` in ``b_grid``."""
    triples = list(triples)
    if not triples:
        raise ValueError("estimate_bc needs at least one triple")
    if any(not b >= 1.0 for b in b_grid):
        raise ValueError(f"every b must be >= 1, got {list(b_grid)}")
    dists = triple_distances(d, triples)
    return BcFrontier(tuple((float(b), least_c(dists, b)) for b in sorted(b_grid)))


def transfer_bc(source: BcParams, qi) -> BcParams:
    """(b,c) constants carried to the image of a (K,C)-quasi-isometry.

    ``b' = b K^2`` and ``c' = 2 b C K^2 + K c + C``.
    """
    K, C = qi.K, qi.C
    if not (K >= 1.0 and C >= 0.0):
        raise ValueError(f"quasi-isometry constants need K >= 1, C >= 0, got K={K}, C={C}")
    b, c = source.b, source.c
    return BcParams(b * K * K, 2.0 * b * C * K * K + K * c + C)
