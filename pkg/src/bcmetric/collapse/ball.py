"""Collapsing a closed ball to a point: chord lengths and the quotient distance."""
from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..metric import as_point, euclidean
from .scenes import BallScene

OUTSIDE_TOL = 1e-9


def chord_length(ball: BallScene, x, y) -> float:
    """Length of the part of segment ``[x, y]`` lying in the ball."""
    x, y = as_point(x), as_point(y)
    c = np.asarray(ball.center)
    for p in (x, y):
        if np.linalg.norm(p - c) < ball.radius - OUTSIDE_TOL:
            raise DomainError(f"point {p.tolist()} is strictly inside the ball")
    length = euclidean(x, y)
    if length == 0.0:
        raise ValueError("chord length is undefined for a degenerate segment (x == y)")
    # Unit direction avoids squaring tiny separations.
    u = (y - x) / length
    f = x - c
    half_b = float(f @ u)
    disc = half_b * half_b - (float(f @ f) - ball.radius**2)
    if disc <= 0.0:
        return 0.0
    s = math.sqrt(disc)
    t1 = max(-half_b - s, 0.0)
    t2 = min(-half_b + s, length)
    if t2 <= t1:
        return 0.0
    return min(t2 - t1, 2.0 * ball.radius)


def ball_sigma(ball: BallScene, x, y) -> float:
    return max(0.0, euclidean(x, y) - chord_length(ball, x, y))


def sigma_distance(ball: BallScene):
    """``ball_sigma`` as a distance function, zero on coincident points."""

    def sigma(x, y) -> float:
        if np.array_equal(np.asarray(x), np.asarray(y)):
            return 0.0
        return ball_sigma(ball, x, y)

    return sigma
