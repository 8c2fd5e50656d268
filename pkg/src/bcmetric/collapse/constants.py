"""Theoretical quasi-isometry constants for collapsing maps."""
from __future__ import annotations

from dataclasses import dataclass

from ..metric import BcParams
from ..quasi import QiParams

# Two points of one vertical fiber are at most f apart, so rho(x_S, x') <= M f + N with:
EUCLIDEAN_M = 1.0
EUCLIDEAN_N = 0.0


@dataclass(frozen=True)
class LemmaConstants:
    ratio: float  # rho_phi <= ratio * rho on the transversal
    fiber: tuple[float, float]  # rho(x', y') <= k * rho(x, y) + c on S
    upper_far: tuple[float, float]
    upper_near: tuple[float, float]
    upper_all: tuple[float, float]
    lower: tuple[float, float]  # rho / K - C <= rho_phi

    def as_dict(self) -> dict:
        return {k: list(v) if isinstance(v, tuple) else v for k, v in self.__dict__.items()}


def lemma_constants(ambient: BcParams, space, M: float = EUCLIDEAN_M, N: float = EUCLIDEAN_N) -> LemmaConstants:
    b, c = ambient.b, ambient.c
    K_L, f = space.K_L, space.f_max
    fiber_c = b * b * f + b * c + c
    return LemmaConstants(
        ratio=K_L,
        fiber=(b * b, fiber_c),
        upper_far=(b * b * K_L, K_L * fiber_c),
        upper_near=(b * b * K_L, K_L * (3 * b * b * f + b * c + c)),
        upper_all=(b * b * K_L + 1.0, fiber_c),
        # Both terms added; a larger C only weakens the lower bound.
        lower=(b**3, 2.0 * (b * M * f + N) + (c * (2 * b + 1) + 1) / (b * b)),
    )


def _sandwich_constants(ambient: BcParams, slope: float, f: float) -> QiParams:
    b, c = ambient.b, ambient.c
    K = b**3 * slope + 1.0
    return QiParams(K, K * (3 * b * b * f + b * c + c))


def theorem2_constants(ambient: BcParams, space) -> QiParams:
    """Sandwich constants with ``max(K_L, 1)`` standing in for the slope bound."""
    return _sandwich_constants(ambient, max(space.K_L, 1.0), space.f_max)


def theorem2_literal_constants(ambient: BcParams, space) -> QiParams:
    """Sandwich constants using the raw Lipschitz constant of the center curve."""
    return _sandwich_constants(ambient, space.L, space.f_max)
