"""Euclidean collapsing scenes and the collapsed distance."""
from .ball import ball_sigma, chord_length, sigma_distance
from .collapsed import (
    CollapsedDistanceBreakdown,
    CollapsedSpace,
    collapse_representative,
    collapsed_distance,
    in_vicinity,
    lipschitz_estimates,
    path_metric,
)
from .constants import LemmaConstants, lemma_constants, theorem2_constants, theorem2_literal_constants
from .curves import ArcLength, CurveSpec
from .scenefile import BUILTINS, SceneFormatError, load_scene, scene_from_dict
from .scenes import BallScene, StripScene, fiber_project, max_fiber_length, nearest_distance_to_set

__all__ = [
    "ArcLength",
    "BUILTINS",
    "BallScene",
    "CollapsedDistanceBreakdown",
    "CollapsedSpace",
    "CurveSpec",
    "LemmaConstants",
    "SceneFormatError",
    "StripScene",
    "ball_sigma",
    "chord_length",
    "collapse_representative",
    "collapsed_distance",
    "fiber_project",
    "in_vicinity",
    "lemma_constants",
    "lipschitz_estimates",
    "load_scene",
    "max_fiber_length",
    "nearest_distance_to_set",
    "path_metric",
    "scene_from_dict",
    "sigma_distance",
    "theorem2_constants",
    "theorem2_literal_constants",
]
