"""(b,c)-metric spaces, collapsing maps and sampled quasi-isometry checks."""
from .errors import ConvergenceError, DomainError, EvaluationError
from .metric import (
    BcFrontier,
    BcParams,
    TripleViolation,
    as_point,
    check_semimetric,
    estimate_bc,
    euclidean,
    transfer_bc,
    verify_bc,
)
from .quasi import PairViolation, QiEstimate, QiParams, check_qi, estimate_qi, floor_map, floor_point

__version__ = "0.1.0"
