import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcmetric import QiParams, check_qi, estimate_qi, euclidean, floor_map, floor_point
from bcmetric.errors import EvaluationError


def identity(x):
    return x


@pytest.mark.parametrize("x, expected", [(1.5, 1), (-0.2, -1), (3.0, 3)])
def test_floor_map(x, expected):
    assert floor_map(x) == expected
    assert isinstance(floor_map(x), int)


def test_qi_params_domain():
    with pytest.raises(ValueError):
        QiParams(0.9, 0)
    with pytest.raises(ValueError):
        QiParams(1, -1)


def floor_pairs(n=10_000, seed=1):
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-100, 100, size=(n, 2))
    return [(np.array([a]), np.array([b])) for a, b in xs]


def test_floor_is_1_1_quasi_isometry():
    assert check_qi(floor_point, euclidean, euclidean, QiParams(1, 1), floor_pairs()) == []


def test_identity_is_an_isometry(rng):
    pts = rng.normal(size=(200, 3))
    pairs = list(zip(pts[:-1], pts[1:]))
    assert check_qi(identity, euclidean, euclidean, QiParams(1, 0), pairs) == []


def test_floor_with_small_C_hand_values():
    params = QiParams(1, 0.4)
    # floor distance 1 vs rho 0.1: upper 1 <= 0.5 fails? 1 > 0.1 + 0.4, so upper side is broken.
    viol = check_qi(floor_point, euclidean, euclidean, params, [(np.array([0.9]), np.array([1.0]))])
    assert [v.side for v in viol] == ["upper"]
    assert viol[0].excess == pytest.approx(1 - 0.5)
    # floor distance 1 vs rho 1.9: 1 < 1.9 - 0.4 = 1.5, lower side broken.
    viol = check_qi(floor_point, euclidean, euclidean, params, [(np.array([0.0]), np.array([1.9]))])
    assert [v.side for v in viol] == ["lower"]
    assert viol[0].excess == pytest.approx(0.5)
    assert viol[0].rho == pytest.approx(1.9) and viol[0].rho_image == 1.0


def test_undefined_map_raises():
    def f(x):
        if x[0] > 0:
            raise ValueError("undefined")
        return x

    with pytest.raises(EvaluationError):
        check_qi(f, euclidean, euclidean, QiParams(), [(np.array([-1.0]), np.array([1.0]))])


def test_estimate_identity():
    pts = np.random.default_rng(3).normal(size=(50, 2))
    est = estimate_qi(identity, euclidean, euclidean, list(zip(pts[:-1], pts[1:])), [1])
    assert est.C_emp_at_K == 0.0 and est.K_emp == 1.0


def test_estimate_floor_against_sup_oracle():
    pairs = floor_pairs(5000, seed=2)
    est = estimate_qi(floor_point, euclidean, euclidean, pairs, [1])
    oracle = max(abs(abs(math.floor(x[0]) - math.floor(y[0])) - abs(x[0] - y[0])) for x, y in pairs)
    assert est.C_emp_at_K == pytest.approx(oracle, abs=1e-12)
    assert est.C_emp_at_K <= 1.0
    # Densifying near the integer boundaries pushes C towards 1.
    near = [(np.array([k + 1 - 1e-9]), np.array([k + 1.0])) for k in range(-5, 5)]
    dense = estimate_qi(floor_point, euclidean, euclidean, near, [1])
    assert dense.C_emp_at_K == pytest.approx(1.0, abs=1e-8)


def test_estimate_skips_coincident_pairs_and_errors():
    x = np.array([0.5])
    est = estimate_qi(floor_point, euclidean, euclidean, [(x, x)], [1, 2])
    assert est.frontier == ((1.0, 0.0), (2.0, 0.0))
    with pytest.raises(ValueError):
        estimate_qi(identity, euclidean, euclidean, [], [1])
    with pytest.raises(ValueError):
        estimate_qi(identity, euclidean, euclidean, [(x, x)], [0.5])


@given(
    xs=st.lists(st.tuples(st.floats(-50, 50), st.floats(-50, 50)), min_size=1, max_size=40),
    dK=st.floats(0, 3),
    dC=st.floats(0, 3),
)
def test_sandwich_monotone_and_round_trip(xs, dK, dC):
    pairs = [(np.array([a]), np.array([b])) for a, b in xs]
    est = estimate_qi(floor_point, euclidean, euclidean, pairs, [1.0, 1.5, 3.0])
    cs = [c for _, c in est.frontier]
    assert all(c1 >= c2 for c1, c2 in zip(cs, cs[1:]))
    for K, C in est.frontier:
        assert check_qi(floor_point, euclidean, euclidean, QiParams(K, C), pairs, tol=0.0) == []
        assert check_qi(floor_point, euclidean, euclidean, QiParams(K + dK, C + dC), pairs, tol=0.0) == []


@given(a=st.floats(-1e3, 1e3), b=st.floats(-1e3, 1e3))
def test_floor_distortion_below_one(a, b):
    gap = abs(floor_map(a) - floor_map(b))
    assert abs(gap - abs(a - b)) < 1 + 1e-12
