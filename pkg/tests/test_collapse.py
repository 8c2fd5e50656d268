import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bcmetric import BcParams
from bcmetric.collapse import (
    BallScene,
    CollapsedSpace,
    CurveSpec,
    StripScene,
    ball_sigma,
    chord_length,
    collapse_representative,
    collapsed_distance,
    fiber_project,
    in_vicinity,
    lemma_constants,
    lipschitz_estimates,
    load_scene,
    max_fiber_length,
    nearest_distance_to_set,
    path_metric,
    theorem2_constants,
    theorem2_literal_constants,
)
from bcmetric.errors import DomainError
from bcmetric.metric import euclidean

from oracles import composite_simpson, golden

BOX = ((-30, 30), (-30, 30))


def sine_strip():
    return StripScene(CurveSpec.sinusoid(), 1.0, 1.0, BOX)


# -- fiber projection and representatives


def test_fiber_project_examples(flat_space):
    s = sine_strip()
    np.testing.assert_allclose(fiber_project(s, [0, 0.5]), [0, 0])
    np.testing.assert_allclose(fiber_project(flat_space.scene, [3, -0.7]), [3, 0])
    np.testing.assert_allclose(fiber_project(s, [math.pi / 2, 1.9]), [math.pi / 2, 1.0])
    with pytest.raises(DomainError):
        fiber_project(s, [0, 1.5])


def test_fiber_project_is_idempotent(sine_space):
    p = fiber_project(sine_space.scene, [1.3, 0.2])
    np.testing.assert_array_equal(fiber_project(sine_space.scene, p), p)
    assert sine_space.scene.on_transversal(p)


def test_representatives(flat_space, sine_space):
    np.testing.assert_allclose(collapse_representative(flat_space, [0, 5]), [0, 0])
    x = np.array([2.0, 0.4])
    np.testing.assert_array_equal(collapse_representative(sine_space, x), fiber_project(sine_space.scene, x))
    # Oracle: dense grid + golden minimisation of the distance to sin(t) + 1.
    g = lambda t: math.hypot(t, math.sin(t) + 1 - 5)  # noqa: E731
    ts = np.arange(-5, 5, 1e-4)
    i = int(np.hypot(ts, np.sin(ts) + 1 - 5).argmin())
    t_star, _ = golden(g, ts[i - 1], ts[i + 1])
    rep = collapse_representative(sine_space, [0, 5])
    assert rep[0] == pytest.approx(t_star, abs=1e-6)
    assert rep[1] == pytest.approx(math.sin(t_star), abs=1e-6)


# -- nearest distance


def test_nearest_examples(unit_ball, flat_space, sine_space):
    r, xs = nearest_distance_to_set(unit_ball, [3, 0])
    assert r == 2.0
    np.testing.assert_allclose(xs, [1, 0])
    r, xs = nearest_distance_to_set(flat_space, [0, 5])
    assert r == pytest.approx(4.0, abs=1e-12)
    np.testing.assert_allclose(xs, [0, 1], atol=1e-6)
    r, _ = nearest_distance_to_set(sine_space, [0, 5])
    assert r < 4.0
    assert r == pytest.approx(3.293999095759894, abs=1e-8)  # grid 1e-4 + golden oracle


def test_nearest_inside_is_zero(sine_space):
    r, xs = nearest_distance_to_set(sine_space, [0.2, 0.1])
    assert r == 0.0
    np.testing.assert_array_equal(xs, [0.2, 0.1])


@settings(max_examples=40, deadline=None)
@given(x=st.tuples(st.floats(-30, 30), st.floats(-30, 30)))
def test_nearest_lower_bounds_sampled_strip_points(x, sine_space):
    r, xs = nearest_distance_to_set(sine_space, x)
    assert sine_space.scene.contains(xs, 1e-9)
    assert euclidean(x, xs) == pytest.approx(r, abs=1e-12)
    ts = np.linspace(x[0] - 35, x[0] + 35, 4001)
    for off in (-1.0, 0.0, 1.0):
        pts = np.column_stack([ts, np.sin(ts) + off])
        assert r <= np.hypot(pts[:, 0] - x[0], pts[:, 1] - x[1]).min() + 1e-6


# -- path metric


def test_path_metric_examples(flat_space, sine_space, cos2x_space):
    assert path_metric(flat_space, [0, 0], [3, 0]) == pytest.approx(3.0, rel=1e-14)
    oracle = composite_simpson(lambda t: np.sqrt(1 + np.cos(t) ** 2), 0, 2 * np.pi)
    assert path_metric(sine_space, [0, 0], [2 * math.pi, math.sin(2 * math.pi)]) == pytest.approx(oracle, abs=1e-5)
    c = cos2x_space.scene.center
    for a, b in [(0.0, 1.0), (-3.0, 7.5), (2.0, 2.001)]:
        rp = path_metric(cos2x_space, [a, c.value(a)], [b, c.value(b)])
        assert rp <= math.sqrt(17) * abs(b - a) + 1e-12
        assert rp <= math.sqrt(5) * abs(b - a) + 1e-12


def test_path_metric_off_transversal(sine_space):
    with pytest.raises(DomainError):
        path_metric(sine_space, [0, 0.5], [1, math.sin(1)])


@given(a=st.floats(-30, 30), b=st.floats(-30, 30))
def test_path_metric_dominates_chord(a, b, sine_space):
    pa, pb = np.array([a, math.sin(a)]), np.array([b, math.sin(b)])
    rp = path_metric(sine_space, pa, pb)
    assert rp >= euclidean(pa, pb) - 1e-8
    assert rp == path_metric(sine_space, pb, pa)


# -- vicinity and the collapsed distance


def test_vicinity_examples(flat_space):
    x = np.array([0.0, 5.0])
    assert not in_vicinity(flat_space, x, x)
    inside = np.array([0.0, 0.0])
    assert not in_vicinity(flat_space, inside, inside)
    assert in_vicinity(flat_space, x, [9, 5])
    assert not in_vicinity(flat_space, x, [8, 5])
    assert in_vicinity(flat_space, [9, 5], x)


def test_collapsed_distance_hand_values(flat_space):
    b = collapsed_distance(flat_space, [0, 5], [9, 5])
    assert b.in_vicinity
    np.testing.assert_allclose(b.x_prime, [0, 0], atol=1e-9)
    np.testing.assert_allclose(b.y_prime, [9, 0], atol=1e-9)
    assert b.rho_p == pytest.approx(9.0, abs=1e-9)
    assert b.rho_phi == pytest.approx(17.0, abs=1e-9)

    b = collapsed_distance(flat_space, [0, 0.5], [4, -0.5])
    assert b.r_x == b.r_y == 0.0
    assert b.rho_phi == pytest.approx(4.0, abs=1e-12)

    b = collapsed_distance(flat_space, [0, 5], [1, 6])
    assert not b.in_vicinity and b.rho_p is None
    assert b.rho_phi == b.rho == math.sqrt(2)


def test_same_fiber_points_collapse_to_zero(sine_space):
    assert collapsed_distance(sine_space, [1.0, math.sin(1.0) - 0.9], [1.0, math.sin(1.0) + 0.8]).rho_phi == 0.0


@settings(max_examples=40, deadline=None)
@given(
    x=st.tuples(st.floats(-30, 30), st.floats(-30, 30)),
    y=st.tuples(st.floats(-30, 30), st.floats(-30, 30)),
)
def test_collapsed_distance_properties(x, y, sine_space):
    b = collapsed_distance(sine_space, x, y)
    assert b.rho_phi == collapsed_distance(sine_space, y, x).rho_phi
    assert b.rho_phi >= 0.0
    if b.in_vicinity:
        assert b.rho_phi == b.rho_p + (b.r_x + b.r_y)
    else:
        assert b.rho_phi == b.rho
    KL, f = sine_space.K_L, sine_space.f_max
    assert b.rho_phi <= (2 * KL + 1) * b.rho + 2 * KL * f + 1e-6
    K, C = lemma_constants(BcParams(), sine_space).lower
    assert b.rho / K - C <= b.rho_phi + 1e-6


# -- ball quotient


def test_chord_length_examples(unit_ball):
    assert chord_length(unit_ball, [-2, 0], [2, 0]) == pytest.approx(2.0)
    assert chord_length(unit_ball, [-1.1, 0], [1.1, 10]) == 0.0
    assert chord_length(unit_ball, [-1.1, 0], [1.1, 0]) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        chord_length(unit_ball, [2, 0], [2, 0])
    with pytest.raises(DomainError):
        chord_length(unit_ball, [0.2, 0], [2, 0])


def test_chord_misses_when_closest_approach_exceeds_radius():
    # Point-line distance oracle for the segment (-1.1,0)-(1.1,10).
    a, b = np.array([-1.1, 0.0]), np.array([1.1, 10.0])
    d = b - a
    closest = abs(d[0] * a[1] - d[1] * a[0]) / np.linalg.norm(d)
    assert closest == pytest.approx(1.0743, abs=1e-4)


def test_ball_sigma_examples(unit_ball):
    assert ball_sigma(unit_ball, [-1.1, 0], [1.1, 0]) == pytest.approx(0.2, abs=1e-12)
    assert ball_sigma(unit_ball, [1.1, 0], [1.1, 10]) == pytest.approx(10.0, abs=1e-12)
    assert ball_sigma(unit_ball, [-1.1, 0], [1.1, 10]) == pytest.approx(math.sqrt(104.84), abs=1e-12)
    assert ball_sigma(unit_ball, [-1.1, 0], [1.1, 10]) == pytest.approx(10.2391, abs=1e-4)


@given(
    x=st.tuples(st.floats(-20, 20), st.floats(-20, 20), st.floats(-20, 20)),
    y=st.tuples(st.floats(-20, 20), st.floats(-20, 20), st.floats(-20, 20)),
)
def test_ball_invariants(x, y):
    ball = BallScene((0.5, -0.5, 1.0), 2.0, ((-20, 20),) * 3)
    x, y = np.array(x), np.array(y)
    if min(np.linalg.norm(x - ball.center), np.linalg.norm(y - ball.center)) < 2.0 or np.array_equal(x, y):
        return
    u = chord_length(ball, x, y)
    assert 0.0 <= u <= 2.0 * ball.radius
    s = ball_sigma(ball, x, y)
    assert s == pytest.approx(ball_sigma(ball, y, x), abs=1e-9)
    if u == 0.0:
        assert s == euclidean(x, y)


# -- constants


def test_max_fiber_length():
    assert max_fiber_length(sine_strip()) == 2.0
    assert max_fiber_length(StripScene(CurveSpec.constant(), 0.5, 1.5, BOX)) == 2.0
    assert max_fiber_length(BallScene((0, 0), 1.0, BOX)) == 2.0


def test_sandwich_constants(sine_space, flat_space):
    q = theorem2_constants(BcParams(), sine_space)
    assert q.K == pytest.approx(1 + math.sqrt(2))
    assert q.C == pytest.approx(6 * (1 + math.sqrt(2)))
    assert q.C == pytest.approx(14.49, abs=5e-3)
    q = theorem2_constants(BcParams(), flat_space)
    assert (q.K, q.C) == (2.0, 12.0)
    q = theorem2_literal_constants(BcParams(), sine_space)
    assert (q.K, q.C) == (2.0, 12.0)


def test_lemma_constants(flat_space):
    lc = lemma_constants(BcParams(), flat_space)
    assert lc.upper_all == (2.0, 2.0)
    assert lc.lower == (1.0, 5.0)
    assert lc.fiber == (1.0, 2.0)
    assert lc.upper_far == (1.0, 2.0)
    assert lc.upper_near == (1.0, 6.0)
    assert lc.ratio == 1.0


def test_lemma_constants_general_bc(flat_space):
    lc = lemma_constants(BcParams(2.0, 1.0), flat_space)
    # b=2, c=1, K_L=1, f=2: b^2 f + bc + c = 8 + 2 + 1
    assert lc.fiber == (4.0, 11.0)
    assert lc.upper_all == (5.0, 11.0)
    assert lc.lower == (8.0, 2 * 4 + (1 * 5 + 1) / 4)


def test_lipschitz_estimates(flat_space, sine_space):
    ts = np.linspace(-10, 10, 60)
    assert lipschitz_estimates(flat_space, ts) == (0.0, pytest.approx(1.0))
    L, KL = lipschitz_estimates(sine_space, ts)
    assert L <= 1.0 + 1e-12 and KL <= math.sqrt(2) + 1e-9
    space = CollapsedSpace(StripScene(CurveSpec.sinusoid(1.0, 2.0), 1.0, 1.0, BOX))
    L, KL = lipschitz_estimates(space, np.linspace(-3, 3, 80))
    assert L <= 2.0 + 1e-12 and KL <= math.sqrt(5) + 1e-9 <= math.sqrt(17)
    with pytest.raises(ValueError):
        lipschitz_estimates(space, [1.0, 1.0])


def test_space_summary_and_types(sine_space):
    s = sine_space.summary()
    assert s["f_max"] == 2.0 and s["K_L"] == pytest.approx(math.sqrt(2))
    with pytest.raises(TypeError):
        CollapsedSpace(load_scene("unit_ball"))


def test_upper_all_constants_exceeded_above_sine_strip(sine_space):
    # Nearest strip points drift horizontally toward the crests, so the path
    # between representatives outgrows K rho by more than the additive slack.
    b = collapsed_distance(sine_space, [29.93, 6.81], [17.04, 8.18])
    assert b.in_vicinity
    K, C = lemma_constants(BcParams(), sine_space).upper_all
    assert b.rho_phi > K * b.rho + C + 0.9
    q = theorem2_constants(BcParams(), sine_space)
    assert b.rho_phi <= q.K * b.rho + q.C
    KL, f = sine_space.K_L, sine_space.f_max
    assert b.rho_phi <= (2 * KL + 1) * b.rho + 2 * KL * f
