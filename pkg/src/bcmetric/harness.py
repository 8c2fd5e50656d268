"""Seeded sampling and verification suites for the collapsed distance.

Every check is a universally quantified inequality evaluated on a finite
sample.  A check record keeps the theoretical constants, the tightest
constants the sample supports, the violation count and the single worst
witness.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from .collapse import (
    BallScene,
    CollapsedSpace,
    collapsed_distance,
    lemma_constants,
    sigma_distance,
    theorem2_constants,
    theorem2_literal_constants,
)
from .collapse.scenes import check_box
from .errors import ConvergenceError, DomainError, EvaluationError
from .metric import BcParams, check_semimetric, euclidean, least_c, transfer_bc, triple_distances, verify_bc
from .quasi import QiParams, check_qi, estimate_from_distances, least_C, pair_distances, sandwich_violations

NUMERIC_TOL = 1e-6
CLOSED_FORM_TOL = 1e-9
SIG_DIGITS = 12

_EVAL_ERRORS = (EvaluationError, DomainError, ConvergenceError)


@dataclass(frozen=True)
class SampleConfig:
    seed: int = 42
    n_points: int = 2000
    n_pairs: int = 10_000
    n_triples: int = 10_000
    box: tuple[tuple[float, float], ...] = ((-30.0, 30.0), (-30.0, 30.0))

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if min(self.n_points, self.n_pairs, self.n_triples) < 0:
            raise ValueError("sample counts must be non-negative")
        object.__setattr__(self, "box", check_box(self.box))

    def rng(self, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.seed if stream == 0 else [self.seed, stream])


@dataclass(frozen=True)
class Sample:
    points: np.ndarray  # (n, dim)
    pairs: np.ndarray  # (m, 2) indices into points
    triples: np.ndarray  # (m, 3) indices into points

    def pair_points(self):
        return [(self.points[i], self.points[j]) for i, j in self.pairs]

    def triple_points(self):
        return [(self.points[i], self.points[j], self.points[k]) for i, j, k in self.triples]


def _index_pairs(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    i = rng.integers(0, n, m)
    j = rng.integers(0, max(n - 1, 1), m)
    j = j + (j >= i)
    return np.column_stack([i, j]).astype(np.int64).reshape(-1, 2)


def sample(config: SampleConfig, exclude: Callable[[np.ndarray], np.ndarray] | None = None) -> Sample:
    """Uniform points in the box, then pairs and triples of distinct pool indices.

    ``exclude`` is a vectorised predicate; points for which it is true are
    redrawn.
    """
    rng = config.rng()
    lo = np.array([a for a, _ in config.box])
    hi = np.array([b for _, b in config.box])
    n = config.n_points
    pts = np.empty((0, lo.size))
    while len(pts) < n:
        batch = rng.uniform(lo, hi, size=(max(n - len(pts), 16), lo.size))
        if exclude is not None:
            batch = batch[~exclude(batch)]
        pts = np.vstack([pts, batch])
    pts = pts[:n]
    if (config.n_pairs and n < 2) or (config.n_triples and n < 3):
        raise ValueError("not enough points to draw distinct pairs/triples")
    pairs = _index_pairs(rng, n, config.n_pairs)
    a = rng.integers(0, n, config.n_triples)
    b = rng.integers(0, max(n - 1, 1), config.n_triples)
    b = b + (b >= a)
    c = rng.integers(0, max(n - 2, 1), config.n_triples)
    lo_ab, hi_ab = np.minimum(a, b), np.maximum(a, b)
    c = c + (c >= lo_ab)
    c = c + (c >= hi_ab)
    triples = np.column_stack([a, b, c]).astype(np.int64)
    return Sample(pts, pairs, triples.reshape(-1, 3))


# -- reports -----------------------------------------------------------------


@dataclass
class CheckRecord:
    name: str
    description: str
    status: str = "pass"  # pass | fail | error
    required: bool = True
    n_checked: int = 0
    violations: int = 0
    worst: dict | None = None
    theoretical: dict = field(default_factory=dict)
    empirical: dict = field(default_factory=dict)
    boundary_pairs: int = 0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def settle(self) -> "CheckRecord":
        if self.status != "error":
            self.status = "pass" if self.violations == 0 else "fail"
        return self


@dataclass
class VerificationReport:
    scene: dict
    config: dict
    checks: list[CheckRecord]
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def check(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "scene": self.scene,
            "config": self.config,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
        }
        if timing:
            out["wall_time_s"] = self.wall_time
        return canonical(out)

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"scene: {self.scene.get('type')}  seed: {self.config.get('seed')}"]
        width = max(len(c.name) for c in self.checks) if self.checks else 10
        for c in self.checks:
            tag = c.status.upper() + ("" if c.required else " (info)")
            extra = f"  {c.error}" if c.error else ""
            lines.append(f"  {c.name:<{width}}  {tag:<12} n={c.n_checked:<6} violations={c.violations}{extra}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}  ({self.wall_time:.2f} s)")
        return "\n".join(lines) + "\n"


def fmt(x: float) -> str:
    return format(x, f".{SIG_DIGITS}g")


def canonical(obj):
    """Round floats to fixed significant digits; make the tree JSON-safe."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(fmt(x))
    if isinstance(obj, np.ndarray):
        return [canonical(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    return str(obj)


def _witness(**kw) -> dict:
    return {k: (np.asarray(v).tolist() if isinstance(v, np.ndarray) else v) for k, v in kw.items()}


# -- sandwich bookkeeping --------------------------------------------------------


def _least_K(rho: np.ndarray, img: np.ndarray, K_max: float, C: float) -> float:
    """Smallest K in [1, K_max] for which the sample passes with additive constant C."""
    keep = rho > 0
    rho, img = rho[keep], img[keep]
    if least_C(rho, img, 1.0) <= C:
        return 1.0
    if least_C(rho, img, K_max) > C:
        return math.inf
    lo, hi = 1.0, K_max
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if least_C(rho, img, mid) <= C:
            hi = mid
        else:
            lo = mid
    return hi


def _sandwich_record(
    name: str,
    description: str,
    rho: np.ndarray,
    img: np.ndarray,
    pair_pts: Sequence,
    params: QiParams,
    tol: float,
    sides: str = "both",
    required: bool = True,
) -> CheckRecord:
    rec = CheckRecord(name, description, required=required, n_checked=int(rho.size))
    rec.theoretical = {"K": params.K, "C": params.C, "sides": sides}
    (up, up_ex), (lo, lo_ex) = sandwich_violations(rho, img, params, tol)
    if sides == "upper":
        lo, lo_ex = lo[:0], lo_ex[:0]
    elif sides == "lower":
        up, up_ex = up[:0], up_ex[:0]
    rec.violations = int(up.size + lo.size)
    keep = rho > 0
    if sides == "upper":
        c_need = float(max(0.0, np.max(img[keep] - params.K * rho[keep], initial=0.0)))
        k_emp = float(max(1.0, np.max((img[keep] - params.C) / rho[keep], initial=1.0)))
    elif sides == "lower":
        c_need = float(max(0.0, np.max(rho[keep] / params.K - img[keep], initial=0.0)))
        ratio = rho[keep] / np.maximum(img[keep] + params.C, 1e-300)
        k_emp = float(max(1.0, np.max(ratio, initial=1.0)))
    else:
        c_need = least_C(rho[keep], img[keep], params.K)
        k_emp = _least_K(rho, img, params.K, params.C)
    rec.empirical = {"C_emp_at_K": c_need, "K_emp_at_C": k_emp}
    if rec.violations:
        cand = [(e, i, "upper") for i, e in zip(up, up_ex)] + [(e, i, "lower") for i, e in zip(lo, lo_ex)]
        e, i, side = max(cand, key=lambda t: t[0])
        x, y = pair_pts[i]
        rec.worst = _witness(x=x, y=y, rho=float(rho[i]), rho_image=float(img[i]), side=side, excess=float(e))
    return rec.settle()


def _bc_record(name, description, d, params: BcParams, triples, tol, required=True) -> CheckRecord:
    rec = CheckRecord(name, description, required=required, n_checked=len(triples))
    rec.theoretical = {"b": params.b, "c": params.c}
    dists = triple_distances(d, triples)
    excess = dists[:, 0] - params.bound(dists[:, 1], dists[:, 2])
    bad = np.flatnonzero(excess > tol)
    rec.violations = int(bad.size)
    rec.empirical = {"c_min_at_b": least_c(dists, params.b) if len(triples) else 0.0}
    if bad.size:
        i = int(bad[np.argmax(excess[bad])])
        x, y, z = triples[i]
        rec.worst = _witness(x=x, y=y, z=z, lhs=float(dists[i, 0]), rhs=float(dists[i, 0] - excess[i]))
    return rec.settle()


def _guarded(name: str, description: str, build: Callable[[], CheckRecord], required: bool = True) -> CheckRecord:
    try:
        return build()
    except _EVAL_ERRORS as exc:
        return CheckRecord(name, description, status="error", required=required, error=str(exc))


# -- strip suite -----------------------------------------------------------------


def _structured_points(space: CollapsedSpace, config: SampleConfig, n: int):
    """Points on the transversal and inside the strip, drawn over the box's x-range."""
    (x0, x1), _ = space.scene.domain_box
    curve = space.scene.center
    rng_t = config.rng(1)
    ts = rng_t.uniform(x0, x1, n)
    on_t = np.column_stack([ts, curve.values(ts)])
    rng_s = config.rng(2)
    ts = rng_s.uniform(x0, x1, n)
    off = rng_s.uniform(-space.scene.half_width_below, space.scene.half_width_above, n)
    in_s = np.column_stack([ts, curve.values(ts) + off])
    # Same-fiber partners exercise the zero-distance side of the semi-metric check.
    off2 = rng_s.uniform(-space.scene.half_width_below, space.scene.half_width_above, n)
    partner = np.column_stack([ts, curve.values(ts) + off2])
    return on_t, in_s, partner


def _random_pairs(rng: np.random.Generator, pts: np.ndarray, m: int):
    if len(pts) < 2:
        return []
    idx = _index_pairs(rng, len(pts), m)
    return [(pts[i], pts[j]) for i, j in idx]


def run_suite(
    space: CollapsedSpace,
    config: SampleConfig,
    tol: float = NUMERIC_TOL,
    qi: QiParams | None = None,
) -> VerificationReport:
    """Sample the scene and check every collapsing-map inequality on it."""
    start = time.perf_counter()
    smp = sample(config)
    pool_pairs = smp.pair_points()
    n_struct = max(2, min(config.n_points, config.n_pairs))
    on_t, in_s, partner = _structured_points(space, config, n_struct)
    t_pairs = _random_pairs(config.rng(3), on_t, config.n_pairs)
    s_pairs = _random_pairs(config.rng(4), in_s, config.n_pairs)
    same_fiber = list(zip(in_s, partner))

    ambient = space.ambient
    lc = lemma_constants(ambient, space)
    thm = theorem2_constants(ambient, space)
    lit = theorem2_literal_constants(ambient, space)
    checks: list[CheckRecord] = []

    def breakdowns(pairs):
        return [collapsed_distance(space, x, y) for x, y in pairs]

    def arrays(bds):
        return (np.array([b.rho for b in bds], dtype=float), np.array([b.rho_phi for b in bds], dtype=float))

    try:
        pool_bd = breakdowns(pool_pairs)
        s_bd = breakdowns(s_pairs)
        t_bd = breakdowns(t_pairs)
    except _EVAL_ERRORS as exc:
        checks.append(CheckRecord("evaluation", "collapsed distance on the sample", status="error", error=str(exc)))
        return VerificationReport(space.summary(), _config_dict(config, tol), checks, time.perf_counter() - start)

    boundary = sum(b.near_vicinity_boundary for b in pool_bd)
    all_pairs = pool_pairs + s_pairs + t_pairs
    all_bd = pool_bd + s_bd + t_bd
    rho_all, phi_all = arrays(all_bd)

    # Semi-metric axioms, and rho_phi = 0 exactly when both points lie in one class.
    def same_class(x, y) -> bool:
        if np.array_equal(x, y):
            return True
        return bool(space.scene.contains(x) and space.scene.contains(y) and abs(x[0] - y[0]) <= tol)

    def semimetric():
        rec = CheckRecord("semimetric", "rho_phi is non-negative, symmetric, zero exactly on a class")
        diag = list(smp.points[: min(len(smp.points), 200)]) or [in_s[0]]
        checked = all_pairs + same_fiber
        viol = check_semimetric(space, diag, tol, pairs=checked)
        phis = list(phi_all) + [space(x, y) for x, y in same_fiber]
        zero_bad = [(x, y, phi) for (x, y), phi in zip(checked, phis) if (phi <= tol) != same_class(x, y)]
        rec.n_checked = len(checked) + len(diag)
        rec.violations = len(viol) + len(zero_bad)
        rec.empirical = {"min_rho_phi": float(min(phis))}
        if viol:
            v = viol[0]
            rec.worst = _witness(kind=v.kind, x=v.x, y=v.y, value=v.value)
        elif zero_bad:
            x, y, phi = zero_bad[0]
            rec.worst = _witness(kind="zero_mismatch", x=x, y=y, value=phi)
        return rec.settle()

    checks.append(_guarded("semimetric", "semi-metric axioms", semimetric))

    rho_t, phi_t = arrays(t_bd)
    checks.append(
        _ratio_record(
            "transversal_ratio", "rho_phi <= K_L rho for pairs on the transversal", rho_t, phi_t, t_pairs, lc.ratio, tol
        )
    )

    def fiber_checks():
        rho_rep = np.array([euclidean(b.x_prime, b.y_prime) for b in s_bd])
        rho_s = np.array([b.rho for b in s_bd])
        out = []
        f = space.f_max
        out.append(
            _upper_record(
                "fiber_shift",
                "rho(x',y') <= rho(x,y) + 2f for pairs in S",
                rho_s, rho_rep, s_pairs, 1.0, 2.0 * f, tol,
            )
        )
        k, c = lc.fiber
        out.append(
            _upper_record(
                "fiber_shift_general",
                "rho(x',y') <= b^2 rho(x,y) + (b^2 f + bc + c) for pairs in S",
                rho_s, rho_rep, s_pairs, k, c, tol,
            )
        )
        return out

    checks.extend(fiber_checks())

    rho_s, phi_s = arrays(s_bd)
    for name, desc, (k, c) in (
        ("upper_far", "upper bound b^2 K_L, K_L(b^2 f+bc+c) on all of S", lc.upper_far),
        ("upper_near", "upper bound b^2 K_L, K_L(3b^2 f+bc+c) on all of S", lc.upper_near),
    ):
        checks.append(_upper_record(name, desc, rho_s, phi_s, s_pairs, k, c, tol))

    k, c = lc.upper_all
    checks.append(
        _sandwich_record(
            "upper", "rho_phi <= (b^2 K_L + 1) rho + (b^2 f + bc + c)",
            rho_all, phi_all, all_pairs, QiParams(k, c), tol, sides="upper",
        )
    )
    k, c = lc.lower
    checks.append(
        _sandwich_record(
            "lower", "rho / b^3 - C_lower <= rho_phi",
            rho_all, phi_all, all_pairs, QiParams(k, c), tol, sides="lower",
        )
    )
    checks.append(
        _sandwich_record(
            "sandwich", "quasi-isometry sandwich with K = b^3 max(K_L,1) + 1",
            rho_all, phi_all, all_pairs, thm, tol,
        )
    )
    checks.append(
        _sandwich_record(
            "sandwich_slope", "quasi-isometry sandwich with K = b^3 L + 1 (raw slope bound)",
            rho_all, phi_all, all_pairs, lit, tol, required=False,
        )
    )
    if qi is not None:
        checks.append(
            _sandwich_record("user_qi", "quasi-isometry sandwich with caller constants", rho_all, phi_all, all_pairs, qi, tol)
        )

    bc_image = transfer_bc(ambient, thm)
    checks.append(
        _guarded(
            "image_bc",
            "rho_phi is a (b',c')-metric with transferred constants",
            lambda: _bc_record(
                "image_bc", "rho_phi is a (b',c')-metric with transferred constants",
                space, bc_image, smp.triple_points(), tol,
            ),
        )
    )
    for rec in checks:
        if rec.name in ("upper", "lower", "sandwich", "sandwich_slope", "user_qi"):
            rec.boundary_pairs = int(boundary)

    report = VerificationReport(space.summary(), _config_dict(config, tol), checks)
    report.scene["sandwich"] = {"K": thm.K, "C": thm.C}
    report.scene["sandwich_slope"] = {"K": lit.K, "C": lit.C}
    report.scene["bounds"] = lc.as_dict()
    report.wall_time = time.perf_counter() - start
    return report


def _ratio_record(name, description, rho, img, pairs, K, tol) -> CheckRecord:
    rec = CheckRecord(name, description, n_checked=int(rho.size))
    rec.theoretical = {"K": K}
    excess = img - (K + tol) * rho
    bad = np.flatnonzero(excess > 0)
    rec.violations = int(bad.size)
    keep = rho > 0
    rec.empirical = {"max_ratio": float(np.max(img[keep] / rho[keep], initial=0.0))}
    if bad.size:
        i = int(bad[np.argmax(excess[bad])])
        rec.worst = _witness(x=pairs[i][0], y=pairs[i][1], rho=float(rho[i]), rho_image=float(img[i]))
    return rec.settle()


def _upper_record(name, description, rho, img, pairs, K, C, tol) -> CheckRecord:
    return _sandwich_record(name, description, rho, img, pairs, QiParams(max(K, 1.0), C), tol, sides="upper")


def _config_dict(config: SampleConfig, tol: float) -> dict:
    return {
        "seed": config.seed,
        "n_points": config.n_points,
        "n_pairs": config.n_pairs,
        "n_triples": config.n_triples,
        "box": [list(ax) for ax in config.box],
        "tol": tol,
    }


# -- ball suite and the transfer check ------------------------------------------------------


def worked_triple(ball: BallScene):
    """The worked disk triple, scaled and translated onto ``ball``."""
    c = np.asarray(ball.center)
    e0 = np.zeros_like(c)
    e0[0] = 1.0
    e1 = np.zeros_like(c)
    if c.size > 1:
        e1[1] = 1.0
    r = ball.radius
    a = c - 1.1 * r * e0
    b = c + 1.1 * r * e0
    z = b + 10.0 * r * e1
    return a, b, z


def identity(x):
    return x


def run_lemma11_check(
    d: Callable,
    f: Callable,
    d_image: Callable,
    source: BcParams,
    qi: QiParams,
    config: SampleConfig,
    tol: float = CLOSED_FORM_TOL,
    exclude=None,
    name: str = "bc_transfer",
) -> CheckRecord:
    """Check that the image of a (K,C)-quasi-isometry satisfies the transferred (b',c') inequality."""
    description = "image distances satisfy the transferred relaxed triangle inequality"
    try:
        smp = sample(config, exclude)
        pairs = smp.pair_points()
        pre = check_qi(f, d, d_image, qi, pairs, tol)
        if pre:
            v = max(pre, key=lambda p: p.excess)
            return CheckRecord(
                name, description, status="error",
                error=f"map is not a ({qi.K},{qi.C})-quasi-isometry on the sample: "
                f"x={np.asarray(v.x).tolist()} y={np.asarray(v.y).tolist()} ({v.side} side, excess {v.excess:.6g})",
            )
        target = transfer_bc(source, qi)
        images = [(f(x), f(y), f(z)) for x, y, z in smp.triple_points()]
        rec = _bc_record(name, description, d_image, target, images, tol)
        rec.theoretical.update(source={"b": source.b, "c": source.c}, qi={"K": qi.K, "C": qi.C})
        return rec
    except _EVAL_ERRORS as exc:
        return CheckRecord(name, description, status="error", error=str(exc))


def run_ball_suite(
    ball: BallScene,
    config: SampleConfig,
    bc: BcParams = BcParams(2.0, 0.0),
    qi: QiParams = QiParams(1.0, 2.0),
    tol: float = CLOSED_FORM_TOL,
) -> VerificationReport:
    """Checks for the ball-to-point quotient distance on points outside the ball."""
    start = time.perf_counter()
    outside = lambda pts: ball.contains_many(pts)  # noqa: E731
    smp = sample(config, outside)
    sigma = sigma_distance(ball)
    pairs = smp.pair_points()
    triples = [worked_triple(ball)] + smp.triple_points()
    checks = []

    def semimetric():
        rec = CheckRecord("semimetric", "sigma is non-negative, symmetric, zero on the diagonal")
        pts = list(smp.points[:200])
        viol = check_semimetric(sigma, pts, tol, pairs=pairs)
        rec.n_checked = len(pts) + len(pairs)
        rec.violations = len(viol)
        if viol:
            rec.worst = _witness(kind=viol[0].kind, x=viol[0].x, y=viol[0].y, value=viol[0].value)
        return rec.settle()

    checks.append(_guarded("semimetric", "semi-metric axioms", semimetric))
    checks.append(
        _guarded(
            "bc_triangle",
            "sigma satisfies the relaxed triangle inequality (includes the worked triple)",
            lambda: _bc_record(
                "bc_triangle", "sigma satisfies the relaxed triangle inequality (includes the worked triple)",
                sigma, bc, triples, tol,
            ),
        )
    )

    def qi_check():
        rho, img = pair_distances(identity, euclidean, sigma, pairs)
        return _sandwich_record("quasi_isometry", "collapse to a point is a quasi-isometry", rho, img, pairs, qi, tol)

    checks.append(_guarded("quasi_isometry", "sandwich", qi_check))
    checks.append(
        run_lemma11_check(euclidean, identity, sigma, BcParams(1.0, 0.0), qi, config, tol, exclude=outside)
    )
    report = VerificationReport(ball.summary(), _config_dict(config, tol), checks)
    report.scene.update(bc={"b": bc.b, "c": bc.c}, qi={"K": qi.K, "C": qi.C})
    report.wall_time = time.perf_counter() - start
    return report


def empirical_qi(space: CollapsedSpace, config: SampleConfig, K_grid: Sequence[float]):
    """Empirical (K, C) frontier of the collapse map over the pool pairs."""
    pairs = sample(config).pair_points()
    rho, img = pair_distances(identity, euclidean, space, pairs)
    return estimate_from_distances(rho, img, K_grid)
