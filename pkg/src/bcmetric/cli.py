"""Command-line entry point.

    bcmetric verify    --scene sine_strip --seed 42 --pairs 10000 --out report.json
    bcmetric estimate  --scene unit_ball --b-grid 1,2 --k-grid 1,2
    bcmetric dist      --scene flat_strip --x 0,5 --y 9,5
    bcmetric plot-data --scene sine_strip --pairs 1000 --out pairs.csv --figure pairs.png

Exit status: 0 success, 1 usage or I/O error, 2 a verification check failed.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .collapse import (
    BallScene,
    CollapsedSpace,
    SceneFormatError,
    chord_length,
    collapsed_distance,
    lipschitz_estimates,
    load_scene,
    nearest_distance_to_set,
    sigma_distance,
    theorem2_constants,
)
from .errors import ConvergenceError
from .harness import (
    CLOSED_FORM_TOL,
    NUMERIC_TOL,
    SampleConfig,
    canonical,
    fmt,
    identity,
    run_ball_suite,
    run_suite,
    sample,
)
from .metric import BcParams, as_point, estimate_bc, euclidean
from .quasi import QiParams, estimate_from_distances, pair_distances

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _reals(text: str, n: int | None = None, what: str = "value") -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated reals, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{what}: expected {n} comma-separated reals, got {len(vals)}")
    return vals


def _add_sampling(p: argparse.ArgumentParser, pairs: int = 10_000):
    p.add_argument("--scene", required=True, help="builtin name or path to a JSON scene file")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--pairs", type=int, default=pairs)
    p.add_argument("--triples", type=int, default=10_000)
    p.add_argument("--out", type=Path)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bcmetric", description="(b,c)-metrics and collapsing-map verification")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the verification suite on a scene")
    _add_sampling(p)
    p.add_argument("--tol", type=float)
    p.add_argument("--bc", help="b,c: ambient constants (strip) or checked constants (ball)")
    p.add_argument("--qi", help="K,C: extra sandwich constants (strip) or checked constants (ball)")
    p.add_argument("--timing", action="store_true", help="include wall time in the machine report")

    p = sub.add_parser("estimate", help="empirical (b,c) and (K,C) frontiers")
    _add_sampling(p)
    p.add_argument("--b-grid", default="1,1.5,2,4")
    p.add_argument("--k-grid", default="1,1.5,2,3")

    p = sub.add_parser("dist", help="collapsed distance between two points")
    p.add_argument("--scene", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("plot-data", help="write per-pair distances as CSV")
    _add_sampling(p, pairs=1000)
    p.add_argument("--figure", type=Path, help="also render a PNG/PDF scatter of the pairs")
    return parser


def _config(args, scene) -> SampleConfig:
    return SampleConfig(args.seed, args.points, args.pairs, args.triples, scene.domain_box)


def _write(path: Path, text: str):
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_verify(args) -> int:
    scene = load_scene(args.scene)
    config = _config(args, scene)
    if isinstance(scene, BallScene):
        bc = BcParams(*_reals(args.bc, 2, "--bc")) if args.bc else BcParams(2.0, 0.0)
        qi = QiParams(*_reals(args.qi, 2, "--qi")) if args.qi else QiParams(1.0, 2.0)
        tol = CLOSED_FORM_TOL if args.tol is None else args.tol
        report = run_ball_suite(scene, config, bc, qi, tol)
    else:
        ambient = BcParams(*_reals(args.bc, 2, "--bc")) if args.bc else BcParams(1.0, 0.0)
        qi = QiParams(*_reals(args.qi, 2, "--qi")) if args.qi else None
        tol = NUMERIC_TOL if args.tol is None else args.tol
        report = run_suite(CollapsedSpace(scene, ambient), config, tol, qi)
    sys.stdout.write(report.to_text())
    if args.out:
        _write(args.out, report.to_json(timing=args.timing))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_estimate(args) -> int:
    scene = load_scene(args.scene)
    config = _config(args, scene)
    b_grid = _reals(args.b_grid, what="--b-grid")
    k_grid = _reals(args.k_grid, what="--k-grid")
    if isinstance(scene, BallScene):
        d = sigma_distance(scene)
        smp = sample(config, scene.contains_many)
        extra = {}
    else:
        d = CollapsedSpace(scene)
        smp = sample(config)
        (x0, x1), _ = scene.domain_box
        ts = config.rng(5).uniform(x0, x1, min(200, max(config.n_points, 2)))
        L_emp, KL_emp = lipschitz_estimates(d, ts)
        extra = {"L": d.L, "K_L": d.K_L, "L_emp": L_emp, "K_L_emp": KL_emp}
    frontier = estimate_bc(d, smp.triple_points(), b_grid) if config.n_triples else None
    rho, img = pair_distances(identity, euclidean, d, smp.pair_points())
    qi = estimate_from_distances(rho, img, k_grid)
    out = {
        "scene": scene.summary(),
        "bc_frontier": [{"b": b, "c_min": c} for b, c in (frontier or [])],
        "qi_frontier": [{"K": K, "C": C} for K, C in qi.frontier],
        "K_emp": qi.K_emp,
        **extra,
    }
    for b, c in frontier or []:
        print(f"b={fmt(b)}  c_min={fmt(c)}")
    for K, C in qi.frontier:
        print(f"K={fmt(K)}  C_min={fmt(C)}")
    for k, v in extra.items():
        print(f"{k}={fmt(v)}")
    if args.out:
        _write(args.out, json.dumps(canonical(out), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _fmt_point(p) -> str:
    return "(" + ", ".join(fmt(float(v)) for v in p) + ")"


def cmd_dist(args) -> int:
    scene = load_scene(args.scene)
    x = as_point(_reals(args.x, what="--x"))
    y = as_point(_reals(args.y, what="--y"))
    for name, p in (("--x", x), ("--y", y)):
        if p.size != scene.dim:
            raise UsageError(f"{name}: scene has dimension {scene.dim}, point has {p.size} coordinates")
    if isinstance(scene, BallScene):
        rho = euclidean(x, y)
        u = 0.0 if np.array_equal(x, y) else chord_length(scene, x, y)
        print(f"rho {fmt(rho)}")
        print(f"chord {fmt(u)}")
        print(f"sigma {fmt(sigma_distance(scene)(x, y))}")
        return EXIT_OK
    b = collapsed_distance(CollapsedSpace(scene), x, y)
    print(f"rho {fmt(b.rho)}")
    print(f"r_x {fmt(b.r_x)}")
    print(f"r_y {fmt(b.r_y)}")
    print(f"in_vicinity {str(b.in_vicinity).lower()}")
    print(f"x_prime {_fmt_point(b.x_prime)}")
    print(f"y_prime {_fmt_point(b.y_prime)}")
    if b.rho_p is not None:
        print(f"rho_p {fmt(b.rho_p)}")
    print(f"rho_phi {fmt(b.rho_phi)}")
    return EXIT_OK


CSV_HEADER = ("rho", "rho_phi", "in_vicinity", "r_x", "r_y")


def plot_rows(scene, config: SampleConfig):
    """One ``(rho, rho_phi, in_vicinity, r_x, r_y)`` row per sampled pair."""
    rows = []
    if isinstance(scene, BallScene):
        smp = sample(config, scene.contains_many)
        for x, y in smp.pair_points():
            rho = euclidean(x, y)
            u = chord_length(scene, x, y)
            rx = nearest_distance_to_set(scene, x)[0]
            ry = nearest_distance_to_set(scene, y)[0]
            rows.append((rho, max(0.0, rho - u), u > 0.0, rx, ry))
        return rows, QiParams(1.0, 2.0)
    space = CollapsedSpace(scene)
    for x, y in sample(config).pair_points():
        b = collapsed_distance(space, x, y)
        rows.append((b.rho, b.rho_phi, b.in_vicinity, b.r_x, b.r_y))
    return rows, theorem2_constants(space.ambient, space)


def cmd_plot_data(args) -> int:
    if args.out is None:
        raise UsageError("plot-data: --out is required")
    scene = load_scene(args.scene)
    config = SampleConfig(args.seed, args.points, args.pairs, 0, scene.domain_box)
    rows, qi = plot_rows(scene, config)
    try:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for rho, phi, near, rx, ry in rows:
                w.writerow([fmt(rho), fmt(phi), int(near), fmt(rx), fmt(ry)])
    except OSError as exc:
        raise OSError(f"cannot write {args.out}: {exc.strerror or exc}") from exc
    print(f"wrote {len(rows)} rows to {args.out}  (K={fmt(qi.K)}, C={fmt(qi.C)})")
    if args.figure:
        from .plotting import sandwich_figure

        arr = np.array([r[:3] for r in rows], dtype=float).reshape(-1, 3)
        sandwich_figure(arr[:, 0], arr[:, 1], arr[:, 2] > 0, qi.K, qi.C, args.figure, title=args.scene)
        print(f"wrote figure {args.figure}")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "estimate": cmd_estimate, "dist": cmd_dist, "plot-data": cmd_plot_data}


def _join_point_flags(argv: list[str]) -> list[str]:
    # "--x -1.1,0" would otherwise be read as an unknown option.
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--x", "--y"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = _join_point_flags(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SceneFormatError, ValueError, OSError) as exc:
        print(f"bcmetric {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"bcmetric {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
