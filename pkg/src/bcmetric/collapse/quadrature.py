from __future__ import annotations

import math
from typing import Callable

from ..errors import ConvergenceError

MAX_DEPTH = 48


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = 1e-10,
    max_depth: int = MAX_DEPTH,
    min_depth: int = 2,
) -> float:
    """Integrate ``f`` over ``[a, b]`` with recursive Simpson and Richardson correction.

    The absolute target is ``rtol`` times a coarse estimate of the integral
    magnitude.  Hitting ``max_depth`` on any subinterval raises
    :class:`ConvergenceError` instead of returning a partial sum.
    """
    if a == b:
        return 0.0
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    scale = abs(whole) if whole != 0.0 else abs(b - a)
    eps = max(rtol * scale, 1e-300)
    return _recurse(f, a, b, fa, fm, fb, whole, eps, 0, max_depth, min_depth)


def _recurse(f, a, b, fa, fm, fb, whole, eps, depth, max_depth, min_depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    h = (b - a) / 12.0
    left = h * (fa + 4.0 * flm + fm)
    right = h * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth >= min_depth and abs(delta) <= 15.0 * eps:
        return left + right + delta / 15.0
    if not a < lm < m < rm < b:
        # Interval is at floating-point resolution; splitting cannot help.
        return left + right
    if depth >= max_depth:
        raise ConvergenceError(
            f"adaptive Simpson hit recursion cap {max_depth} on [{a!r}, {b!r}] (residual {abs(delta):.3g})"
        )
    return _recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1, max_depth, min_depth) + _recurse(
        f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1, max_depth, min_depth
    )


def golden_section(g: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-12, max_iter: int = 200):
    """Minimise a unimodal ``g`` on ``[lo, hi]``; returns ``(t, g(t))``."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    else:
        if b - a > max(xtol, 4.0 * math.ulp(max(abs(a), abs(b)))):
            raise ConvergenceError(f"golden section did not shrink [{lo}, {hi}] below {xtol}")
    best = min((a, g(a)), (b, g(b)), (c, gc), (d, gd), key=lambda p: p[1])
    return best
