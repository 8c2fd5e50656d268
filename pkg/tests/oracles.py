"""Brute-force reference computations, kept independent of the library code paths."""
import numpy as np


def composite_simpson(f, a, b, n=2_000_000):
    if n % 2:
        n += 1
    x = np.linspace(a, b, n + 1)
    y = f(x)
    h = (b - a) / n
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


def golden(g, lo, hi, xtol=1e-12):
    phi = (np.sqrt(5) - 1) / 2
    a, b = lo, hi
    while b - a > xtol:
        c, d = b - phi * (b - a), a + phi * (b - a)
        if g(c) <= g(d):
            b = d
        else:
            a = c
    t = 0.5 * (a + b)
    return t, g(t)


def strip_nearest_bruteforce(values, below, above, x, spacing=1e-4, half_window=None):
    """Distance from x to a strip {values(t) - below <= y <= values(t) + above}.

    Dense grid over both boundary graphs, then golden refinement around the best node.
    """
    t0, y0 = x
    c0 = values(np.array([t0]))[0]
    if c0 - below <= y0 <= c0 + above:
        return 0.0
    # The boundary point straight above/below bounds the answer, so bounds the window too.
    w = half_window or (min(abs(y0 - c0 - above), abs(y0 - c0 + below)) + spacing)
    ts = np.arange(t0 - w, t0 + w + spacing, spacing)
    best = np.inf
    for shift in (above, -below):
        gv = np.hypot(ts - t0, values(ts) + shift - y0)
        i = int(gv.argmin())
        g = lambda t: float(np.hypot(t - t0, values(np.array([t]))[0] + shift - y0))  # noqa: E731
        _, r = golden(g, ts[max(i - 1, 0)], ts[min(i + 1, len(ts) - 1)])
        best = min(best, r)
    return best


def ball_nearest_bruteforce(center, radius, x, spacing=1e-4):
    """2-D only: grid over boundary angles, then golden refinement."""
    if np.hypot(x[0] - center[0], x[1] - center[1]) <= radius:
        return 0.0
    th = np.arange(0, 2 * np.pi, spacing)
    g = lambda t: float(np.hypot(center[0] + radius * np.cos(t) - x[0], center[1] + radius * np.sin(t) - x[1]))  # noqa: E731
    i = int(np.hypot(center[0] + radius * np.cos(th) - x[0], center[1] + radius * np.sin(th) - x[1]).argmin())
    return golden(g, th[i] - spacing, th[i] + spacing)[1]
