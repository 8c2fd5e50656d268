"""Center curves of strip scenes: values, slopes, Lipschitz bounds, arc length."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import adaptive_simpson

KINDS = ("constant", "sinusoid", "polynomial")


@dataclass(frozen=True)
class CurveSpec:
    """Graph ``t -> value(t)`` of a Lipschitz function on the real line.

    ``sinusoid`` is ``amplitude * sin(frequency * t + phase) + offset``.
    ``polynomial`` coefficients are in ascending order of degree and the
    argument is clipped to ``domain`` so the curve stays globally Lipschitz.
    """

    kind: str
    level: float = 0.0
    amplitude: float = 1.0
    frequency: float = 1.0
    phase: float = 0.0
    offset: float = 0.0
    coefficients: tuple[float, ...] = ()
    domain: tuple[float, float] = (-math.inf, math.inf)
    _dcoef: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown curve kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "polynomial":
            if not self.coefficients:
                raise ValueError("polynomial curve needs at least one coefficient")
            lo, hi = self.domain
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError("polynomial curve needs a finite domain to clip to")
        dcoef = tuple(k * c for k, c in enumerate(self.coefficients))[1:]
        object.__setattr__(self, "_dcoef", dcoef)

    @classmethod
    def constant(cls, level: float = 0.0) -> "CurveSpec":
        return cls("constant", level=level)

    @classmethod
    def sinusoid(cls, amplitude=1.0, frequency=1.0, phase=0.0, offset=0.0) -> "CurveSpec":
        return cls("sinusoid", amplitude=amplitude, frequency=frequency, phase=phase, offset=offset)

    @classmethod
    def polynomial(cls, coefficients, domain) -> "CurveSpec":
        return cls("polynomial", coefficients=tuple(map(float, coefficients)), domain=tuple(domain))

    def _clip(self, t):
        lo, hi = self.domain
        return min(max(t, lo), hi)

    def value(self, t: float) -> float:
        if self.kind == "constant":
            return self.level
        if self.kind == "sinusoid":
            return self.amplitude * math.sin(self.frequency * t + self.phase) + self.offset
        return _horner(self.coefficients, self._clip(t))

    def slope(self, t: float) -> float:
        if self.kind == "constant":
            return 0.0
        if self.kind == "sinusoid":
            return self.amplitude * self.frequency * math.cos(self.frequency * t + self.phase)
        lo, hi = self.domain
        if t < lo or t > hi:
            return 0.0
        return _horner(self._dcoef, t)

    def values(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if self.kind == "constant":
            return np.full_like(ts, self.level)
        if self.kind == "sinusoid":
            return self.amplitude * np.sin(self.frequency * ts + self.phase) + self.offset
        return np.polynomial.polynomial.polyval(np.clip(ts, *self.domain), self.coefficients)

    def slopes(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if self.kind == "constant":
            return np.zeros_like(ts)
        if self.kind == "sinusoid":
            return self.amplitude * self.frequency * np.cos(self.frequency * ts + self.phase)
        lo, hi = self.domain
        inside = (ts >= lo) & (ts <= hi)
        return np.where(inside, np.polynomial.polynomial.polyval(ts, self._dcoef) if self._dcoef else 0.0, 0.0)

    @property
    def lipschitz(self) -> float:
        """Exact sup of ``|slope|``."""
        if self.kind == "constant":
            return 0.0
        if self.kind == "sinusoid":
            return abs(self.amplitude * self.frequency)
        if not self._dcoef:
            return 0.0
        lo, hi = self.domain
        candidates = [lo, hi]
        d2 = np.polynomial.polynomial.polyder(self._dcoef)
        if len(d2) and np.any(d2):
            for r in np.polynomial.polynomial.polyroots(d2):
                if abs(r.imag) < 1e-12 and lo <= r.real <= hi:
                    candidates.append(float(r.real))
        return float(max(abs(_horner(self._dcoef, t)) for t in candidates))

    def speed(self, t: float) -> float:
        s = self.slope(t)
        return math.sqrt(1.0 + s * s)

    def grid_spacing(self) -> float:
        """Sampling step fine enough to separate local minima of point-to-graph distance."""
        if self.kind == "sinusoid":
            return min(0.1, 1.0 / (4.0 * max(abs(self.frequency), 1.0)))
        return min(0.1, 1.0 / (4.0 * max(self.lipschitz, 1.0)))

    def kinks(self) -> tuple[float, ...]:
        return self.domain if self.kind == "polynomial" else ()


def _horner(coefs, t: float) -> float:
    acc = 0.0
    for c in reversed(coefs):
        acc = acc * t + c
    return acc


class ArcLength:
    """Arc length along a :class:`CurveSpec` between two abscissae.

    Long spans are assembled from cached cell integrals on a fixed lattice so
    repeated queries stay cheap; every integral is adaptive Simpson at ``rtol``.
    """

    def __init__(self, curve: CurveSpec, rtol: float = 1e-10, cell: float = 0.25):
        self.curve = curve
        self.rtol = rtol
        self.cell = cell
        self._cum = {0: 0.0}  # lattice index -> arc length from 0
        self._lo = 0
        self._hi = 0

    def _segment(self, a: float, b: float) -> float:
        # Split at polynomial clip points where the slope is discontinuous.
        cuts = [k for k in self.curve.kinks() if a < k < b]
        pts = [a, *cuts, b]
        lo, hi = self.curve.domain
        total = 0.0
        for p, q in zip(pts, pts[1:]):
            # Outside the clip domain the curve is flat and speed is 1 exactly.
            flat = self.curve.kind == "polynomial" and (q <= lo or p >= hi)
            total += (q - p) if flat else adaptive_simpson(self.curve.speed, p, q, self.rtol)
        return total

    def _node(self, k: int) -> float:
        while k > self._hi:
            h = self._hi
            self._cum[h + 1] = self._cum[h] + self._segment(h * self.cell, (h + 1) * self.cell)
            self._hi += 1
        while k < self._lo:
            lo = self._lo
            self._cum[lo - 1] = self._cum[lo] - self._segment((lo - 1) * self.cell, lo * self.cell)
            self._lo -= 1
        return self._cum[k]

    def cumulative(self, t: float) -> float:
        """Signed arc length from abscissa 0 to ``t``."""
        k = math.floor(t / self.cell)
        return self._node(k) + self._segment(k * self.cell, t)

    def between(self, a: float, b: float) -> float:
        if a > b:
            a, b = b, a
        if b - a <= 2.0 * self.cell:
            return self._segment(a, b)
        return self.cumulative(b) - self.cumulative(a)
