"""Analytic spectral density of the exponentially weighted path-graph ensemble.

An ensemble member is a path of n vertices drawn with weight f^n (0 < f < 1);
its adjacency spectrum is 2*cos(pi*k/(n+1)), k = 1..n.  The ensemble density
is the weighted sum of unit-height Lorentzian bumps of half-width ``y``

    rho(lam) = sum_n f^n sum_k y^2 / ((lam - 2 cos(pi k/(n+1)))^2 + y^2),

which develops a popcorn-like hierarchy of peaks at lam = 2*cos(pi*p/(p+q)).
The damping ``f`` and the regularization width ``y`` are kept as independent
parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .rationals import mediant

__all__ = [
    "ChainEnsemble",
    "PeakPoint",
    "PeakSeries",
    "SpectralGrid",
    "build_peak_series",
    "edge_series",
    "interior_series",
    "lifshitz_fit",
    "path_eigenvalues",
    "peak_intensity",
    "peak_position",
    "spectral_density",
    "spectral_density_grid",
]

DEFAULT_TAIL_BOUND = 1e-12


def _n_max_for_tail(f: float, tail: float) -> int:
    # smallest n with f^(n+1)/(1-f) < tail
    n = int(math.ceil(math.log(tail * (1.0 - f)) / math.log(f))) - 1
    return max(n, 1)


@dataclass(frozen=True)
class ChainEnsemble:
    """Parameters of the weighted linear-chain ensemble.

    ``n_max`` defaults to the smallest truncation with certified tail bound
    f^(n_max+1)/(1-f) below ``DEFAULT_TAIL_BOUND``.
    """

    f: float
    y: float
    n_max: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.f < 1.0:
            raise ValueError(f"damping f must lie in (0, 1), got {self.f}")
        if self.y <= 0.0:
            raise ValueError(f"regularization width y must be positive, got {self.y}")
        if self.n_max == 0:
            object.__setattr__(self, "n_max", _n_max_for_tail(self.f, DEFAULT_TAIL_BOUND))
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def tail_bound(self) -> float:
        """Certified bound on the weight dropped by truncating at n_max."""
        return self.f ** (self.n_max + 1) / (1.0 - self.f)


@dataclass(frozen=True)
class SpectralGrid:
    """Density samples on an ascending lambda grid."""

    lambdas: np.ndarray
    densities: np.ndarray

    def __post_init__(self) -> None:
        lam = np.asarray(self.lambdas, dtype=float)
        rho = np.asarray(self.densities, dtype=float)
        if lam.shape != rho.shape or lam.ndim != 1:
            raise ValueError("lambdas and densities must be 1d arrays of equal length")
        if np.any(np.diff(lam) <= 0):
            raise ValueError("lambda grid must be strictly ascending")
        if np.any(rho < 0):
            raise ValueError("densities must be non-negative")
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "densities", rho)


def path_eigenvalues(n: int) -> np.ndarray:
    """Adjacency eigenvalues 2*cos(pi*k/(n+1)), k = 1..n, of a path of n vertices, descending."""
    if n < 1:
        raise ValueError(f"path length must be >= 1, got {n}")
    k = np.arange(1, n + 1)
    return 2.0 * np.cos(np.pi * k / (n + 1))


def spectral_density(lam, ens: ChainEnsemble):
    """Regularized ensemble density at ``lam`` (scalar or array).

    Uses the exact resolvent form of the double sum: for each chain length
    the inner Lorentzian sum equals y*Im of the log-derivative of the path
    characteristic polynomial U_n(w/2) at w = lam - i*y, evaluated through
    stable bounded exponentials.  This is an algebraic identity, not an
    approximation; see ``_direct_density`` for the literal double sum.
    """
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
    w = lam_arr - 1j * ens.y
    theta = np.arccos(w / 2.0)  # Im(w) < 0 puts Im(theta) > 0
    sin_t = np.sin(theta)
    inv_2s = 0.5 / sin_t
    cot_base = np.cos(theta) / sin_t
    growth = np.exp(2j * theta)  # |growth| < 1 strictly for y > 0
    power = growth.copy()
    acc = np.zeros_like(lam_arr)
    weight = 1.0
    for n in range(1, ens.n_max + 1):
        power = power * growth  # e^{2i(n+1)theta}
        cot_n = 1j * (power + 1.0) / (power - 1.0)
        weight *= ens.f
        acc += weight * ((cot_base - (n + 1) * cot_n) * inv_2s).imag
    rho = ens.y * acc
    if np.isscalar(lam) or np.asarray(lam).ndim == 0:
        return float(rho[0])
    return rho


def _direct_density(lam, ens: ChainEnsemble):
    """Literal Lorentzian double sum; reference implementation for tests."""
    lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
    y2 = ens.y * ens.y
    rho = np.zeros_like(lam_arr)
    for n in range(1, ens.n_max + 1):
        eig = path_eigenvalues(n)
        diff = lam_arr[:, None] - eig[None, :]
        rho += ens.f**n * np.sum(y2 / (diff * diff + y2), axis=1)
    if np.isscalar(lam) or np.asarray(lam).ndim == 0:
        return float(rho[0])
    return rho


def spectral_density_grid(ens: ChainEnsemble, lambdas: np.ndarray) -> SpectralGrid:
    """Evaluate the density on an ascending grid and bundle the result."""
    lam = np.asarray(lambdas, dtype=float)
    return SpectralGrid(lam, spectral_density(lam, ens))


def peak_intensity(p: int, q: int, f: float) -> float:
    """Exact peak value sum_s f^((p+q)s - 1) = f^(p+q-1)/(1 - f^(p+q)).

    This is the density the Lorentzian sum attains at the exact peak
    position 2*cos(pi*p/(p+q)) in the y -> 0 limit; for f -> 1 it behaves
    like 1/((1-f)(p+q)).
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) must be coprime")
    if not 0.0 < f < 1.0:
        raise ValueError(f"damping f must lie in (0, 1), got {f}")
    m = p + q
    return f ** (m - 1) / (1.0 - f**m)


def peak_position(p: int, q: int, sign: int = 1) -> float:
    """Peak position sign * 2*cos(pi*p/(p+q)); sign=-1 gives the mirrored view."""
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) must be coprime")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign * 2.0 * math.cos(math.pi * p / (p + q))


class PeakPoint(NamedTuple):
    label: Fraction
    position: float
    intensity: float


@dataclass(frozen=True)
class PeakSeries:
    """Monotone sequence of labelled peaks (mirrored-axis positions)."""

    points: tuple[PeakPoint, ...]

    def __post_init__(self) -> None:
        pos = [pt.position for pt in self.points]
        steps = np.diff(pos)
        if len(pos) > 1 and not (np.all(steps > 0) or np.all(steps < 0)):
            raise ValueError("peak positions must be strictly monotone along the series")

    @property
    def labels(self) -> list[Fraction]:
        return [pt.label for pt in self.points]

    @property
    def positions(self) -> np.ndarray:
        return np.array([pt.position for pt in self.points])

    @property
    def intensities(self) -> np.ndarray:
        return np.array([pt.intensity for pt in self.points])

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def _peak_point(label: Fraction, f: float) -> PeakPoint:
    p = label.numerator
    q = label.denominator - label.numerator
    return PeakPoint(label, peak_position(p, q, sign=-1), peak_intensity(p, q, f))


def build_peak_series(left: Fraction, right: Fraction, depth: int, f: float) -> PeakSeries:
    """Mediant cascade from ``left`` toward the attractor ``right``.

    Successive labels are x_1 = left (+) right, x_j = x_{j-1} (+) right,
    where (+) is the mediant; positions carry the mirrored-axis convention
    -2*cos(pi*label).  With left=0/1, right=1/1 this generates the main
    edge series k/(k+1); with left=1/1, right=1/2 the interior series
    k'/(2k'-1) accumulating at the band centre.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if left == right:
        raise ValueError("series endpoints must differ")
    points = []
    current = left
    for _ in range(depth):
        current = mediant(current, right)
        points.append(_peak_point(current, f))
    return PeakSeries(tuple(points))


def edge_series(depth: int, f: float) -> PeakSeries:
    """Main enveloping series k/(k+1), accumulating at the band edge."""
    return build_peak_series(Fraction(0, 1), Fraction(1, 1), depth, f)


def interior_series(depth: int, f: float) -> PeakSeries:
    """Interior series k'/(2k'-1), accumulating at the band centre."""
    return build_peak_series(Fraction(1, 1), Fraction(1, 2), depth, f)


def lifshitz_fit(series: PeakSeries, accumulation_point: float) -> tuple[float, float]:
    """Lifshitz-tail regression along a peak series.

    For a series accumulating at the band edge (|accumulation| = 2) the
    log-intensity is regressed against 1/sqrt|2 - |lam||, which makes the
    slope converge to pi*ln(f); for an interior accumulation point the
    regressor is 1/|lam - lam_cr| and the slope is again proportional to
    ln(f).  Returns (slope, rms residual).
    """
    lam = series.positions
    log_int = np.log(series.intensities)
    if abs(2.0 - abs(accumulation_point)) < 1e-9:
        regressor = 1.0 / np.sqrt(np.abs(2.0 - np.abs(lam)))
    else:
        regressor = 1.0 / np.abs(lam - accumulation_point)
    if len(np.unique(regressor)) < 3:
        raise ValueError("need at least 3 distinct abscissae for the regression")
    slope, intercept = np.polyfit(regressor, log_int, 1)
    resid = log_int - (slope * regressor + intercept)
    return float(slope), float(np.sqrt(np.mean(resid * resid)))
