"""Log-magnitude of the Dedekind eta function anywhere in the upper half-plane.

Only ln|eta(z)| is computed (the 24th-root-of-unity phase of the modular
transformation law never matters for magnitudes).  Three routes cover the
plane:

* a product/q-series evaluation, valid for Im(z) >= 0.5, where a handful of
  terms reach full double precision,
* modular reduction into the fundamental domain, accumulating the exact
  magnitude scale ln|eta(-1/z)| - ln|eta(z)| = (1/2) ln|z| per inversion,
* an exact cusp route for rational x = m/k at tiny Im(z), built from integer
  Moebius data so that no precision is lost where floating reduction would
  degrade: |eta(m/k + iy)| = |eta(n/k + i/(k^2 y))| / sqrt(k y) with
  n = m^{-1} (mod k).

Values are carried as logs throughout: |eta| underflows double precision
already for y below ~4e-3 at the cusp x = 0.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

__all__ = [
    "CUSP_IM_THRESHOLD",
    "LogEtaValue",
    "ModularPoint",
    "Q_SERIES_MIN_IM",
    "cusp_asymptote_ratio",
    "duality_check",
    "h",
    "log_abs_eta",
    "log_abs_eta_cusp",
    "log_abs_eta_qseries",
    "log_h",
    "reduce_to_fundamental",
]

Q_SERIES_MIN_IM = 0.5
CUSP_IM_THRESHOLD = 1e-3
_REDUCTION_CAP = 10_000
_UNDERFLOW_LOG = -700.0
_METHODS = ("q-series", "reduced", "cusp-duality", "cusp-asymptotic")


@dataclass(frozen=True)
class ModularPoint:
    """Point z = x + iy in the upper half-plane, x optionally exact-rational.

    When ``x_rational`` is given it is authoritative and the float ``x`` is
    derived from it, so near-cusp evaluations can use exact integer data.
    """

    x: float
    y: float
    x_rational: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if not self.y > 0:
            raise ValueError(f"modular point needs Im(z) > 0, got {self.y}")
        if self.x_rational is not None:
            object.__setattr__(self, "x", float(self.x_rational))

    @classmethod
    def at_rational(cls, x: Fraction, y: float) -> "ModularPoint":
        return cls(float(x), y, x_rational=Fraction(x))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class LogEtaValue:
    """ln|eta(z)| together with the evaluation route and a certified tail bound."""

    log_abs: float
    method: str
    certified_error: float

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not (math.isfinite(self.certified_error) and self.certified_error >= 0):
            raise ValueError("certified_error must be finite and non-negative")


def log_abs_eta_qseries(z: ModularPoint, tol: float = 1e-15) -> LogEtaValue:
    """ln|eta| from the defining product, for Im(z) >= 0.5.

    ln|eta(z)| = -pi*y/12 + sum_{n>=1} ln|1 - e^{2 pi i n z}|, truncated once
    |e^{2 pi i n z}| < tol; the geometric tail gives the certified error.
    """
    if z.y < Q_SERIES_MIN_IM:
        raise ValueError(
            f"q-series needs Im(z) >= {Q_SERIES_MIN_IM} (got {z.y}); reduce first"
        )
    nome = cmath.exp(2j * math.pi * z.z)
    abs_nome = abs(nome)
    if abs_nome == 0.0:  # Im(z) beyond ~112: the product is 1 to all bits
        return LogEtaValue(-math.pi * z.y / 12.0, "q-series", 0.0)
    terms = max(1, math.ceil(math.log(tol) / math.log(abs_nome)))
    total = -math.pi * z.y / 12.0
    power = 1.0 + 0.0j
    for _ in range(terms):
        power *= nome
        total += math.log(abs(1.0 - power))
    tail = abs_nome ** (terms + 1)
    certified = tail / ((1.0 - abs_nome) * (1.0 - tail))
    return LogEtaValue(total, "q-series", certified)


def reduce_to_fundamental(z: ModularPoint) -> tuple[ModularPoint, float]:
    """Map z into the fundamental domain |x| <= 1/2, |z| >= 1.

    Alternates unit shifts (which leave |eta| unchanged) with inversions
    z -> -1/z, accumulating ``log_scale`` so that

        ln|eta(z)| = ln|eta(z_reduced)| + log_scale.

    The reduced point has Im >= sqrt(3)/2.  Near-rational x at tiny y can
    exhaust double precision before escaping; the iteration cap turns that
    into an error instead of looping.
    """
    x, y = z.x, z.y
    scale = 0.0
    for _ in range(_REDUCTION_CAP):
        x -= round(x)
        r2 = x * x + y * y
        if r2 >= 1.0:
            return ModularPoint(x, y), scale
        scale -= 0.25 * math.log(r2)
        x, y = -x / r2, y / r2
    raise RuntimeError(
        "modular reduction exceeded the iteration cap; "
        "float precision is exhausted this close to the real axis"
    )


def _dual_cusp(m: int, k: int) -> tuple[int, int]:
    """Integer data (n, r) of the cusp duality: m*n - k*r = 1, 0 <= n < k."""
    if k < 1:
        raise ValueError(f"cusp denominator must be >= 1, got {k}")
    m = m % k if k > 1 else 0
    if k > 1 and math.gcd(m, k) != 1:
        raise ValueError(f"({m}, {k}) must be coprime")
    n = pow(m, -1, k) if k > 1 else 0
    r = (m * n - 1) // k
    return n, r


def log_abs_eta_cusp(m: int, k: int, y: float, mode: str = "exact") -> LogEtaValue:
    """ln|eta({m/k} + iy)| from the cusp duality, in exact or asymptotic form.

    exact:      -(1/2) ln(k y) + ln|eta({n/k} + i/(k^2 y))| with the dual
                point evaluated by reduction + q-series (valid for all y);
    asymptotic: -pi/(12 k^2 y) - (1/2) ln(k y), the leading behaviour for
                y << 1/k^2 (rejected outside that region).
    """
    if y <= 0:
        raise ValueError(f"need y > 0, got {y}")
    n, _ = _dual_cusp(m, k)
    if mode == "asymptotic":
        if y >= 1.0 / (k * k):
            raise ValueError(f"asymptotic cusp form needs y < 1/k^2 = {1.0 / (k * k)}")
        dual_im = 1.0 / (k * k * y)
        # first dropped product term of the dual q-series
        certified = math.exp(-2.0 * math.pi * dual_im) if dual_im < 300 else 0.0
        return LogEtaValue(
            -math.pi / (12.0 * k * k * y) - 0.5 * math.log(k * y),
            "cusp-asymptotic",
            certified,
        )
    if mode != "exact":
        raise ValueError(f"mode must be 'exact' or 'asymptotic', got {mode!r}")
    dual = ModularPoint(n / k, 1.0 / (k * k * y))
    if dual.y >= Q_SERIES_MIN_IM:
        inner = log_abs_eta_qseries(dual)
    else:
        reduced, extra = reduce_to_fundamental(dual)
        base = log_abs_eta_qseries(reduced)
        inner = LogEtaValue(base.log_abs + extra, "q-series", base.certified_error)
    return LogEtaValue(
        -0.5 * math.log(k * y) + inner.log_abs, "cusp-duality", inner.certified_error
    )


def log_abs_eta(z: ModularPoint) -> LogEtaValue:
    """ln|eta(z)| by the appropriate route.

    Rational-tagged x below Im = 1e-3 goes through the exact cusp duality
    (floating reduction would shred the digits of x there); everything else
    is reduced into the fundamental domain and fed to the q-series.
    """
    if z.x_rational is not None and z.y < CUSP_IM_THRESHOLD:
        frac = z.x_rational - math.floor(z.x_rational)
        return log_abs_eta_cusp(frac.numerator, frac.denominator, z.y, mode="exact")
    reduced, scale = reduce_to_fundamental(z)
    base = log_abs_eta_qseries(reduced)
    if scale == 0.0 and reduced.x == z.x and reduced.y == z.y:
        return base
    return LogEtaValue(base.log_abs + scale, "reduced", base.certified_error)


def log_h(z: ModularPoint) -> float:
    """ln h(z) = ln|eta(z)| + (1/4) ln Im(z); h is fully modular-invariant."""
    return log_abs_eta(z).log_abs + 0.25 * math.log(z.y)


def h(z: ModularPoint) -> float:
    """Normalized magnitude h(z) = |eta(z)| * Im(z)^{1/4}.

    Computed in log space; values below exp(-700) underflow to 0.0 with a
    RuntimeWarning (use :func:`log_h` when the log is what you need).
    """
    value = log_h(z)
    if value < _UNDERFLOW_LOG:
        warnings.warn(
            f"h underflows double precision (log value {value:.3g}); returning 0.0",
            RuntimeWarning,
            stacklevel=2,
        )
        return 0.0
    return math.exp(value)


def duality_check(m: int, k: int, y: float) -> tuple[float, float]:
    """Both sides of the cusp duality h({m/k} + iy) = h({n/k} + i/(k^2 y)).

    n is the modular inverse of m mod k.  Both sides are evaluated through
    plain reduction + q-series (never the cusp shortcut, which *is* this
    identity), so agreement is a genuine cross-check.
    """
    if k < 1:
        raise ValueError(f"cusp denominator must be >= 1, got {k}")
    if math.gcd(m, k) != 1:
        raise ValueError(f"({m}, {k}) must be coprime")
    if y <= 0:
        raise ValueError(f"need y > 0, got {y}")
    n, _ = _dual_cusp(m, k)
    lhs = h(ModularPoint((m % k) / k, y))
    rhs = h(ModularPoint(n / k, 1.0 / (k * k * y)))
    return lhs, rhs


def cusp_asymptote_ratio(m: int, k: int, y: float) -> float:
    """sqrt(-ln|eta({m/k}+iy)|) * k * sqrt(12 y / pi); tends to 1 as y -> 0."""
    value = log_abs_eta_cusp(m, k, y, mode="exact").log_abs
    if value >= 0:
        raise ValueError("ratio undefined: -ln|eta| must be positive (y too large)")
    return math.sqrt(-value) * k * math.sqrt(12.0 * y / math.pi)
