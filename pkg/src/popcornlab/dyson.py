"""Integrated density of states of the binary-mass harmonic chain and its
Borwein continued-fraction representation.

In the infinite-heavy-mass limit the chain splits into uniform islands of n
light masses with probability (1-f)^2 f^n, and the integrated density of
states below lambda in (-1, 3) is

    N(lambda) = 1 - ((1-f)/f^2) * sum_{n>=1} f^[n pi/theta],

with cos(theta) = sqrt(lambda+1)/2 and [.] the integer part.  The sum is a
Borwein-Borwein generating function G(z) = sum z^[n alpha] evaluated at
z = f, alpha = pi/theta, which also admits a continued-fraction expansion in
the convergents of alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rationals import continued_fraction_of

__all__ = [
    "DysonChain",
    "borwein_G",
    "dos_edge_asymptote",
    "int_part",
    "integrated_dos",
    "theta_of_lambda",
]

# floor-with-guard: resonant alpha (pi/theta exactly integer) lands a hair
# below the integer in floats; the guard restores the exact-value convention
_FLOOR_GUARD = 1e-9

_SERIES_TOL = 1e-15
_OVERFLOW_LOG = 705.0


def int_part(t: float) -> float:
    """floor(t) with a 1e-9 guard so exact integers survive float noise."""
    return math.floor(t + _FLOOR_GUARD)


@dataclass(frozen=True)
class DysonChain:
    """Heavy-mass probability f and series truncation for the chain DOS."""

    f: float
    n_max: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.f < 1.0:
            raise ValueError(f"f must lie in (0, 1), got {self.f}")
        if self.n_max == 0:
            # exponents grow at least like 2n, so f^(2 n_max) < 1e-15 suffices
            resolved = max(2, int(math.ceil(math.log(1e-15) / (2.0 * math.log(self.f)))))
            object.__setattr__(self, "n_max", resolved)
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    def tail_bound(self, alpha: float) -> float:
        """Geometric bound on the truncated part of sum f^[n alpha]."""
        return self.f ** ((self.n_max + 1) * alpha - 1.0) / (1.0 - self.f**alpha)


def theta_of_lambda(lam: float) -> float:
    """Angle theta in (0, pi/2) with cos(theta) = sqrt(lambda + 1)/2."""
    if not -1.0 < lam < 3.0:
        raise ValueError(f"lambda must lie in (-1, 3), got {lam}")
    return math.acos(math.sqrt(lam + 1.0) / 2.0)


def integrated_dos(lam: float, chain: DysonChain) -> float:
    """Fraction of states below lambda: 1 - ((1-f)/f^2) sum f^[n pi/theta]."""
    theta = theta_of_lambda(lam)
    alpha = math.pi / theta
    n = np.arange(1, chain.n_max + 1, dtype=float)
    exponents = np.floor(n * alpha + _FLOOR_GUARD)
    series = float(np.sum(np.exp(exponents * math.log(chain.f))))
    return 1.0 - (1.0 - chain.f) / (chain.f * chain.f) * series


def dos_edge_asymptote(lam: float, f: float) -> float:
    """Lifshitz edge form 1 - ((1-f)/f^2) exp(2 pi ln f / sqrt(3 - lambda)).

    Leading n = 1 term of the DOS series near the upper band edge; valid for
    lambda close to 3 (enforced: lambda > 2.5).
    """
    if not 0.0 < f < 1.0:
        raise ValueError(f"f must lie in (0, 1), got {f}")
    if not 2.5 < lam < 3.0:
        raise ValueError(f"edge asymptote needs lambda in (2.5, 3), got {lam}")
    return 1.0 - (1.0 - f) / (f * f) * math.exp(2.0 * math.pi * math.log(f) / math.sqrt(3.0 - lam))


def _odd_length_coefficients(alpha: float, depth: int) -> tuple[list[int], bool]:
    """Continued-fraction coefficients of alpha, normalized to odd length when
    the expansion terminates.

    A terminating expansion has two representations ([..., a] and
    [..., a-1, 1]); only the odd-length one reproduces the exact-value floor
    convention [n alpha] at the resonances, so that is the one used.
    """
    cf = continued_fraction_of(alpha, max_depth=depth, tol=1e-12)
    coeffs = list(cf.coefficients)
    if cf.exact and len(coeffs) % 2 == 0:
        if coeffs[-1] >= 2:
            coeffs[-1] -= 1
            coeffs.append(1)
        else:
            coeffs.pop()
            coeffs[-1] += 1
    return coeffs, cf.exact


def borwein_G(z: float, alpha: float, depth: int = 24, method: str = "series") -> float:
    """Generating function G(z) = sum_{n>=1} z^[n alpha] of the integer parts.

    series: direct summation, truncated when the geometric tail bound
            z^((n+1) alpha - 1)/(1 - z^alpha) drops below 1e-15;
    cf:     Borwein continued fraction G = (z/(1-z)) / (A_0 + 1/(A_1 + ...))
            with A_j = (z^(-P_j) - z^(-P_{j-2})) / (z^(-P_{j-1}) - 1), where
            P_j are the convergent numerators of alpha's regular expansion
            (equivalently the denominators of the expansion of 1/alpha),
            seeded P_{-1} = 1, P_{-2} = 0.  Levels whose exponents exceed
            the double range are evaluated as +inf, which truncates the
            chain with an error below exp(-700).
    """
    if not 0.0 < z < 1.0:
        raise ValueError(f"z must lie in (0, 1), got {z}")
    if alpha < 1.0:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if method == "series":
        log_z = math.log(z)
        decay = math.exp(alpha * log_z)
        total = 0.0
        n = 1
        while True:
            total += math.exp(int_part(n * alpha) * log_z)
            tail = math.exp(((n + 1) * alpha - 1.0) * log_z) / (1.0 - decay)
            if tail < _SERIES_TOL:
                return total
            n += 1
    if method != "cf":
        raise ValueError(f"method must be 'series' or 'cf', got {method!r}")
    coeffs, _ = _odd_length_coefficients(alpha, depth)
    neg_log_z = -math.log(z)
    exponent_cap = int(_OVERFLOW_LOG / neg_log_z) + 1  # integer compare dodges float overflow

    def z_to(e: int) -> float:
        return 0.0 if e >= exponent_cap else math.exp(-e * neg_log_z)

    # convergent numerators with seeds P_{-1} = 1, P_{-2} = 0
    p_prev, p_prev2 = 1, 0
    numerators = []
    for a in coeffs:
        p_prev, p_prev2 = a * p_prev + p_prev2, p_prev
        numerators.append(p_prev)
    levels = []
    for j, p_j in enumerate(numerators):
        pj1 = numerators[j - 1] if j >= 1 else 1
        pj2 = numerators[j - 2] if j >= 2 else (1 if j == 1 else 0)
        d_lead = p_j - pj1  # >= 0, drives the size of A_j
        if d_lead >= exponent_cap:
            levels.append(math.inf)
            continue
        num = 1.0 - z_to(p_j - pj2)
        den = 1.0 - z_to(pj1)
        levels.append(math.exp(d_lead * neg_log_z) * num / den)
    chain_value = levels[-1]
    for a_j in reversed(levels[:-1]):
        chain_value = a_j + (0.0 if math.isinf(chain_value) else 1.0 / chain_value)
    return (z / (1.0 - z)) / chain_value
