"""Exact rational machinery: mediants, Farey sequences, continued fractions,
and the Thomae ("popcorn") function.

Everything here is exact integer arithmetic except where a float has to be
turned back into a fraction (``continued_fraction_of``, ``detect_rational``).
Rationals are carried as :class:`fractions.Fraction`, which is auto-reduced
on construction and keeps the denominator >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

__all__ = [
    "ContinuedFraction",
    "continued_fraction_of",
    "detect_rational",
    "farey_sequence",
    "mediant",
    "orchard_projection",
    "popcorn",
    "quotient_distribution",
]

RationalLike = Union[Fraction, int]


def mediant(a: Fraction, b: Fraction) -> Fraction:
    """Freshman sum (p1+p2)/(q1+q2) of two reduced fractions.

    For Farey neighbours (|p1*q2 - p2*q1| = 1) the mediant is already in
    lowest terms and lies strictly between the two arguments.
    """
    return Fraction(a.numerator + b.numerator, a.denominator + b.denominator)


def farey_sequence(order: int) -> list[Fraction]:
    """Ascending list of all reduced fractions in [0, 1] with denominator <= order."""
    if order < 1:
        raise ValueError(f"Farey order must be >= 1, got {order}")
    # standard next-term recurrence from (0/1, 1/order)
    a, b, c, d = 0, 1, 1, order
    seq = [Fraction(0, 1)]
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        seq.append(Fraction(a, b))
    return seq


@dataclass(frozen=True)
class ContinuedFraction:
    """Regular continued fraction [a0; a1, a2, ...] with its convergents.

    Convergents follow the standard recurrence
    p_n = a_n p_{n-1} + p_{n-2}, q_n = a_n q_{n-1} + q_{n-2}
    seeded with (p_-1, p_-2) = (1, 0) and (q_-1, q_-2) = (0, 1).
    ``exact`` is True when the expansion terminated, i.e. the last
    convergent reproduces the input value (up to the stopping tolerance
    for float input).
    """

    coefficients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    exact: bool

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("continued fraction needs at least one coefficient")
        if any(a < 1 for a in self.coefficients[1:]):
            raise ValueError("partial quotients a_i must be >= 1 for i >= 1")
        qs = [q for _, q in self.convergents]
        if any(q2 <= q1 for q1, q2 in zip(qs[1:], qs[2:])):
            raise ValueError("convergent denominators must increase strictly for n >= 1")
        if any(math.gcd(p, q) != 1 for p, q in self.convergents):
            raise ValueError("convergents must be reduced")

    @property
    def value(self) -> Fraction:
        """Value of the last convergent."""
        p, q = self.convergents[-1]
        return Fraction(p, q)

    @property
    def depth(self) -> int:
        return len(self.coefficients)


def _coefficient_stream(x: float, max_depth: int, tol: float) -> Iterator[int]:
    """Partial quotients of a float, stopping when the remainder is within
    ``tol`` of an integer (guards against amplifying float noise)."""
    for _ in range(max_depth):
        a = math.floor(x)
        frac = x - a
        if frac > 1.0 - tol:
            # remainder is an integer up to noise; fold it in and stop
            yield a + 1
            return
        yield a
        if frac < tol:
            return
        x = 1.0 / frac


def _exact_coefficient_stream(x: Fraction, max_depth: int) -> Iterator[int]:
    num, den = x.numerator, x.denominator
    for _ in range(max_depth):
        a, rem = divmod(num, den)
        yield a
        if rem == 0:
            return
        num, den = den, rem


def _convergents(coeffs: list[int]) -> list[tuple[int, int]]:
    p1, p2 = 1, 0
    q1, q2 = 0, 1
    out = []
    for a in coeffs:
        p1, p2 = a * p1 + p2, p1
        q1, q2 = a * q1 + q2, q1
        out.append((p1, q1))
    return out


def continued_fraction_of(
    x: Union[float, RationalLike], max_depth: int = 64, tol: float = 1e-12
) -> ContinuedFraction:
    """Regular continued fraction of a positive number.

    Exact (terminating) Euclid division for ``Fraction``/``int`` input; for
    float input the expansion stops once the fractional remainder is within
    ``tol`` of an integer or ``max_depth`` is reached.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if isinstance(x, (Fraction, int)):
        if x <= 0:
            raise ValueError(f"continued fraction input must be positive, got {x}")
        coeffs = list(_exact_coefficient_stream(Fraction(x), max_depth))
        exact = Fraction(x) == _as_value(coeffs)
    else:
        xf = float(x)
        if not math.isfinite(xf):
            raise ValueError("continued fraction input must be finite")
        if xf <= 0:
            raise ValueError(f"continued fraction input must be positive, got {x}")
        coeffs = list(_coefficient_stream(xf, max_depth, tol))
        exact = len(coeffs) < max_depth or abs(float(_as_value(coeffs)) - xf) <= tol
        if len(coeffs) == max_depth:
            exact = False
    return ContinuedFraction(tuple(coeffs), tuple(_convergents(coeffs)), exact)


def _as_value(coeffs: list[int]) -> Fraction:
    p, q = _convergents(coeffs)[-1]
    return Fraction(p, q)


def detect_rational(x: float, q_max: int, delta: float) -> Optional[Fraction]:
    """Smallest-denominator fraction p/q with q <= q_max and |x - p/q| <= delta.

    Walks the continued-fraction convergents of ``x``; their errors decrease
    strictly, so the first convergent inside ``delta`` has the smallest
    admissible denominator.  Returns ``None`` when no convergent with
    q <= q_max qualifies.
    """
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if not math.isfinite(x):
        return None
    shift = math.floor(x)
    frac = x - shift
    coeffs: list[int] = []
    for a in _coefficient_stream(frac + 1.0, 64, 1e-18):
        # expand frac+1 (>0) to dodge the zero corner, subtract the shift below
        coeffs.append(a)
        p, q = _convergents(coeffs)[-1]
        if q > q_max:
            return None
        cand = Fraction(p, q) - 1 + shift
        if abs(x - float(cand)) <= delta:
            return cand
    return None


def popcorn(
    x: Union[float, RationalLike],
    q_max: int = 10_000,
    delta: float = 1e-12,
) -> Union[float, Fraction]:
    """Thomae popcorn function g: 1/q at reduced rationals p/q, 0 at irrationals.

    Exact input (``Fraction``/``int``) gives an exact ``Fraction`` back.
    Float input is classified with :func:`detect_rational` under the
    (q_max, delta) policy and returns a float; detection failure is treated
    as irrational and gives 0.0.
    """
    if isinstance(x, (Fraction, int)):
        xf = Fraction(x)
        if not 0 <= xf <= 1:
            raise ValueError(f"popcorn domain is [0, 1], got {x}")
        return Fraction(1, xf.denominator)
    xv = float(x)
    if not 0.0 <= xv <= 1.0:
        raise ValueError(f"popcorn domain is [0, 1], got {x}")
    found = detect_rational(xv, q_max, delta)
    if found is None:
        return 0.0
    return 1.0 / found.denominator


def orchard_projection(p: int, q: int) -> tuple[float, float]:
    """Where a lattice tree at coprime (p, q) is seen from the origin.

    The tree projects onto the baseline at p/(p+q) with visible height
    1/(p+q); sweeping all coprime pairs traces out the popcorn function.
    """
    if p < 1 or q < 1:
        raise ValueError("lattice coordinates must be >= 1")
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) must be coprime")
    return p / (p + q), 1.0 / (p + q)


def quotient_distribution(p: int, q: int, eps: float) -> float:
    """Survival weight of the quotient p/(p+q) for two independent integers
    drawn with law (1-eps)^n: the geometric sum f^(p+q)/(1 - f^(p+q)).

    For eps -> 0 this behaves like 1/(eps*(p+q)), the popcorn scaling.
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"({p}, {q}) must be coprime")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    w = (1.0 - eps) ** (p + q)
    return w / (1.0 - w)
