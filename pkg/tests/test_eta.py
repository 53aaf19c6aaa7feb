import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from popcornlab.eta import (
    CUSP_IM_THRESHOLD,
    ModularPoint,
    _dual_cusp,
    cusp_asymptote_ratio,
    duality_check,
    h,
    log_abs_eta,
    log_abs_eta_cusp,
    log_abs_eta_qseries,
    log_h,
    reduce_to_fundamental,
)

mp.mp.dps = 40

# closed form Gamma(1/4)/(2 pi^(3/4)), computed independently at 40 digits
LOG_ABS_ETA_I = -0.2636720702489179826541921947532533058856
ABS_ETA_I = 0.7682254223260566590025941795761806445179


def mp_log_abs_eta(z, terms=2000):
    """High-precision reference straight from the defining product."""
    z = mp.mpc(z)
    q = mp.e ** (2j * mp.pi * z)
    total = (1j * mp.pi * z / 12).real
    qn = mp.mpc(1)
    for _ in range(terms):
        qn *= q
        total += mp.log(abs(1 - qn))
        if abs(qn) < mp.mpf("1e-45"):
            break
    return float(total)


# ---------------------------------------------------------------- q-series

def test_qseries_at_i():
    value = log_abs_eta_qseries(ModularPoint(0.0, 1.0))
    assert value.log_abs == pytest.approx(LOG_ABS_ETA_I, abs=1e-14)
    assert value.method == "q-series"
    assert value.certified_error < 1e-15


def test_qseries_unit_shift_is_exact():
    a = log_abs_eta_qseries(ModularPoint(0.0, 1.0)).log_abs
    b = log_abs_eta_qseries(ModularPoint(1.0, 1.0)).log_abs
    assert a == pytest.approx(b, abs=1e-15)


def test_qseries_large_y_leading_term():
    value = log_abs_eta_qseries(ModularPoint(0.37, 10.0)).log_abs
    assert value == pytest.approx(-math.pi * 10 / 12, abs=1e-11)


def test_qseries_rejects_low_y():
    with pytest.raises(ValueError):
        log_abs_eta_qseries(ModularPoint(0.0, 0.3))


def test_qseries_vs_reference():
    rng = np.random.default_rng(2)
    for _ in range(20):
        x, y = rng.uniform(-0.5, 0.5), rng.uniform(0.5, 4.0)
        mine = log_abs_eta_qseries(ModularPoint(x, y)).log_abs
        assert mine == pytest.approx(mp_log_abs_eta(complex(x, y)), abs=1e-13)


# ---------------------------------------------------------------- reduction

def test_reduce_identity_inside_fundamental_domain():
    z, scale = reduce_to_fundamental(ModularPoint(0.3, 2.0))
    assert (z.x, z.y) == (0.3, 2.0)
    assert scale == 0.0


def test_reduce_single_inversion():
    z, scale = reduce_to_fundamental(ModularPoint(0.0, 0.5))
    assert (z.x, z.y) == pytest.approx((0.0, 2.0))
    assert scale == pytest.approx(math.log(math.sqrt(2)), abs=1e-15)


def test_reduce_lands_in_fundamental_domain():
    rng = np.random.default_rng(3)
    for _ in range(100):
        pt = ModularPoint(rng.uniform(-3, 3), 10 ** rng.uniform(-4, 0.5))
        reduced, _ = reduce_to_fundamental(pt)
        assert abs(reduced.x) <= 0.5 + 1e-12
        assert reduced.y >= math.sqrt(3) / 2 - 1e-12


def test_reduce_near_cusp_consistent_with_duality():
    pt = ModularPoint(0.5, 1e-6)
    reduced, scale = reduce_to_fundamental(pt)
    total = log_abs_eta_qseries(reduced).log_abs + scale
    dual = log_abs_eta_cusp(1, 2, 1e-6).log_abs
    assert total == pytest.approx(dual, abs=1e-9)


def test_reduction_route_vs_reference():
    for x, y in [(0.3, 0.4), (0.123, 0.05), (0.618, 0.21), (-0.41, 0.09)]:
        mine = log_abs_eta(ModularPoint(x, y)).log_abs
        assert mine == pytest.approx(mp_log_abs_eta(complex(x, y)), abs=1e-12)


# ---------------------------------------------------------------- dispatcher

def test_dispatch_methods():
    assert log_abs_eta(ModularPoint(0.0, 1.0)).method == "q-series"
    assert log_abs_eta(ModularPoint(0.2, 0.3)).method == "reduced"
    tagged = ModularPoint.at_rational(Fraction(1, 2), 1e-8)
    assert log_abs_eta(tagged).method == "cusp-duality"


def test_dispatch_cusp_value():
    val = log_abs_eta(ModularPoint.at_rational(Fraction(1, 2), 1e-8)).log_abs
    dominant = -math.pi / (12 * 4 * 1e-8)
    assert val == pytest.approx(dominant - 0.5 * math.log(2e-8), rel=1e-12)


def test_dispatch_badly_approximable_point_stays_bounded():
    y = 1e-6
    value = log_abs_eta(ModularPoint((math.sqrt(5) - 1) / 2, y)).log_abs
    assert abs(value) <= 0.25 * math.log(1 / y) + 3


def test_modular_point_validation():
    with pytest.raises(ValueError):
        ModularPoint(0.0, 0.0)
    tagged = ModularPoint(0.0, 1.0, x_rational=Fraction(1, 3))
    assert tagged.x == pytest.approx(1 / 3)


# ---------------------------------------------------------------- h and duality

def test_h_at_i():
    assert h(ModularPoint(0.0, 1.0)) == pytest.approx(ABS_ETA_I, abs=1e-14)


def test_h_unit_shift_and_inversion():
    z = complex(0.2, 0.7)
    assert h(ModularPoint(z.real + 1, z.imag)) == pytest.approx(
        h(ModularPoint(z.real, z.imag)), rel=1e-13
    )
    w = -1 / complex(0.3, 0.4)
    assert h(ModularPoint(w.real, w.imag)) == pytest.approx(
        h(ModularPoint(0.3, 0.4)), abs=1e-12
    )


def test_h_invariant_under_generator_words():
    rng = np.random.default_rng(5)
    base = ModularPoint(0.21, 0.9)
    reference = h(base)
    for _ in range(30):
        z = complex(base.x, base.y)
        for step in rng.integers(0, 3, size=8):
            if step == 0:
                z = z + 1
            elif step == 1:
                z = z - 1
            else:
                z = -1 / z
        assert h(ModularPoint(z.real, z.imag)) == pytest.approx(reference, rel=1e-10)


def test_h_underflows_gracefully():
    with pytest.warns(RuntimeWarning):
        assert h(ModularPoint(0.0, 1e-5)) == 0.0


def test_duality_examples():
    lhs, rhs = duality_check(1, 2, 0.01)
    assert lhs == pytest.approx(rhs, abs=1e-10)
    lhs, rhs = duality_check(1, 1, 0.37)
    assert lhs == pytest.approx(rhs, abs=1e-10)
    assert _dual_cusp(2, 5) == (3, 1)
    lhs, rhs = duality_check(2, 5, 1e-4)
    assert lhs == pytest.approx(rhs, abs=1e-10)


def test_duality_random_coprime():
    rng = np.random.default_rng(8)
    done = 0
    while done < 20:
        k = int(rng.integers(1, 21))
        m = int(rng.integers(1, k + 1)) if k > 1 else 1
        if math.gcd(m, k) != 1:
            continue
        y = 10 ** rng.uniform(-3, 0)
        lhs, rhs = duality_check(m, k, y)
        assert abs(lhs - rhs) <= 1e-10
        assert lhs == pytest.approx(rhs, rel=1e-9)
        done += 1


def test_duality_rejects_non_coprime():
    with pytest.raises(ValueError):
        duality_check(2, 4, 0.1)


# ---------------------------------------------------------------- cusp forms

def test_cusp_exact_k1_is_plain_inversion():
    y = 1e-4
    exact = log_abs_eta_cusp(0, 1, y).log_abs
    expected = -0.5 * math.log(y) + mp_log_abs_eta(complex(0, 1 / y))
    assert exact == pytest.approx(expected, rel=1e-12)


def test_cusp_asymptotic_dominant_term():
    val = log_abs_eta_cusp(1, 2, 1e-8, mode="asymptotic").log_abs
    assert val == pytest.approx(-6544984.6949 - 0.5 * math.log(2e-8), rel=1e-8)


def test_cusp_asymptotic_rejects_large_y():
    with pytest.raises(ValueError):
        log_abs_eta_cusp(1, 2, 0.5, mode="asymptotic")


def test_cusp_exact_vs_asymptotic():
    for k, y in [(2, 1e-7), (5, 1e-9), (9, 1e-10)]:
        exact = log_abs_eta_cusp(1, k, y).log_abs
        asym = log_abs_eta_cusp(1, k, y, mode="asymptotic").log_abs
        assert exact == pytest.approx(asym, rel=1e-12)


def test_cusp_exact_vs_reduction_route():
    # the two independent routes agree wherever both are numerically safe
    for k, y in [(2, 1e-3), (3, 5e-4), (7, 1e-4), (5, 1e-2)]:
        exact = log_abs_eta_cusp(1, k, y).log_abs
        reduced = log_abs_eta(ModularPoint(1 / k, y)).log_abs
        assert exact == pytest.approx(reduced, abs=1e-9)


def test_cusp_ratio_tends_to_one():
    for k in range(1, 11):
        for m in range(1, k + 1):
            if math.gcd(m, k) == 1:
                assert abs(cusp_asymptote_ratio(m, k, 1e-8) - 1.0) <= 1e-3


# ---------------------------------------------------------------- invariants

def test_unit_shift_invariance_sample():
    rng = np.random.default_rng(13)
    for _ in range(100):
        x, y = rng.uniform(0, 1), 10 ** rng.uniform(-1, 0.5)
        a = log_abs_eta(ModularPoint(x, y)).log_abs
        b = log_abs_eta(ModularPoint(x + 1.0, y)).log_abs
        assert a == pytest.approx(b, abs=1e-12)


def test_inversion_law_sample():
    rng = np.random.default_rng(17)
    for _ in range(100):
        z = complex(rng.uniform(-0.5, 0.5), 10 ** rng.uniform(-1, 0.5))
        w = -1 / z
        lhs = log_abs_eta(ModularPoint(w.real, w.imag)).log_abs
        rhs = log_abs_eta(ModularPoint(z.real, z.imag)).log_abs
        assert lhs - rhs == pytest.approx(0.5 * math.log(abs(z)), abs=1e-12)
