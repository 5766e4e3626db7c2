"""Tier evaluators, saddle state, and the band-energy certificate."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freqloc.bounds import (
    BandReport,
    band_energy_cap,
    bound_eval,
    h_eval,
    im_y0_lower,
    omega_max_freq,
    series_bound,
)
from freqloc.errors import (
    DegeneracyError,
    DomainError,
    RangeError,
    ViolationError,
)


def test_simple_tier_pinned_example():
    got = bound_eval(0.0, 1e-30, 1.0, "simple")
    assert got.value == pytest.approx(0.7584, abs=1e-3)
    assert got.value == pytest.approx(0.7583962293571044, rel=1e-14)


def test_simple_tier_formula_shape():
    # 6^{3/2} sqrt(E) e^{4 omega} / sqrt(2 e |log eps|)
    omega, eps, energy = 1.2, 1e-8, 3.0
    want = 6.0**1.5 * math.sqrt(energy) * math.exp(4 * omega)
    want /= math.sqrt(2.0 * math.e * abs(math.log(eps)))
    assert bound_eval(omega, eps, energy, "simple").value == pytest.approx(want)


def test_improved_tier_crossover_matches_branches():
    eps = 1e-12
    omega = abs(math.log(eps)) / 196.0
    near = bound_eval(omega, eps, 1.0, "improved").value
    lo = bound_eval(omega * 0.98, eps, 1.0, "improved").value
    hi = bound_eval(omega * 1.02, eps, 1.0, "improved").value
    assert lo <= near * (1 + 1e-9) and near <= hi * (1 + 1e-9)


def test_refined_tier_saddle_degenerates_at_zero_frequency():
    got = bound_eval(0.0, math.exp(-9.0), 1.0, "refined", c_refined=1.0)
    assert got.im_y0 == pytest.approx(2.0, rel=1e-12)
    assert got.nu == pytest.approx(0.0, abs=1e-12)


def test_refined_tier_frozen_point():
    got = bound_eval(3.0, 1e-10, 1.0, "refined", c_refined=0.5)
    assert got.value == pytest.approx(3371.3052820277494, rel=1e-12)
    assert got.case_tag == "A"
    assert got.im_y0 == pytest.approx(0.3236701097653872, rel=1e-12)
    assert got.nu == pytest.approx(13.325360042255062, rel=1e-12)


def test_refined_scales_linearly_in_its_constant():
    one = bound_eval(2.0, 1e-6, 1.0, "refined", c_refined=1.0).value
    two = bound_eval(2.0, 1e-6, 1.0, "refined", c_refined=2.0).value
    assert two == pytest.approx(2.0 * one, rel=1e-13)


@given(
    omega=st.floats(min_value=0.0, max_value=40.0),
    energy=st.floats(min_value=1e-6, max_value=1e6),
)
def test_every_tier_carries_sqrt_energy(omega, energy):
    for tier in ("simple", "improved", "refined"):
        unit = bound_eval(omega, 1e-8, 1.0, tier, c_refined=1.0).value
        scaled = bound_eval(omega, 1e-8, energy, tier, c_refined=1.0).value
        assert scaled == pytest.approx(unit * math.sqrt(energy), rel=1e-12)


def test_series_tier_accepts_epsilon_one():
    got = series_bound(0.5, 1.0, 2.0)
    assert got.tier == "series"
    assert got.value > 0.0


def test_degenerate_epsilon_rejected_where_log_divides():
    for tier in ("simple", "refined"):
        with pytest.raises(DegeneracyError):
            bound_eval(1.0, 1.0, 1.0, tier)


def test_omega_range_guard():
    with pytest.raises(RangeError):
        bound_eval(171.0, 1e-8, 1.0, "simple")


def test_negative_inputs_rejected():
    with pytest.raises(DomainError):
        bound_eval(-0.1, 1e-8, 1.0, "simple")
    with pytest.raises(DomainError):
        bound_eval(0.1, 1e-8, -1.0, "simple")


def test_saddle_state_anchors():
    flat = h_eval(2.0, 0.0)
    assert flat.im_y0 == 0.0
    assert flat.h == pytest.approx(-2.0)
    lifted = h_eval(2.0, 1.5)
    assert lifted.im_y0 == pytest.approx(0.20895670288896934, rel=1e-12)
    assert lifted.h == pytest.approx(-1.8413196102909475, rel=1e-12)


def test_saddle_ordinate_grows_with_k():
    heights = [h_eval(1.0, k).im_y0 for k in (0.0, 0.5, 2.0, 8.0)]
    assert heights == sorted(heights)


def test_case_lower_bounds_stay_below_the_solution():
    for lam, k in ((0.05, 1.0), (0.5, 4.0), (2.0, 0.5), (10.0, 30.0)):
        case, lower = im_y0_lower(lam, k)
        assert case in ("A", "B1", "B2")
        assert lower <= h_eval(lam, k).im_y0 + 1e-12


def test_usable_band_shrinks_with_looser_epsilon():
    assert omega_max_freq(1e-60) > omega_max_freq(1e-30) > 0.0
    # the crossover only leaves the origin once epsilon is absurdly small
    assert omega_max_freq(1e-10) == 0.0
    assert omega_max_freq(0.5) == 0.0


def test_band_energy_cap_reports_admissible_band(low_band_window):
    report = band_energy_cap(low_band_window, 0.0, 0.05)
    assert isinstance(report, BandReport)
    assert report.cap is not None
    assert 0.0 < report.band_energy <= report.cap
    # the certified fraction is 1 - 10^{-3j}, which rounds to 1.0 at the
    # deep levels these narrow bands admit, so only <= is meaningful
    assert report.cap <= low_band_window.energy_total


def test_band_cap_none_when_band_reaches_too_high(modulated_split):
    report = band_energy_cap(modulated_split, 0.0, 50.0)
    assert report.cap is None
    assert report.band_energy > 0.0


def test_band_bounds_must_be_ordered(modulated_split):
    with pytest.raises(DomainError):
        band_energy_cap(modulated_split, 0.3, 0.1)


def test_band_energy_matches_direct_integration(low_band_window):
    from freqloc.quadrature import trapezoid_uniform

    omega0, omega1 = 0.01, 0.04
    k = low_band_window.k_grid
    density = np.abs(low_band_window.h_plus) ** 2 + np.abs(low_band_window.h_minus) ** 2
    masked = np.where((np.abs(k) >= omega0) & (np.abs(k) <= omega1), density, 0.0)
    want = float(trapezoid_uniform(masked, k[1] - k[0])) / (2.0 * math.pi)
    got = band_energy_cap(low_band_window, omega0, omega1)
    assert want > 0.0
    assert got.band_energy == pytest.approx(want, rel=1e-14)
    assert got.cap is not None and got.cap <= low_band_window.energy_total
