"""Frequency splitting: energy bookkeeping, ceilings, grid policing."""

import math

import numpy as np
import pytest

from freqloc.errors import DomainError, ResolutionError, TruncationError, UsageError
from freqloc.fields import BumpSpec, GridSpec, build_cauchy_data
from freqloc.spectral import (
    energy_physical,
    pointwise_ceiling,
    pointwise_ceiling_value,
    spectrum_at,
    transform_spectrum,
    window_split,
)


def test_energy_halves_close_against_physical(modulated_split):
    total = modulated_split.energy_plus + modulated_split.energy_minus
    assert total == pytest.approx(modulated_split.energy_total, rel=1e-9)


def test_epsilon_frozen_for_the_standard_shift_datum(modulated_split):
    # captured from this implementation once validated; guards regressions
    assert modulated_split.epsilon == pytest.approx(0.06624728160343805, rel=1e-10)


def test_unmodulated_real_data_splits_evenly(standard_grid):
    data = build_cauchy_data(BumpSpec(center=0.0, width=0.5), standard_grid)
    split = transform_spectrum(data, k_max=430.0, k_count=1024)
    assert split.epsilon == pytest.approx(math.sqrt(0.5), rel=1e-9)
    assert split.energy_plus == pytest.approx(split.energy_minus, rel=1e-9)


def test_modulation_drains_the_minus_movers(standard_grid):
    eps = []
    for zeta in (0.0, 8.0, 16.0):
        data = build_cauchy_data(BumpSpec(0.0, 0.5, zeta), standard_grid)
        eps.append(transform_spectrum(data, k_max=zeta + 430.0, k_count=1024).epsilon)
    assert eps[0] > eps[1] > eps[2]


def test_spectrum_at_agrees_with_gridded_transform(modulated_data, modulated_split):
    # Probe the energetic band around the carrier; deep-tail values sit at
    # the quadrature noise floor where relative comparison is meaningless.
    probe = slice(480, 560, 5)
    k = modulated_split.k_grid[probe]
    h_plus, h_minus = spectrum_at(modulated_data, k)
    scale = np.abs(modulated_split.h_plus).max()
    np.testing.assert_allclose(
        h_plus, modulated_split.h_plus[probe], rtol=1e-9, atol=1e-11 * scale
    )
    np.testing.assert_allclose(
        h_minus, modulated_split.h_minus[probe], rtol=1e-9, atol=1e-11 * scale
    )


def test_movers_never_exceed_the_uniform_ceiling(modulated_split):
    assert pointwise_ceiling(modulated_split) <= 1.0 + 1e-6
    cap = pointwise_ceiling_value(
        modulated_split.energy_total, modulated_split.support_radius
    )
    assert cap == pytest.approx(math.sqrt(2.0 * modulated_split.energy_total))


def test_ceiling_value_stretches_with_large_supports():
    assert pointwise_ceiling_value(2.0, 3.0) == pytest.approx(math.sqrt(12.0))
    assert pointwise_ceiling_value(2.0, 0.25) == pytest.approx(2.0)


def test_probing_past_the_alias_edge_is_rejected(modulated_data):
    edge = 0.5 * math.pi / modulated_data.spacing
    with pytest.raises(ResolutionError):
        transform_spectrum(modulated_data, k_max=edge * 1.01, k_count=1024)


def test_truncating_grid_reports_a_usable_suggestion(modulated_data):
    with pytest.raises(TruncationError) as err:
        transform_spectrum(modulated_data, k_max=60.0, k_count=512)
    assert err.value.suggested_k_max > 60.0


def test_zero_energy_split_has_no_ceiling_ratio(standard_grid):
    data = build_cauchy_data(BumpSpec(0.0, 0.5), standard_grid)
    zeroed = type(data)(
        type(data.phi0)(np.zeros_like(data.phi0.samples), 4.0, data.spacing),
        type(data.phi1)(np.zeros_like(data.phi1.samples), 4.0, data.spacing),
        data.support_radius,
    )
    split = transform_spectrum(zeroed, k_max=100.0, k_count=512)
    assert split.energy_total == 0.0
    with pytest.raises(DomainError):
        pointwise_ceiling(split)


def test_fast_phase_kernel_matches_direct_exponentials(modulated_data):
    from freqloc.spectral import _phase_matrix

    k = np.linspace(-57.0, 57.0, 301)
    x = modulated_data.x_grid
    direct = np.exp(-1j * np.outer(k, x))
    # The recurrence drifts by about eps per step between exact anchors;
    # 63 steps at |k x| ~ 200 lands around 1e-12 in the worst corner.
    assert np.abs(_phase_matrix(k, x) - direct).max() < 5e-12


def test_window_split_resamples_without_touching_the_books(
    modulated_data, modulated_split, low_band_window
):
    assert low_band_window.k_grid.min() == pytest.approx(-0.29)
    assert low_band_window.k_grid.max() == pytest.approx(0.29)
    assert low_band_window.energy_total == modulated_split.energy_total
    assert low_band_window.epsilon == modulated_split.epsilon
    # the gridded window goes through the recurrence kernel, the sparse
    # probe through direct exponentials, so agreement is near-exact only
    probe = low_band_window.k_grid[::250]
    h_plus, h_minus = spectrum_at(modulated_data, probe)
    scale = float(np.abs(h_plus).max())
    np.testing.assert_allclose(
        h_plus, low_band_window.h_plus[::250], rtol=1e-12, atol=1e-13 * scale
    )
    np.testing.assert_allclose(
        h_minus, low_band_window.h_minus[::250], rtol=1e-12, atol=1e-13 * scale
    )


def test_window_split_rejects_degenerate_windows(modulated_data, modulated_split):
    with pytest.raises(DomainError):
        window_split(modulated_data, modulated_split, k_top=0.0, k_count=129)
    with pytest.raises(UsageError):
        window_split(modulated_data, modulated_split, k_top=0.3, k_count=8)
