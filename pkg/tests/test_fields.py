"""Bump-data construction: support, smoothness, parity, validation."""

import numpy as np
import pytest

from freqloc.errors import DomainError, ResolutionError, UsageError
from freqloc.fields import BumpSpec, GridSpec, build_cauchy_data
from freqloc.spectral import energy_physical


def test_support_is_exactly_the_stated_ball(standard_grid):
    bump = BumpSpec(center=0.3, width=0.6)
    data = build_cauchy_data(bump, standard_grid)
    assert data.support_radius == pytest.approx(0.9)
    x = data.x_grid
    outside = (x <= -0.3) | (x >= 0.9)
    assert np.all(data.phi0.samples[outside] == 0.0)
    assert np.all(data.phi1.samples[outside] == 0.0)
    inside = (x > -0.25) & (x < 0.85)
    assert np.all(np.abs(data.phi0.samples[inside]) > 0.0)


def test_velocity_profile_is_minus_space_derivative(standard_grid):
    # compare away from the support edge, where the profile's derivatives
    # blow up faster than any finite-difference stencil can track
    data = build_cauchy_data(BumpSpec(center=0.0, width=0.8), standard_grid)
    numeric = -np.gradient(data.phi0.samples, data.spacing)
    mask = np.abs(data.x_grid) <= 0.5
    gap = np.abs(numeric[mask] - data.phi1.samples[mask]).max()
    assert gap < 1e-5 * np.abs(data.phi1.samples).max()


def test_amplitude_scales_energy_quadratically(standard_grid):
    base = build_cauchy_data(BumpSpec(0.0, 0.5, 4.0, amplitude=1.0), standard_grid)
    tripled = build_cauchy_data(BumpSpec(0.0, 0.5, 4.0, amplitude=3.0), standard_grid)
    assert energy_physical(tripled) == pytest.approx(9.0 * energy_physical(base))


def test_parity_sectors_recombine(standard_grid):
    bump = BumpSpec(center=0.4, width=0.5, modulation_frequency=6.0)
    full = build_cauchy_data(bump, standard_grid)
    even = build_cauchy_data(bump, standard_grid, parity="even")
    odd = build_cauchy_data(bump, standard_grid, parity="odd")
    np.testing.assert_allclose(
        even.phi0.samples + odd.phi0.samples, full.phi0.samples, atol=1e-15
    )
    np.testing.assert_allclose(
        even.phi1.samples + odd.phi1.samples, full.phi1.samples, atol=1e-15
    )
    # projections really are eigenvectors of reflection
    np.testing.assert_allclose(
        even.phi0.samples, even.phi0.samples[::-1], atol=1e-15
    )
    np.testing.assert_allclose(
        odd.phi0.samples, -odd.phi0.samples[::-1], atol=1e-15
    )


def test_parity_energies_add(standard_grid):
    bump = BumpSpec(center=0.2, width=0.7, modulation_frequency=3.0)
    total = energy_physical(build_cauchy_data(bump, standard_grid))
    even = energy_physical(build_cauchy_data(bump, standard_grid, parity="even"))
    odd = energy_physical(build_cauchy_data(bump, standard_grid, parity="odd"))
    assert even + odd == pytest.approx(total, rel=1e-12)


def test_rejects_support_touching_the_boundary():
    with pytest.raises(DomainError):
        build_cauchy_data(BumpSpec(center=3.5, width=0.6), GridSpec(4.0, 2048))


def test_rejects_unresolvable_width():
    with pytest.raises(ResolutionError):
        build_cauchy_data(BumpSpec(center=0.0, width=0.02), GridSpec(4.0, 256))


def test_rejects_non_power_of_two_grid():
    with pytest.raises(UsageError):
        build_cauchy_data(BumpSpec(0.0, 0.5), GridSpec(4.0, 3000))


def test_rejects_unknown_parity(standard_grid):
    with pytest.raises(UsageError):
        build_cauchy_data(BumpSpec(0.0, 0.5), standard_grid, parity="mixed")
