"""Moment-side Taylor machinery for the mover transforms."""

import math

import numpy as np
import pytest

from freqloc.errors import DomainError, ResolutionError, UsageError
from freqloc.fields import BumpSpec, GridSpec, build_cauchy_data
from freqloc.spectral import spectrum_at
from freqloc.taylor import (
    coeff_bounds,
    legendre_extract_highest,
    moment_coefficients,
    remainder_l2,
)

FINE = GridSpec(half_width=4.0, count=16384)


@pytest.fixture(scope="module")
def shifted_data():
    return build_cauchy_data(BumpSpec(center=0.15, width=0.7, modulation_frequency=3.0), FINE)


def test_coefficients_reproduce_the_transform_derivatives(shifted_data):
    """a_n from moments must be the Taylor data of the even-sector h_plus."""
    table = moment_coefficients(shifted_data, 8, parity="even", sign="plus")
    even = build_cauchy_data(
        BumpSpec(center=0.15, width=0.7, modulation_frequency=3.0), FINE, parity="even"
    )
    h = 5e-3
    k = np.array([0.0, h, 2 * h, 3 * h, 4 * h])
    f, _ = spectrum_at(even, k)
    # forward stencils: the series lives in omega = |k|, which kinks at
    # zero, so probing across the origin would mix the two branches
    d1 = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h)
    d2 = (35 * f[0] - 104 * f[1] + 114 * f[2] - 56 * f[3] + 11 * f[4]) / (
        12 * h * h
    )
    assert table.a[0] == pytest.approx(f[0], rel=1e-10, abs=1e-12)
    assert table.a[1] == pytest.approx(d1, rel=1e-9)
    assert table.a[2] == pytest.approx(d2 / 2.0, rel=1e-6)


def test_odd_sector_kills_the_constant_term(shifted_data):
    table = moment_coefficients(shifted_data, 4, parity="odd", sign="minus")
    assert table.a[0] == 0.0


def test_sign_choice_flips_only_the_velocity_share(shifted_data):
    plus = moment_coefficients(shifted_data, 6, parity="even", sign="plus")
    minus = moment_coefficients(shifted_data, 6, parity="even", sign="minus")
    # position moments are common, velocity moments enter with opposite sign
    np.testing.assert_allclose(plus.a[1:] + minus.a[1:], plus.c0[:-1], atol=1e-15)
    np.testing.assert_allclose(plus.a[1:] - minus.a[1:], 1j * plus.c1[1:], atol=1e-15)
    assert plus.a[0] == -minus.a[0]


def test_moment_table_rejects_unknown_labels(shifted_data):
    with pytest.raises(UsageError):
        moment_coefficients(shifted_data, 4, parity="full", sign="plus")
    with pytest.raises(UsageError):
        moment_coefficients(shifted_data, 4, parity="even", sign="up")
    with pytest.raises(UsageError):
        moment_coefficients(shifted_data, 41, parity="even", sign="plus")


def test_high_moments_on_a_coarse_grid_fail_loudly():
    coarse = build_cauchy_data(BumpSpec(0.0, 0.5, 6.0), GridSpec(4.0, 1024))
    with pytest.raises(ResolutionError):
        moment_coefficients(coarse, 40, parity="even", sign="plus")


def test_coeff_bounds_frozen_values():
    got = coeff_bounds(3, 1e-4, 2.0)
    assert got.simple == pytest.approx(math.sqrt(2.0) / 6.0, rel=1e-14)
    assert got.refined == pytest.approx(4.418318943532207, rel=1e-13)
    assert got.cutoff_omega1 == pytest.approx(0.33408091455011474, rel=1e-13)


def test_coeff_bounds_refined_wins_only_at_small_epsilon():
    tight = coeff_bounds(6, 1e-30, 1.0)
    loose = coeff_bounds(6, 0.5, 1.0)
    assert tight.refined < tight.simple
    assert loose.refined > tight.refined


def test_coeff_bounds_domain_errors():
    with pytest.raises(DomainError):
        coeff_bounds(2, 0.0, 1.0)
    with pytest.raises(DomainError):
        coeff_bounds(2, 0.5, -1.0)


def test_extractor_recovers_a_known_cubic():
    omega1 = 1.75
    nodes = np.linspace(0.0, omega1, 4097)
    samples = 0.4 - 1.1 * nodes + 0.25 * nodes**3
    got = legendre_extract_highest(samples, omega1, 3)
    assert got.a_n == pytest.approx(0.25, rel=1e-11)
    assert abs(got.a_n) <= got.bound


def test_extractor_bound_scales_like_stated():
    omega1 = 2.0
    nodes = np.linspace(0.0, omega1, 2049)
    samples = np.ones_like(nodes)
    got = legendre_extract_highest(samples, omega1, 4)
    norm = math.sqrt(omega1)
    assert got.bound == pytest.approx(omega1**-0.5 * 2.0**4 * norm, rel=1e-10)


def test_extractor_input_validation():
    with pytest.raises(UsageError):
        legendre_extract_highest(np.ones(8), 1.0, 2)  # even count
    with pytest.raises(UsageError):
        legendre_extract_highest(np.ones(5), 1.0, 2)  # too short
    with pytest.raises(DomainError):
        legendre_extract_highest(np.ones(9), 0.0, 2)


def test_remainder_respects_the_four_epsilon_envelope(shifted_data):
    # the table must extend well past the cut so the measured part of the
    # tail dominates; the 1/n! envelope only has to cover orders above 24
    table = moment_coefficients(shifted_data, 24, parity="even", sign="minus")
    from freqloc.spectral import transform_spectrum

    split = transform_spectrum(shifted_data, k_max=3.0 + 430.0 / 0.7, k_count=2049)
    omega1 = coeff_bounds(12, split.epsilon, table.energy).cutoff_omega1
    tail = remainder_l2(table, 12, omega1)
    assert 0.0 < tail <= 4.0 * split.epsilon * math.sqrt(table.energy)
