"""Quadrature kernels: exactness classes, pairing checks, compensated sums."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freqloc.errors import UsageError
from freqloc.quadrature import (
    adaptive_simpson,
    neumaier_sum,
    simpson_pair,
    simpson_uniform,
    simpson_weights,
    trapezoid_uniform,
)

coeff = st.floats(min_value=-10.0, max_value=10.0)


def test_simpson_weights_sum_to_interval_length():
    w = simpson_weights(257, 0.25)
    assert math.isclose(w.sum(), 256 * 0.25, rel_tol=1e-14)


def test_simpson_weights_reject_even_count():
    with pytest.raises(UsageError):
        simpson_weights(256, 0.1)


@given(c0=coeff, c1=coeff, c2=coeff, c3=coeff)
def test_simpson_exact_on_cubics(c0, c1, c2, c3):
    x = np.linspace(0.0, 2.0, 65)
    values = c0 + c1 * x + c2 * x**2 + c3 * x**3
    exact = c0 * 2.0 + c1 * 2.0 + c2 * 8.0 / 3.0 + c3 * 4.0
    got = simpson_uniform(values, x[1] - x[0])
    assert abs(got - exact) <= 1e-12 * (1.0 + abs(exact))


@given(c0=coeff, c1=coeff)
def test_trapezoid_exact_on_lines(c0, c1):
    x = np.linspace(-1.0, 3.0, 41)
    exact = c0 * 4.0 + c1 * 4.0
    got = trapezoid_uniform(c0 + c1 * x, x[1] - x[0])
    assert abs(got - exact) <= 1e-12 * (1.0 + abs(exact))


def test_simpson_handles_complex_samples():
    x = np.linspace(0.0, 1.0, 129)
    got = simpson_uniform(np.exp(2j * x), x[1] - x[0])
    exact = (np.exp(2j) - 1.0) / 2j
    assert abs(got - exact) < 1e-9


def test_simpson_pair_flags_unresolved_integrands():
    x = np.linspace(0.0, 1.0, 129)
    smooth_full, smooth_half = simpson_pair(np.sin(3 * x), x[1] - x[0])
    assert abs(smooth_full - smooth_half) < 1e-7
    rough_full, rough_half = simpson_pair(np.sin(60 * x), x[1] - x[0])
    assert abs(rough_full - rough_half) > 1e-5


def test_simpson_pair_needs_four_panel_alignment():
    with pytest.raises(UsageError):
        simpson_pair(np.ones(127), 0.1)


def test_neumaier_recovers_cancelled_tail():
    # 1.0 + 1e16 - 1e16 repeated: naive float summation drops the ones
    values = np.tile([1.0, 1e16, -1e16], 1000)
    assert neumaier_sum(values) == 1000.0


def test_adaptive_simpson_matches_closed_form():
    got = adaptive_simpson(lambda t: np.exp(-t * t), 0.0, 5.0, rel_tol=1e-12)
    assert math.isclose(got, math.sqrt(math.pi) / 2.0 * math.erf(5.0), rel_tol=1e-11)


def test_adaptive_simpson_runs_on_array_arguments():
    seen = []

    def f(t):
        seen.append(np.ndim(t))
        return t * t

    got = adaptive_simpson(f, 0.0, 1.0)
    assert math.isclose(got, 1.0 / 3.0, rel_tol=1e-12)
    assert all(d == 1 for d in seen)
