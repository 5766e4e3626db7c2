"""Special functions against independent anchors and identities."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freqloc.errors import DomainError
from freqloc.quadrature import adaptive_simpson
from freqloc.specfun import (
    bessel_j0,
    double_factorial,
    erfi_scaled,
    lambert_w0,
    legendre_p,
)


def test_j0_at_zero_and_first_root():
    assert bessel_j0(np.array([0.0]))[0] == 1.0
    assert abs(bessel_j0(np.array([2.404825557695773]))[0]) < 1e-14


def test_j0_satisfies_bessel_equation():
    # central differences across the series/Miller/Hankel patchwork; the
    # step must stay coarse enough not to amplify seam-level noise
    z = np.linspace(0.5, 40.0, 397)
    h = 3e-3
    f = bessel_j0(z)
    fp = (bessel_j0(z + h) - bessel_j0(z - h)) / (2 * h)
    fpp = (bessel_j0(z + h) - 2 * f + bessel_j0(z - h)) / h**2
    residual = np.abs(z * fpp + fp + z * f)
    assert residual.max() < 1e-4


def test_j0_even_in_argument():
    z = np.linspace(-30.0, 30.0, 101)
    np.testing.assert_allclose(bessel_j0(z), bessel_j0(-z), rtol=0, atol=0)


@pytest.mark.parametrize("nu", [1e-8, 0.03, 1.0, 7.5, 29.0])
def test_erfi_scaled_matches_quadrature(nu):
    # e^{-nu} erfi(sqrt(nu)) / sqrt(nu) with erfi from its integral form
    erfi = 2.0 / math.sqrt(math.pi) * adaptive_simpson(
        lambda t: np.exp(t * t), 0.0, math.sqrt(nu), rel_tol=1e-13
    )
    want = math.exp(-nu) * erfi / math.sqrt(nu)
    assert math.isclose(erfi_scaled(nu), want, rel_tol=1e-8)


def test_erfi_scaled_small_argument_limit():
    # series: 2/sqrt(pi) * (1 - 2 nu / 3 + ...) e^{-nu}
    assert math.isclose(erfi_scaled(1e-14), 2.0 / math.sqrt(math.pi), rel_tol=1e-10)


def test_erfi_scaled_frozen_anchor():
    assert math.isclose(erfi_scaled(1.0), 0.6071577058413936, rel_tol=1e-15)


@given(st.floats(min_value=-0.35, max_value=4.0))
def test_lambert_inverts_x_exp_x(x):
    assert math.isclose(lambert_w0(x * math.exp(x)), x, rel_tol=1e-12, abs_tol=1e-12)


def test_lambert_frozen_anchor():
    assert math.isclose(lambert_w0(1.0), 0.5671432904097838, rel_tol=1e-15)


def test_lambert_rejects_below_branch_point():
    with pytest.raises(DomainError):
        lambert_w0(-0.5)


def test_legendre_endpoint_and_parity():
    x = np.linspace(-1.0, 1.0, 201)
    for n in (0, 1, 2, 5, 12):
        p = legendre_p(n, x)
        assert math.isclose(p[-1], 1.0, rel_tol=1e-13)
        np.testing.assert_allclose(p, (-1.0) ** n * p[::-1], atol=1e-13)
        assert np.abs(p).max() <= 1.0 + 1e-13


def test_legendre_quadratic_value():
    assert math.isclose(legendre_p(2, np.array([0.3]))[0], -0.365, rel_tol=1e-14)


def test_legendre_orthogonality_row():
    x = np.linspace(-1.0, 1.0, 4097)
    dx = x[1] - x[0]
    from freqloc.quadrature import simpson_uniform

    p6 = legendre_p(6, x)
    for m, want in ((6, 2.0 / 13.0), (4, 0.0), (9, 0.0)):
        got = simpson_uniform(p6 * legendre_p(m, x), dx)
        assert abs(got - want) < 1e-10


def test_double_factorial_small_table():
    assert [double_factorial(n) for n in range(6)] == [1, 1, 2, 3, 8, 15]
