"""Goursat-problem evaluators and the Klein-Gordon kernel they descend from.

The central object g(a, b) solves the characteristic problem
d^2 g / da db = -g with boundary data g(a, 0) = g0(a), and admits three
independent evaluation routes: its defining series, a convolution of the
boundary derivative against Bessel J0 along the characteristic, and a
Fourier-side contour integral. Keeping all three honest against each
other is the point; they share nothing but the boundary data.

Variants differ only in the series coefficients: ``full`` carries
1/(n! sqrt(2n+1)), ``one`` drops the root, ``two`` replaces it with
1/(2n+1). One and two sandwich full, giving a computable envelope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import calibration
from .bounds import h_eval
from .errors import AccuracyError, DomainError, RangeError, UsageError
from .quadrature import adaptive_simpson, simpson_uniform, trapezoid_uniform
from .specfun import bessel_j0, erfi_scaled

_A_MAX_BOUNDARY = 3.0
_A_MAX_EVAL = 1.5
_B_MAX_INTEGRAL = 20.0
_TAU_TAIL = 60.0
_Y_CUTOFF = 8.0
_Y_NODES = 1025
_Z_STEP = 0.0125
_Z_STEP_BOUNDARY = 0.004
_Z_CAP = 200.0
_SQRT_PI_HALF = math.sqrt(math.pi) / 2.0

_VARIANTS = ("full", "one", "two")
_METHODS = ("series", "bessel_integral", "contour")


def _phi_upper(u):
    """integral_0^1 exp(u s^2) ds, via the scaled imaginary error function."""
    return _SQRT_PI_HALF * np.exp(u) * erfi_scaled(u)


def _variant_factor(n: int, variant: str) -> float:
    """The part of the series coefficient beyond 1/n!."""
    if variant == "full":
        return 1.0 / math.sqrt(2 * n + 1.0)
    if variant == "one":
        return 1.0
    return 1.0 / (2 * n + 1.0)


def g0_eval(a: float, variant: str = "full") -> float:
    """Boundary value g0(a) = sum coef_n e^{(2n+3) a}.

    The one and two variants collapse to closed forms; the full variant
    sums its series, whose terms peak near n = e^{2a} and then die
    factorially. Above a = 3 the closed forms overflow doubles.
    """
    if variant not in _VARIANTS:
        raise UsageError(f"variant must be one of {_VARIANTS}, got {variant!r}")
    if a > _A_MAX_BOUNDARY:
        raise RangeError(f"g0_eval supports a <= {_A_MAX_BOUNDARY}, got {a}")
    u = math.exp(2.0 * a)
    cube = math.exp(3.0 * a)
    if variant == "one":
        return cube * math.exp(u)
    if variant == "two":
        return cube * float(_phi_upper(u))
    term = 1.0
    total = 1.0
    n = 0
    while n < 800:
        n += 1
        term *= u / n
        contrib = term / math.sqrt(2 * n + 1.0)
        total += contrib
        if contrib < 1e-17 * total and n > u:
            break
    return cube * total


def _g0_prime(tau: np.ndarray, variant: str) -> np.ndarray:
    """Derivative of the boundary data, vectorized over tau."""
    u = np.exp(2.0 * tau)
    cube = np.exp(3.0 * tau)
    if variant == "one":
        return cube * np.exp(u) * (3.0 + 2.0 * u)
    if variant == "two":
        return cube * (2.0 * _phi_upper(u) + np.exp(u))
    total = np.zeros_like(tau)
    term = np.ones_like(tau)
    top = float(np.max(u)) if u.size else 0.0
    n = 0
    while n < 800:
        total += term * ((2 * n + 3.0) / math.sqrt(2 * n + 1.0))
        n += 1
        term = term * u / n
        if float(np.max(term)) * (2 * n + 3.0) < 1e-17 and n > top:
            break
    return cube * total


@dataclass(frozen=True)
class GoursatPoint:
    """One evaluation of g(a, b), remembering which route produced it."""

    a: float
    b: float
    value: float
    method: str

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise UsageError(f"unknown method {self.method!r}")
        if not (self.value > 0.0 and math.isfinite(self.value)):
            raise DomainError(f"g must be positive and finite, got {self.value}")


def _series_value(a: float, b: float, variant: str) -> float:
    u = math.exp(2.0 * a)
    cube = math.exp(3.0 * a)
    total = 0.0
    term = 1.0
    for n in range(0, 800):
        total += term * _variant_factor(n, variant) * math.exp(-b / (2 * n + 3.0))
        term *= u / (n + 1.0)
        if term < 1e-17 * max(total, 1e-300) and n > u:
            break
    return cube * total


def _bessel_value(a: float, b: float, variant: str) -> float:
    if b == 0.0:
        return g0_eval(a, variant) - g0_eval(a - _TAU_TAIL, variant)
    theta_max = 2.0 * math.sqrt(_TAU_TAIL * b)

    def integrand(theta: np.ndarray) -> np.ndarray:
        tau = a - theta * theta / (4.0 * b)
        return bessel_j0(theta) * _g0_prime(tau, variant) * theta / (2.0 * b)

    # Panels start below a quarter of the J0 oscillation period so that
    # refinement decisions are never fooled by whole skipped cycles.
    panels = max(64, 2 * int(np.ceil(theta_max / (0.5 * math.pi))))
    return float(
        adaptive_simpson(
            integrand, 0.0, theta_max,
            rel_tol=1e-9, initial_panels=panels, max_doublings=12,
        )
    )


def _contour_profile(a: float, variant: str) -> np.ndarray:
    """Weight e^{-1.5 y^2} times the variant profile on the half y grid."""
    y = np.linspace(0.0, _Y_CUTOFF, _Y_NODES)
    lam0 = math.exp(2.0 * a)
    shell = lam0 * np.exp(-y * y)
    profile = np.exp(shell) if variant == "one" else _phi_upper(shell)
    return np.exp(-1.5 * y * y) * profile


def contour_transform(a: float, k: float, variant: str = "one", s: float = 1.0) -> float:
    """Fourier transform ghat(a, k) of the contour integrand.

    Real and even in k. The profile parameter s scales the interior
    amplitude the way the two-variant s-integral does; s = 1 recovers the
    variant-one profile weight exactly.
    """
    if variant not in ("one", "two"):
        raise UsageError("contour profiles exist for variants one and two only")
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    y = np.linspace(0.0, _Y_CUTOFF, _Y_NODES)
    lam0 = s * s * math.exp(2.0 * a)
    shell = lam0 * np.exp(-y * y)
    profile = np.exp(shell) if variant == "one" else _phi_upper(shell)
    weight = np.exp(-1.5 * y * y) * profile
    dy = _Y_CUTOFF / (_Y_NODES - 1)
    value = 2.0 * float(trapezoid_uniform(weight * np.cos(k * y), dy))
    return math.exp(3.0 * a) * value


def _contour_value(a: float, b: float, variant: str) -> float:
    weight = _contour_profile(a, variant)
    y = np.linspace(0.0, _Y_CUTOFF, _Y_NODES)
    dy = _Y_CUTOFF / (_Y_NODES - 1)
    dz = _Z_STEP_BOUNDARY if b == 0.0 else _Z_STEP
    lam0 = math.exp(2.0 * a)
    z_edge = 26.0 + 2.0 * lam0
    total = 0.0
    z_lo = 0.0
    while True:
        n_panels = max(2, 2 * int(np.ceil((z_edge - z_lo) / (2.0 * dz))))
        z = np.linspace(z_lo, z_edge, n_panels + 1)
        k = np.sqrt(z * z + 2.0 * b)
        rows = np.cos(np.outer(k, y)) @ (weight * 2.0 * dy)
        rows -= dy * weight[0] + dy * weight[-1] * np.cos(k * _Y_CUTOFF)
        block = float(simpson_uniform(rows, z[1] - z[0]))
        total += block
        if abs(block) <= 1e-10 * max(abs(total), 1e-300) and z_lo > 0.0:
            break
        if z_edge >= _Z_CAP:
            raise AccuracyError(
                f"contour quadrature still moving at z = {_Z_CAP}",
                estimate=math.exp(3.0 * a) * total / math.pi,
            )
        z_lo = z_edge
        z_edge = min(z_edge * 1.4, _Z_CAP)
    return math.exp(3.0 * a) * total / math.pi


def goursat_eval(a: float, b: float, method: str, variant: str = "full") -> GoursatPoint:
    """Evaluate g(a, b) by the requested route.

    The series route accepts any b >= 0 (its terms only decay faster as b
    grows); the two integral routes are supported for b <= 20. Contour
    evaluation exists for the one and two variants, whose profiles have
    closed Fourier-side forms. At b = 0 every route must land on the
    boundary data to ten digits, and that is checked, not assumed.
    """
    if method not in _METHODS:
        raise UsageError(f"method must be one of {_METHODS}, got {method!r}")
    if variant not in _VARIANTS:
        raise UsageError(f"variant must be one of {_VARIANTS}, got {variant!r}")
    if a > _A_MAX_EVAL:
        raise RangeError(f"goursat_eval supports a <= {_A_MAX_EVAL}, got {a}")
    if b < 0.0:
        raise DomainError(f"b must be nonnegative, got {b}")
    if method != "series" and b > _B_MAX_INTEGRAL:
        raise RangeError(
            f"integral routes support b <= {_B_MAX_INTEGRAL}, got {b}"
        )
    if method == "series":
        value = _series_value(a, b, variant)
    elif method == "bessel_integral":
        value = _bessel_value(a, b, variant)
    else:
        if variant == "full":
            raise UsageError(
                "the contour route needs a closed profile; use variant one or two"
            )
        value = _contour_value(a, b, variant)
    if b == 0.0:
        anchor = g0_eval(a, variant)
        if abs(value - anchor) > 1e-10 * anchor:
            raise AccuracyError(
                f"route {method} misses the boundary value by "
                f"{abs(value - anchor) / anchor:.3g} relative",
                estimate=value,
            )
    return GoursatPoint(a, b, value, method)


def schwarz_envelope(a: float, b: float) -> float:
    """sqrt(g_one g_two), an upper envelope for the full-variant g."""
    one = _series_value(a, b, "one")
    two = _series_value(a, b, "two")
    return math.sqrt(one * two)


def saddle_upper(a: float, k: float, s: float = 1.0, c_env: float | None = None) -> float:
    """Stationary-phase upper estimate for |contour_transform(a, k, ., s)|.

    The saddle exponent comes from the same h machinery the refined tier
    uses; the prefactor is the rigorous envelope constant unless
    overridden.
    """
    if a > _A_MAX_EVAL:
        raise RangeError(f"saddle_upper supports a <= {_A_MAX_EVAL}, got {a}")
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    if k < 0.0:
        raise DomainError(f"k must be nonnegative, got {k}")
    c = calibration.SADDLE_ENVELOPE_C if c_env is None else c_env
    lam = s * s * math.exp(2.0 * a)
    state = h_eval(lam, k)
    x = state.im_y0
    lam_exp = lam if x == 0.0 else (k - 3.0 * x) / (2.0 * x)
    return c * math.exp(3.0 * a) * math.exp(-state.h) / math.sqrt(1.0 + lam_exp)


def kg_kernel(t: float, x: float, mass: float, kind: str) -> complex:
    """Fundamental solutions of the 1+1 Klein-Gordon operator.

    Retarded and advanced propagators are supported on their light cones
    with the step convention that cone boundaries count half; the causal
    (Feynman-flavored) combination is their difference over 2 pi i.
    """
    if kind not in ("retarded", "advanced", "causal"):
        raise UsageError(f"kind must be retarded, advanced or causal, got {kind!r}")
    if mass < 0.0:
        raise DomainError(f"mass must be nonnegative, got {mass}")
    interior = t * t - x * x
    if interior < 0.0:
        return 0.0 + 0.0j
    cone = 0.5 if interior == 0.0 else 1.0
    wave = bessel_j0(mass * math.sqrt(interior))
    if kind == "retarded":
        step = 1.0 if t > 0.0 else (0.5 if t == 0.0 else 0.0)
        return complex(-0.5 * step * cone * wave)
    if kind == "advanced":
        step = 1.0 if t < 0.0 else (0.5 if t == 0.0 else 0.0)
        return complex(-0.5 * step * cone * wave)
    sign = 0.0 if t == 0.0 else math.copysign(1.0, t)
    return -0.25j / math.pi * sign * cone * wave


def j0_sign_fourier(p: float) -> complex:
    """Distributional Fourier transform of sign(t) J0(t) at frequency p.

    Vanishes inside |p| < 1, where the spectrum of J0 is confined; jumps
    to the imaginary branch 2i sign(p)/sqrt(p^2 - 1) outside. The edge
    |p| = 1 is a genuine singularity and is rejected.
    """
    if abs(p) == 1.0:
        raise DomainError("the transform is singular on |p| = 1")
    if abs(p) < 1.0:
        return 0.0 + 0.0j
    return 2.0j * math.copysign(1.0, p) / math.sqrt(p * p - 1.0)
