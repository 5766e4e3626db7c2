"""Tiered pointwise envelopes for frequency-localized wave data.

Four evaluators, from crude to sharp. The series tier sums the envelope
series directly. The simple tier is its closed-form weakening, the
improved tier splits the frequency range into saddle regimes, and the
refined tier solves the actual saddle-point equation at every frequency
and keeps the full shape factor. All share the convention that the
returned value already carries the sqrt(energy) factor, so it compares
directly against measured |h_pm|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import calibration
from .errors import (
    AccuracyError,
    DegeneracyError,
    DomainError,
    RangeError,
    UsageError,
    ViolationError,
)
from .quadrature import trapezoid_uniform
from .specfun import erfi_scaled

_OMEGA_SERIES_MAX = 50.0
_OMEGA_EXP_MAX = 170.0
_KREP_BISECT_WIDTH = 1e-8
_TIERS = ("simple", "improved", "refined")


def _exp_guarded(t: float) -> float:
    return math.exp(t) if t < 709.0 else math.inf


def _krep_residual(lam: float, k: float, x: float) -> float:
    return 3.0 * x + 2.0 * lam * x * _exp_guarded(x * x) - k


@dataclass(frozen=True)
class SaddleState:
    """Solution of the saddle location equation k = 3x + 2 lambda x e^{x^2}."""

    lam: float
    k: float
    im_y0: float
    h: float

    def __post_init__(self) -> None:
        x = self.im_y0
        if x * x < 700.0:
            resid = abs(_krep_residual(self.lam, self.k, x))
            if resid > 1e-10 * max(1.0, self.k):
                raise AccuracyError(
                    f"saddle residual {resid:.3g} at lambda={self.lam}, k={self.k}",
                    estimate=x,
                )


def h_eval(lam: float, k: float) -> SaddleState:
    """Saddle exponent h(lambda, k) with its saddle location.

    Solves for the positive root by bisection on [0, k/3] (the right edge
    is exact when lambda = 0) followed by two Newton polish steps, then
    evaluates the exponent two ways: the defining form
    1.5 x^2 - lambda e^{x^2} (1 - 2 x^2) and, away from x = 0, the
    root-substituted form that eliminates the exponential. The two must
    agree; disagreement means the root is bad and raises.
    """
    if lam < 0.0 or k < 0.0:
        raise DomainError(f"h_eval needs lam >= 0 and k >= 0, got ({lam}, {k})")
    if k == 0.0:
        return SaddleState(lam, k, 0.0, -lam)
    if lam == 0.0:
        x = k / 3.0
        return SaddleState(lam, k, x, 1.5 * x * x)
    lo, hi = 0.0, k / 3.0
    while hi - lo > _KREP_BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if _krep_residual(lam, k, mid) < 0.0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(2):
        e = _exp_guarded(x * x)
        if not math.isfinite(e):
            break
        f = 3.0 * x + 2.0 * lam * x * e - k
        fp = 3.0 + 2.0 * lam * e * (1.0 + 2.0 * x * x)
        x -= f / fp
    if x > 1e-4:
        h = -1.5 * x * x - k * (0.5 / x - x) + 1.5
        if x * x < 700.0:
            direct = 1.5 * x * x - lam * math.exp(x * x) * (1.0 - 2.0 * x * x)
            if abs(direct - h) > 1e-7 * max(1.0, abs(h), abs(direct)):
                raise AccuracyError(
                    f"saddle exponent forms disagree at ({lam}, {k}): "
                    f"{direct} vs {h}",
                    estimate=h,
                )
    else:
        h = 1.5 * x * x - lam * math.exp(x * x) * (1.0 - 2.0 * x * x)
    return SaddleState(lam, k, x, h)


@dataclass(frozen=True)
class BoundValue:
    """One evaluated envelope, with the saddle diagnostics that shaped it."""

    omega: float
    epsilon: float
    tier: str
    value: float
    case_tag: str = "n/a"
    im_y0: float | None = None
    nu: float | None = None

    def __post_init__(self) -> None:
        if self.tier not in ("series",) + _TIERS:
            raise UsageError(f"unknown tier {self.tier!r}")
        if self.case_tag not in ("A", "B1", "B2", "n/a"):
            raise UsageError(f"unknown case tag {self.case_tag!r}")
        if not (self.value >= 0.0 and math.isfinite(self.value)):
            raise DomainError(f"bound value must be finite, got {self.value}")
        if self.tier == "refined":
            x, nu = self.im_y0, self.nu
            if x is None or nu is None:
                raise UsageError("refined tier must record im_y0 and nu")
            k = 2.0 * math.sqrt(abs(math.log(self.epsilon)))
            resid = abs(3.0 * x + 2.0 * x * nu - k)
            if resid > 1e-10 * max(1.0, k):
                raise AccuracyError(
                    f"recorded saddle does not satisfy its equation: "
                    f"residual {resid:.3g}",
                    estimate=x,
                )


def _classify_case(lam: float, k: float) -> str:
    k0 = 3.0 + 2.0 * math.e * lam
    if k < k0:
        return "A"
    if lam < 1.5:
        k1 = math.inf if lam == 0.0 else 6.0 * math.sqrt(-math.log(2.0 * lam / 3.0))
        if k < k1:
            return "B1"
    return "B2"


def _check_eval_args(omega: float, epsilon: float, energy: float) -> None:
    if not omega >= 0.0:
        raise DomainError(f"omega must be nonnegative, got {omega}")
    if omega > _OMEGA_EXP_MAX:
        raise RangeError(f"omega {omega} overflows the e^(4 omega) factor")
    if epsilon <= 0.0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if energy < 0.0:
        raise DomainError(f"energy must be nonnegative, got {energy}")


def bound_eval(
    omega: float,
    epsilon: float,
    energy: float,
    tier: str,
    c_refined: float | None = None,
) -> BoundValue:
    """Evaluate one closed-form tier at a single frequency.

    epsilon must lie strictly inside (0, 1): every tier here divides by
    some power of |log epsilon|. The refined tier's prefactor is the
    calibrated constant unless overridden.
    """
    if tier not in _TIERS:
        raise UsageError(
            f"tier must be one of {_TIERS} (series has its own evaluator), "
            f"got {tier!r}"
        )
    _check_eval_args(omega, epsilon, energy)
    if epsilon >= 1.0:
        raise DegeneracyError(
            f"tier {tier!r} degenerates as epsilon -> 1, got {epsilon}"
        )
    b = -math.log(epsilon)
    root_e = math.sqrt(energy)
    if tier == "simple":
        value = 6.0**1.5 * root_e * math.exp(4.0 * omega) / math.sqrt(2.0 * math.e * b)
        return BoundValue(omega, epsilon, tier, value)
    if tier == "improved":
        if omega == 0.0:
            shape = math.e * math.exp(-math.sqrt(b))
        else:
            shape = max(
                math.exp(-b / (14.0 * math.sqrt(omega))),
                math.e * math.exp(-math.sqrt(b)),
            )
        value = 12.0 * root_e * math.exp(4.0 * omega) * shape
        return BoundValue(omega, epsilon, tier, value)
    c = calibration.REFINED_C if c_refined is None else c_refined
    lam = 4.0 * omega
    k = 2.0 * math.sqrt(b)
    state = h_eval(lam, k)
    x = state.im_y0
    nu = 0.0 if x == 0.0 else (k - 3.0 * x) / (2.0 * x)
    value = c * math.exp(-state.h) * math.sqrt(erfi_scaled(nu)) * root_e
    return BoundValue(
        omega, epsilon, "refined", value, _classify_case(lam, k), x, nu
    )


def series_bound(omega: float, epsilon: float, energy: float) -> BoundValue:
    """The envelope series summed directly, valid up to epsilon = 1.

    Equals 12 sqrt(E) (4 omega)^{-3/2} g(omega, epsilon) written without
    the removable singularity at omega = 0.
    """
    _check_eval_args(omega, epsilon, energy)
    if omega > _OMEGA_SERIES_MAX:
        raise RangeError(f"series tier supports omega <= 50, got {omega}")
    if epsilon > 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    total = _g_series_reduced(4.0 * omega, -math.log(epsilon))
    return BoundValue(omega, epsilon, "series", 12.0 * math.sqrt(energy) * total)


def _g_series_reduced(z: float, b: float) -> float:
    """sum_n z^n exp(-2 b / (2n+3)) / (n! sqrt(2n+1)) by term recursion."""
    term = math.exp(-2.0 * b / 3.0)
    total = term
    n = 0
    while n < 500:
        ratio = (
            z / (n + 1.0)
            * math.sqrt((2 * n + 1.0) / (2 * n + 3.0))
            * math.exp(2.0 * b * (1.0 / (2 * n + 3.0) - 1.0 / (2 * n + 5.0)))
        )
        term *= ratio
        total += term
        n += 1
        if term < 1e-16 * total and n > z:
            break
    return total


def g_series(omega: float, epsilon: float) -> float:
    """The envelope series g(omega, epsilon), zero at omega = 0.

    Each term is (4 omega)^{n + 3/2} epsilon^{2/(2n+3)} / (n! sqrt(2n+1)).
    """
    if not 0.0 <= omega <= _OMEGA_SERIES_MAX:
        if omega < 0.0:
            raise DomainError(f"omega must be nonnegative, got {omega}")
        raise RangeError(f"g_series supports omega <= 50, got {omega}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    if omega == 0.0:
        return 0.0
    z = 4.0 * omega
    return z**1.5 * _g_series_reduced(z, -math.log(epsilon))


def omega_max_freq(epsilon: float) -> float:
    """Largest frequency where the log-sharp envelope still beats the ceiling.

    Clamped at zero: for mild localization the envelope never dips below
    the ceiling at all.
    """
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    b = -math.log(epsilon)
    if b <= 0.0:
        return 0.0
    arg = math.sqrt(2.0 * math.e * b) / 6.0**1.5
    if arg <= 1.0:
        return 0.0
    return 0.25 * math.log(arg)


def im_y0_lower(lam: float, k: float) -> tuple[str, float]:
    """Per-regime lower bound for the saddle height Im y0.

    Case A bounds it linearly in k, case B1 by k/6, and case B2 through
    the Lambert function of k^2/(8 lambda^2). Returns the case tag along
    with the bound so tests can assert against the matching regime.
    """
    if lam < 0.0 or k < 0.0:
        raise DomainError(f"need lam >= 0 and k >= 0, got ({lam}, {k})")
    tag = _classify_case(lam, k)
    if tag == "A":
        return tag, k / (3.0 + 2.0 * math.e * lam)
    if tag == "B1":
        return tag, k / 6.0
    # Case B2 always has v >= e^2/2, the range where log v - log log v
    # brackets the Lambert value from below.
    v = k * k / (8.0 * lam * lam)
    logv = math.log(v)
    return tag, math.sqrt(0.5 * max(logv - math.log(logv), 0.0))

@dataclass(frozen=True)
class BandReport:
    """Band energy against its certificate; cap is None when no level of
    the corollary's localization chain admits this band."""

    band_energy: float
    cap: float | None


def band_energy_cap(split, omega0: float, omega1: float) -> BandReport:
    """Energy in the frequency band [omega0, omega1] and its cap C*E.

    The admissible fraction C is searched on the geometric ladder
    C_j = 1 - 10^{-3j}: level j stands for data with epsilon =
    sqrt(1 - C_j) = 10^{-3j/2}, and the band is admitted at the first
    level whose envelope crossover frequency clears the band's top edge
    (support radius folded in, since the crossover lives at unit
    radius). The certificate is meaningful only because C < 1: some
    definite energy fraction must sit outside the band.
    """
    if not 0.0 <= omega0 < omega1:
        raise DomainError(f"need 0 <= omega0 < omega1, got [{omega0}, {omega1}]")
    k_abs = abs(split.k_grid)
    density = np.abs(split.h_plus) ** 2 + np.abs(split.h_minus) ** 2
    inside = (k_abs >= omega0) & (k_abs <= omega1)
    masked = np.where(inside, density, 0.0)
    dk = split.k_grid[1] - split.k_grid[0]
    band = float(trapezoid_uniform(masked, dk)) / (2.0 * math.pi)

    cap = None
    stretch = max(1.0, split.support_radius)
    for j in range(1, 108):
        if stretch * omega1 < omega_max_freq(10.0 ** (-1.5 * j)):
            cap = (1.0 - 10.0 ** (-3 * j)) * split.energy_total
            break
    if cap is not None and band > cap * (1.0 + 1e-9):
        raise ViolationError(
            f"band energy {band:.6g} exceeds its certificate {cap:.6g}"
        )
    return BandReport(band_energy=band, cap=cap)
