"""Sampled Cauchy data for the 1+1 dimensional wave equation.

A field lives on a uniform symmetric grid x in [-L, L] with an odd number
of samples (an even Simpson panel count), zero at both endpoints. Initial
data pairs a position profile with a velocity profile and remembers the
radius of the interval actually carrying support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResolutionError, UsageError

# exp(1/(u^2-1)) underflows past this |u|; outside it the bump is flat zero
# at double precision, so samples are set to exact zeros there.
_BUMP_EDGE_SQ = 1.0 - 1.0 / 700.0


@dataclass(eq=False)
class SampledField:
    """Complex samples on a uniform grid over [-half_width, half_width]."""

    samples: np.ndarray
    half_width: float
    spacing: float

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.ndim != 1:
            raise UsageError("samples must be a 1-D array")
        n = self.samples.size
        if n < 16:
            raise UsageError(f"need at least 16 samples, got {n}")
        span = self.spacing * (n - 1)
        if abs(span - 2.0 * self.half_width) > 4e-16 * max(1.0, abs(span)):
            raise UsageError(
                f"spacing {self.spacing} times {n - 1} panels does not cover "
                f"[-{self.half_width}, {self.half_width}]"
            )
        if self.samples[0] != 0.0 or self.samples[-1] != 0.0:
            raise UsageError("field must vanish exactly at the grid endpoints")

    @property
    def count(self) -> int:
        return self.samples.size

    @property
    def x_grid(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.samples.size)


@dataclass(eq=False)
class CauchyData:
    """Position and velocity profiles on a shared grid, plus support radius."""

    phi0: SampledField
    phi1: SampledField
    support_radius: float

    def __post_init__(self) -> None:
        a, b = self.phi0, self.phi1
        if a.count != b.count or a.half_width != b.half_width or a.spacing != b.spacing:
            raise UsageError("phi0 and phi1 must share one grid")
        if not 0.0 < self.support_radius <= a.half_width:
            raise DomainError(
                f"support radius {self.support_radius} must lie in "
                f"(0, {a.half_width}]"
            )
        outside = np.abs(a.x_grid) > self.support_radius * (1.0 + 1e-12)
        if np.any(a.samples[outside] != 0.0) or np.any(b.samples[outside] != 0.0):
            raise DomainError("data does not vanish outside the support radius")

    @property
    def x_grid(self) -> np.ndarray:
        return self.phi0.x_grid

    @property
    def spacing(self) -> float:
        return self.phi0.spacing

    @property
    def half_width(self) -> float:
        return self.phi0.half_width

    def is_zero(self) -> bool:
        return not (np.any(self.phi0.samples) or np.any(self.phi1.samples))


@dataclass(frozen=True)
class BumpSpec:
    """Parameters of one modulated bump profile."""

    center: float
    width: float
    modulation_frequency: float = 0.0
    amplitude: float = 1.0


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid over [-half_width, half_width].

    ``count`` is the Simpson panel count (a power of two, at least 64);
    the sampled grid carries count + 1 points.
    """

    half_width: float = 4.0
    count: int = 2048


def _bump_profile(x: np.ndarray, spec: BumpSpec) -> tuple[np.ndarray, np.ndarray]:
    """The bump and its x-derivative, exactly zero off the open support."""
    u = (x - spec.center) / spec.width
    inside = u * u < _BUMP_EDGE_SQ
    phi = np.zeros(x.size, dtype=complex)
    dphi = np.zeros(x.size, dtype=complex)
    ui = u[inside]
    envelope = np.exp(1.0 / (ui * ui - 1.0))
    osc = np.exp(1j * spec.modulation_frequency * x[inside])
    phi[inside] = spec.amplitude * envelope * osc
    log_deriv = 1j * spec.modulation_frequency - 2.0 * ui / (
        spec.width * (ui * ui - 1.0) ** 2
    )
    dphi[inside] = phi[inside] * log_deriv
    return phi, dphi


def build_cauchy_data(
    bump: BumpSpec, grid: GridSpec, parity: str = "none"
) -> CauchyData:
    """Construct right-moving modulated-bump Cauchy data.

    The position profile is amplitude * exp(1/(u^2 - 1)) * exp(i zeta x)
    with u = (x - center)/width, and the velocity profile is the analytic
    derivative with the sign that makes the data purely right-moving, so
    raising the modulation frequency drains the negative-frequency energy.
    Optionally projects both profiles onto an even or odd sector.
    """
    if parity not in ("none", "even", "odd"):
        raise UsageError(f"parity must be none, even or odd, got {parity!r}")
    n = grid.count
    if n < 64 or n & (n - 1) != 0:
        raise UsageError(f"grid count must be a power of two >= 64, got {n}")
    if not grid.half_width > 0.0:
        raise DomainError("grid half_width must be positive")
    if not bump.width > 0.0:
        raise DomainError(f"bump width must be positive, got {bump.width}")
    radius = abs(bump.center) + bump.width
    if radius >= grid.half_width:
        raise DomainError(
            f"bump support [{bump.center - bump.width}, {bump.center + bump.width}] "
            f"does not fit strictly inside (-{grid.half_width}, {grid.half_width})"
        )
    spacing = 2.0 * grid.half_width / n
    if bump.width / spacing < 8.0:
        raise ResolutionError(
            f"only {bump.width / spacing:.1f} samples across the bump width; "
            f"need at least 8 (raise the grid count)"
        )
    x = np.linspace(-grid.half_width, grid.half_width, n + 1)
    phi0, dphi0 = _bump_profile(x, bump)
    phi1 = -dphi0
    if parity != "none":
        sign = 1.0 if parity == "even" else -1.0
        phi0 = 0.5 * (phi0 + sign * phi0[::-1])
        phi1 = 0.5 * (phi1 + sign * phi1[::-1])
    f0 = SampledField(phi0, grid.half_width, spacing)
    f1 = SampledField(phi1, grid.half_width, spacing)
    return CauchyData(f0, f1, radius)
