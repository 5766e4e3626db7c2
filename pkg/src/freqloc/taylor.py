"""Low-frequency Taylor data of the spectrum halves.

The transforms of compactly supported data are entire, so each half
h_pm(omega) = sum a_n omega^n is recovered from spatial moments. The a_n
obey a ladder of bounds: the crude 1/n! envelope from the support alone,
a sharper envelope once the negative-frequency fraction epsilon is known,
and an extraction inequality for the top coefficient of any polynomial
truncation. All three live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneracyError,
    DomainError,
    ResolutionError,
    UsageError,
    ViolationError,
)
from .fields import CauchyData, SampledField
from .quadrature import simpson_pair, simpson_uniform, simpson_weights
from .spectral import energy_physical
from .specfun import legendre_p

_MOMENT_REL_TOL = 1e-12
_CRUDE_SLACK = 1e-10


@dataclass(eq=False)
class CoeffTable:
    """Taylor coefficients of one parity sector and sign of the spectrum."""

    parity: str
    sign: str
    a: np.ndarray
    c0: np.ndarray
    c1: np.ndarray
    energy: float
    support_radius: float

    def __post_init__(self) -> None:
        if self.parity not in ("even", "odd"):
            raise UsageError(f"parity must be even or odd, got {self.parity!r}")
        if self.sign not in ("plus", "minus"):
            raise UsageError(f"sign must be plus or minus, got {self.sign!r}")
        if self.parity == "odd" and self.a.size and self.a[0] != 0.0:
            raise ViolationError("odd-sector tables must start with a_0 = 0")
        if self.support_radius <= 1.0 + 1e-12 and self.energy >= 0.0:
            root_e = math.sqrt(self.energy)
            for n, coeff in enumerate(self.a):
                cap = root_e / math.factorial(n) + _CRUDE_SLACK
                if abs(coeff) > cap:
                    raise ViolationError(
                        f"|a_{n}| = {abs(coeff):.6g} exceeds the support "
                        f"envelope {cap:.6g}"
                    )


def _project_parity(values: np.ndarray, parity: str) -> np.ndarray:
    sign = 1.0 if parity == "even" else -1.0
    return 0.5 * (values + sign * values[::-1])


def _checked_moments(
    values: np.ndarray,
    x: np.ndarray,
    dx: float,
    n_max: int,
    label: str,
) -> np.ndarray:
    """Moments (1/n!) integral (-i x)^n f(x) dx with a per-n grid check.

    The check compares full-grid Simpson against the half grid; the scale
    it is measured against is the same integral with everything in
    absolute value, which stays meaningful when a moment nearly cancels
    by symmetry.
    """
    out = np.empty(n_max + 1, dtype=complex)
    power = np.ones_like(values)
    abs_power = np.ones(x.size)
    abs_values = np.abs(values)
    minus_ix = -1j * x
    abs_x = np.abs(x)
    for n in range(n_max + 1):
        fact = math.factorial(n)
        full, half = simpson_pair(values * power, dx)
        scale = float(simpson_uniform(abs_values * abs_power, dx)) / fact
        if abs(full - half) / fact > _MOMENT_REL_TOL * max(scale, 1e-300):
            raise ResolutionError(
                f"grid does not resolve the order-{n} moment of {label}; "
                f"full and half grids disagree beyond 1e-12 of its scale"
            )
        out[n] = full / fact
        power = power * minus_ix
        abs_power = abs_power * abs_x
    return out


def moment_coefficients(
    data: CauchyData, n_max: int, parity: str, sign: str
) -> CoeffTable:
    """Taylor coefficients a_0..a_n_max of one spectrum half by moments.

    Projects the data onto the requested parity sector first, takes the
    scaled spatial moments of both profiles by Simpson, then combines
    a_n = c0_{n-1}/2 + sign * (i/2) c1_n. Moments the grid cannot resolve
    raise ResolutionError naming the failing order.
    """
    if not 0 <= n_max <= 40:
        raise UsageError(f"n_max must lie in [0, 40], got {n_max}")
    if parity not in ("even", "odd"):
        raise UsageError(f"parity must be even or odd, got {parity!r}")
    if sign not in ("plus", "minus"):
        raise UsageError(f"sign must be plus or minus, got {sign!r}")
    phi0 = _project_parity(data.phi0.samples, parity)
    phi1 = _project_parity(data.phi1.samples, parity)
    x = data.x_grid
    dx = data.spacing
    c0 = _checked_moments(phi0, x, dx, n_max, "phi0")
    c1 = _checked_moments(phi1, x, dx, n_max, "phi1")
    s = 1.0 if sign == "plus" else -1.0
    a = np.empty(n_max + 1, dtype=complex)
    a[0] = s * 0.5j * c1[0]
    if n_max >= 1:
        a[1:] = 0.5 * c0[:-1] + s * 0.5j * c1[1:]
    if parity == "odd":
        a[0] = 0.0
    projected = CauchyData(
        SampledField(phi0, data.half_width, dx),
        SampledField(phi1, data.half_width, dx),
        data.support_radius,
    )
    energy = energy_physical(projected)
    return CoeffTable(parity, sign, a, c0, c1, energy, data.support_radius)


@dataclass(frozen=True)
class CoeffBounds:
    """The two coefficient envelopes and the frequency window they share."""

    simple: float
    refined: float
    cutoff_omega1: float


def coeff_bounds(n: int, epsilon: float, energy: float) -> CoeffBounds:
    """Envelopes for |a_n| given the negative-frequency fraction.

    ``simple`` needs only unit-ball support; ``refined`` trades the
    epsilon information for the 4^n/sqrt(2n+1) growth; ``cutoff_omega1``
    is the frequency window on which the truncation error of degree n is
    controlled by 4 epsilon sqrt(E).
    """
    if not 0 <= n <= 40:
        raise UsageError(f"n must lie in [0, 40], got {n}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    if energy < 0.0:
        raise DomainError(f"energy must be nonnegative, got {energy}")
    root_e = math.sqrt(energy)
    fact = math.factorial(n)
    simple = root_e / fact
    refined = (
        6.0 / math.sqrt(2 * n + 1.0) * 4.0**n / fact
        * epsilon ** (2.0 / (2 * n + 3)) * root_e
    )
    fact_next = math.factorial(n + 1)
    cutoff = (epsilon**2 * fact_next**2 * (2 * n + 3)) ** (1.0 / (2 * n + 3))
    return CoeffBounds(simple, refined, cutoff)


@dataclass(frozen=True)
class ExtractedCoeff:
    """Top Taylor coefficient of a sampled polynomial, with its envelope."""

    a_n: complex
    bound: float


def legendre_extract_highest(
    samples: np.ndarray, omega1: float, degree: int
) -> ExtractedCoeff:
    """Leading coefficient of a degree-``degree`` polynomial on [0, omega1].

    Projects onto the shifted Legendre polynomial of that degree, whose
    orthogonality kills every lower-order term, and normalizes by the
    same-quadrature moment c_N of omega^N. The returned bound is
    omega1^{-1/2} (4/omega1)^N times the L2 norm of the samples and can
    never be exceeded by the actual coefficient.
    """
    samples = np.asarray(samples)
    if samples.ndim != 1:
        raise UsageError("samples must be a 1-D array")
    n_pts = samples.size
    if n_pts % 2 == 0 or n_pts < 2 * degree + 3:
        raise UsageError(
            f"need an odd sample count of at least {2 * degree + 3}, got {n_pts}"
        )
    if not 0 <= degree <= 30:
        raise UsageError(f"degree must lie in [0, 30], got {degree}")
    if not omega1 > 0.0:
        raise DomainError(f"omega1 must be positive, got {omega1}")
    omega = np.linspace(0.0, omega1, n_pts)
    dx = omega1 / (n_pts - 1)
    shifted = legendre_p(degree, 2.0 * omega / omega1 - 1.0)
    c_n = float(simpson_uniform(omega**degree * shifted, dx))
    if abs(c_n) < 1e-300:
        raise DegeneracyError(
            f"normalization moment underflowed for degree {degree} on "
            f"[0, {omega1:g}]"
        )
    projection = simpson_uniform(samples * shifted, dx)
    a_n = projection / c_n
    norm = math.sqrt(abs(float(simpson_uniform(np.abs(samples) ** 2, dx))))
    bound = omega1**-0.5 * (4.0 / omega1) ** degree * norm
    return ExtractedCoeff(complex(a_n), bound)


def remainder_l2(table: CoeffTable, n_cut: int, omega1: float) -> float:
    """L2([0, omega1]) size of the Taylor tail past degree ``n_cut``.

    Sums the table's own coefficients above the cut on a fine grid and
    adds the worst case of everything beyond the table, using the 1/n!
    envelope. Feeds the truncation-control checks.
    """
    if not 0 <= n_cut <= table.a.size - 1:
        raise UsageError(f"n_cut must index into the table, got {n_cut}")
    if not omega1 > 0.0:
        raise DomainError(f"omega1 must be positive, got {omega1}")
    omega = np.linspace(0.0, omega1, 513)
    dx = omega1 / 512
    tail = np.zeros(omega.size, dtype=complex)
    for n in range(table.a.size - 1, n_cut, -1):
        tail = tail * omega + table.a[n]
    tail *= omega ** (n_cut + 1)
    norm_sq = float(simpson_uniform(np.abs(tail) ** 2, dx))
    n_top = table.a.size
    beyond_sup = (
        math.sqrt(max(table.energy, 0.0))
        * omega1**n_top / math.factorial(n_top) * math.exp(omega1)
    )
    return math.sqrt(norm_sq) + beyond_sup * math.sqrt(omega1)
