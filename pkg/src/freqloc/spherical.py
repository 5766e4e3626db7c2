"""Angular-mode machinery for the wave equation in three space dimensions.

Cauchy data is decomposed over 4 pi normalized spherical harmonics; each
(l, m) mode carries a radial pair, a Hankel-type transform built on
spherical Bessel functions, and the same plus/minus energy split the line
theory uses. The mode constants d_l mediate between radial moments and
the coefficient bounds, and a single absolute constant C aggregates the
bounds over all modes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import calibration
from .bounds import bound_eval, g_series
from .errors import DegeneracyError, DomainError, RangeError, ResolutionError, UsageError
from .fields import BumpSpec, _bump_profile
from .quadrature import simpson_uniform, simpson_weights

_L_MAX = 500
_OMEGA_SERIES_MAX = 50.0
_OMEGA_EXP_MAX = 170.0
_AGGREGATE_CUTOFF = 60
_MILLER_OVERFLOW = 1e140


def d_l_const(l: int) -> float:
    """Mode constant d_l = 4 pi / sqrt(6 (2l+1)) * l! / (2l-1)!!.

    The factorial ratio is assembled exactly as 2^l (l!)^2 / (2l)! before
    the single rounding to float, so the value is good to an ulp even
    deep into the decay range.
    """
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise DomainError(f"l must be a nonnegative integer, got {l!r}")
    if l > _L_MAX:
        raise RangeError(f"d_l_const supports l <= {_L_MAX}, got {l}")
    ratio = Fraction(2**l * math.factorial(l) ** 2, math.factorial(2 * l))
    return 4.0 * math.pi / math.sqrt(6.0 * (2 * l + 1)) * float(ratio)


def _d_l_log(l: int) -> float:
    """log d_l in the log domain, safe far beyond float range."""
    return (
        math.log(4.0 * math.pi)
        - 0.5 * math.log(6.0 * (2 * l + 1))
        + l * math.log(2.0)
        + 2.0 * math.lgamma(l + 1)
        - math.lgamma(2 * l + 1)
    )


def C_constant() -> tuple[float, float]:
    """Aggregation constant sum_l (2l+1) d_l^{(4l+6)/(2l+5)}.

    Returns the partial sum over l < 60 together with a certified bound
    on everything dropped. The tail uses d_l <= 4 pi sqrt(pi/12) 2^{-l}
    and the fact that the exponent never drops below 6/5 once d_l < 1.
    """
    partial = 0.0
    for l in range(_AGGREGATE_CUTOFF):
        p = (4 * l + 6) / (2 * l + 5)
        partial += (2 * l + 1) * math.exp(p * _d_l_log(l))
    cap = 4.0 * math.pi * math.sqrt(math.pi / 12.0)
    q = 2.0 ** (-1.2)
    head = cap**1.2 * q**_AGGREGATE_CUTOFF
    tail = head * (
        (2 * _AGGREGATE_CUTOFF + 1) / (1.0 - q) + 2.0 * q / (1.0 - q) ** 2
    )
    return partial, tail


def stencil_weights(offsets, order: int) -> np.ndarray:
    """Finite-difference weights for d^order/dx^order at x = 0.

    Solves the moment system sum_j w_j p_j^k = k! [k == order] over the
    integer node offsets p_j in exact rational arithmetic, so the
    returned weights are correctly rounded and the stencil reproduces
    polynomials through degree len(offsets) - 1.
    """
    nodes = [Fraction(int(p)) for p in offsets]
    n = len(nodes)
    if order >= n:
        raise UsageError("need more nodes than the derivative order")
    rows = [[node**k for node in nodes] for k in range(n)]
    rhs = [Fraction(math.factorial(k)) if k == order else Fraction(0) for k in range(n)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if rows[i][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        for i in range(n):
            if i != col and rows[i][col] != 0:
                factor = rows[i][col] / rows[col][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
                rhs[i] = rhs[i] - factor * rhs[col]
    return np.array([float(rhs[i] / rows[i][i]) for i in range(n)])


def _derivative_7pt(values: np.ndarray, spacing: float) -> np.ndarray:
    """First derivative of uniformly sampled values, seven-node stencils."""
    n = values.size
    if n < 7:
        raise UsageError("seven-point derivative needs at least 7 samples")
    out = np.empty_like(values)
    center = stencil_weights(range(-3, 4), 1)
    out[3:-3] = np.convolve(values, center[::-1], mode="valid")
    for i in range(3):
        w_left = stencil_weights([p - i for p in range(7)], 1)
        out[i] = w_left @ values[:7]
        w_right = stencil_weights([p - i for p in range(-4, 3)], 1)
        out[n - 3 + i] = w_right @ values[-7:]
    return out / spacing


def spherical_jl(l: int, x: np.ndarray) -> np.ndarray:
    """Spherical Bessel function j_l, elementwise over x >= 0.

    Three regimes: an ascending series where x is small against l, an
    upward recurrence from the closed j_0 and j_1 where it is stable
    (x above l), and a normalized downward recurrence in between. The
    downward pass is anchored to sum (2n+1) j_n^2 = 1, which stays well
    conditioned even where j_0 itself vanishes.
    """
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise DomainError(f"l must be a nonnegative integer, got {l!r}")
    if l > _L_MAX:
        raise RangeError(f"spherical_jl supports l <= {_L_MAX}, got {l}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise DomainError("spherical_jl requires x >= 0")
    scalar = x.ndim == 0
    flat = np.atleast_1d(x).ravel().copy()
    out = np.empty_like(flat)

    series_mask = flat < 0.5 * math.sqrt(2.0 * l + 3.0)
    upward_mask = (~series_mask) & (flat >= l + 1.0)
    miller_mask = ~(series_mask | upward_mask)

    if np.any(series_mask):
        out[series_mask] = _jl_series(l, flat[series_mask])
    if np.any(upward_mask):
        out[upward_mask] = _jl_upward(l, flat[upward_mask])
    if np.any(miller_mask):
        out[miller_mask] = _jl_miller(l, flat[miller_mask])
    return float(out[0]) if scalar else out.reshape(x.shape)


def _jl_series(l: int, x: np.ndarray) -> np.ndarray:
    # leading factor x^l / (2l+1)!! in the log domain to dodge overflow
    half = -0.5 * x * x
    with np.errstate(divide="ignore"):
        log_lead = np.where(x > 0.0, l * np.log(np.where(x > 0.0, x, 1.0)), 0.0)
    log_lead -= math.lgamma(2 * l + 2) - l * math.log(2.0) - math.lgamma(l + 1)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, 40):
        term = term * half / (k * (2.0 * l + 2.0 * k + 1.0))
        total += term
        if float(np.max(np.abs(term))) < 1e-18:
            break
    lead = np.where((x == 0.0) & (l > 0), 0.0, np.exp(log_lead))
    return lead * total


def _jl_upward(l: int, x: np.ndarray) -> np.ndarray:
    prev = np.sin(x) / x
    if l == 0:
        return prev
    cur = prev / x - np.cos(x) / x
    for n in range(1, l):
        prev, cur = cur, (2.0 * n + 1.0) / x * cur - prev
    return cur


def _jl_miller(l: int, x: np.ndarray) -> np.ndarray:
    start = l + 20 + int(math.ceil(math.sqrt(40.0 * l)))
    above = np.zeros_like(x)
    here = np.full_like(x, 1e-30)
    captured = np.zeros_like(x)
    norm = np.zeros_like(x)
    for n in range(start, -1, -1):
        if n == l:
            captured = here.copy()
        norm += (2.0 * n + 1.0) * here * here
        above, here = here, (2.0 * n + 1.0) / x * here - above
        big = np.abs(here) > _MILLER_OVERFLOW
        if np.any(big):
            scale = np.where(big, 1e-140, 1.0)
            above *= scale
            here *= scale
            captured *= scale
            norm *= scale * scale
    return captured / np.sqrt(norm)


def radial_transform(l, r_grid, radial_values, omega_values):
    """Spherical Bessel transform 4 pi (-i)^l int j_l(wr) f(r) r^2 dr.

    Accepts one radial array or a sequence sharing the grid; the kernel
    matrix is built once either way. No tail or resolution policing
    happens here, so small-omega probes on any window are fine.
    """
    r = np.asarray(r_grid, dtype=float)
    omega = np.asarray(omega_values, dtype=float)
    kernel = spherical_jl(l, np.outer(omega, np.abs(r)))
    moment = simpson_weights(r.size, r[1] - r[0]) * r * r
    phase = 4.0 * math.pi * (-1j) ** l
    if isinstance(radial_values, (tuple, list)):
        return tuple(
            phase * (kernel @ (moment * np.asarray(f, dtype=complex)))
            for f in radial_values
        )
    return phase * (kernel @ (moment * np.asarray(radial_values, dtype=complex)))


@dataclass(frozen=True)
class AngularMode:
    """One (l, m) mode: radial data, its transform, and the energy split."""

    l: int
    m: int
    r_grid: np.ndarray
    radial0: np.ndarray
    radial1: np.ndarray
    omega_grid: np.ndarray
    h_plus: np.ndarray
    h_minus: np.ndarray
    energy: float
    energy_minus: float
    epsilon_lm: float

    def __post_init__(self) -> None:
        if not 0 <= abs(self.m) <= self.l:
            raise DomainError(f"need |m| <= l, got l={self.l}, m={self.m}")
        if not 0.0 <= self.energy_minus <= self.energy * (1.0 + 1e-9):
            raise DomainError("minus-mover energy exceeds the total")
        if not 0.0 <= self.epsilon_lm <= 1.0:
            raise DomainError(f"epsilon out of range: {self.epsilon_lm}")
        if self.energy > 0.0:
            d_omega = self.omega_grid[1] - self.omega_grid[0]
            scale = self.omega_grid**2 / (2.0 * math.pi**2)
            through = float(
                simpson_uniform(
                    (np.abs(self.h_plus) ** 2 + np.abs(self.h_minus) ** 2) * scale,
                    d_omega,
                )
            )
            if abs(through - self.energy) > 1e-6 * self.energy:
                raise ResolutionError(
                    "frequency-side energy disagrees with the radial energy "
                    f"by {abs(through - self.energy) / self.energy:.3g} relative"
                )


def radial_spectrum(
    l: int,
    m: int,
    r_grid: np.ndarray,
    radial0: np.ndarray,
    radial1: np.ndarray,
    omega_grid: np.ndarray,
) -> AngularMode:
    """Build the full mode record from radial Cauchy data.

    The transform is phi_hat(omega) = 4 pi (-i)^l int j_l(omega r)
    phi(r) r^2 dr, the split is h_pm = (omega phi0_hat -++ i phi1_hat)/2,
    and the energies are the radial field energy and its frequency-side
    plus and minus parts. Both grids must be uniform with odd sample
    counts; r starts at zero. The omega grid has to reach past the
    spectral tail and sample it finely enough for the energy identity
    to close, and both failures are reported as resolution problems.
    """
    r = np.asarray(r_grid, dtype=float)
    f0 = np.asarray(radial0, dtype=complex)
    f1 = np.asarray(radial1, dtype=complex)
    omega = np.asarray(omega_grid, dtype=float)
    if r.ndim != 1 or f0.shape != r.shape or f1.shape != r.shape:
        raise UsageError("radial arrays must be 1-D and share one grid")
    if r.size < 33 or r.size % 2 == 0:
        raise UsageError("radial grid needs an odd sample count of at least 33")
    if r[0] != 0.0:
        raise DomainError("radial grid must start at r = 0")
    dr = r[1] - r[0]
    if not np.allclose(np.diff(r), dr, rtol=1e-12, atol=0.0):
        raise DomainError("radial grid must be uniform")
    if omega.ndim != 1 or omega.size < 65 or omega.size % 2 == 0:
        raise UsageError("omega grid needs an odd sample count of at least 65")
    if omega[0] != 0.0 or np.any(omega < 0.0):
        raise DomainError("omega grid must start at 0 and stay nonnegative")
    d_omega = omega[1] - omega[0]
    if not np.allclose(np.diff(omega), d_omega, rtol=1e-12, atol=0.0):
        raise DomainError("omega grid must be uniform")
    r_outer = float(r[-1])
    if d_omega > math.pi / (2.2 * max(1.0, r_outer)):
        raise ResolutionError(
            "omega spacing too coarse for the radial support; "
            f"need at most {math.pi / (2.2 * max(1.0, r_outer)):.4g}"
        )

    slope = _derivative_7pt(f0, dr)
    density = (
        np.abs(f1) ** 2 * r * r
        + np.abs(slope) ** 2 * r * r
        + l * (l + 1.0) * np.abs(f0) ** 2
    )
    energy = 2.0 * math.pi * float(simpson_uniform(density, dr))

    hat0, hat1 = radial_transform(l, r, (f0, f1), omega)
    h_plus = 0.5 * (omega * hat0 + 1j * hat1)
    h_minus = 0.5 * (omega * hat0 - 1j * hat1)

    scale = omega * omega / (2.0 * math.pi**2)
    mover_density = (np.abs(h_plus) ** 2 + np.abs(h_minus) ** 2) * scale
    if energy > 0.0:
        peak = float(np.max(mover_density))
        edge = float(np.mean(mover_density[-8:]))
        if peak > 0.0 and edge > 1e-9 * peak:
            raise ResolutionError(
                "omega grid ends inside the spectral tail; extend omega_max"
            )
    e_plus = float(simpson_uniform(np.abs(h_plus) ** 2 * scale, d_omega))
    e_minus = float(simpson_uniform(np.abs(h_minus) ** 2 * scale, d_omega))
    if energy == 0.0:
        epsilon = 0.0
    else:
        epsilon = min(math.sqrt(max(e_minus, 0.0) / energy), 1.0)
    return AngularMode(
        l=int(l), m=int(m), r_grid=r, radial0=f0, radial1=f1,
        omega_grid=omega, h_plus=h_plus, h_minus=h_minus,
        energy=energy, energy_minus=e_minus, epsilon_lm=epsilon,
    )


def shell_data(
    l: int,
    bump: BumpSpec,
    r_max: float,
    count: int,
    motion: str = "outgoing",
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Radial Cauchy data for a smooth shell supported away from r = 0.

    The outgoing choice pairs the shell with the time derivative of the
    free outgoing wave f(r - t)/r. For real profiles the mover energies
    still split evenly (reality ties the two spectra together); give the
    bump a modulation frequency to concentrate energy on the plus
    movers. Static data has no time derivative at all.
    """
    if motion not in ("outgoing", "static"):
        raise UsageError(f"motion must be outgoing or static, got {motion!r}")
    if count < 65 or count % 2 == 0:
        raise UsageError("count must be odd and at least 65")
    inner = bump.center - bump.width
    outer = bump.center + bump.width
    if inner <= 0.0 or outer >= r_max:
        raise DomainError("shell support must stay inside (0, r_max)")
    r = np.linspace(0.0, r_max, count)
    phi, dphi = _bump_profile(r, bump)
    if motion == "static":
        return r, phi, np.zeros_like(phi)
    over_r = np.where(phi != 0.0, phi / np.where(r > 0.0, r, 1.0), 0.0)
    return r, phi, -dphi - over_r


def coeff_bound_3d(l: int, n: int, epsilon: float, energy: float) -> float:
    """Per-coefficient envelope for mode Taylor coefficients of index n.

    Only indices n >= l occur for an l mode; asking below that is a
    usage error, not a zero.
    """
    if n < l:
        raise UsageError(f"coefficients of an l={l} mode start at n={l}, got {n}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    if energy < 0.0:
        raise DomainError(f"energy must be nonnegative, got {energy}")
    d = d_l_const(l)
    front = 25.0 * max(d, d ** ((2 * l + 3) / (2 * l + 5)))
    shape = 4.0**n / (math.factorial(n) * math.sqrt(2.0 * n + 1.0))
    return front * shape * epsilon ** (2.0 / (2 * n + 5)) * math.sqrt(energy)


def taylor_coefficients_3d(
    l: int,
    r_grid: np.ndarray,
    radial0: np.ndarray,
    radial1: np.ndarray,
    sign: int,
    p_max: int,
) -> np.ndarray:
    """Taylor coefficients a_n of the mover transform, n = l .. l+2p_max+1.

    Built from radial moments: the p-th moment of each radial component
    feeds the coefficients at n = l + 2p (time derivative) and
    n = l + 2p + 1 (position), with the mover sign choosing the branch.
    """
    if sign not in (-1, 1):
        raise UsageError(f"sign must be +1 or -1, got {sign}")
    if p_max < 0:
        raise UsageError("p_max must be nonnegative")
    r = np.asarray(r_grid, dtype=float)
    dr = r[1] - r[0]
    f0 = np.asarray(radial0, dtype=complex)
    f1 = np.asarray(radial1, dtype=complex)
    out = np.zeros(2 * p_max + 2, dtype=complex)
    for p in range(p_max + 1):
        dfac = math.lgamma(2 * (l + p) + 2) - (l + p) * math.log(2.0) \
            - math.lgamma(l + p + 1)
        front = 4.0 * math.pi * (-1j) ** l * (-1.0) ** p \
            / (2.0**p * math.factorial(p)) * math.exp(-dfac)
        weight = r ** (l + 2 * p + 2)
        c1 = front * complex(simpson_uniform(f1 * weight, dr))
        c0 = front * complex(simpson_uniform(f0 * weight, dr))
        out[2 * p] = sign * 0.5j * c1
        out[2 * p + 1] = 0.5 * c0
    return out


def g_l_series(omega: float, epsilon: float, l: int, mode: str = "exact") -> float:
    """Mode-l growth series sum_{n>=l} (4w)^{n+3/2} eps^{2/(2n+5)} / (n! sqrt(2n+1)).

    The upper_via_g route reuses the line-theory series at a reweighted
    epsilon; it dominates the exact sum for every l and omega.
    """
    if mode not in ("exact", "upper_via_g"):
        raise UsageError(f"mode must be exact or upper_via_g, got {mode!r}")
    if omega < 0.0:
        raise DomainError(f"omega must be nonnegative, got {omega}")
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1], got {epsilon}")
    if omega > _OMEGA_SERIES_MAX:
        raise RangeError(f"series evaluation capped at omega = {_OMEGA_SERIES_MAX}")
    if mode == "upper_via_g":
        return g_series(omega, epsilon ** ((2 * l + 3) / (2 * l + 5)))
    if omega == 0.0:
        return 0.0
    z = 4.0 * omega
    log_eps = math.log(epsilon)
    total = 0.0
    log_pow = (l + 1.5) * math.log(z) - math.lgamma(l + 1)
    for n in range(l, l + 600):
        term = math.exp(log_pow + 2.0 * log_eps / (2 * n + 5)) / math.sqrt(2.0 * n + 1.0)
        total += term
        log_pow += math.log(z) - math.log(n + 1.0)
        if term < 1e-17 * total and n > z:
            break
    return total


def mode_bound(
    omega: float,
    epsilon: float,
    l: int,
    energy: float,
    c_refined: float | None = None,
):
    """Saddle-point mover bound for a single l mode.

    The l-rescaled saddle equation is the line-theory refined saddle
    evaluated at the reweighted epsilon^{(2l+3)/(2l+5)}; the returned
    record therefore carries that effective epsilon, which is what the
    recorded saddle ordinate actually solves against. The prefactor
    picks up the extra max(d_l, d_l^{(2l+3)/(2l+5)}).
    """
    if not isinstance(l, (int, np.integer)) or l < 0:
        raise DomainError(f"l must be a nonnegative integer, got {l!r}")
    if not 0.0 < epsilon < 1.0:
        if epsilon >= 1.0:
            raise DegeneracyError("the bound needs epsilon < 1")
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    c = calibration.REFINED_C if c_refined is None else c_refined
    d = d_l_const(l)
    front = max(d, d ** ((2 * l + 3) / (2 * l + 5)))
    eps_eff = epsilon ** ((2 * l + 3) / (2 * l + 5))
    base = bound_eval(omega, eps_eff, energy, "refined", c_refined=c)
    return replace(base, value=front * base.value)


def aggregate_bound(omega: float, epsilon: float, energy: float) -> float:
    """All-mode quadratic bound 625 d_0^{10/3} C E S^2.

    S is the l = 0 instance of the growth series without its power
    prefactor; C is the aggregation constant including its certified
    tail allowance.
    """
    if omega < 0.0:
        raise DomainError(f"omega must be nonnegative, got {omega}")
    if omega > _OMEGA_SERIES_MAX:
        raise RangeError(f"aggregate_bound capped at omega = {_OMEGA_SERIES_MAX}")
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if energy < 0.0:
        raise DomainError(f"energy must be nonnegative, got {energy}")
    z = 4.0 * omega
    log_eps = math.log(epsilon)
    total = 0.0
    term = 1.0
    for n in range(0, 600):
        total += term * math.exp(2.0 * log_eps / (2 * n + 5)) / math.sqrt(2.0 * n + 1.0)
        term *= z / (n + 1.0)
        if term < 1e-17 * max(total, 1e-300) and n > z:
            break
    partial, tail = C_constant()
    return 625.0 * d_l_const(0) ** (10.0 / 3.0) * (partial + tail) * energy * total**2
