"""Uniform-grid quadrature rules used throughout the package.

Composite Simpson on an odd number of equispaced samples is the workhorse:
spatial moments, frequency transforms and the Legendre projections all run
through it. Summations use a fixed order (a single weights dot product, or
Neumaier accumulation for scalar series) so repeated runs agree bitwise.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import AccuracyError, UsageError


def simpson_weights(count: int, dx: float) -> np.ndarray:
    """Composite Simpson weights for ``count`` equispaced samples.

    ``count`` must be odd and at least 3 (an even number of panels).
    """
    if count < 3 or count % 2 == 0:
        raise UsageError(
            f"composite Simpson needs an odd sample count >= 3, got {count}"
        )
    w = np.full(count, 2.0)
    w[1::2] = 4.0
    w[0] = 1.0
    w[-1] = 1.0
    return w * (dx / 3.0)


def simpson_uniform(values: np.ndarray, dx: float) -> complex | float:
    """Integrate samples on a uniform grid by composite Simpson.

    Works along the last axis; complex samples integrate to a complex value.
    """
    values = np.asarray(values)
    w = simpson_weights(values.shape[-1], dx)
    return values @ w


def simpson_pair(values: np.ndarray, dx: float) -> tuple[complex, complex]:
    """Simpson result on the full grid and on every second sample.

    The pair feeds Richardson-style resolution checks: if the two disagree,
    the grid does not resolve the integrand. Requires (count - 1) % 4 == 0.
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if (n - 1) % 4 != 0:
        raise UsageError(
            f"half-grid comparison needs (count-1) divisible by 4, got count={n}"
        )
    full = simpson_uniform(values, dx)
    half = simpson_uniform(values[..., ::2], 2.0 * dx)
    return full, half


def trapezoid_uniform(values: np.ndarray, dx: float) -> complex | float:
    """Trapezoid rule on a uniform grid, along the last axis."""
    values = np.asarray(values)
    if values.shape[-1] < 2:
        raise UsageError("trapezoid needs at least two samples")
    end_correction = 0.5 * (values[..., 0] + values[..., -1])
    return (values.sum(axis=-1) - end_correction) * dx


def neumaier_sum(values: np.ndarray) -> float:
    """Compensated sum of a 1-D float array, immune to ordering noise."""
    total = 0.0
    comp = 0.0
    for v in np.asarray(values, dtype=float):
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


def adaptive_simpson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    initial_panels: int = 64,
    max_doublings: int = 14,
) -> float | complex:
    """Integrate ``f`` over [a, b], doubling the panel count until stable.

    ``f`` must accept a numpy array of nodes. Convergence means two
    consecutive refinements agree to ``rel_tol`` relative (or absolutely,
    when the integral is at or below the underflow scale). Failure to
    converge raises AccuracyError carrying the last estimate.
    """
    if not b > a:
        raise UsageError(f"empty or reversed interval [{a}, {b}]")
    if initial_panels % 2 != 0:
        initial_panels += 1
    n = initial_panels
    x = np.linspace(a, b, n + 1)
    vals = np.asarray(f(x))
    prev = simpson_uniform(vals, (b - a) / n)
    for _ in range(max_doublings):
        mid = 0.5 * (x[:-1] + x[1:])
        mid_vals = np.asarray(f(mid))
        n *= 2
        merged = np.empty(n + 1, dtype=np.result_type(vals, mid_vals))
        merged[0::2] = vals
        merged[1::2] = mid_vals
        x = np.linspace(a, b, n + 1)
        vals = merged
        cur = simpson_uniform(vals, (b - a) / n)
        scale = max(abs(cur), abs(prev))
        if abs(cur - prev) <= rel_tol * scale or scale < 1e-300:
            return cur
        prev = cur
    raise AccuracyError(
        f"quadrature on [{a}, {b}] did not stabilize to {rel_tol:g} "
        f"after {max_doublings} refinements",
        estimate=prev,
    )
