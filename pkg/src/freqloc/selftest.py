"""Acceptance suite: one callable per criterion, shared by CLI and tests.

Each criterion function returns (passed, detail). The functions are
self-contained and deterministic: randomized inputs come from seeded
generators, and every tolerance is written next to the check it guards.
run_all prints one PASS/FAIL line per criterion and returns a process
exit code.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import replace
from functools import lru_cache

import numpy as np

from . import calibration
from .bounds import h_eval, im_y0_lower
from .config import ScenarioConfig
from .errors import TruncationError
from .fields import BumpSpec, GridSpec, build_cauchy_data
from .goursat import goursat_eval, j0_sign_fourier
from .harness import run_scenario
from .quadrature import adaptive_simpson, simpson_uniform
from .specfun import bessel_j0, erfi_scaled, lambert_w0, legendre_p
from .spectral import transform_spectrum, window_split
from .spherical import (
    C_constant,
    _AGGREGATE_CUTOFF,
    _d_l_log,
    coeff_bound_3d,
    d_l_const,
    mode_bound,
    radial_spectrum,
    radial_transform,
    shell_data,
    taylor_coefficients_3d,
)
from .taylor import coeff_bounds, legendre_extract_highest, moment_coefficients, remainder_l2
from .bounds import band_energy_cap


def _fail(detail: str) -> tuple[bool, str]:
    return False, detail


def _ok(detail: str) -> tuple[bool, str]:
    return True, detail


def _split_with_retry(data, k_max: float, k_count: int):
    """Transform once, widening the grid on the error's own suggestion.

    The truncation guard can trip on data whose density sits just above
    the flat-noise escape hatch; its suggested k_max is reliable, so one
    or two retries are cheaper than over-provisioning every call. Retries
    stay below the alias edge of the spatial grid.
    """
    alias_edge = 0.5 * math.pi / data.spacing
    for _ in range(2):
        try:
            return transform_spectrum(data, k_max=k_max, k_count=k_count)
        except TruncationError as err:
            k_max = min(err.suggested_k_max, 0.98 * alias_edge)
    return transform_spectrum(data, k_max=k_max, k_count=k_count)


def criterion_energy_consistency() -> tuple[bool, str]:
    """Spectral halves resum to the physical energy; parities add."""
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    grid = GridSpec(half_width=4.0, count=4096)
    worst_split = 0.0
    worst_parity = 0.0
    for _ in range(20):
        bump = BumpSpec(
            center=float(rng.uniform(-0.8, 0.8)),
            width=float(rng.uniform(0.35, 1.0)),
            modulation_frequency=float(rng.uniform(0.0, 24.0)),
            amplitude=float(rng.uniform(0.5, 2.0)),
        )
        data = build_cauchy_data(bump, grid)
        split = _split_with_retry(
            data,
            k_max=bump.modulation_frequency + 215.0 / bump.width,
            k_count=2049,
        )
        gap = abs(split.energy_plus + split.energy_minus - split.energy_total)
        worst_split = max(worst_split, gap / split.energy_total)

        from .spectral import energy_physical

        even = energy_physical(build_cauchy_data(bump, grid, parity="even"))
        odd = energy_physical(build_cauchy_data(bump, grid, parity="odd"))
        parity_gap = abs(even + odd - split.energy_total) / split.energy_total
        worst_parity = max(worst_parity, parity_gap)
    elapsed = time.perf_counter() - start
    detail = (
        f"split closure {worst_split:.2e}, parity additivity {worst_parity:.2e} "
        f"(tol 1e-8), {elapsed:.2f}s (budget 5s)"
    )
    if worst_split > 1e-8 or worst_parity > 1e-8 or elapsed >= 5.0:
        return _fail(detail)
    return _ok(detail)


@lru_cache(maxsize=1)
def _goursat_grid() -> dict[str, dict[str, float]]:
    """Route agreement figures on the 20x20 (a, b) grid, per variant."""
    a_values = np.linspace(-2.0, 0.5, 20)
    b_values = np.linspace(0.2, 8.0, 20)
    results: dict[str, dict[str, float]] = {}
    for variant in ("full", "one", "two"):
        series_vs_bessel = 0.0
        contour_vs_bessel = 0.0
        peak = 0.0
        series_grid = {}
        for a in a_values:
            for b in b_values:
                series = goursat_eval(a, b, "series", variant).value
                bessel = goursat_eval(a, b, "bessel_integral", variant).value
                series_grid[(a, b)] = series
                peak = max(peak, abs(series))
                series_vs_bessel = max(
                    series_vs_bessel, abs(series - bessel) / abs(bessel)
                )
                if variant != "full":
                    contour = goursat_eval(a, b, "contour", variant).value
                    contour_vs_bessel = max(
                        contour_vs_bessel, abs(contour - bessel) / abs(bessel)
                    )
        step = 1e-3
        pde = 0.0
        for a in a_values[2:-2:4]:
            for b in b_values[2:-2:4]:
                mixed = (
                    goursat_eval(a + step, b + step, "series", variant).value
                    - goursat_eval(a + step, b - step, "series", variant).value
                    - goursat_eval(a - step, b + step, "series", variant).value
                    + goursat_eval(a - step, b - step, "series", variant).value
                ) / (4.0 * step * step)
                pde = max(pde, abs(mixed + series_grid[(a, b)]))
        results[variant] = {
            "series_vs_bessel": series_vs_bessel,
            "contour_vs_bessel": contour_vs_bessel,
            "pde_residual": pde,
            "peak": peak,
        }
    return results


def criterion_goursat_routes() -> tuple[bool, str]:
    """Series, convolution, and contour evaluations agree; PDE holds."""
    start = time.perf_counter()
    grid = _goursat_grid()
    elapsed = time.perf_counter() - start
    series_gap = max(r["series_vs_bessel"] for r in grid.values())
    contour_gap = max(
        grid[v]["contour_vs_bessel"] for v in ("one", "two")
    )
    pde_rel = max(r["pde_residual"] / r["peak"] for r in grid.values())
    detail = (
        f"series-vs-integral {series_gap:.2e} (tol 1e-6), contour "
        f"{contour_gap:.2e} (tol 1e-4), PDE residual {pde_rel:.2e} of peak "
        f"(tol 1e-4), {elapsed:.1f}s (budget 60s)"
    )
    if series_gap > 1e-6 or contour_gap > 1e-4 or pde_rel > 1e-4 or elapsed >= 60.0:
        return _fail(detail)
    return _ok(detail)


def criterion_convolution_variants() -> tuple[bool, str]:
    """The two modified coefficient sequences obey the same identity."""
    grid = _goursat_grid()
    gap = max(grid[v]["series_vs_bessel"] for v in ("one", "two"))
    detail = f"variant one/two series-vs-integral {gap:.2e} (tol 1e-6)"
    return (gap <= 1e-6, detail)


def criterion_legendre_recovery() -> tuple[bool, str]:
    """Highest-coefficient extraction is exact and never beats its bound."""
    start = time.perf_counter()
    rng = np.random.default_rng(104)
    worst_recovery = 0.0
    bound_violations = 0
    for _ in range(1000):
        degree = int(rng.integers(0, 11))
        coeffs = rng.uniform(-1.0, 1.0, degree + 1)
        lead = rng.uniform(0.1, 1.0) * (1 if rng.random() < 0.5 else -1)
        coeffs[degree] = lead
        # window where cutoff_omega1 actually lands for these degrees;
        # far below it the (4/omega1)^N conditioning makes quadrature
        # truncation swamp any float64 sampling of the polynomial
        omega1 = float(rng.uniform(1.0, 3.0))
        n_pts = 131073 if degree >= 8 else 16385
        nodes = np.linspace(0.0, omega1, n_pts)
        samples = np.polynomial.polynomial.polyval(nodes, coeffs)
        extracted = legendre_extract_highest(samples, omega1, degree)
        error = abs(extracted.a_n - lead) / max(1.0, abs(lead))
        worst_recovery = max(worst_recovery, error)
        if abs(extracted.a_n) > extracted.bound + 1e-9:
            bound_violations += 1
    elapsed = time.perf_counter() - start
    detail = (
        f"recovery error {worst_recovery:.2e} (tol 1e-9), "
        f"{bound_violations} coefficient-bound violations, "
        f"{elapsed:.2f}s (budget 10s)"
    )
    if worst_recovery > 1e-9 or bound_violations or elapsed >= 10.0:
        return _fail(detail)
    return _ok(detail)


def criterion_bound_certification() -> tuple[bool, str]:
    """Shift scenario: no tier violated, calibrated c generalizes."""
    start = time.perf_counter()
    config = ScenarioConfig()
    report = run_scenario(config)
    held = run_scenario(replace(config, zeta_list=(48.0,)))
    elapsed = time.perf_counter() - start
    flags = sum(1 for row in report.rows for _ in row.violation_flags)
    held_flags = sum(1 for row in held.rows for _ in row.violation_flags)
    detail = (
        f"{len(report.rows)} probes, {flags} violations, epsilon monotone "
        f"{report.epsilon_monotone}, held-out zeta=48 violations {held_flags}, "
        f"c={report.c_refined:.6g}, {elapsed:.1f}s (budget 120s)"
    )
    ok = (
        flags == 0
        and held_flags == 0
        and report.epsilon_monotone
        and elapsed < 120.0
    )
    return (_ok if ok else _fail)(detail)


def _taylor_suite():
    """Deterministic family of unit-ball data with full coefficient tables."""
    grid = GridSpec(half_width=4.0, count=16384)
    shapes = [(0.0, 0.7), (0.15, 0.85), (0.0, 1.0), (-0.15, 0.7)]
    suite = []
    for center, width in shapes:
        for zeta in (0.0, 6.0):
            bump = BumpSpec(center=center, width=width, modulation_frequency=zeta)
            for parity in ("even", "odd"):
                data = build_cauchy_data(bump, grid, parity=parity)
                split = transform_spectrum(
                    data, k_max=zeta + 215.0 / width, k_count=1025
                )
                for sign in ("plus", "minus"):
                    table = moment_coefficients(data, 40, parity, sign)
                    suite.append((table, split.epsilon))
    return suite


def criterion_coefficient_bounds() -> tuple[bool, str]:
    """Factorial and refined coefficient bounds, plus remainder smallness."""
    worst_simple = 0.0
    worst_refined = 0.0
    worst_remainder = 0.0
    for table, epsilon in _taylor_suite():
        root_e = math.sqrt(table.energy)
        if root_e == 0.0:
            continue
        for n in range(11):
            bounds = coeff_bounds(n, epsilon, table.energy)
            measured = abs(table.a[n])
            worst_simple = max(
                worst_simple, measured / (bounds.simple + 1e-10)
            )
            worst_refined = max(worst_refined, measured / bounds.refined)
            remainder = remainder_l2(table, n, bounds.cutoff_omega1)
            worst_remainder = max(
                worst_remainder, remainder / (4.0 * epsilon * root_e)
            )
    detail = (
        f"coefficient/simple ratio {worst_simple:.3g}, refined ratio "
        f"{worst_refined:.3g}, remainder ratio {worst_remainder:.3g} "
        f"(all must stay <= 1)"
    )
    ok = worst_simple <= 1.0 and worst_refined <= 1.0 and worst_remainder <= 1.0
    return (_ok if ok else _fail)(detail)


def criterion_saddle_analytics() -> tuple[bool, str]:
    """Derivatives, convexity, tangent lines, case bounds, and envelopes."""
    problems = []
    step = 1e-4
    for lam in (0.1, 1.0, 5.0):
        for k in (1.0, 5.0, 20.0):
            state = h_eval(lam, k)
            dk = (h_eval(lam, k + step).h - h_eval(lam, k - step).h) / (2 * step)
            if abs(dk - state.im_y0) > 1e-6 * max(1.0, abs(state.im_y0)):
                problems.append(f"dh/dk at ({lam},{k}): {dk} vs {state.im_y0}")
            dl = (h_eval(lam + step, k).h - h_eval(lam - step, k).h) / (2 * step)
            target = -math.exp(state.im_y0**2)
            if abs(dl - target) > 1e-6 * max(1.0, abs(target)):
                problems.append(f"dh/dlam at ({lam},{k}): {dl} vs {target}")
            second = (
                h_eval(lam + step, k).h
                - 2 * state.h
                + h_eval(lam - step, k).h
            ) / step**2
            if second <= 0:
                problems.append(f"convexity at ({lam},{k}): {second}")

    rng = np.random.default_rng(107)
    for _ in range(50):
        lam = float(rng.uniform(0.05, 5.0))
        k_lo = float(rng.uniform(0.1, 20.0))
        anchor = h_eval(lam, k_lo)
        for _ in range(50):
            k_hi = k_lo + float(rng.uniform(1e-3, 30.0))
            lhs = h_eval(lam, k_hi).h
            rhs = anchor.h + anchor.im_y0 * (k_hi - k_lo)
            if lhs < rhs - 1e-9 * max(1.0, abs(rhs)):
                problems.append(f"tangent at ({lam},{k_lo},{k_hi})")

    cases = set()
    for lam in (0.1, 0.5, 1.0, 2.0, 5.0):
        for k in (0.5, 2.0, 5.0, 10.0, 30.0, 80.0):
            case, lower = im_y0_lower(lam, k)
            cases.add(case)
            solved = h_eval(lam, k).im_y0
            if solved < lower - 1e-9:
                problems.append(
                    f"case {case} at ({lam},{k}): {solved} < {lower}"
                )
    if cases != {"A", "B1", "B2"}:
        problems.append(f"case sweep incomplete: {sorted(cases)}")

    for x in np.geomspace(math.e**2 / 2.0, 1e8, 200):
        w = lambert_w0(float(x))
        if not math.log(x) - math.log(math.log(x)) - 1e-12 <= w <= math.log(x) + 1e-12:
            problems.append(f"Lambert bracketing at x={x}")

    for big_c in range(51):
        lhs = adaptive_simpson(
            lambda t: np.exp(big_c * np.exp(-t * t) - 1.5 * t * t),
            0.0,
            9.0,
            rel_tol=1e-9,
        )
        rhs = 2.0 * math.exp(big_c) / math.sqrt(1.0 + big_c)
        if lhs > rhs * (1.0 + 1e-9):
            problems.append(f"envelope integral at C={big_c}: {lhs} > {rhs}")
    anchor = adaptive_simpson(
        lambda t: np.exp(-1.5 * t * t), 0.0, 9.0, rel_tol=1e-11
    )
    if abs(anchor - math.sqrt(math.pi / 6.0)) > 1e-9:
        problems.append(f"C=0 anchor {anchor} vs sqrt(pi/6)")

    detail = f"{len(problems)} violations" + (
        f"; first: {problems[0]}" if problems else ""
    )
    return (len(problems) == 0, detail)


def criterion_special_functions() -> tuple[bool, str]:
    """Bessel zero, scaled erfi, Lambert residual, Legendre orthogonality."""
    lo, hi = 2.0, 2.8
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if bessel_j0(lo) * bessel_j0(mid) <= 0:
            hi = mid
        else:
            lo = mid
    zero_error = abs(0.5 * (lo + hi) - 2.404825557695773)

    worst_erfi = 0.0
    for nu in np.linspace(0.01, 30.0, 61):
        quad = adaptive_simpson(
            lambda t: np.exp(t * t), 0.0, math.sqrt(nu), rel_tol=1e-11
        )
        reference = math.exp(-nu) * (2.0 / math.sqrt(math.pi)) * quad / math.sqrt(nu)
        worst_erfi = max(
            worst_erfi, abs(erfi_scaled(float(nu)) - reference) / reference
        )

    worst_lambert = 0.0
    for x in (-0.3, -0.05, 0.0, 0.5, 3.0, 100.0, 1e6):
        w = lambert_w0(x)
        worst_lambert = max(
            worst_lambert, abs(w * math.exp(w) - x) / max(1.0, abs(x))
        )

    nodes = np.linspace(-1.0, 1.0, 4097)
    spacing = nodes[1] - nodes[0]
    table = np.array([legendre_p(n, nodes) for n in range(13)])
    worst_ortho = 0.0
    for m in range(13):
        for n in range(m, 13):
            value = simpson_uniform(table[m] * table[n], spacing)
            target = 2.0 / (2 * n + 1) if m == n else 0.0
            worst_ortho = max(worst_ortho, abs(value - target))

    detail = (
        f"J0 zero error {zero_error:.1e} (tol 1e-9), erfi {worst_erfi:.1e} "
        f"(tol 1e-8), Lambert {worst_lambert:.1e} (tol 1e-12), orthogonality "
        f"{worst_ortho:.1e} (tol 1e-8)"
    )
    ok = (
        zero_error <= 1e-9
        and worst_erfi <= 1e-8
        and worst_lambert <= 1e-12
        and worst_ortho <= 1e-8
    )
    return (_ok if ok else _fail)(detail)


def criterion_j0_sign_transform() -> tuple[bool, str]:
    """Tapered numerical transform of sign(t) J0(t) matches the branch."""
    spacing = 0.01
    t = np.arange(0.0, 1200.0 + spacing / 2, spacing)
    j0_values = np.array([bessel_j0(float(v)) for v in t])
    worst = 0.0
    for p in (1.5, 2.0, 3.0, 5.0):
        sin_part = np.sin(p * t)
        tapered = {}
        for sigma in (50.0, 100.0, 200.0):
            taper = np.exp(-(t * t) / (2.0 * sigma * sigma))
            tapered[sigma] = 2.0 * simpson_uniform(
                j0_values * sin_part * taper, spacing
            )
        extrapolated = (4.0 * tapered[200.0] - tapered[100.0]) / 3.0
        closed = j0_sign_fourier(p).imag
        worst = max(worst, abs(extrapolated - closed))
    detail = f"worst absolute mismatch {worst:.2e} (tol 1e-3)"
    return (worst <= 1e-3, detail)


def criterion_spherical_modes() -> tuple[bool, str]:
    """Mode constants, aggregation constant, shell bounds, small-omega slope."""
    worst_dl = 0.0
    for l in range(101):
        exact = d_l_const(l)
        logged = math.exp(_d_l_log(l))
        worst_dl = max(worst_dl, abs(exact - logged) / exact)

    partial, tail = C_constant()
    increments = []
    running = 0.0
    for l in range(_AGGREGATE_CUTOFF):
        p = (4 * l + 6) / (2 * l + 5)
        term = (2 * l + 1) * math.exp(p * _d_l_log(l))
        running += term
        if l >= 50:
            increments.append(term)
    cauchy_ok = (
        abs(running - partial) < 1e-12 * partial
        and sum(increments) < 1e-10
        and tail < 1e-10
    )

    bump = BumpSpec(center=3.0, width=0.8, modulation_frequency=8.0)
    radius = bump.center + bump.width
    omega_step = math.pi / (2.2 * 8.0) * 0.999
    count = int(math.ceil(300.0 / omega_step)) + 1
    if count % 2 == 0:
        count += 1
    omega_grid = np.linspace(0.0, omega_step * (count - 1), count)

    r_grid, phi0, phi1 = shell_data(0, bump, 8.0, 4097)
    mode = radial_spectrum(0, 0, r_grid, phi0, phi1, omega_grid)
    coeffs = taylor_coefficients_3d(0, r_grid, phi0, phi1, 1, 5)
    worst_coeff = 0.0
    for n, value in enumerate(coeffs[:11]):
        bound = coeff_bound_3d(0, n, mode.epsilon_lm, mode.energy)
        worst_coeff = max(
            worst_coeff, abs(value) / (bound * radius ** (n + 1.5))
        )

    probes = np.linspace(0.5, 20.0, 40)
    hat0, hat1 = radial_transform(0, r_grid, (phi0, phi1), probes)
    h_plus = 0.5 * (probes * hat0 + 1j * hat1)
    h_minus = 0.5 * (probes * hat0 - 1j * hat1)
    worst_mode = 0.0
    for index, omega in enumerate(probes):
        bound = mode_bound(
            radius * float(omega),
            mode.epsilon_lm,
            0,
            radius**3 * mode.energy,
            c_refined=calibration.REFINED_C,
        ).value
        measured = max(abs(h_plus[index]), abs(h_minus[index]))
        worst_mode = max(worst_mode, measured / bound)

    slope_window = np.linspace(0.005, 0.06, 111)
    worst_slope = 0.0
    for l in range(3):
        r_l, p0_l, p1_l = shell_data(l, bump, 8.0, 4097)
        hat0_l, hat1_l = radial_transform(l, r_l, (p0_l, p1_l), slope_window)
        h_small = 0.5 * (slope_window * hat0_l + 1j * hat1_l)
        slope = np.polyfit(np.log(slope_window), np.log(np.abs(h_small)), 1)[0]
        worst_slope = max(worst_slope, abs(slope - l))

    detail = (
        f"d_l route gap {worst_dl:.1e} (tol 1e-10), tail {tail:.1e} "
        f"(tol 1e-10, Cauchy {cauchy_ok}), shell coefficient ratio "
        f"{worst_coeff:.3g}, mode-bound ratio {worst_mode:.3g}, slope "
        f"deviation {worst_slope:.3g} (tol 0.05)"
    )
    ok = (
        worst_dl <= 1e-10
        and cauchy_ok
        and worst_coeff <= 1.0
        and worst_mode <= 1.0
        and worst_slope <= 0.05
    )
    return (_ok if ok else _fail)(detail)


def criterion_localization_sanity() -> tuple[bool, str]:
    """No suite datum is purely one-sided; band caps certified."""
    grid = GridSpec(half_width=4.0, count=4096)
    smallest = math.inf
    windows = []
    for zeta in (0.0, 8.0, 16.0, 32.0, 64.0):
        bump = BumpSpec(center=0.0, width=0.5, modulation_frequency=zeta)
        data = build_cauchy_data(bump, grid)
        split = transform_spectrum(data, k_max=zeta + 430.0, k_count=1024)
        # Admissible bands sit below |k| ~ 0.28, between the wide grid's
        # samples, so certify on a re-sampled window with real mass in it.
        windows.append(window_split(data, split, k_top=0.29, k_count=1161))
        smallest = min(smallest, split.energy_minus / split.energy_total)

    bump = BumpSpec(center=3.0, width=0.8, modulation_frequency=8.0)
    omega_step = math.pi / (2.2 * 8.0) * 0.999
    count = int(math.ceil(300.0 / omega_step)) + 1
    if count % 2 == 0:
        count += 1
    omega_grid = np.linspace(0.0, omega_step * (count - 1), count)
    r_grid, phi0, phi1 = shell_data(0, bump, 8.0, 4097)
    mode = radial_spectrum(0, 0, r_grid, phi0, phi1, omega_grid)
    smallest = min(smallest, mode.energy_minus / mode.energy)

    certified = 0
    nonzero_mass = 0
    try:
        for window in windows:
            for omega1 in (0.02, 0.05, 0.1, 0.28):
                report = band_energy_cap(window, 0.0, omega1)
                if report.cap is None:
                    continue
                certified += 1
                if report.band_energy > 0.0:
                    nonzero_mass += 1
                if report.band_energy > report.cap:
                    return _fail(f"band [0,{omega1}] exceeds cap for split")
    except Exception as exc:  # ViolationError means a failed certificate
        return _fail(f"band cap self-check raised: {exc}")
    detail = (
        f"smallest minus-energy fraction {smallest:.2e} (floor 1e-12), "
        f"{certified} bands certified, {nonzero_mass} with nonzero mass"
    )
    return (smallest >= 1e-12 and nonzero_mass == certified, detail)


CRITERIA = (
    ("energy consistency", criterion_energy_consistency),
    ("characteristic solver routes", criterion_goursat_routes),
    ("convolution identity variants", criterion_convolution_variants),
    ("polynomial coefficient recovery", criterion_legendre_recovery),
    ("scenario bound certification", criterion_bound_certification),
    ("series coefficient bounds", criterion_coefficient_bounds),
    ("saddle analytics", criterion_saddle_analytics),
    ("special function oracles", criterion_special_functions),
    ("sign-kernel transform", criterion_j0_sign_transform),
    ("spherical mode bounds", criterion_spherical_modes),
    ("localization sanity", criterion_localization_sanity),
)


def run_all(stream=None) -> int:
    """Run every criterion, print one line each, return an exit code."""
    stream = stream or sys.stdout
    failures = 0
    for name, func in CRITERIA:
        try:
            passed, detail = func()
        except Exception as exc:
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        failures += not passed
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}", file=stream)
    print(
        f"{len(CRITERIA) - failures}/{len(CRITERIA)} criteria passed",
        file=stream,
    )
    return 0 if failures == 0 else 2
