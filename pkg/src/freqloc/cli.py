"""Command line surface: spectra, bound sweeps, route comparisons, scenarios.

Six subcommands wired to the library, with CSV output everywhere and
optional SVG plots for scenarios. Exit codes: 0 success, 2 validation
problem (bad flags, bad config, unusable input), 3 bound violation
detected during a run.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import calibration, csvio
from .bounds import bound_eval, series_bound
from .config import ScenarioConfig, load_config
from .errors import FreqlocError, UsageError, ViolationError
from .fields import BumpSpec, GridSpec, build_cauchy_data
from .goursat import goursat_eval
from .harness import calibrate_c, report_cells, run_scenario
from .spectral import transform_spectrum
from .spherical import mode_bound, radial_spectrum, radial_transform, shell_data

_ENV_CONFIG = "FREQLOC_CONFIG"


def _resolve_config(args: argparse.Namespace) -> ScenarioConfig:
    path = args.config or os.environ.get(_ENV_CONFIG)
    if path:
        return load_config(path)
    return ScenarioConfig()


def _out_path(directory: str, name: str) -> str:
    if directory in (".", ""):
        return name
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, name)


def cmd_split(args: argparse.Namespace) -> int:
    bump = BumpSpec(
        center=args.center,
        width=args.width,
        modulation_frequency=args.zeta,
        amplitude=args.amplitude,
    )
    grid = GridSpec(half_width=args.half_width, count=args.grid_n)
    data = build_cauchy_data(bump, grid)
    k_max = args.k_max if args.k_max is not None else args.zeta + 215.0 / args.width
    split = transform_spectrum(data, k_max=k_max, k_count=args.k_count)
    rows = [
        [float(k), hp.real, hp.imag, hm.real, hm.imag]
        for k, hp, hm in zip(split.k_grid, split.h_plus, split.h_minus)
    ]
    csvio.write_csv(args.out, csvio.SPLIT_HEADER, rows)
    print(
        f"epsilon = {split.epsilon:.6g}  energy = {split.energy_total:.6g}",
        file=sys.stderr,
    )
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    tiers = (
        ("simple", "improved", "refined", "series")
        if args.tier == "all"
        else (args.tier,)
    )
    if args.omega_max < 0:
        raise UsageError(f"--omega-max must be nonnegative, got {args.omega_max}")
    if args.omega_max == 0:
        omegas = [0.0]
    else:
        omegas = list(np.linspace(0.0, args.omega_max, args.count))
    rows = []
    for tier in tiers:
        for omega in omegas:
            if tier == "series":
                value = series_bound(omega, args.epsilon, args.energy)
            else:
                value = bound_eval(
                    omega, args.epsilon, args.energy, tier, args.c_refined
                )
            rows.append([omega, args.epsilon, tier, value.value, value.case_tag])
    csvio.write_csv(args.out, csvio.BOUNDS_HEADER, rows)
    return 0


def cmd_goursat(args: argparse.Namespace) -> int:
    a_values = np.linspace(args.a_min, args.a_max, args.count)
    b_values = np.linspace(args.b_min, args.b_max, args.count)
    rows = []
    for a in a_values:
        for b in b_values:
            series = goursat_eval(a, b, method="series", variant=args.variant).value
            bessel = goursat_eval(
                a, b, method="bessel_integral", variant=args.variant
            ).value
            routes = [series, bessel]
            if args.variant == "full":
                contour = math.nan
            else:
                contour = goursat_eval(a, b, method="contour", variant=args.variant).value
                routes.append(contour)
            spread = (max(routes) - min(routes)) / max(abs(v) for v in routes)
            rows.append([float(a), float(b), args.variant, series, bessel, contour, spread])
    csvio.write_csv(args.out, csvio.GOURSAT_HEADER, rows)
    return 0


def cmd_scenario(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    report = run_scenario(config)
    out = args.out or _out_path(config.output_dir, "scenario.csv")
    csvio.write_csv(out, csvio.SCENARIO_HEADER, report_cells(report))
    for tier, ratio in sorted(report.max_ratio_per_tier.items()):
        print(f"max measured/bound [{tier}]: {ratio:.6g}", file=sys.stderr)
    print(
        f"epsilon monotone: {report.epsilon_monotone}  "
        f"violations: {sum(1 for r in report.rows if r.violation_flags)}",
        file=sys.stderr,
    )
    if args.svg:
        from .svgplot import line_plot

        for zeta in config.zeta_list:
            rows = [r for r in report.rows if r.zeta == zeta]
            x = [r.k for r in rows]
            series = [
                ("measured |h+|", [r.measured_h_plus_abs for r in rows]),
                ("measured |h-|", [r.measured_h_minus_abs for r in rows]),
            ]
            for tier in config.tiers:
                series.append((tier, [r.bound_for(tier) for r in rows]))
            label = f"{zeta:g}".replace(".", "p")
            line_plot(
                _out_path(config.output_dir, f"{args.svg}-zeta{label}.svg"),
                x,
                series,
                title=f"shift scenario, zeta = {zeta:g}",
                x_label="k",
                y_label="|h|",
                log_y=True,
            )
    if args.calibrate:
        constant = calibrate_c([report])
        print(f"calibrated c_refined: {constant!r}")
    if not report.clean:
        raise ViolationError("scenario produced bound violations; see CSV flags")
    return 0


def cmd_sphere(args: argparse.Namespace) -> int:
    bump = BumpSpec(
        center=args.center,
        width=args.width,
        modulation_frequency=args.zeta,
        amplitude=args.amplitude,
    )
    radius = args.center + args.width
    probes = np.linspace(args.omega_min, args.omega_max, args.omega_count)
    omega_step = math.pi / (2.2 * max(1.0, args.r_max)) * 0.999
    omega_nodes = int(math.ceil(args.spectrum_omega_max / omega_step)) + 1
    if omega_nodes % 2 == 0:
        omega_nodes += 1
    omega_grid = np.linspace(0.0, omega_step * (omega_nodes - 1), omega_nodes)

    rows = []
    violations = 0
    for l in range(args.l_max + 1):
        r_grid, phi0, phi1 = shell_data(l, bump, args.r_max, args.r_count)
        mode = radial_spectrum(l, 0, r_grid, phi0, phi1, omega_grid)
        hat0, hat1 = radial_transform(l, r_grid, (phi0, phi1), probes)
        h_plus = 0.5 * (probes * hat0 + 1j * hat1)
        h_minus = 0.5 * (probes * hat0 - 1j * hat1)
        for index, omega in enumerate(probes):
            bound = mode_bound(
                radius * float(omega),
                mode.epsilon_lm,
                l,
                radius**3 * mode.energy,
                c_refined=args.c_refined,
            ).value
            measured_plus = abs(h_plus[index])
            measured_minus = abs(h_minus[index])
            flag = max(measured_plus, measured_minus) > bound
            violations += bool(flag)
            rows.append(
                [l, 0, float(omega), measured_plus, measured_minus, bound, flag]
            )
    csvio.write_csv(args.out, csvio.SPHERE_HEADER, rows)
    if violations:
        raise ViolationError(f"{violations} sphere-mode bound violations; see CSV")
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    from . import selftest

    return selftest.run_all()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqloc",
        description="Frequency-localization bounds for compactly supported waves",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="spectral split of modulated bump data")
    p.add_argument("--center", type=float, default=0.0)
    p.add_argument("--width", type=float, default=0.5)
    p.add_argument("--zeta", type=float, default=0.0, help="modulation frequency")
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--half-width", type=float, default=4.0, help="grid half width")
    p.add_argument("--grid-n", type=int, default=4096, help="grid panel count")
    p.add_argument("--k-max", type=float, default=None)
    p.add_argument("--k-count", type=int, default=1024)
    p.add_argument("--out", default="-")
    p.set_defaults(handler=cmd_split)

    p = sub.add_parser("bounds", help="tier sweep over omega")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--omega-max", type=float, required=True)
    p.add_argument(
        "--tier",
        choices=("simple", "improved", "refined", "series", "all"),
        default="all",
    )
    p.add_argument("--count", type=int, default=33, help="omega samples")
    p.add_argument("--energy", type=float, default=1.0)
    p.add_argument("--c-refined", type=float, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("goursat", help="three-route characteristic solver table")
    p.add_argument("--a-min", type=float, default=-2.0)
    p.add_argument("--a-max", type=float, default=0.5)
    p.add_argument("--b-min", type=float, default=0.2)
    p.add_argument("--b-max", type=float, default=8.0)
    p.add_argument("--count", type=int, default=5, help="grid points per axis")
    p.add_argument("--variant", choices=("full", "one", "two"), default="one")
    p.add_argument("--out", default="-")
    p.set_defaults(handler=cmd_goursat)

    p = sub.add_parser("scenario", help="frequency-shift suite with tier checks")
    p.add_argument("--config", default=None, help=f"key=value file (or ${_ENV_CONFIG})")
    p.add_argument("--out", default=None, help="CSV path (default scenario.csv)")
    p.add_argument("--svg", default=None, help="prefix for per-zeta SVG plots")
    p.add_argument("--calibrate", action="store_true")
    p.set_defaults(handler=cmd_scenario)

    p = sub.add_parser("sphere", help="spherical-mode bound table")
    p.add_argument("--l-max", type=int, default=2)
    p.add_argument("--zeta", type=float, default=8.0, help="shell modulation")
    p.add_argument("--center", type=float, default=3.0, help="shell center radius")
    p.add_argument("--width", type=float, default=0.8)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--r-max", type=float, default=8.0)
    p.add_argument("--r-count", type=int, default=4097)
    p.add_argument("--omega-min", type=float, default=0.5)
    p.add_argument("--omega-max", type=float, default=20.0)
    p.add_argument("--omega-count", type=int, default=16)
    p.add_argument(
        "--spectrum-omega-max",
        type=float,
        default=300.0,
        help="grid extent used to measure the mode's epsilon",
    )
    p.add_argument("--c-refined", type=float, default=calibration.REFINED_C)
    p.add_argument("--out", default="-")
    p.set_defaults(handler=cmd_sphere)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.handler(args)
    except ViolationError as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 3
    except FreqlocError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
