"""CSV emission and parsing for the CLI surface.

Floats are written with 17 significant digits so every emitted file
re-parses to bit-identical values. A path of ``-`` means stdout.
"""

from __future__ import annotations

import csv
import io
import sys
from contextlib import contextmanager
from typing import Iterable, Iterator, Sequence

from .errors import UsageError

SPLIT_HEADER = ("k", "re_h_plus", "im_h_plus", "re_h_minus", "im_h_minus")
BOUNDS_HEADER = ("omega", "epsilon", "tier", "value", "case_tag")
GOURSAT_HEADER = (
    "a",
    "b",
    "variant",
    "series",
    "bessel_integral",
    "contour",
    "max_rel_spread",
)
SCENARIO_HEADER = (
    "zeta",
    "epsilon",
    "k",
    "omega",
    "measured_h_plus_abs",
    "measured_h_minus_abs",
    "bound_simple",
    "bound_improved",
    "bound_refined",
    "violation_flags",
)
SPHERE_HEADER = (
    "l",
    "m",
    "omega",
    "measured_h_plus_abs",
    "measured_h_minus_abs",
    "bound_mode",
    "violation_flag",
)


def format_cell(value: object) -> str:
    """Fixed formatting: %.17g for floats, plain str otherwise."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


@contextmanager
def _open_out(path: str) -> Iterator[io.TextIOBase]:
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def write_csv(
    path: str, header: Sequence[str], rows: Iterable[Sequence[object]]
) -> None:
    """Emit one table; each row must match the header width."""
    width = len(header)
    with _open_out(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != width:
                raise UsageError(
                    f"row width {len(row)} does not match header width {width}"
                )
            writer.writerow([format_cell(cell) for cell in row])


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    """Parse one emitted table back into header and string rows."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise UsageError(f"{path!r} is empty") from None
        return header, [row for row in reader]
