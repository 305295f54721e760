"""The winding area measure: area of each winding level set, tail areas,
and the position/scale parameters they induce.

For a chord-closed curve the measure assigns to each nonzero integer n the
Lebesgue area of {z : winding(z) = n}, estimated here by counting unmasked
grid cells. Tail areas D_N (winding >= N) and D-_N (winding <= -N) feed the
two summary parameters: position = sum_N (D_N - D-_N), the Cauchy-limit
location, and scale = mean of pi*N*(D_N + D-_N)/2 over a window of N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadWindow, WindAreaError
from .winding import WindingField

__all__ = [
    "WindingMeasure",
    "TailTable",
    "measure_from_field",
    "tails",
    "position_parameter",
    "scale_parameter",
    "moment_sum",
    "write_measure_csv",
    "write_tails_csv",
]


@dataclass(frozen=True)
class WindingMeasure:
    """Histogram of winding level-set areas.

    entries: nonzero winding -> area (an integer multiple of cell_area).
    masked_area: total area of cells excluded as too close to the curve;
    downstream estimates carry it as a bias bound.
    """

    entries: dict[int, float]
    cell_area: float
    masked_area: float

    @property
    def total_mass(self) -> float:
        return float(sum(self.entries.values()))

    @property
    def max_abs_winding(self) -> int:
        return max((abs(n) for n in self.entries), default=0)


@dataclass(frozen=True)
class TailTable:
    """Tail areas for N = 1..n_max: d_plus[N-1] = area(winding >= N),
    d_minus[N-1] = area(winding <= -N). Both nonincreasing in N."""

    d_plus: np.ndarray
    d_minus: np.ndarray

    @property
    def n_max(self) -> int:
        return self.d_plus.size

    def n_values(self) -> np.ndarray:
        return np.arange(1, self.n_max + 1)


def measure_from_field(field: WindingField) -> WindingMeasure:
    """Count unmasked cells per nonzero winding value."""
    vals = field.values[~field.mask]
    vals = vals[vals != 0]
    levels, counts = np.unique(vals, return_counts=True)
    cell_area = field.grid.cell_area
    entries = {int(n): float(c * cell_area) for n, c in zip(levels, counts)}
    return WindingMeasure(entries, cell_area, field.masked_area)


def tails(measure: WindingMeasure, n_max: int | None = None) -> TailTable:
    """Tail sums D_N = sum_{n >= N} area(n) and the mirror D-_N.

    Default n_max covers the full support, which makes the position
    parameter exactly the first moment; an n_max beyond the support just
    pads zero rows.
    """
    if n_max is None:
        n_max = max(measure.max_abs_winding, 1)
    n_max = int(n_max)
    if n_max < 1:
        raise WindAreaError("n_max must be >= 1")
    plus = np.zeros(n_max)
    minus = np.zeros(n_max)
    for n, area in measure.entries.items():
        if n > 0:
            plus[: min(n, n_max)] += area
        else:
            minus[: min(-n, n_max)] += area
    return TailTable(plus, minus)


def position_parameter(table: TailTable) -> float:
    """sum_N (D_N - D-_N); equals the winding-weighted area when the table
    covers the whole (bounded) support."""
    return float(np.sum(table.d_plus - table.d_minus))


def scale_parameter(table: TailTable, n_lo: int, n_hi: int) -> float:
    """Tail-based scale estimate: mean over N in [n_lo, n_hi] of
    pi*N*(D_N + D-_N)/2."""
    n_lo, n_hi = int(n_lo), int(n_hi)
    if not 1 <= n_lo <= n_hi <= table.n_max:
        raise BadWindow(
            f"need 1 <= n_lo <= n_hi <= {table.n_max}, got [{n_lo}, {n_hi}]"
        )
    n = np.arange(n_lo, n_hi + 1, dtype=np.float64)
    sym = 0.5 * (table.d_plus[n_lo - 1 : n_hi] + table.d_minus[n_lo - 1 : n_hi])
    return float(np.mean(np.pi * n * sym))


def moment_sum(measure: WindingMeasure) -> float:
    """sum_n n * area(n), the winding-weighted algebraic area."""
    items = sorted(measure.entries.items())
    if not items:
        return 0.0
    terms = np.array([n * a for n, a in items])
    return float(np.sum(terms))


def write_measure_csv(measure: WindingMeasure, dest) -> None:
    lines = ["n,area"]
    lines.extend(f"{n},{a:.17g}" for n, a in sorted(measure.entries.items()))
    _write(dest, "\n".join(lines) + "\n")


def write_tails_csv(table: TailTable, dest) -> None:
    lines = ["N,D_plus,D_minus"]
    lines.extend(
        f"{n},{p:.17g},{m:.17g}"
        for n, p, m in zip(table.n_values(), table.d_plus, table.d_minus)
    )
    _write(dest, "\n".join(lines) + "\n")


def _write(dest, text: str) -> None:
    if isinstance(dest, (str, bytes)) or hasattr(dest, "__fspath__"):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)
