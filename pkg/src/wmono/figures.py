"""Data series comparing the new bounds with the prior ones on the 4-qubit W state.

Figure 1 follows the split-weighted lower bound (split forced at ``t = 1``)
against the prior ``x``-power bound; figure 2 follows the averaged upper bound
against the prior ``y``-power bound. Every value goes through the state,
measure and inequality pipeline.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .evaluation import collect_block_values, collect_state_values, evaluate_one
from .exceptions import ExponentDomainError, InvalidSelectionError
from .wclass import WClassCoefficients

FIGURE_QUBITS = 4
FIGURE_SPLIT = 1

DEFAULT_GRIDS: dict[int, tuple[float, float, float]] = {
    1: (2.0, 10.0, 0.05),
    2: (-10.0, -0.05, 0.05),
}
FIGURE_IDS = {1: "th1", 2: "th3"}


@dataclass(frozen=True)
class FigureRow:
    """One exponent with the exact value and both bounds."""

    exponent: float
    exact: float
    bound_new: float
    bound_old: float

    def ordered(self, which: int, slack: float = 1e-12) -> bool:
        """``exact >= new >= old`` for figure 1, ``exact <= new <= old`` for figure 2.

        Comparisons allow ``slack`` relative to the larger side.
        """
        first, second = (self.exact, self.bound_new), (self.bound_new, self.bound_old)
        if which == 2:
            first, second = first[::-1], second[::-1]
        return all(hi >= lo - slack * max(1.0, abs(hi)) for hi, lo in (first, second))


def exponent_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive grid ``start, start + step, ..., stop`` without accumulated drift.

    Raises:
        ValueError: If ``step`` is not positive or ``stop < start``
    """
    if step <= 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"grid end {stop} lies before its start {start}")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


def check_grid(which: int, grid: list[float]) -> None:
    """Reject exponents outside ``[2, 10]`` (figure 1) or ``[-10, 0)`` (figure 2)."""
    if which == 1:
        bad = [x for x in grid if not 2.0 <= x <= 10.0]
        domain = "2 <= x <= 10"
    elif which == 2:
        bad = [y for y in grid if not -10.0 <= y < 0.0]
        domain = "-10 <= y < 0"
    else:
        raise InvalidSelectionError(f"unknown figure {which}; expected 1 or 2")
    if bad:
        raise ExponentDomainError(FIGURE_IDS[which], bad[0], domain)


def figure_rows(
    which: int,
    grid: list[float] | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[FigureRow]:
    """Rows of figure ``which`` over ``grid`` (default grid when omitted).

    Raises:
        InvalidSelectionError: If ``which`` is not 1 or 2
        ExponentDomainError: If the grid leaves the figure's exponent range
    """
    if grid is None:
        if which not in DEFAULT_GRIDS:
            raise InvalidSelectionError(f"unknown figure {which}; expected 1 or 2")
        grid = exponent_grid(*DEFAULT_GRIDS[which])
    check_grid(which, grid)

    state = collect_state_values(WClassCoefficients.uniform(FIGURE_QUBITS), tol=tol)
    values = collect_block_values(state, t=FIGURE_SPLIT if which == 1 else None, tol=tol)

    rows = []
    for exponent in grid:
        report = evaluate_one(FIGURE_IDS[which], values, exponent, tol=tol)
        assert report.baseline_rhs is not None
        rows.append(FigureRow(exponent, report.lhs, report.rhs, report.baseline_rhs))
    return rows
