"""Tests for the figure data series."""

import pytest

from wmono.exceptions import ExponentDomainError, InvalidSelectionError
from wmono.figures import DEFAULT_GRIDS, FigureRow, check_grid, exponent_grid, figure_rows


class TestExponentGrid:
    def test_default_lengths(self) -> None:
        assert len(exponent_grid(*DEFAULT_GRIDS[1])) == 161
        assert len(exponent_grid(*DEFAULT_GRIDS[2])) == 200

    def test_endpoints_without_drift(self) -> None:
        grid = exponent_grid(2.0, 10.0, 0.05)
        assert grid[0] == 2.0
        assert grid[-1] == 10.0
        assert grid[20] == 3.0

    def test_single_point(self) -> None:
        assert exponent_grid(3.0, 3.0, 0.5) == [3.0]

    @pytest.mark.parametrize(("start", "stop", "step"), [(2.0, 3.0, 0.0), (3.0, 2.0, 0.1)])
    def test_invalid(self, start: float, stop: float, step: float) -> None:
        with pytest.raises(ValueError):
            exponent_grid(start, stop, step)


class TestCheckGrid:
    def test_figure1_domain(self) -> None:
        check_grid(1, [2.0, 10.0])
        with pytest.raises(ExponentDomainError):
            check_grid(1, [1.5])

    def test_figure2_excludes_zero(self) -> None:
        check_grid(2, [-10.0, -0.05])
        with pytest.raises(ExponentDomainError):
            check_grid(2, [0.0])

    def test_unknown_figure(self) -> None:
        with pytest.raises(InvalidSelectionError):
            check_grid(3, [2.0])


class TestFigureRows:
    """Tests for figure_rows on the 4-qubit W state."""

    @pytest.mark.parametrize(
        ("x", "exact", "new", "old"),
        [
            (2.0, 0.75, 0.75, 0.75),
            (3.0, 0.649519052838, 0.59375, 0.375),
            (4.0, 0.5625, 0.4375, 0.1875),
        ],
    )
    def test_figure1_values(self, x: float, exact: float, new: float, old: float) -> None:
        (row,) = figure_rows(1, [x])

        assert row.exponent == x
        assert row.exact == pytest.approx(exact, rel=1e-9)
        assert row.bound_new == pytest.approx(new, rel=1e-9)
        assert row.bound_old == pytest.approx(old, rel=1e-9)
        assert row.ordered(1)

    def test_figure2_value(self) -> None:
        (row,) = figure_rows(2, [-1.0])

        assert row.exact == pytest.approx(1.154700538379, rel=1e-9)
        assert row.bound_new == pytest.approx(2.0, rel=1e-9)
        assert row.bound_old == pytest.approx(6.0, rel=1e-9)
        assert row.ordered(2)

    def test_default_grids_are_ordered(self) -> None:
        for which in (1, 2):
            rows = figure_rows(which)
            assert len(rows) == len(exponent_grid(*DEFAULT_GRIDS[which]))
            assert all(row.ordered(which) for row in rows)

    def test_unknown_figure(self) -> None:
        with pytest.raises(InvalidSelectionError):
            figure_rows(5)

    def test_grid_outside_domain(self) -> None:
        with pytest.raises(ExponentDomainError):
            figure_rows(1, [1.0])


class TestFigureRowOrdered:
    def test_disordered_rows(self) -> None:
        assert not FigureRow(3.0, 0.5, 0.6, 0.4).ordered(1)
        assert not FigureRow(-1.0, 1.0, 7.0, 6.0).ordered(2)

    def test_slack(self) -> None:
        assert FigureRow(2.0, 0.75, 0.75 + 1e-14, 0.75).ordered(1)
