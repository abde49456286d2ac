"""Tests for the command-line interface."""

from pathlib import Path

import pytest
from typer.testing import CliRunner

from wmono.cli import app

runner = CliRunner()


class TestEvaluate:
    """Tests for ``wmono evaluate``."""

    def test_w4(self, states_dir: Path) -> None:
        result = runner.invoke(app, ["evaluate", str(states_dir / "w4.yml")])

        assert result.exit_code == 0, result.output
        assert "Measures" in result.output
        assert "no-valid-t" in result.output
        assert "adjacent reading: status t=1" in result.output

    def test_selected_ids_and_exponents(self, states_dir: Path) -> None:
        result = runner.invoke(
            app,
            ["evaluate", str(states_dir / "w4.yml"), "--ids", "th3,eq3", "--y", "-1", "--y", "-2"],
        )
        assert result.exit_code == 0, result.output
        assert "th2" not in result.output

    def test_sub_block(self, states_dir: Path) -> None:
        result = runner.invoke(app, ["evaluate", str(states_dir / "sub-block.yml")])
        assert result.exit_code == 0, result.output
        assert "A|B3B1" in result.output

    def test_zero_pair_uses_remark(self, states_dir: Path) -> None:
        result = runner.invoke(
            app, ["evaluate", str(states_dir / "zero-pair.yml"), "--ids", "th3,remark1"]
        )
        assert result.exit_code == 0, result.output
        assert "remark1" in result.output

    def test_malformed_file(self, states_dir: Path) -> None:
        result = runner.invoke(app, ["evaluate", str(states_dir / "malformed.yml")])
        assert result.exit_code == 2
        assert "b[1]" in result.output

    def test_unknown_id(self, states_dir: Path) -> None:
        result = runner.invoke(app, ["evaluate", str(states_dir / "w4.yml"), "--ids", "th9"])
        assert result.exit_code == 2
        assert "th9" in result.output

    def test_exponent_outside_domain(self, states_dir: Path) -> None:
        result = runner.invoke(
            app, ["evaluate", str(states_dir / "w4.yml"), "--ids", "th1", "--x", "1.5"]
        )
        assert result.exit_code == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["evaluate", str(tmp_path / "missing.yml")])
        assert result.exit_code == 2


class TestFigure:
    """Tests for ``wmono figure``."""

    def test_small_grid(self, tmp_path: Path) -> None:
        out = tmp_path / "fig1.csv"
        result = runner.invoke(
            app, ["figure", "1", "-o", str(out), "--from", "2", "--to", "4", "--step", "1"]
        )

        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        assert lines[0] == "exponent,exact,bound_new,bound_old"
        assert len(lines) == 4
        assert lines[2].startswith("3.0,")

    def test_figure2_default_grid(self, tmp_path: Path) -> None:
        out = tmp_path / "fig2.csv"
        result = runner.invoke(app, ["figure", "2", "-o", str(out)])

        assert result.exit_code == 0, result.output
        assert len(out.read_text().splitlines()) == 201

    def test_unknown_figure(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["figure", "3", "-o", str(tmp_path / "x.csv")])
        assert result.exit_code == 2

    def test_grid_outside_domain(self, tmp_path: Path) -> None:
        out = tmp_path / "bad.csv"
        result = runner.invoke(app, ["figure", "2", "-o", str(out), "--from", "-1", "--to", "0"])
        assert result.exit_code == 2
        assert not out.exists()


class TestVerify:
    """Tests for ``wmono verify``."""

    def test_small_run(self, tmp_path: Path) -> None:
        csv_path = tmp_path / "summary.csv"
        yaml_path = tmp_path / "summary.yml"
        result = runner.invoke(
            app,
            [
                "verify",
                "--trials",
                "3",
                "--seed",
                "1",
                "--max-qubits",
                "4",
                "-o",
                str(csv_path),
                "--report",
                str(yaml_path),
            ],
        )

        assert result.exit_code == 0, result.output
        assert csv_path.read_text().startswith("inequality_id,")
        assert "tallies:" in yaml_path.read_text()

    def test_config_file(self, fixtures_dir: Path) -> None:
        result = runner.invoke(
            app, ["verify", "--config", str(fixtures_dir / "fuzz" / "small.yml"), "--trials", "2"]
        )
        assert result.exit_code == 0, result.output
        assert "seed 7, 2 trials" in result.output

    def test_env_file(self, fixtures_dir: Path) -> None:
        result = runner.invoke(
            app,
            ["verify", "--env-file", str(fixtures_dir / "env" / "seed.env"), "--max-qubits", "4"],
        )
        assert result.exit_code == 0, result.output
        assert "seed 11, 6 trials" in result.output

    def test_env_override_beats_env_file(self, fixtures_dir: Path) -> None:
        result = runner.invoke(
            app,
            [
                "verify",
                "-e",
                str(fixtures_dir / "env" / "seed.env"),
                "-E",
                "WMONO_TRIALS=2",
                "--max-qubits",
                "4",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "seed 11, 2 trials" in result.output

    def test_environment_variables(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("WMONO_SEED", "21")
        monkeypatch.setenv("WMONO_TRIALS", "2")
        result = runner.invoke(app, ["verify", "--max-qubits", "4"])
        assert result.exit_code == 0, result.output
        assert "seed 21, 2 trials" in result.output

    def test_bad_env_value(self, fixtures_dir: Path) -> None:
        result = runner.invoke(
            app, ["verify", "--env-file", str(fixtures_dir / "env" / "bad-seed.env")]
        )
        assert result.exit_code == 2
        assert "WMONO_SEED" in result.output

    def test_bad_config(self, fixtures_dir: Path) -> None:
        result = runner.invoke(
            app, ["verify", "--config", str(fixtures_dir / "fuzz" / "unknown-key.yml")]
        )
        assert result.exit_code == 2

    def test_inconsistent_qubit_range(self) -> None:
        result = runner.invoke(
            app, ["verify", "--trials", "1", "--min-qubits", "6", "--max-qubits", "4"]
        )
        assert result.exit_code == 2


class TestOracle:
    def test_small_budget(self) -> None:
        result = runner.invoke(
            app,
            [
                "oracle",
                "--measure",
                "coa",
                "--budget",
                "64",
                "--refine",
                "5",
                "--trials",
                "2",
                "--tolerance",
                "1",
            ],
        )
        assert result.exit_code == 0, result.output
        assert "Oracle cross-check" in result.output

    def test_rank_out_of_range(self) -> None:
        result = runner.invoke(app, ["oracle", "--rank", "5"])
        assert result.exit_code == 2


class TestGlobalOptions:
    def test_version(self) -> None:
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert "wmono version" in result.output

    def test_no_args_shows_help(self) -> None:
        result = runner.invoke(app, [])
        assert "evaluate" in result.output
