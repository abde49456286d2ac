"""Tests for tolerances and environment-driven settings."""

from pathlib import Path

import pytest

from wmono.config import (
    DEFAULT_TOLERANCES,
    get_setting,
    load_env_file,
    parse_env_overrides,
    resolve_int_setting,
)


class TestTolerances:
    def test_scaled(self) -> None:
        scaled = DEFAULT_TOLERANCES.scaled(10.0)
        assert scaled.norm == pytest.approx(DEFAULT_TOLERANCES.norm * 10)
        assert scaled.jacobi_max_sweeps == DEFAULT_TOLERANCES.jacobi_max_sweeps


class TestLoadEnvFile:
    """Tests for .env file loading."""

    def test_fixture(self, fixtures_dir: Path) -> None:
        env = load_env_file(fixtures_dir / "env" / "seed.env")
        assert env == {"WMONO_SEED": "11", "WMONO_TRIALS": "6", "WMONO_WORKERS": "1"}

    def test_comments_and_quotes(self, tmp_path: Path) -> None:
        path = tmp_path / ".env"
        path.write_text("# comment\n\nWMONO_SEED='5'\nnot a pair\nWMONO_TRIALS = 9\n")
        assert load_env_file(path) == {"WMONO_SEED": "5", "WMONO_TRIALS": "9"}

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            load_env_file(tmp_path / "missing.env")


class TestParseEnvOverrides:
    def test_overrides(self) -> None:
        assert parse_env_overrides(["WMONO_SEED=3", "bogus", "X=a=b"]) == {
            "WMONO_SEED": "3",
            "X": "a=b",
        }


class TestResolveIntSetting:
    """Tests for flag, env file, environment and default precedence."""

    def test_flag_wins(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("WMONO_SEED", "4")
        assert resolve_int_setting("seed", 9, 0, {"WMONO_SEED": "5"}) == 9

    def test_env_file_beats_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("WMONO_SEED", "4")
        assert resolve_int_setting("seed", None, 0, {"WMONO_SEED": "5"}) == 5

    def test_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("WMONO_TRIALS", " 12 ")
        assert resolve_int_setting("trials", None, 100) == 12

    def test_default(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv("WMONO_WORKERS", raising=False)
        assert resolve_int_setting("workers", None, 1) == 1
        monkeypatch.setenv("WMONO_WORKERS", "  ")
        assert resolve_int_setting("workers", None, 1) == 1

    def test_system_env_disabled(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("WMONO_SEED", "4")
        assert get_setting("seed", system_env=False) is None
        assert resolve_int_setting("seed", None, 0, system_env=False) == 0

    def test_bad_integer(self, fixtures_dir: Path) -> None:
        env = load_env_file(fixtures_dir / "env" / "bad-seed.env")
        with pytest.raises(ValueError, match="WMONO_SEED must be an integer"):
            resolve_int_setting("seed", None, 0, env)
