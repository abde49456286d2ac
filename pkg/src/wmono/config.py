"""Numeric tolerances and environment-driven settings.

Supports:
- One ``Tolerances`` record shared by every numerical check
- .env files and ``-E KEY=value`` overrides
- ``WMONO_*`` environment variables as defaults for CLI flags
"""

import os
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path

ENV_PREFIX = "WMONO_"


@dataclass(frozen=True)
class Tolerances:
    """All numeric tolerances used across the package."""

    hermitian: float = 1e-12
    hermitian_input: float = 1e-10
    norm: float = 1e-10
    normalization: float = 1e-12
    psd_clamp: float = 1e-10
    psd_reject: float = 1e-8
    jacobi_offdiag: float = 1e-13
    jacobi_max_sweeps: int = 100
    tie: float = 1e-12
    report_slack: float = 1e-12
    zero_pair: float = 1e-12

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with every float tolerance multiplied by ``factor``."""
        return Tolerances(
            hermitian=self.hermitian * factor,
            hermitian_input=self.hermitian_input * factor,
            norm=self.norm * factor,
            normalization=self.normalization * factor,
            psd_clamp=self.psd_clamp * factor,
            psd_reject=self.psd_reject * factor,
            jacobi_offdiag=self.jacobi_offdiag * factor,
            jacobi_max_sweeps=self.jacobi_max_sweeps,
            tie=self.tie * factor,
            report_slack=self.report_slack * factor,
            zero_pair=self.zero_pair * factor,
        )


DEFAULT_TOLERANCES = Tolerances()


def _split_assignment(text: str) -> tuple[str, str] | None:
    """``KEY=value`` as a pair, or None when there is no ``=`` or no key."""
    key, sep, value = text.partition("=")
    key = key.strip()
    if not sep or not key:
        return None
    return key, value


def _unquote(value: str) -> str:
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    return value


def load_env_file(path: Path) -> dict[str, str]:
    """Read ``WMONO_*`` style assignments from a .env file.

    Blank lines, ``#`` comments and lines without ``=`` are skipped; values are
    stripped and lose one pair of matching quotes.

    Raises:
        FileNotFoundError: If ``path`` does not exist
    """
    settings: dict[str, str] = {}
    for raw in path.read_text(encoding="utf-8").splitlines():
        text = raw.strip()
        if text.startswith("#"):
            continue
        pair = _split_assignment(text)
        if pair is not None:
            settings[pair[0]] = _unquote(pair[1].strip())
    return settings


def parse_env_overrides(overrides: list[str]) -> dict[str, str]:
    """``-E KEY=value`` flags as a mapping; the value is kept verbatim after the first ``=``."""
    pairs = (_split_assignment(item) for item in overrides)
    return dict(pair for pair in pairs if pair is not None)


def get_setting(
    name: str,
    env_vars: Mapping[str, str] | None = None,
    system_env: bool = True,
) -> str | None:
    """Look up ``WMONO_<NAME>``, preferring explicitly provided variables.

    Args:
        name: Setting name without prefix, e.g. "seed"
        env_vars: Variables loaded from an env file or overrides
        system_env: Whether to fall back to ``os.environ``

    Returns:
        The raw string value, or None if unset
    """
    key = ENV_PREFIX + name.upper()
    if env_vars and key in env_vars:
        return env_vars[key]
    if system_env:
        return os.environ.get(key)
    return None


def resolve_int_setting(
    name: str,
    flag_value: int | None,
    default: int,
    env_vars: Mapping[str, str] | None = None,
    system_env: bool = True,
) -> int:
    """Resolve an integer setting: flag, then env file, then environment, then default.

    Raises:
        ValueError: If the environment value is not an integer
    """
    if flag_value is not None:
        return flag_value

    raw = get_setting(name, env_vars, system_env)
    if raw is None or not raw.strip():
        return default

    try:
        return int(raw.strip())
    except ValueError as e:
        raise ValueError(f"{ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}") from e
