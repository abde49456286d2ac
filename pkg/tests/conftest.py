"""Pytest fixtures for wmono tests."""

from pathlib import Path

import numpy as np
import pytest

from wmono.wclass import WClassCoefficients


@pytest.fixture
def fixtures_dir() -> Path:
    """Return the path to the test-fixtures directory."""
    return Path(__file__).parent.parent / "test-fixtures"


@pytest.fixture
def states_dir(fixtures_dir: Path) -> Path:
    """Return the path to the state description fixtures."""
    return fixtures_dir / "states"


@pytest.fixture
def w4() -> WClassCoefficients:
    """The four-qubit W state."""
    return WClassCoefficients.uniform(4)


@pytest.fixture
def ordered5() -> WClassCoefficients:
    """Five qubits with |b| strictly decreasing along B_1..B_4."""
    return WClassCoefficients.normalized(0.2, [0.7, 0.6, 0.3, 0.15, 0.05])


@pytest.fixture
def complex_state() -> WClassCoefficients:
    """Four qubits with complex amplitudes and a non-zero vacuum term."""
    return WClassCoefficients.normalized(
        0.3 - 0.1j, [0.5 + 0.2j, -0.4j, 0.35, 0.1 + 0.6j]
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)
