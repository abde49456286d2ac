"""Generalized W-class states, their reductions and closed-form concurrences.

A W-class state on qubits ``A, B_1, ..., B_{N-1}`` is

    a|0...0> + b_1|10...0> + b_2|010...0> + ... + b_N|0...01>

with ``b_1`` attached to qubit A and ``b_{i+1}`` attached to ``B_i``. In code
``b[0]`` is ``b_1`` and ``b[i]`` is the amplitude of ``B_i``.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import InvalidSelectionError, NormalizationError
from .models import DensityMatrix, PureState

MAX_QUBITS = 12


@dataclass(frozen=True)
class WClassCoefficients:
    """Amplitudes ``(a, b_1..b_N)`` of an N-qubit W-class state."""

    a: complex
    b: tuple[complex, ...]

    def __post_init__(self) -> None:
        b = tuple(complex(v) for v in self.b)
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", b)
        if len(b) < 2:
            raise InvalidSelectionError(f"W-class states need N >= 2 qubits, got {len(b)}")
        if len(b) > MAX_QUBITS:
            raise InvalidSelectionError(f"at most {MAX_QUBITS} qubits are supported, got {len(b)}")
        norm = self.norm_squared()
        if abs(norm - 1.0) > DEFAULT_TOLERANCES.normalization:
            raise NormalizationError(norm, what="W-class coefficients")

    @classmethod
    def normalized(cls, a: complex, b: Sequence[complex]) -> "WClassCoefficients":
        """Rescale ``(a, b)`` to unit norm before validating."""
        values = np.array([a, *b], dtype=np.complex128)
        norm = float(np.linalg.norm(values))
        if norm == 0.0:
            raise NormalizationError(0.0, what="W-class coefficients")
        values /= norm
        return cls(complex(values[0]), tuple(complex(v) for v in values[1:]))

    @classmethod
    def uniform(cls, n_qubits: int) -> "WClassCoefficients":
        """The N-qubit W state: a = 0 and every b equal to 1/sqrt(N)."""
        amp = 1.0 / math.sqrt(n_qubits)
        return cls(0.0, (amp,) * n_qubits)

    @property
    def n_qubits(self) -> int:
        return len(self.b)

    def norm_squared(self) -> float:
        return abs(self.a) ** 2 + sum(abs(v) ** 2 for v in self.b)

    def magnitude(self, qubit: int) -> float:
        """|b| of a qubit: 0 is A, i is B_i."""
        return abs(self.b[qubit])


@dataclass(frozen=True)
class SubsystemSelection:
    """Ordered block ``(j_1, ..., j_{m-1})`` of distinct B indices."""

    block: tuple[int, ...]

    def __post_init__(self) -> None:
        block = tuple(int(j) for j in self.block)
        object.__setattr__(self, "block", block)
        if not block:
            raise InvalidSelectionError("a block must select at least one B qubit")
        if len(set(block)) != len(block):
            raise InvalidSelectionError(f"block indices must be distinct: {block}")

    @classmethod
    def full(cls, n_qubits: int) -> "SubsystemSelection":
        """All B qubits in natural order."""
        return cls(tuple(range(1, n_qubits)))

    @property
    def m(self) -> int:
        """Number of qubits in the reduction, A included."""
        return len(self.block) + 1

    def check(self, n_qubits: int) -> "SubsystemSelection":
        """Raise InvalidSelectionError unless every index lies in 1..N-1."""
        for j in self.block:
            if not 1 <= j <= n_qubits - 1:
                raise InvalidSelectionError(f"B index {j} out of range 1..{n_qubits - 1}")
        return self

    def tail(self, start: int) -> "SubsystemSelection":
        """Sub-block ``(j_start, ..., j_{m-1})`` with 1-based ``start``."""
        return SubsystemSelection(self.block[start - 1 :])

    def __str__(self) -> str:
        return "{" + ",".join(str(j) for j in self.block) + "}"


def _as_selection(sel: SubsystemSelection | Iterable[int]) -> SubsystemSelection:
    if isinstance(sel, SubsystemSelection):
        return sel
    return SubsystemSelection(tuple(sel))


def build_state(c: WClassCoefficients) -> PureState:
    """Amplitude vector of the W-class state (qubit A is the leading bit)."""
    n = c.n_qubits
    amplitudes = np.zeros(2**n, dtype=np.complex128)
    amplitudes[0] = c.a
    for qubit, amp in enumerate(c.b):
        amplitudes[1 << (n - 1 - qubit)] = amp
    return PureState.qubits(amplitudes)


def reduce(c: WClassCoefficients, sel: SubsystemSelection | Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on A and the selected B qubits.

    Factors are ordered ``A, B_{j_1}, ..., B_{j_{m-1}}``.

    Raises:
        InvalidSelectionError: If the selection is not valid for ``c``
    """
    selection = _as_selection(sel).check(c.n_qubits)
    return build_state(c).reduce([0, *selection.block])


def pair_concurrence_closed(c: WClassCoefficients, i: int) -> float:
    """``C(rho_{AB_i}) = C_a(rho_{AB_i}) = 2|b_1||b_{i+1}|``."""
    if not 1 <= i <= c.n_qubits - 1:
        raise InvalidSelectionError(f"B index {i} out of range 1..{c.n_qubits - 1}")
    return 2.0 * c.magnitude(0) * c.magnitude(i)


def block_concurrence_closed(
    c: WClassCoefficients,
    block: SubsystemSelection | Iterable[int],
) -> float:
    """``C(rho_{A|B_{j_1}...B_{j_{m-1}}}) = 2|b_1| sqrt(sum_k |b_{j_k+1}|^2)``."""
    selection = _as_selection(block).check(c.n_qubits)
    weight = sum(c.magnitude(j) ** 2 for j in selection.block)
    return 2.0 * c.magnitude(0) * math.sqrt(weight)


def pair_concurrences_closed(
    c: WClassCoefficients,
    block: SubsystemSelection | Iterable[int],
) -> tuple[float, ...]:
    """Closed-form pair concurrences along a block, in block order."""
    selection = _as_selection(block).check(c.n_qubits)
    return tuple(pair_concurrence_closed(c, j) for j in selection.block)


def downstream_concurrences(
    c: WClassCoefficients,
    block: SubsystemSelection | Iterable[int],
) -> tuple[float, ...]:
    """``C(rho_{A|B_{j_{i+1}}...B_{j_{m-1}}})`` for ``i = 1..m-2``."""
    selection = _as_selection(block).check(c.n_qubits)
    return tuple(
        block_concurrence_closed(c, selection.tail(i + 1)) for i in range(1, selection.m - 1)
    )


def punctured(c: WClassCoefficients, qubit: int) -> WClassCoefficients:
    """Coefficients with ``b`` of ``qubit`` set to zero, renormalized.

    Raises:
        NormalizationError: If nothing is left after removing the amplitude
    """
    if not 0 <= qubit < c.n_qubits:
        raise InvalidSelectionError(f"qubit {qubit} out of range 0..{c.n_qubits - 1}")
    b = list(c.b)
    b[qubit] = 0.0
    return WClassCoefficients.normalized(c.a, b)


def is_degenerate(c: WClassCoefficients, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """True when A carries no excitation, so every concurrence vanishes."""
    return c.magnitude(0) <= tol.zero_pair
