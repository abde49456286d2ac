"""Data structures for quantum states, bipartitions and measure values."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import qlinalg
from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import (
    DimensionMismatchError,
    InvalidSelectionError,
    NormalizationError,
    NotPositiveSemidefiniteError,
)


def _frozen(arr: NDArray[np.complex128]) -> NDArray[np.complex128]:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector over a register of tensor factors."""

    amplitudes: NDArray[np.complex128]
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        vec = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = qlinalg.check_dims(self.dims, vec.size)
        object.__setattr__(self, "amplitudes", _frozen(vec))
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, amplitudes: ArrayLike) -> "PureState":
        """Build a state on a qubit register sized from the amplitude count."""
        vec = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = int(vec.size).bit_length() - 1
        if n < 1 or 2**n != vec.size:
            raise DimensionMismatchError("power of two", vec.size, what="amplitude count")
        return cls(vec, (2,) * n)

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def check_normalized(self, tol: Tolerances = DEFAULT_TOLERANCES) -> "PureState":
        """Return self, or raise NormalizationError if the norm deviates beyond ``tol.norm``."""
        norm = self.norm_squared()
        if abs(norm - 1.0) > tol.norm:
            raise NormalizationError(norm)
        return self

    def projector(self) -> "DensityMatrix":
        """The density matrix |psi><psi|."""
        vec = self.amplitudes
        return DensityMatrix(np.outer(vec, vec.conj()), self.dims)

    def reduce(self, keep: Iterable[int]) -> "DensityMatrix":
        """Reduced density matrix on the kept factors (in the order given)."""
        indices = sorted(keep) if isinstance(keep, (set, frozenset)) else list(keep)
        matrix = qlinalg.reduced_density(self.amplitudes, self.dims, indices)
        return DensityMatrix(matrix, tuple(self.dims[i] for i in indices))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian matrix with an attached tensor-factor dimension list."""

    matrix: NDArray[np.complex128]
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        mat = qlinalg.as_matrix(self.matrix)
        rows, cols = mat.shape
        if rows != cols:
            raise DimensionMismatchError("square matrix", mat.shape, what="shape")
        dims = qlinalg.check_dims(self.dims, rows)
        object.__setattr__(self, "matrix", _frozen(mat))
        object.__setattr__(self, "dims", dims)

    @property
    def n_factors(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    def eigenvalues(self, tol: Tolerances = DEFAULT_TOLERANCES) -> NDArray[np.float64]:
        """Eigenvalues in descending order."""
        values, _ = qlinalg.hermitian_eig(self.matrix, tol=tol)
        return values

    def rank(self, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
        """Number of eigenvalues above the PSD clamping threshold."""
        return int(np.sum(self.eigenvalues(tol) > tol.psd_clamp))

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> "DensityMatrix":
        """Check Hermiticity, unit trace and positivity; return self.

        Raises:
            NotHermitianError: If the matrix is not Hermitian
            NormalizationError: If the trace deviates from one beyond ``tol.norm``
            NotPositiveSemidefiniteError: If an eigenvalue is below ``-tol.psd_reject``
        """
        values = self.eigenvalues(tol)
        trace = float(np.sum(values))
        if abs(trace - 1.0) > tol.norm:
            raise NormalizationError(trace, what="density matrix trace")
        if values.size and values[-1] < -tol.psd_reject:
            raise NotPositiveSemidefiniteError(float(values[-1]), tol.psd_reject)
        return self

    def partial_trace(self, keep: Iterable[int]) -> "DensityMatrix":
        indices = sorted(keep) if isinstance(keep, (set, frozenset)) else list(keep)
        matrix = qlinalg.partial_trace(self.matrix, self.dims, indices)
        return DensityMatrix(matrix, tuple(self.dims[i] for i in indices))


@dataclass(frozen=True)
class Bipartition:
    """Split of a register's factors into two non-empty complementary sides."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self) -> None:
        side_a = tuple(sorted(self.side_a))
        side_b = tuple(sorted(self.side_b))
        if not side_a or not side_b:
            raise InvalidSelectionError("both sides of a bipartition must be non-empty")
        if set(side_a) & set(side_b):
            raise InvalidSelectionError(f"bipartition sides overlap: {side_a} | {side_b}")
        if len(set(side_a)) != len(side_a) or len(set(side_b)) != len(side_b):
            raise InvalidSelectionError("bipartition sides contain repeated factors")
        object.__setattr__(self, "side_a", side_a)
        object.__setattr__(self, "side_b", side_b)

    @classmethod
    def from_side_a(cls, side_a: Sequence[int], n_factors: int) -> "Bipartition":
        """Complete ``side_a`` with every remaining factor of an ``n_factors`` register."""
        rest = tuple(i for i in range(n_factors) if i not in side_a)
        cut = cls(tuple(side_a), rest)
        cut.check(n_factors)
        return cut

    @property
    def n_factors(self) -> int:
        return len(self.side_a) + len(self.side_b)

    def check(self, n_factors: int) -> "Bipartition":
        """Raise InvalidSelectionError unless the sides cover exactly 0..n_factors-1."""
        if set(self.side_a) | set(self.side_b) != set(range(n_factors)):
            raise InvalidSelectionError(
                f"bipartition {self.side_a} | {self.side_b} does not cover {n_factors} factors"
            )
        return self

    def __str__(self) -> str:
        a = ",".join(str(i) for i in self.side_a)
        b = ",".join(str(i) for i in self.side_b)
        return f"{{{a}}}|{{{b}}}"


class MeasureKind(str, Enum):
    """Entanglement quantifiers provided by :mod:`wmono.measures`."""

    CONCURRENCE = "C"
    COA = "C_a"
    NEGATIVITY = "N"
    CREN = "N_c"
    CRENOA = "N_a"


@dataclass(frozen=True)
class MeasureValue:
    """A measure evaluated on some state or reduction."""

    kind: MeasureKind
    value: float
    subject: str = ""
    notes: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"{self.kind.value} value must be non-negative, got {self.value}")
