"""Entanglement measures: concurrence, concurrence of assistance and negativities.

Negativity uses the unnormalized convention ``N(rho) = ||rho^{T_A}|| - 1``.
Two-qubit mixed-state values use the spin-flip spectrum: with
``rho~ = (Y x Y) rho* (Y x Y)`` the numbers ``lambda_i`` are the square roots of
the eigenvalues of the Hermitian matrix ``sqrt(rho) rho~ sqrt(rho)``, in
descending order. They are computed as the singular values of
``sqrt(rho) sqrt(rho~)``, whose Gram matrix is that product. Then
``C = max(0, l1 - l2 - l3 - l4)`` and ``C_a = l1 + l2 + l3 + l4``.

Every two-qubit pure state has Schmidt rank at most 2, where negativity and
concurrence coincide, so CREN equals C and CRENOA equals C_a on two qubits.
"""

import math

import numpy as np
from numpy.typing import NDArray

from . import qlinalg
from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import DimensionMismatchError
from .models import Bipartition, DensityMatrix, MeasureKind, MeasureValue, PureState

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y)


def _schmidt_weights(psi: PureState, cut: Bipartition, tol: Tolerances) -> NDArray[np.float64]:
    """Squared Schmidt coefficients of ``psi`` across ``cut``, summing to one."""
    psi.check_normalized(tol)
    cut.check(psi.n_factors)
    tensor = psi.amplitudes.reshape(psi.dims)
    tensor = np.moveaxis(tensor, list(cut.side_a), list(range(len(cut.side_a))))
    dim_a = math.prod(psi.dims[i] for i in cut.side_a)
    singular = np.linalg.svd(tensor.reshape(dim_a, -1), compute_uv=False)
    weights = singular**2
    return weights / np.sum(weights)


def _cross_sum(w: NDArray[np.float64]) -> float:
    """``sum_{i<j} w_i w_j`` without the cancellation of ``((sum w)^2 - sum w^2) / 2``."""
    tail = np.cumsum(w[::-1])[::-1]
    return float(np.sum(w[:-1] * tail[1:]))


def concurrence_pure(
    psi: PureState,
    cut: Bipartition,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Pure-state concurrence ``sqrt(2 (1 - Tr rho_A^2))``.

    Evaluated from the Schmidt weights ``p`` as ``2 sqrt(sum_{i<j} p_i p_j)``.

    Raises:
        NormalizationError: If the state norm deviates by more than ``tol.norm``
        InvalidSelectionError: If ``cut`` does not cover the register
    """
    p = _schmidt_weights(psi, cut, tol)
    return 2.0 * math.sqrt(_cross_sum(p))


def negativity_pure(
    psi: PureState,
    cut: Bipartition,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Pure-state negativity ``(Tr sqrt(rho_A))^2 - 1``, i.e. ``2 sum_{i<j} sqrt(p_i p_j)``."""
    p = _schmidt_weights(psi, cut, tol)
    return 2.0 * _cross_sum(np.sqrt(p))


def _two_qubit(rho: DensityMatrix, tol: Tolerances) -> DensityMatrix:
    if rho.dims != (2, 2):
        raise DimensionMismatchError((2, 2), rho.dims, what="two-qubit dims")
    return rho.validate(tol)


def spin_flip_lambdas(
    rho: DensityMatrix,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> NDArray[np.float64]:
    """Descending ``lambda_i`` of a two-qubit density matrix.

    Raises:
        DimensionMismatchError: If ``rho`` is not a two-qubit matrix
        NotPositiveSemidefiniteError: If ``rho`` has a negative eigenvalue
    """
    mat = _two_qubit(rho, tol).matrix
    root = qlinalg.psd_sqrt(mat, tol)
    flipped_root = SPIN_FLIP @ root.conj() @ SPIN_FLIP
    return np.linalg.svd(root @ flipped_root, compute_uv=False)


def concurrence_two_qubit(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Convex-roof concurrence of a two-qubit state."""
    lam = spin_flip_lambdas(rho, tol)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def coa_two_qubit(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Concurrence of assistance of a two-qubit state."""
    return float(np.sum(spin_flip_lambdas(rho, tol)))


def negativity(
    rho: DensityMatrix,
    cut: Bipartition,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """``||rho^{T_A}|| - 1`` with the transpose taken on every factor of ``side_a``."""
    cut.check(rho.n_factors)
    transposed = rho.matrix
    for factor in cut.side_a:
        transposed = qlinalg.partial_transpose(transposed, rho.dims, factor)
    return max(0.0, qlinalg.trace_norm(transposed, tol) - 1.0)


def cren_two_qubit(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Convex-roof extended negativity of a two-qubit state (equals its concurrence)."""
    return concurrence_two_qubit(rho, tol)


def crenoa_two_qubit(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """CREN of assistance of a two-qubit state (equals its concurrence of assistance)."""
    return coa_two_qubit(rho, tol)


def two_qubit_profile(
    rho: DensityMatrix,
    subject: str = "",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[MeasureValue]:
    """All five measures of a two-qubit state, for display."""
    lam = spin_flip_lambdas(rho, tol)
    c = max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))
    ca = float(np.sum(lam))
    neg = negativity(rho, Bipartition((0,), (1,)), tol)
    return [
        MeasureValue(MeasureKind.CONCURRENCE, c, subject),
        MeasureValue(MeasureKind.COA, ca, subject),
        MeasureValue(MeasureKind.NEGATIVITY, neg, subject),
        MeasureValue(MeasureKind.CREN, c, subject),
        MeasureValue(MeasureKind.CRENOA, ca, subject),
    ]


def _batch_schmidt_weights(
    vectors: NDArray[np.complex128],
    dims: tuple[int, ...],
    side_a: tuple[int, ...],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Squared Schmidt coefficients of every row, normalized per row, and the row norms."""
    count = vectors.shape[0]
    norms = np.sum(np.abs(vectors) ** 2, axis=1)
    safe = np.where(norms > 0, norms, 1.0)
    tensor = vectors.reshape((count, *dims))
    axes = [1 + i for i in side_a]
    tensor = np.moveaxis(tensor, axes, list(range(1, 1 + len(axes))))
    dim_a = math.prod(dims[i] for i in side_a)
    singular = np.linalg.svd(tensor.reshape(count, dim_a, -1), compute_uv=False)
    return singular**2 / safe[:, None], norms


def _batch_cross_sum(w: NDArray[np.float64]) -> NDArray[np.float64]:
    """Row-wise :func:`_cross_sum`."""
    tail = np.cumsum(w[:, ::-1], axis=1)[:, ::-1]
    return np.sum(w[:, :-1] * tail[:, 1:], axis=1)


def concurrence_pure_batch(
    vectors: NDArray[np.complex128],
    dims: tuple[int, ...],
    cut: Bipartition,
) -> NDArray[np.float64]:
    """Concurrence of each row of ``vectors``, rows normalized first.

    Uses the same Schmidt cross sum as :func:`concurrence_pure`, so values near
    zero keep full precision. Zero rows get concurrence 0.
    """
    weights, norms = _batch_schmidt_weights(vectors, dims, cut.side_a)
    values = 2.0 * np.sqrt(_batch_cross_sum(weights))
    return np.where(norms > 0, values, 0.0)


def negativity_pure_batch(
    vectors: NDArray[np.complex128],
    dims: tuple[int, ...],
    cut: Bipartition,
) -> NDArray[np.float64]:
    """Pure-state negativity of each row of ``vectors``, rows normalized first."""
    weights, norms = _batch_schmidt_weights(vectors, dims, cut.side_a)
    values = 2.0 * _batch_cross_sum(np.sqrt(weights))
    return np.where(norms > 0, values, 0.0)
