"""Dense complex linear algebra for qubit registers.

Matrices are ``numpy`` arrays of dtype ``complex128``. Tensor factor 0 is the
most significant one in basis-index arithmetic, so for a register
``A, B_1, ..., B_{N-1}`` qubit A owns the leading bit.
"""

import logging
import math
import string
from collections.abc import Iterable, Sequence
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidSelectionError,
    NotHermitianError,
    NotPositiveSemidefiniteError,
)

logger = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]
DimList = tuple[int, ...]

# einsum needs two subscripts per factor
MAX_FACTORS = len(string.ascii_letters) // 2
# Eigenvalues below this multiple of the spectral radius are treated as zero by psd_sqrt.
ROUNDOFF = 64 * float(np.finfo(np.float64).eps)


def as_matrix(m: ArrayLike) -> ComplexMatrix:
    """Convert to a 2-D complex128 array, rejecting anything else."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise DimensionMismatchError("2-D matrix", f"{arr.ndim}-D array", what="rank")
    return arr


def check_dims(dims: Sequence[int], size: int) -> DimList:
    """Validate a tensor-factor dimension list against a matrix dimension.

    Args:
        dims: Per-factor dimensions, each at least 2
        size: Dimension of the annotated matrix or vector

    Returns:
        The dimensions as a tuple

    Raises:
        DimensionMismatchError: If a factor is smaller than 2 or the product differs
    """
    dim_list = tuple(int(d) for d in dims)
    if not dim_list or any(d < 2 for d in dim_list):
        raise DimensionMismatchError("factors >= 2", dim_list, what="factor dimension")
    if len(dim_list) > MAX_FACTORS:
        raise DimensionMismatchError(f"<= {MAX_FACTORS} factors", len(dim_list), what="factor count")
    if math.prod(dim_list) != size:
        raise DimensionMismatchError(size, math.prod(dim_list), what="dims product")
    return dim_list


def _check_square(m: ComplexMatrix) -> int:
    rows, cols = m.shape
    if rows != cols:
        raise DimensionMismatchError("square matrix", m.shape, what="shape")
    return rows


def hermitian_deviation(h: ArrayLike) -> float:
    """Return max |H[i][j] - conj(H[j][i])|."""
    m = as_matrix(h)
    _check_square(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(h: ArrayLike, tol: float = DEFAULT_TOLERANCES.hermitian) -> bool:
    """Check Hermiticity within an absolute tolerance."""
    return hermitian_deviation(h) <= tol


def _require_hermitian(m: ComplexMatrix, tol: float) -> None:
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    deviation = hermitian_deviation(m)
    if deviation > tol * scale:
        raise NotHermitianError(deviation, tol)


def frobenius_norm(m: ArrayLike) -> float:
    """Frobenius norm of a matrix."""
    return float(np.linalg.norm(as_matrix(m), ord="fro"))


def kron(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    """Kronecker product; dimensions multiply."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Iterable[ArrayLike]) -> ComplexMatrix:
    """Kronecker product of a sequence of matrices, left to right."""
    result: ComplexMatrix = np.ones((1, 1), dtype=np.complex128)
    for factor in factors:
        result = kron(result, factor)
    return result


def _normalize_keep(keep: Iterable[int], n_factors: int) -> list[int]:
    # sets have no order of their own; sequences keep the caller's order
    indices = sorted(keep) if isinstance(keep, (set, frozenset)) else list(keep)
    if not indices:
        raise InvalidSelectionError("keep-set must not be empty")
    if len(set(indices)) != len(indices):
        raise InvalidSelectionError(f"keep-set has repeated factors: {indices}")
    for index in indices:
        if not 0 <= index < n_factors:
            raise InvalidSelectionError(f"factor index {index} out of range 0..{n_factors - 1}")
    return indices


def partial_trace(
    rho: ArrayLike,
    dims: Sequence[int],
    keep: Iterable[int],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ComplexMatrix:
    """Trace out every factor not in ``keep``.

    The kept factors appear in the order given by ``keep`` when it is a
    sequence, ascending when it is a set.

    Args:
        rho: Square Hermitian matrix on the full register
        dims: Factor dimensions of ``rho``
        keep: Factors to keep
        tol: Tolerances record

    Returns:
        Reduced matrix on the kept factors

    Raises:
        DimensionMismatchError: If ``dims`` does not match ``rho``
        InvalidSelectionError: If ``keep`` is empty or out of range
        NotHermitianError: If ``rho`` is not Hermitian within tolerance
    """
    m = as_matrix(rho)
    size = _check_square(m)
    dim_list = check_dims(dims, size)
    _require_hermitian(m, tol.hermitian_input)
    indices = _normalize_keep(keep, len(dim_list))

    n = len(dim_list)
    letters = string.ascii_letters
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for factor in range(n):
        if factor not in indices:
            col[factor] = row[factor]
    out = [row[i] for i in indices] + [col[i] for i in indices]

    tensor = m.reshape(dim_list + dim_list)
    reduced = np.einsum(f"{''.join(row)}{''.join(col)}->{''.join(out)}", tensor)
    kept_dim = math.prod(dim_list[i] for i in indices)
    result = reduced.reshape(kept_dim, kept_dim)
    # round-off from the contraction; the exact result is Hermitian
    return np.asarray(0.5 * (result + result.conj().T), dtype=np.complex128)


def reduced_density(
    psi: ArrayLike,
    dims: Sequence[int],
    keep: Iterable[int],
) -> ComplexMatrix:
    """Reduced density matrix of a pure state without forming its projector.

    Args:
        psi: Amplitude vector on the full register
        dims: Factor dimensions
        keep: Factors to keep (order as in :func:`partial_trace`)

    Returns:
        ``Tr_rest |psi><psi|`` on the kept factors
    """
    vec = np.asarray(psi, dtype=np.complex128).reshape(-1)
    dim_list = check_dims(dims, vec.size)
    indices = _normalize_keep(keep, len(dim_list))

    tensor = vec.reshape(dim_list)
    tensor = np.moveaxis(tensor, indices, list(range(len(indices))))
    kept_dim = math.prod(dim_list[i] for i in indices)
    block = tensor.reshape(kept_dim, -1)
    result = block @ block.conj().T
    return np.asarray(0.5 * (result + result.conj().T), dtype=np.complex128)


def partial_transpose(
    rho: ArrayLike,
    dims: Sequence[int],
    subsystem: int,
) -> ComplexMatrix:
    """Transpose a single tensor factor.

    Only entries are permuted, so applying it twice returns the input exactly.

    Raises:
        DimensionMismatchError: If ``dims`` does not match ``rho``
        InvalidSelectionError: If ``subsystem`` is out of range
    """
    m = as_matrix(rho)
    size = _check_square(m)
    dim_list = check_dims(dims, size)
    n = len(dim_list)
    if not 0 <= subsystem < n:
        raise InvalidSelectionError(f"subsystem {subsystem} out of range 0..{n - 1}")

    tensor = m.reshape(dim_list + dim_list)
    swapped = np.swapaxes(tensor, subsystem, n + subsystem)
    return np.ascontiguousarray(swapped).reshape(size, size)


def jacobi_eigh(
    h: ArrayLike,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[NDArray[np.float64], ComplexMatrix, int]:
    """Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.

    Each rotation first removes the phase of the pivot ``A[p, q]`` and then
    applies a real Givens rotation, so the matrix stays Hermitian throughout.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol.jacobi_offdiag`` times the Frobenius norm of the input.

    Returns:
        Tuple of (eigenvalues descending, eigenvectors as columns, sweeps used)

    Raises:
        NotHermitianError: If the input is not Hermitian
        ConvergenceError: If ``tol.jacobi_max_sweeps`` sweeps are not enough
    """
    a = as_matrix(h).copy()
    n = _check_square(a)
    _require_hermitian(a, tol.hermitian_input)
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)

    scale = frobenius_norm(a)
    threshold = tol.jacobi_offdiag * max(scale, np.finfo(float).tiny)

    def off_norm() -> float:
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    off = off_norm()
    while off > threshold:
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceError(
                f"Jacobi eigen-solver did not converge after {sweeps} sweeps "
                f"(off-diagonal norm {off:.3e})",
                sweeps=sweeps,
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                pivot = a[p, q]
                magnitude = abs(pivot)
                if magnitude <= threshold / n:
                    continue
                phase = pivot / magnitude
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * math.atan2(2.0 * magnitude, app - aqq)
                c, s = math.cos(theta), math.sin(theta)
                w = np.array(
                    [[c, -s], [s * phase.conjugate(), c * phase.conjugate()]],
                    dtype=np.complex128,
                )
                pq = [p, q]
                a[:, pq] = a[:, pq] @ w
                a[pq, :] = w.conj().T @ a[pq, :]
                v[:, pq] = v[:, pq] @ w
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
        sweeps += 1
        off = off_norm()

    eigenvalues = np.real(np.diag(a))
    order = np.argsort(eigenvalues)[::-1]
    logger.debug("Jacobi converged in %d sweeps (n=%d)", sweeps, n)
    return eigenvalues[order], v[:, order], sweeps


def hermitian_eig(
    h: ArrayLike,
    method: Literal["lapack", "jacobi"] = "lapack",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[NDArray[np.float64], ComplexMatrix]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Args:
        h: Hermitian matrix
        method: ``"lapack"`` (numpy) or ``"jacobi"`` (cyclic Jacobi)
        tol: Tolerances record

    Returns:
        Tuple of (eigenvalues descending, orthonormal eigenvectors as columns)

    Raises:
        NotHermitianError: If ``h`` is not Hermitian within ``tol.hermitian_input``
        ConvergenceError: If the solver fails
    """
    m = as_matrix(h)
    _check_square(m)
    if method == "jacobi":
        values, vectors, _ = jacobi_eigh(m, tol)
        return values, vectors
    if method != "lapack":
        raise ValueError(f"Unknown eigen-solver method: {method}")

    _require_hermitian(m, tol.hermitian_input)
    try:
        values, vectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"LAPACK eigen-solver failed: {e}") from e
    return values[::-1].copy(), np.ascontiguousarray(vectors[:, ::-1])


def trace_norm(m: ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Trace norm ``Tr sqrt(M M^dagger)``.

    Hermitian input takes the fast path (sum of absolute eigenvalues);
    anything else is the sum of singular values.
    """
    mat = as_matrix(m)
    _check_square(mat)
    if mat.size == 0:
        return 0.0
    if is_hermitian(mat, tol.hermitian):
        values = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
        return float(np.sum(np.abs(values)))
    return float(np.sum(np.linalg.svd(mat, compute_uv=False)))


def psd_sqrt(rho: ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES) -> ComplexMatrix:
    """Square root of a positive semidefinite matrix.

    Eigenvalues down to ``-tol.psd_reject`` are clamped to zero, and so are
    positive eigenvalues at round-off level relative to the largest one.

    Raises:
        NotHermitianError: If ``rho`` is not Hermitian
        NotPositiveSemidefiniteError: If an eigenvalue is below ``-tol.psd_reject``
    """
    values, vectors = hermitian_eig(rho, tol=tol)
    if values.size and values[-1] < -tol.psd_reject:
        raise NotPositiveSemidefiniteError(float(values[-1]), tol.psd_reject)
    if values.size and values[-1] < -tol.psd_clamp:
        logger.debug("Clamping eigenvalue %.3e in psd_sqrt", values[-1])
    cutoff = ROUNDOFF * max(1.0, float(values[0])) if values.size else 0.0
    roots = np.sqrt(np.where(values > cutoff, values, 0.0))
    result = (vectors * roots) @ vectors.conj().T
    return np.asarray(0.5 * (result + result.conj().T), dtype=np.complex128)
