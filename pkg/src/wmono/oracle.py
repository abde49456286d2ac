"""Brute-force convex-roof search over pure-state decompositions.

Every decomposition of ``rho = sum_k lambda_k |e_k><e_k|`` into ``L`` pure
states has the form ``|psi~_i> = sum_k U_ik sqrt(lambda_k) |e_k>`` for an
``L x rank`` isometry ``U``, with weights ``p_i = <psi~_i|psi~_i>``. The
oracle samples random isometries, keeps the best few and refines them with
small perturbations that are accepted only when they improve the average.

A minimization result is an upper bound on the convex roof; a maximization
result is a lower bound on the "of assistance" value.
"""

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from numpy.typing import NDArray

from . import measures, qlinalg
from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import OracleScopeError
from .models import Bipartition, DensityMatrix, PureState

logger = logging.getLogger(__name__)

Objective = Literal["min", "max"]
OracleMeasure = Literal["concurrence", "negativity"]

MAX_RANK = 4


@dataclass(frozen=True)
class OracleBudget:
    """Search effort: random starts, refinement steps per kept start, and tuning."""

    starts: int = 20_000
    refine_steps: int = 200
    keep: int = 16
    step: float = 0.1
    batch: int = 2048

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise OracleScopeError(f"oracle budget needs at least one start, got {self.starts}")
        if self.refine_steps < 0 or self.keep < 1 or self.batch < 1:
            raise OracleScopeError("oracle refine_steps, keep and batch must be positive")
        if self.step <= 0:
            raise OracleScopeError(f"oracle step must be positive, got {self.step}")


@dataclass(frozen=True)
class OracleResult:
    """Best average measure found and the decomposition achieving it."""

    value: float
    weights: NDArray[np.float64]
    states: NDArray[np.complex128]
    objective: Objective
    measure: OracleMeasure
    rank: int
    starts_used: int
    refine_steps_used: int
    trace: tuple[float, ...] = field(default_factory=tuple)

    @property
    def length(self) -> int:
        return int(self.weights.size)


def _orthonormalize(m: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Stacked QR with the phases of ``diag(R)`` folded back into ``Q``."""
    q, r = np.linalg.qr(m)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    mag = np.abs(d)
    phase = np.where(mag > 0, d / np.where(mag > 0, mag, 1.0), 1.0)
    return q * phase[..., None, :]


def _random_isometries(
    rng: np.random.Generator, count: int, length: int, rank: int
) -> NDArray[np.complex128]:
    z = rng.standard_normal((count, length, rank)) + 1j * rng.standard_normal(
        (count, length, rank)
    )
    return _orthonormalize(z)


class _Evaluator:
    """Average measure of batches of decompositions of one density matrix."""

    def __init__(
        self,
        basis: NDArray[np.complex128],
        dims: tuple[int, ...],
        cut: Bipartition,
        measure: OracleMeasure,
    ) -> None:
        self.basis = basis
        self.dims = dims
        self.cut = cut
        if measure == "concurrence":
            self._batch = measures.concurrence_pure_batch
        elif measure == "negativity":
            self._batch = measures.negativity_pure_batch
        else:
            raise OracleScopeError(f"unsupported oracle measure: {measure}")

    def states(self, isometries: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return np.einsum("blr,dr->bld", isometries, self.basis)

    def __call__(self, isometries: NDArray[np.complex128]) -> NDArray[np.float64]:
        states = self.states(isometries)
        count, length, dim = states.shape
        flat = states.reshape(count * length, dim)
        weights = np.sum(np.abs(flat) ** 2, axis=1)
        values = self._batch(flat, self.dims, self.cut)
        return np.sum((weights * values).reshape(count, length), axis=1)


def _better(objective: Objective, a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray:
    return a > b if objective == "max" else a < b


def _pure_result(
    vec: NDArray[np.complex128],
    dims: tuple[int, ...],
    cut: Bipartition,
    objective: Objective,
    measure: OracleMeasure,
    tol: Tolerances,
) -> OracleResult:
    psi = PureState(vec, dims)
    if measure == "concurrence":
        value = measures.concurrence_pure(psi, cut, tol)
    else:
        value = measures.negativity_pure(psi, cut, tol)
    return OracleResult(
        value=value,
        weights=np.ones(1),
        states=vec.reshape(1, -1),
        objective=objective,
        measure=measure,
        rank=1,
        starts_used=0,
        refine_steps_used=0,
        trace=(value,),
    )


def convex_roof_oracle(
    rho: DensityMatrix,
    objective: Objective,
    measure: OracleMeasure = "concurrence",
    budget: OracleBudget | None = None,
    cut: Bipartition | None = None,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> OracleResult:
    """Search decompositions of ``rho`` for the extreme average pure-state measure.

    Args:
        rho: State to decompose, of rank at most 4
        objective: ``"min"`` for the convex roof, ``"max"`` for the assisted value
        measure: Pure-state measure averaged over the decomposition
        budget: Search effort; the default reaches 1e-3 on rank-2 two-qubit inputs
        cut: Bipartition for the measure, default first factor against the rest
        rng: Generator for the random search, default seeded with 0
        tol: Tolerances for validation and rank detection

    Returns:
        OracleResult with the best value, its decomposition and diagnostics

    Raises:
        OracleScopeError: If the rank exceeds 4 or the budget is empty
    """
    budget = budget or OracleBudget()
    rng = rng or np.random.default_rng(0)
    if objective not in ("min", "max"):
        raise OracleScopeError(f"unsupported oracle objective: {objective}")
    rho.validate(tol)
    cut = (cut or Bipartition.from_side_a((0,), rho.n_factors)).check(rho.n_factors)

    values, vectors = qlinalg.hermitian_eig(rho.matrix, tol=tol)
    rank = int(np.sum(values > tol.psd_clamp))
    if rank > MAX_RANK:
        raise OracleScopeError(f"oracle supports rank <= {MAX_RANK}, got rank {rank}")
    if rank <= 1:
        return _pure_result(vectors[:, 0], rho.dims, cut, objective, measure, tol)

    lam = np.clip(values[:rank], 0.0, None)
    lam = lam / np.sum(lam)
    basis = vectors[:, :rank] * np.sqrt(lam)[None, :]
    evaluate = _Evaluator(basis, rho.dims, cut, measure)

    lengths = list(range(max(2, rank), 2 * rank + 1))
    per_length = np.array_split(np.arange(budget.starts), len(lengths))
    kept: list[tuple[float, NDArray[np.complex128]]] = []
    for length, share in zip(lengths, per_length, strict=True):
        remaining = share.size
        while remaining > 0:
            count = min(budget.batch, remaining)
            remaining -= count
            isometries = _random_isometries(rng, count, length, rank)
            scores = evaluate(isometries)
            order = np.argsort(scores)
            if objective == "max":
                order = order[::-1]
            kept.extend((float(scores[i]), isometries[i]) for i in order[: budget.keep])
            kept.sort(key=lambda item: item[0], reverse=objective == "max")
            del kept[budget.keep :]

    best_value, best_u = kept[0]
    trace = [best_value]
    logger.debug(
        "Oracle random phase: %d starts over lengths %s, best %s=%.12g",
        budget.starts,
        lengths,
        objective,
        best_value,
    )

    for score, u in kept:
        current = u[None, ...]
        current_score = np.array([score])
        step = budget.step
        for _ in range(budget.refine_steps):
            noise = rng.standard_normal(current.shape) + 1j * rng.standard_normal(current.shape)
            proposal = _orthonormalize(current + step * noise)
            proposal_score = evaluate(proposal)
            if _better(objective, proposal_score, current_score)[0]:
                current, current_score = proposal, proposal_score
                step = min(step * 1.2, budget.step)
            else:
                step = max(step * 0.95, 1e-6)
        if _better(objective, current_score, np.array([best_value]))[0]:
            best_value, best_u = float(current_score[0]), current[0]
            trace.append(best_value)

    states = evaluate.states(best_u[None, ...])[0]
    weights = np.sum(np.abs(states) ** 2, axis=1)
    norms = np.sqrt(np.where(weights > 0, weights, 1.0))
    logger.debug(
        "Oracle refinement finished: %s=%.12g after %d rounds", objective, best_value, len(kept)
    )
    return OracleResult(
        value=best_value,
        weights=weights,
        states=states / norms[:, None],
        objective=objective,
        measure=measure,
        rank=rank,
        starts_used=budget.starts,
        refine_steps_used=budget.refine_steps * len(kept),
        trace=tuple(trace),
    )
