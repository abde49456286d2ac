"""Randomized verification of the inequality catalog and the closed forms.

Every trial owns a generator derived from the master seed and the trial
index, so trials can run in any order or in parallel and still aggregate to
the same summary.
"""

import itertools
import logging
import math
import os
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Literal

import numpy as np
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from . import measures
from .config import DEFAULT_TOLERANCES, Tolerances
from .evaluation import (
    PairSource,
    StateValues,
    collect_block_values,
    collect_state_values,
    evaluate_block,
    general_state_reports,
)
from .exceptions import InvalidInputError, StateFileError
from .models import Bipartition, DensityMatrix, PureState
from .monogamy import INEQUALITY_IDS, InequalityReport, RemarkFactor
from .oracle import OracleBudget, convex_roof_oracle
from .wclass import (
    MAX_QUBITS,
    SubsystemSelection,
    WClassCoefficients,
    block_concurrence_closed,
    build_state,
    is_degenerate,
    pair_concurrence_closed,
    punctured,
    reduce,
)

logger = logging.getLogger(__name__)

DEFAULT_XS: tuple[float, ...] = (2.0, 2.5, 3.0, 5.0, 8.0)
DEFAULT_YS: tuple[float, ...] = (-0.5, -1.0, -2.0, -5.0)
ENUMERATE_ALL_BLOCKS_UP_TO = 5

OracleTarget = Literal["concurrence", "coa", "cren", "crenoa"]
ORACLE_TARGETS: tuple[str, ...] = ("concurrence", "coa", "cren", "crenoa")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator of one trial: PCG64 seeded from ``SeedSequence(seed, spawn_key=(trial,))``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def _complex_gaussian(rng: np.random.Generator, shape: int | tuple[int, ...]) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample_wclass(n: int, rng: np.random.Generator) -> WClassCoefficients:
    """Coefficients drawn uniformly from the unit sphere in ``C^{N+1}``."""
    if n < 2:
        raise InvalidInputError(f"W-class samples need n >= 2, got {n}")
    z = _complex_gaussian(rng, n + 1)
    return WClassCoefficients.normalized(complex(z[0]), [complex(v) for v in z[1:]])


def sample_pure_state(n_qubits: int, rng: np.random.Generator) -> PureState:
    """Haar-random pure state on ``n_qubits`` qubits."""
    z = _complex_gaussian(rng, 2**n_qubits)
    return PureState.qubits(z / np.linalg.norm(z))


def sample_density_matrix(
    dim: int,
    rank: int,
    rng: np.random.Generator,
    dims: Sequence[int] | None = None,
) -> DensityMatrix:
    """Random density matrix ``G G^dagger / Tr`` from a ``dim x rank`` Ginibre matrix."""
    if not 1 <= rank <= dim:
        raise InvalidInputError(f"rank must lie in 1..{dim}, got {rank}")
    g = _complex_gaussian(rng, (dim, rank))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    if dims is None:
        n = dim.bit_length() - 1
        dims = (2,) * n if 2**n == dim else (dim,)
    return DensityMatrix(rho, tuple(dims))


def ckw_saturation_check(c: WClassCoefficients, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``|C^2(A|B_1...B_{N-1}) - sum_i C^2(rho_{AB_i})|``.

    The one-to-group value comes from the state vector, the pair values from
    the Wootters formula, never from the closed forms.
    """
    psi = build_state(c)
    full = measures.concurrence_pure(psi, Bipartition.from_side_a((0,), c.n_qubits), tol)
    pairs = [measures.concurrence_two_qubit(reduce(c, [i]), tol) for i in range(1, c.n_qubits)]
    return abs(full**2 - sum(p * p for p in pairs))


def _ckw_from_values(state: StateValues) -> float:
    return abs(state.full_concurrence**2 - sum(p.concurrence**2 for p in state.pairs.values()))


@dataclass(frozen=True)
class FuzzConfig:
    """Settings of one fuzz run."""

    seed: int = 0
    trials: int = 10_000
    min_qubits: int = 3
    max_qubits: int = 6
    xs: tuple[float, ...] = DEFAULT_XS
    ys: tuple[float, ...] = DEFAULT_YS
    ids: tuple[str, ...] = INEQUALITY_IDS
    workers: int = 1
    random_blocks: int = 20
    general_states: bool = True
    punctured: bool = True
    pair_source: PairSource = "measured"
    remark_factor: RemarkFactor = "surviving"
    oracle_samples: int = 0
    oracle_budget: OracleBudget = field(default_factory=OracleBudget)

    def __post_init__(self) -> None:
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        object.__setattr__(self, "ys", tuple(float(y) for y in self.ys))
        object.__setattr__(self, "ids", tuple(self.ids))
        if self.trials < 1:
            raise InvalidInputError(f"trials must be >= 1, got {self.trials}")
        if not 2 <= self.min_qubits <= self.max_qubits <= MAX_QUBITS:
            raise InvalidInputError(
                f"qubit range must satisfy 2 <= min <= max <= {MAX_QUBITS}, "
                f"got {self.min_qubits}..{self.max_qubits}"
            )
        if any(not x >= 2 for x in self.xs):
            raise InvalidInputError(f"x-grid values must be >= 2: {self.xs}")
        if any(not y < 0 for y in self.ys):
            raise InvalidInputError(f"y-grid values must be < 0: {self.ys}")
        unknown = [i for i in self.ids if i not in INEQUALITY_IDS]
        if unknown:
            raise InvalidInputError(f"Unknown inequality ids: {', '.join(unknown)}")
        if self.workers < 0:
            raise InvalidInputError(f"workers must be >= 0, got {self.workers}")
        if self.oracle_samples < 0:
            raise InvalidInputError(f"oracle_samples must be >= 0, got {self.oracle_samples}")

    @classmethod
    def from_yaml(
        cls,
        path: Path,
        defaults: dict[str, Any] | None = None,
        **overrides: Any,
    ) -> "FuzzConfig":
        """Load a config from a YAML mapping of field names.

        Keys missing from the file fall back to ``defaults``; non-None
        ``overrides`` win over the file.

        Raises:
            StateFileError: If the file cannot be read or holds unknown keys
        """
        try:
            data = YAML(typ="safe").load(path.read_text(encoding="utf-8")) or {}
        except OSError as e:
            raise StateFileError(path, f"Cannot read fuzz config: {e}") from e
        except YAMLError as e:
            raise StateFileError(path, f"Invalid YAML in fuzz config: {e}") from e
        if not isinstance(data, dict):
            raise StateFileError(path, "Fuzz config must be a mapping")

        known = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - known)
        if unknown:
            raise StateFileError(path, f"Unknown fuzz config keys: {', '.join(unknown)}")
        for key in ("xs", "ys", "ids"):
            if key in data:
                data[key] = tuple(data[key])
        explicit = {k: v for k, v in overrides.items() if v is not None}
        data = {**(defaults or {}), **data, **explicit}
        try:
            if isinstance(data.get("oracle_budget"), dict):
                data["oracle_budget"] = OracleBudget(**data["oracle_budget"])
            return cls(**data)
        except (TypeError, InvalidInputError) as e:
            raise StateFileError(path, f"Invalid fuzz config: {e}") from e


@dataclass
class InequalityTally:
    """Counts and worst case of one inequality id."""

    inequality_id: str
    evaluated: int = 0
    applicable: int = 0
    satisfied: int = 0
    violated: int = 0
    worst_margin: float = math.inf
    worst_trial: int | None = None
    worst_exponent: float | None = None
    worst_block: str | None = None
    worst_coefficients: tuple[complex, ...] | None = None

    def add(
        self,
        report: InequalityReport,
        trial: int,
        coefficients: WClassCoefficients | None,
        block: str,
    ) -> None:
        self.evaluated += 1
        if report.satisfied is None:
            return
        self.applicable += 1
        if report.satisfied:
            self.satisfied += 1
        else:
            self.violated += 1
        margin = report.signed_margin
        if self._worse(margin, trial):
            self.worst_margin = margin
            self.worst_trial = trial
            self.worst_exponent = report.exponent
            self.worst_block = block
            self.worst_coefficients = (
                (coefficients.a, *coefficients.b) if coefficients is not None else None
            )

    def _worse(self, margin: float, trial: int) -> bool:
        if margin != self.worst_margin:
            return margin < self.worst_margin
        return self.worst_trial is None or trial < self.worst_trial

    def merge(self, other: "InequalityTally") -> None:
        self.evaluated += other.evaluated
        self.applicable += other.applicable
        self.satisfied += other.satisfied
        self.violated += other.violated
        if other.worst_trial is not None and self._worse(other.worst_margin, other.worst_trial):
            self.worst_margin = other.worst_margin
            self.worst_trial = other.worst_trial
            self.worst_exponent = other.worst_exponent
            self.worst_block = other.worst_block
            self.worst_coefficients = other.worst_coefficients


@dataclass
class FuzzSummary:
    """Aggregate of a fuzz run; merging is associative and order-independent."""

    seed: int
    trials: int = 0
    tallies: dict[str, InequalityTally] = field(default_factory=dict)
    ckw_max_deviation: float = 0.0
    dominance_checked: int = 0
    dominance_failures: dict[str, int] = field(default_factory=dict)
    th3_ratio_max_deviation: float = 0.0
    boundary_max_deviation: float = 0.0
    identity_max_deviation: float = 0.0
    general_states: int = 0
    oracle_checked: int = 0
    oracle_max_deviation: float | None = None

    @classmethod
    def empty(cls, seed: int, ids: Sequence[str]) -> "FuzzSummary":
        return cls(
            seed=seed,
            tallies={i: InequalityTally(i) for i in ids},
            dominance_failures={"th1": 0, "th2": 0},
        )

    @property
    def violations(self) -> int:
        return sum(t.violated for t in self.tallies.values())

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def tally(self, inequality_id: str) -> InequalityTally:
        return self.tallies.setdefault(inequality_id, InequalityTally(inequality_id))

    def merge(self, other: "FuzzSummary") -> "FuzzSummary":
        self.trials += other.trials
        for key, tally in other.tallies.items():
            self.tally(key).merge(tally)
        self.ckw_max_deviation = max(self.ckw_max_deviation, other.ckw_max_deviation)
        self.dominance_checked += other.dominance_checked
        for key, count in other.dominance_failures.items():
            self.dominance_failures[key] = self.dominance_failures.get(key, 0) + count
        self.th3_ratio_max_deviation = max(
            self.th3_ratio_max_deviation, other.th3_ratio_max_deviation
        )
        self.boundary_max_deviation = max(self.boundary_max_deviation, other.boundary_max_deviation)
        self.identity_max_deviation = max(self.identity_max_deviation, other.identity_max_deviation)
        self.general_states += other.general_states
        self.oracle_checked += other.oracle_checked
        if other.oracle_max_deviation is not None:
            self.oracle_max_deviation = max(
                self.oracle_max_deviation or 0.0, other.oracle_max_deviation
            )
        return self

    def as_dict(self) -> dict[str, Any]:
        """Plain-data form for YAML dumps."""
        data = asdict(self)
        for tally in data["tallies"].values():
            if tally["worst_coefficients"] is not None:
                tally["worst_coefficients"] = [
                    [float(z.real), float(z.imag)] for z in tally["worst_coefficients"]
                ]
            if not math.isfinite(tally["worst_margin"]):
                tally["worst_margin"] = None
        data["violations"] = self.violations
        return data


def enumerate_blocks(
    c: WClassCoefficients,
    rng: np.random.Generator,
    random_blocks: int = 20,
) -> list[SubsystemSelection]:
    """Blocks visited for one state.

    Up to five qubits every non-empty subset of the B qubits is taken in
    ascending order and in order of decreasing ``|b|``; beyond that
    ``random_blocks`` random ordered blocks are drawn.
    """
    n = c.n_qubits
    indices = list(range(1, n))
    blocks: list[SubsystemSelection] = []
    if n <= ENUMERATE_ALL_BLOCKS_UP_TO:
        for size in range(1, n):
            for subset in itertools.combinations(indices, size):
                blocks.append(SubsystemSelection(subset))
                by_weight = tuple(sorted(subset, key=lambda j: (-c.magnitude(j), j)))
                if by_weight != subset:
                    blocks.append(SubsystemSelection(by_weight))
        return blocks

    for _ in range(random_blocks):
        size = int(rng.integers(1, n))
        chosen = rng.permutation(indices)[:size]
        blocks.append(SubsystemSelection(tuple(int(j) for j in chosen)))
    return blocks


def _identity_deviation(state: StateValues, tol: Tolerances) -> float:
    c = state.coefficients
    worst = 0.0
    for j, pair in state.pairs.items():
        closed = pair_concurrence_closed(c, j)
        values = (pair.concurrence, pair.coa, pair.cren, pair.crenoa)
        worst = max(worst, *(abs(v - closed) for v in values))
    full = block_concurrence_closed(c, range(1, c.n_qubits))
    worst = max(worst, abs(state.full_concurrence - full), abs(state.full_negativity - full))
    return worst


def _record_dominance(
    summary: FuzzSummary,
    reports: Sequence[InequalityReport],
    tol: Tolerances,
) -> None:
    for report in reports:
        if not report.applicable or report.baseline_rhs is None:
            continue
        scale = max(1.0, abs(report.rhs))
        if report.inequality_id in ("th1", "th2"):
            summary.dominance_checked += 1
            if report.rhs < report.baseline_rhs - tol.report_slack * scale:
                summary.dominance_failures[report.inequality_id] += 1
            if report.exponent == 2.0:
                summary.boundary_max_deviation = max(
                    summary.boundary_max_deviation,
                    abs(report.rhs - report.baseline_rhs) / scale,
                )
        elif report.inequality_id == "th3":
            expected = report.baseline_rhs / report.terms
            summary.th3_ratio_max_deviation = max(
                summary.th3_ratio_max_deviation,
                abs(report.rhs - expected) / max(1.0, abs(expected)),
            )


def _evaluate_state(
    cfg: FuzzConfig,
    summary: FuzzSummary,
    state: StateValues,
    blocks: Sequence[SubsystemSelection],
    trial: int,
    ids: Sequence[str],
    tol: Tolerances,
) -> None:
    for block in blocks:
        values = collect_block_values(state, block, tol=tol)
        reports = evaluate_block(values, ids, cfg.xs, cfg.ys, cfg.remark_factor, tol)
        for report in reports:
            summary.tally(report.inequality_id).add(report, trial, state.coefficients, str(block))
        _record_dominance(summary, reports, tol)


def run_trial(cfg: FuzzConfig, trial: int, tol: Tolerances = DEFAULT_TOLERANCES) -> FuzzSummary:
    """Run one trial and return its partial summary."""
    rng = trial_rng(cfg.seed, trial)
    summary = FuzzSummary.empty(cfg.seed, cfg.ids)
    summary.trials = 1

    n = int(rng.integers(cfg.min_qubits, cfg.max_qubits + 1))
    c = sample_wclass(n, rng)
    state = collect_state_values(c, cfg.pair_source, tol)
    summary.ckw_max_deviation = _ckw_from_values(state)
    summary.identity_max_deviation = _identity_deviation(state, tol)

    blocks = enumerate_blocks(c, rng, cfg.random_blocks)
    main_ids = [i for i in cfg.ids if i not in ("remark1", "remark2")]
    _evaluate_state(cfg, summary, state, blocks, trial, main_ids, tol)

    remark_ids = [i for i in cfg.ids if i in ("remark1", "remark2")]
    if cfg.punctured and remark_ids and n >= 3:
        removed = int(rng.integers(1, n))
        pc = punctured(c, removed)
        if not is_degenerate(pc, tol):
            pstate = collect_state_values(pc, cfg.pair_source, tol)
            pblocks = [
                b for b in enumerate_blocks(pc, rng, cfg.random_blocks) if removed in b.block
            ]
            _evaluate_state(cfg, summary, pstate, pblocks, trial, remark_ids, tol)

    if cfg.general_states and {"lem2", "lem4"} & set(cfg.ids):
        psi = sample_pure_state(n, rng)
        xs = cfg.xs if "lem2" in cfg.ids else ()
        ys = cfg.ys if "lem4" in cfg.ids else ()
        for report in general_state_reports(psi, xs, ys, tol):
            summary.tally(report.inequality_id).add(report, trial, None, "random pure state")
        summary.general_states = 1

    return summary


def _run_chunk(cfg: FuzzConfig, trials: Sequence[int]) -> FuzzSummary:
    summary = FuzzSummary.empty(cfg.seed, cfg.ids)
    for trial in trials:
        summary.merge(run_trial(cfg, trial))
    return summary


def _chunks(total: int, parts: int) -> Iterator[list[int]]:
    for chunk in np.array_split(np.arange(total), parts):
        if chunk.size:
            yield [int(t) for t in chunk]


def run_fuzz(cfg: FuzzConfig) -> FuzzSummary:
    """Run ``cfg.trials`` trials, optionally across worker processes.

    ``cfg.workers`` of 0 uses every core. Violations are counted, never raised.
    """
    logger.info(
        "Fuzzing %d trials (seed %d, %d..%d qubits, ids %s)",
        cfg.trials,
        cfg.seed,
        cfg.min_qubits,
        cfg.max_qubits,
        ",".join(cfg.ids),
    )
    summary = FuzzSummary.empty(cfg.seed, cfg.ids)
    if cfg.workers == 1:
        summary.merge(_run_chunk(cfg, range(cfg.trials)))
    else:
        workers = cfg.workers or os.cpu_count() or 1
        n_chunks = max(1, min(cfg.trials, 4 * workers))
        logger.debug("Dispatching %d chunks to %d workers", n_chunks, workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_chunk, cfg, chunk) for chunk in _chunks(cfg.trials, n_chunks)
            ]
            for future in futures:
                summary.merge(future.result())

    if cfg.oracle_samples:
        rows = oracle_block_check(cfg.oracle_samples, cfg.seed, cfg.oracle_budget)
        summary.oracle_checked = len(rows)
        summary.oracle_max_deviation = max((r.deviation for r in rows), default=0.0)

    logger.info("Fuzz finished: %d violations over %d trials", summary.violations, summary.trials)
    return summary


@dataclass(frozen=True)
class OracleRow:
    """One oracle-versus-closed-form comparison."""

    measure: str
    rank: int
    reference: float
    oracle: float
    deviation: float
    signed_gap: float
    starts_used: int


def _reference_value(target: str, rho: DensityMatrix, tol: Tolerances) -> float:
    if target in ("concurrence", "cren"):
        return measures.concurrence_two_qubit(rho, tol)
    return measures.coa_two_qubit(rho, tol)


def oracle_crosscheck(
    measure: OracleTarget,
    rank: int = 2,
    budget: OracleBudget | None = None,
    trials: int = 100,
    seed: int = 0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[OracleRow]:
    """Compare the convex-roof oracle with the two-qubit spectral formulas.

    ``concurrence``/``cren`` minimize, ``coa``/``crenoa`` maximize. ``signed_gap``
    is ``oracle - reference`` oriented so that a negative value means the
    oracle overshot (beat) the exact value, which would be an error.
    """
    if measure not in ORACLE_TARGETS:
        raise InvalidInputError(f"Unsupported oracle measure: {measure}")
    budget = budget or OracleBudget()
    objective = "min" if measure in ("concurrence", "cren") else "max"
    pure_measure = "concurrence" if measure in ("concurrence", "coa") else "negativity"

    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        rho = sample_density_matrix(4, rank, rng)
        reference = _reference_value(measure, rho, tol)
        result = convex_roof_oracle(rho, objective, pure_measure, budget, rng=rng, tol=tol)
        gap = result.value - reference if objective == "min" else reference - result.value
        rows.append(
            OracleRow(
                measure=measure,
                rank=rank,
                reference=reference,
                oracle=result.value,
                deviation=abs(result.value - reference),
                signed_gap=gap,
                starts_used=result.starts_used,
            )
        )
        logger.debug("Oracle trial %d: reference %.12g oracle %.12g", trial, reference, result.value)
    return rows


def oracle_block_check(
    samples: int,
    seed: int,
    budget: OracleBudget | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[OracleRow]:
    """Oracle min-concurrence of ``A|block`` reductions against the closed form.

    Each sample is a random W-class state on 3 to 6 qubits and a random proper
    sub-block; the reduced state on ``A`` and the block has rank 2.
    """
    rows = []
    for sample in range(samples):
        rng = trial_rng(seed, 1_000_000 + sample)
        n = int(rng.integers(3, 7))
        c = sample_wclass(n, rng)
        size = int(rng.integers(1, n - 1))
        chosen = rng.permutation(np.arange(1, n))[:size]
        block = SubsystemSelection(tuple(sorted(int(j) for j in chosen)))
        rho = reduce(c, block)
        cut = Bipartition.from_side_a((0,), rho.n_factors)
        reference = block_concurrence_closed(c, block)
        result = convex_roof_oracle(rho, "min", "concurrence", budget, cut=cut, rng=rng, tol=tol)
        rows.append(
            OracleRow(
                measure="concurrence",
                rank=result.rank,
                reference=reference,
                oracle=result.value,
                deviation=abs(result.value - reference),
                signed_gap=result.value - reference,
                starts_used=result.starts_used,
            )
        )
    return rows
