"""Orchestration of measures and inequality evaluators for one state.

Shared by ``wmono evaluate`` and the fuzz harness: collect the measure
values of a W-class state once, then evaluate any selection of inequality
ids on any block of it.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, replace
from typing import Literal

from . import measures, monogamy
from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import InvalidSelectionError, WMonoError, ZeroPairError
from .models import Bipartition, MeasureKind, MeasureValue, PureState
from .monogamy import InequalityReport, OrderingProfile, RemarkFactor
from .wclass import (
    SubsystemSelection,
    WClassCoefficients,
    block_concurrence_closed,
    build_state,
    pair_concurrence_closed,
    reduce,
)

logger = logging.getLogger(__name__)

PairSource = Literal["measured", "closed"]


@dataclass(frozen=True)
class PairMeasures:
    """Measure values of one ``rho_{AB_i}`` reduction."""

    concurrence: float
    coa: float
    negativity: float
    cren: float
    crenoa: float


@dataclass(frozen=True)
class StateValues:
    """Measure values of a W-class state that every block reuses."""

    coefficients: WClassCoefficients
    pairs: Mapping[int, PairMeasures]
    full_concurrence: float
    full_negativity: float
    pair_source: PairSource = "measured"

    @property
    def n_qubits(self) -> int:
        return self.coefficients.n_qubits


@dataclass(frozen=True)
class BlockValues:
    """Everything the evaluators need for one ordered block.

    ``profile`` orders the concurrence-track values and ``neg_profile`` the
    negativity-track values; both share the closed-form downstream values.
    """

    coefficients: WClassCoefficients
    block: SubsystemSelection
    coa_pairs: tuple[float, ...]
    cren_pairs: tuple[float, ...]
    crenoa_pairs: tuple[float, ...]
    coa_lhs: float
    cren_lhs: float
    crenoa_lhs: float
    profile: OrderingProfile
    neg_profile: OrderingProfile

    @property
    def full_block(self) -> bool:
        return self.block.m == self.coefficients.n_qubits

    @property
    def m(self) -> int:
        return self.block.m


def _measure_pair(c: WClassCoefficients, qubit: int, tol: Tolerances) -> PairMeasures:
    values = {v.kind: v.value for v in measures.two_qubit_profile(reduce(c, [qubit]), tol=tol)}
    return PairMeasures(
        concurrence=values[MeasureKind.CONCURRENCE],
        coa=values[MeasureKind.COA],
        negativity=values[MeasureKind.NEGATIVITY],
        cren=values[MeasureKind.CREN],
        crenoa=values[MeasureKind.CRENOA],
    )


def _closed_pair(c: WClassCoefficients, qubit: int) -> PairMeasures:
    value = pair_concurrence_closed(c, qubit)
    return PairMeasures(value, value, value, value, value)


def collect_state_values(
    c: WClassCoefficients,
    pair_source: PairSource = "measured",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> StateValues:
    """Pair measures of every ``rho_{AB_i}`` and the one-to-group values of ``A|rest``.

    With ``pair_source="closed"`` the pair values come from the closed forms;
    the one-to-group values are always computed from the state vector.
    """
    if pair_source == "measured":
        pairs = {i: _measure_pair(c, i, tol) for i in range(1, c.n_qubits)}
    elif pair_source == "closed":
        pairs = {i: _closed_pair(c, i) for i in range(1, c.n_qubits)}
    else:
        raise ValueError(f"Unknown pair source: {pair_source}")

    psi = build_state(c)
    cut = Bipartition.from_side_a((0,), c.n_qubits)
    return StateValues(
        coefficients=c,
        pairs=pairs,
        full_concurrence=measures.concurrence_pure(psi, cut, tol),
        full_negativity=measures.negativity_pure(psi, cut, tol),
        pair_source=pair_source,
    )


def collect_block_values(
    state: StateValues,
    block: SubsystemSelection | None = None,
    t: int | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> BlockValues:
    """Assemble the values of one block, defaulting to every B qubit in order.

    For the full block the one-to-group values are the pure-state measures;
    for a proper sub-block the closed-form block concurrence stands in for
    every measure, which bounds C_a and N_a from below.
    ``t`` forces the split used by the split-weighted bounds.
    """
    c = state.coefficients
    block = (block or SubsystemSelection.full(c.n_qubits)).check(c.n_qubits)
    full = block.m == c.n_qubits

    coa_pairs = tuple(state.pairs[j].coa for j in block.block)
    cren_pairs = tuple(state.pairs[j].cren for j in block.block)
    crenoa_pairs = tuple(state.pairs[j].crenoa for j in block.block)

    if full:
        coa_lhs = state.full_concurrence
        cren_lhs = crenoa_lhs = state.full_negativity
    else:
        coa_lhs = cren_lhs = crenoa_lhs = block_concurrence_closed(c, block)

    profile = monogamy.check_ordering(c, block, tol)
    neg_profile = monogamy.profile_from_values(
        block, cren_pairs, profile.downstream, block_value=crenoa_lhs, tol=tol
    )
    if t is not None:
        profile = profile.with_split(t)
        neg_profile = neg_profile.with_split(t)

    return BlockValues(
        coefficients=c,
        block=block,
        coa_pairs=coa_pairs,
        cren_pairs=cren_pairs,
        crenoa_pairs=crenoa_pairs,
        coa_lhs=coa_lhs,
        cren_lhs=cren_lhs,
        crenoa_lhs=crenoa_lhs,
        profile=profile,
        neg_profile=neg_profile,
    )


def block_measure_table(state: StateValues, values: BlockValues) -> list[MeasureValue]:
    """Measure values of every pair in the block and of the block itself, for display."""
    rows: list[MeasureValue] = []
    for j in values.block.block:
        pair = state.pairs[j]
        subject = f"A|B{j}"
        rows.extend(
            [
                MeasureValue(MeasureKind.CONCURRENCE, pair.concurrence, subject),
                MeasureValue(MeasureKind.COA, pair.coa, subject),
                MeasureValue(MeasureKind.NEGATIVITY, pair.negativity, subject),
                MeasureValue(MeasureKind.CREN, pair.cren, subject),
                MeasureValue(MeasureKind.CRENOA, pair.crenoa, subject),
            ]
        )
    subject = "A|" + "".join(f"B{j}" for j in values.block.block)
    notes = () if values.full_block else ("closed form; lower bound for C_a and N_a",)
    block_rows = [
        MeasureValue(MeasureKind.CONCURRENCE, values.coa_lhs, subject, notes),
        MeasureValue(MeasureKind.COA, values.coa_lhs, subject, notes),
        MeasureValue(MeasureKind.NEGATIVITY, values.cren_lhs, subject, notes),
        MeasureValue(MeasureKind.CREN, values.cren_lhs, subject, notes),
        MeasureValue(MeasureKind.CRENOA, values.crenoa_lhs, subject, notes),
    ]
    if not values.full_block:
        # plain negativity of a mixed block has no closed form here
        block_rows = [v for v in block_rows if v.kind is not MeasureKind.NEGATIVITY]
    rows.extend(block_rows)
    return rows


def _remark_or_skip(
    inequality_id: str,
    values: Sequence[float],
    y: float,
    lhs: float,
    factor: RemarkFactor,
    tol: Tolerances,
) -> InequalityReport:
    zeros = sum(1 for v in values if v <= tol.zero_pair)
    if zeros != 1:
        return monogamy.not_applicable(
            inequality_id, y, f"needs exactly one vanishing value, found {zeros}"
        )
    if inequality_id == "remark1":
        return monogamy.remark_cyclic(values, y, lhs, factor=factor, tol=tol)
    return monogamy.crenoa_remark2(values, y, lhs, factor=factor, tol=tol)


def evaluate_one(
    inequality_id: str,
    values: BlockValues,
    exponent: float,
    remark_factor: RemarkFactor = "surviving",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """Evaluate one inequality id at one exponent on a block.

    Vanishing pair values on the averaged upper bounds give a not-applicable
    report pointing at the removal variant instead of raising.

    Raises:
        ExponentDomainError: If ``exponent`` lies outside the id's domain
        InvalidSelectionError: If ``inequality_id`` is unknown
    """
    coa, cren, crenoa = values.coa_pairs, values.cren_pairs, values.crenoa_pairs
    sub_note = () if values.full_block else ("lhs is a lower bound (closed-form block value)",)

    try:
        match inequality_id:
            case "th1":
                report = monogamy.coa_lower_th1(coa, values.profile, exponent, values.coa_lhs, tol)
            case "th2":
                report = monogamy.coa_lower_th2(
                    coa, exponent, values.coa_lhs, values.profile, tol
                )
            case "th3":
                report = monogamy.coa_upper_th3(coa, exponent, values.coa_lhs, tol)
            case "remark1":
                report = _remark_or_skip(
                    "remark1", coa, exponent, values.coa_lhs, remark_factor, tol
                )
            case "th4":
                report = monogamy.crenoa_th4(
                    crenoa, values.neg_profile, exponent, values.crenoa_lhs, tol
                )
            case "th5":
                report = monogamy.crenoa_th5(
                    crenoa, exponent, values.crenoa_lhs, values.neg_profile, tol
                )
            case "th6":
                report = monogamy.crenoa_th6(crenoa, exponent, values.crenoa_lhs, tol)
            case "remark2":
                report = _remark_or_skip(
                    "remark2", crenoa, exponent, values.crenoa_lhs, remark_factor, tol
                )
            case "lem2":
                report = monogamy.neg_lower_lemma2(cren, exponent, values.cren_lhs, tol)
            case "lem3":
                report = monogamy.neg_lower_lemma3(
                    cren, values.neg_profile, exponent, values.cren_lhs, tol
                )
            case "lem4":
                report = monogamy.neg_upper_lemma4(cren, exponent, values.cren_lhs, tol)
            case "eq2" | "eq3":
                lower, upper = monogamy.concurrence_baselines(
                    coa, exponent, values.coa_lhs, values.profile.t, values.profile, tol
                )
                report = lower if inequality_id == "eq2" else upper
            case "eq4":
                report = monogamy.eq4_report(coa, exponent, values.coa_lhs, tol)
            case "eq5":
                report = monogamy.eq5_report(coa, exponent, values.coa_lhs, tol)
            case _:
                raise InvalidSelectionError(f"Unknown inequality id: {inequality_id}")
    except ZeroPairError as e:
        return monogamy.not_applicable(inequality_id, exponent, str(e))

    if sub_note and inequality_id in {"th1", "th2", "th3", "th4", "th5", "th6"}:
        report = _with_notes(report, sub_note)
    return report


def _with_notes(report: InequalityReport, notes: Sequence[str]) -> InequalityReport:
    return replace(report, notes=(*report.notes, *notes))


def evaluate_block(
    values: BlockValues,
    ids: Iterable[str],
    xs: Sequence[float],
    ys: Sequence[float],
    remark_factor: RemarkFactor = "surviving",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[InequalityReport]:
    """Evaluate every id on its own exponent grid: ``xs`` for lower bounds, ``ys`` for upper.

    ``eq2``/``eq3`` share a domain split, so each takes the grid of its own
    direction.
    """
    reports: list[InequalityReport] = []
    for inequality_id in ids:
        if inequality_id not in monogamy.INEQUALITY_IDS:
            raise InvalidSelectionError(f"Unknown inequality id: {inequality_id}")
        grid = xs if inequality_id in monogamy.LOWER_IDS else ys
        for exponent in grid:
            reports.append(evaluate_one(inequality_id, values, exponent, remark_factor, tol))
    logger.debug(
        "Evaluated %d reports on block %s of a %d-qubit state",
        len(reports),
        values.block,
        values.coefficients.n_qubits,
    )
    return reports


def general_state_reports(
    psi: PureState,
    xs: Sequence[float],
    ys: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> list[InequalityReport]:
    """``lem2`` and ``lem4`` for an arbitrary pure qubit state.

    Pair values are CREN of every ``rho_{AB_i}`` and the one-to-group value is
    the pure-state negativity of ``A|B_1...B_{N-1}``.
    """
    n = psi.n_factors
    cut = Bipartition.from_side_a((0,), n)
    lhs = measures.negativity_pure(psi, cut, tol)
    values = []
    for i in range(1, n):
        try:
            values.append(measures.cren_two_qubit(psi.reduce([0, i]), tol))
        except WMonoError as e:
            logger.warning("Skipping pair A|B%d of a random state: %s", i, e)
            return []
    reports = [monogamy.neg_lower_lemma2(values, x, lhs, tol) for x in xs]
    reports += [monogamy.neg_upper_lemma4(values, y, lhs, tol) for y in ys]
    return reports
