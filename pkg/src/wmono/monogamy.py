"""Monogamy inequality catalog for W-class states.

Every evaluator returns an :class:`InequalityReport`. Values passed in are
unpowered measure values (pair values along a block and the one-to-group
value ``lhs``); reports carry the powered sides. Unmet hypotheses never raise:
the report lists them in ``hypothesis_ok`` and sets ``satisfied`` to None.

Inequality ids:

    eq2, eq3    prior power bounds for the concurrence (split weights / 1/(N-1))
    eq4, eq5    prior power bounds for the concurrence of assistance
    th1, th2    split-weighted and fully ordered lower bounds for C_a^x
    th3         averaged upper bound for C_a^y
    remark1     th3 with one vanishing pair removed
    lem2, lem3  lower bounds for CREN (plain and split-weighted)
    lem4        averaged upper bound for CREN
    th4, th5    split-weighted and fully ordered lower bounds for CRENOA
    th6         averaged upper bound for CRENOA
    remark2     th6 with one vanishing value removed
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Literal

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import ExponentDomainError, InvalidSelectionError, ZeroPairError
from .wclass import (
    SubsystemSelection,
    WClassCoefficients,
    block_concurrence_closed,
    downstream_concurrences,
    pair_concurrences_closed,
)

INEQUALITY_IDS: tuple[str, ...] = (
    "th1",
    "th2",
    "th3",
    "th4",
    "th5",
    "th6",
    "lem2",
    "lem3",
    "lem4",
    "eq2",
    "eq3",
    "eq4",
    "eq5",
    "remark1",
    "remark2",
)
LOWER_IDS = frozenset({"th1", "th2", "th4", "th5", "lem2", "lem3", "eq2", "eq4"})
UPPER_IDS = frozenset({"th3", "th6", "lem4", "eq3", "eq5", "remark1", "remark2"})

Exponent = float
RemarkFactor = Literal["surviving", "literal"]
Reading = Literal["block", "adjacent"]


class Direction(str, Enum):
    """Direction of an inequality ``lhs <op> rhs``."""

    GE = ">="
    LT = "<"


@dataclass(frozen=True)
class OrderingProfile:
    """Hypothesis pattern of the split-weighted bounds along one block.

    Position ``i`` (1-based, ``i = 1..m-2``) compares the pair value
    ``C(rho_{AB_{j_i}})`` with the downstream value
    ``C(rho_{A|B_{j_{i+1}}...B_{j_{m-1}}})``. Ties count as both ``>=`` and
    ``<=``. The adjacent reading compares with the next pair value
    ``C(rho_{AB_{j_{i+1}}})`` instead; it has its own split ``adjacent_t``
    and its own verdicts, but only the block reading decides ``satisfied``.
    """

    block: SubsystemSelection
    pairs: tuple[float, ...]
    downstream: tuple[float, ...]
    ge_flags: tuple[bool, ...]
    le_flags: tuple[bool, ...]
    adjacent_ge_flags: tuple[bool, ...]
    adjacent_le_flags: tuple[bool, ...]
    t: int | None
    all_ordered: bool
    adjacent_t: int | None = None
    adjacent_all_ordered: bool = False
    block_value: float | None = None
    forced: bool = False

    @property
    def m(self) -> int:
        return self.block.m

    def split_hypotheses(self, t: int | None, reading: Reading = "block") -> tuple[bool, ...]:
        """Flags for a split at ``t``: range check, then one flag per position."""
        if t is None:
            return (False,)
        in_range = self.m >= 4 and 1 <= t <= self.m - 3
        if not in_range:
            return (False,)
        if reading == "block":
            ge, le = self.ge_flags, self.le_flags
        elif reading == "adjacent":
            ge, le = self.adjacent_ge_flags, self.adjacent_le_flags
        else:
            raise ValueError(f"Unknown reading: {reading}")
        flags = [ge[i] for i in range(t)]
        flags += [le[i] for i in range(t, self.m - 2)]
        return (True, *flags)

    def with_split(self, t: int) -> "OrderingProfile":
        """Same comparisons with a caller-declared split, used by both readings."""
        return replace(self, t=t, adjacent_t=t, forced=True)

    def _describe(self, t: int | None, all_ordered: bool, reading: Reading) -> str:
        if self.forced:
            valid = all(self.split_hypotheses(t, reading))
            return f"t={t} (declared, {'valid' if valid else 'hypotheses unmet'})"
        if t is not None:
            return f"t={t}" + (" (all-ordered)" if all_ordered else "")
        return "all-ordered" if all_ordered else "no-valid-t"

    @property
    def status(self) -> str:
        return self._describe(self.t, self.all_ordered, "block")

    @property
    def adjacent_status(self) -> str:
        return self._describe(self.adjacent_t, self.adjacent_all_ordered, "adjacent")

    def pattern(self, reading: Reading = "block") -> str:
        """Compact ``>``/``<``/``=`` string of the position comparisons."""
        if reading == "adjacent":
            pairs = zip(self.adjacent_ge_flags, self.adjacent_le_flags, strict=True)
        else:
            pairs = zip(self.ge_flags, self.le_flags, strict=True)
        return "".join("=" if ge and le else (">" if ge else "<") for ge, le in pairs)


def ordering_flags(
    pairs: Sequence[float],
    downstream: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[tuple[bool, ...], tuple[bool, ...], tuple[bool, ...], tuple[bool, ...]]:
    """Position flags ``(ge, le, adjacent_ge, adjacent_le)`` for ``i = 1..m-2``.

    ``ge``/``le`` compare each pair value with the downstream block value,
    the adjacent flags compare it with the next pair value.
    """
    ge = tuple(p >= d - tol.tie for p, d in zip(pairs, downstream, strict=False))
    le = tuple(p <= d + tol.tie for p, d in zip(pairs, downstream, strict=False))
    nxt = range(len(pairs) - 1)
    adjacent_ge = tuple(pairs[i] >= pairs[i + 1] - tol.tie for i in nxt)
    adjacent_le = tuple(pairs[i] <= pairs[i + 1] + tol.tie for i in nxt)
    return ge, le, adjacent_ge, adjacent_le


def _largest_split(profile: OrderingProfile, reading: Reading) -> int | None:
    for t in range(profile.m - 3, 0, -1):
        if all(profile.split_hypotheses(t, reading)):
            return t
    return None


def profile_from_values(
    block: SubsystemSelection,
    pairs: Sequence[float],
    downstream: Sequence[float],
    block_value: float | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> OrderingProfile:
    """Build an ordering profile from pair and downstream values.

    Chooses the largest valid split ``t`` under each reading; ``all_ordered``
    is set when every position is of ``>=`` type.
    """
    pairs = tuple(float(p) for p in pairs)
    downstream = tuple(float(d) for d in downstream)
    if len(pairs) != block.m - 1:
        raise InvalidSelectionError(f"expected {block.m - 1} pair values, got {len(pairs)}")
    if len(downstream) != max(0, block.m - 2):
        raise InvalidSelectionError(
            f"expected {max(0, block.m - 2)} downstream values, got {len(downstream)}"
        )

    ge, le, adjacent_ge, adjacent_le = ordering_flags(pairs, downstream, tol)
    profile = OrderingProfile(
        block=block,
        pairs=pairs,
        downstream=downstream,
        ge_flags=ge,
        le_flags=le,
        adjacent_ge_flags=adjacent_ge,
        adjacent_le_flags=adjacent_le,
        t=None,
        all_ordered=all(ge),
        adjacent_all_ordered=all(adjacent_ge),
        block_value=block_value,
    )
    return replace(
        profile,
        t=_largest_split(profile, "block"),
        adjacent_t=_largest_split(profile, "adjacent"),
    )


def check_ordering(
    c: WClassCoefficients,
    block: SubsystemSelection,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> OrderingProfile:
    """Ordering profile of a block from the closed-form concurrences."""
    block.check(c.n_qubits)
    return profile_from_values(
        block,
        pair_concurrences_closed(c, block),
        downstream_concurrences(c, block),
        block_value=block_concurrence_closed(c, block),
        tol=tol,
    )


def profile_from_pairs(
    pairs: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> OrderingProfile:
    """Profile for bare pair values, taking downstream values as root sums of squares.

    This is exact for W-class states, whose one-to-group concurrence squared is
    the sum of the squared pair concurrences.
    """
    block = SubsystemSelection(tuple(range(1, len(pairs) + 1)))
    downstream = [math.sqrt(sum(p * p for p in pairs[i + 1 :])) for i in range(len(pairs) - 1)]
    block_value = math.sqrt(sum(p * p for p in pairs))
    return profile_from_values(block, pairs, downstream, block_value, tol)


@dataclass(frozen=True)
class InequalityReport:
    """One evaluated inequality ``lhs <op> rhs``.

    ``margin`` is ``lhs - rhs``: positive when a ``>=`` bound holds, negative
    when a ``<`` bound holds. ``satisfied`` is None when a hypothesis fails.
    ``terms`` counts the values summed on the right-hand side.
    ``adjacent_satisfied`` is the verdict of the split-weighted and ordered
    bounds under the adjacent-pair reading of their ordering hypothesis, with
    its split in ``adjacent_split``; it is None when that reading does not
    apply or the bound has no ordering hypothesis.
    """

    inequality_id: str
    direction: Direction
    exponent: float
    lhs: float
    rhs: float
    hypothesis_ok: tuple[bool, ...]
    satisfied: bool | None
    margin: float
    baseline_rhs: float | None = None
    split: int | None = None
    terms: int = 0
    notes: tuple[str, ...] = field(default_factory=tuple)
    adjacent_satisfied: bool | None = None
    adjacent_split: int | None = None

    @property
    def applicable(self) -> bool:
        return self.satisfied is not None

    @property
    def signed_margin(self) -> float:
        """Margin oriented so that positive means satisfied, scaled by ``max(1, |rhs|)``."""
        scale = max(1.0, abs(self.rhs)) if math.isfinite(self.rhs) else 1.0
        oriented = self.margin if self.direction is Direction.GE else -self.margin
        return oriented / scale


def weight_base(x: Exponent) -> float:
    """Base of the power weights ``(x/2)^k`` of the split-weighted bounds."""
    return x / 2.0


def split_weights(x: Exponent, count: int, t: int) -> list[float]:
    """Weights for ``count = m-1`` pair values split at ``t``.

    Positions ``1..t`` get ``(x/2)^{i-1}``, positions ``t+1..m-2`` get
    ``(x/2)^{t+1}`` and the last position gets ``(x/2)^t``.
    """
    if count < 3 or not 1 <= t <= count - 2:
        raise InvalidSelectionError(f"split t={t} invalid for {count} pair values")
    w = weight_base(x)
    weights = [w**i for i in range(t)]
    weights += [w ** (t + 1)] * (count - 1 - t)
    weights.append(w**t)
    return weights


def ordered_weights(x: Exponent, count: int) -> list[float]:
    """Weights ``(x/2)^{i-1}`` for the fully ordered bounds."""
    w = weight_base(x)
    return [w**i for i in range(count)]


def _power(value: float, exponent: float) -> float:
    if value == 0.0:
        return 0.0 if exponent > 0 else math.inf
    return value**exponent


def _require_lower(inequality_id: str, x: Exponent) -> None:
    if not x >= 2:
        raise ExponentDomainError(inequality_id, x, "x >= 2")


def _require_upper(inequality_id: str, y: Exponent) -> None:
    if not y < 0:
        raise ExponentDomainError(inequality_id, y, "y < 0")


def _holds(direction: Direction, lhs: float, rhs: float, tol: Tolerances) -> bool:
    if math.isnan(lhs) or math.isnan(rhs):
        return False
    if direction is Direction.LT and math.isinf(lhs):
        return False
    scale = max(1.0, abs(rhs)) if math.isfinite(rhs) else 1.0
    slack = tol.report_slack * scale
    if direction is Direction.GE:
        return lhs - rhs >= -slack
    return lhs - rhs <= slack


def _report(
    inequality_id: str,
    direction: Direction,
    exponent: float,
    lhs_value: float,
    rhs: float,
    hypotheses: Sequence[bool],
    tol: Tolerances,
    baseline_rhs: float | None = None,
    split: int | None = None,
    notes: Sequence[str] = (),
    terms: int = 0,
) -> InequalityReport:
    lhs = _power(lhs_value, exponent)
    hypothesis_ok = tuple(bool(h) for h in hypotheses)
    applicable = all(hypothesis_ok) and not math.isnan(rhs)
    satisfied = _holds(direction, lhs, rhs, tol) if applicable else None
    return InequalityReport(
        inequality_id=inequality_id,
        direction=direction,
        exponent=exponent,
        lhs=lhs,
        rhs=rhs,
        hypothesis_ok=hypothesis_ok,
        satisfied=satisfied,
        margin=lhs - rhs,
        baseline_rhs=baseline_rhs,
        split=split,
        terms=terms,
        notes=tuple(notes),
    )


def not_applicable(inequality_id: str, exponent: float, reason: str) -> InequalityReport:
    """Report for an inequality whose hypotheses cannot even be evaluated."""
    direction = Direction.GE if inequality_id in LOWER_IDS else Direction.LT
    return InequalityReport(
        inequality_id=inequality_id,
        direction=direction,
        exponent=exponent,
        lhs=math.nan,
        rhs=math.nan,
        hypothesis_ok=(False,),
        satisfied=None,
        margin=math.nan,
        notes=(reason,),
    )


def _weighted_sum(values: Sequence[float], weights: Sequence[float], exponent: float) -> float:
    return sum(w * _power(v, exponent) for w, v in zip(weights, values, strict=True))


def _power_sum(values: Sequence[float], exponent: float) -> float:
    return sum(_power(v, exponent) for v in values)


def _zero_positions(values: Sequence[float], tol: Tolerances) -> list[int]:
    return [i + 1 for i, v in enumerate(values) if v <= tol.zero_pair]


def _with_adjacent_split(
    report: InequalityReport,
    values: Sequence[float],
    profile: OrderingProfile,
    x: Exponent,
    lhs_value: float,
    tol: Tolerances,
) -> InequalityReport:
    t = profile.adjacent_t
    if t is None or not all(profile.split_hypotheses(t, "adjacent")):
        return report
    rhs = _weighted_sum(values, split_weights(x, len(values), t), x)
    holds = _holds(Direction.GE, _power(lhs_value, x), rhs, tol)
    return replace(report, adjacent_satisfied=holds, adjacent_split=t)


# -- prior bounds -------------------------------------------------------------


def coa_lower_baseline(pairs: Sequence[float], x: Exponent) -> float:
    """Right-hand side ``sum_i C_a^x(rho_{AB_{j_i}})`` of the prior lower bound.

    Raises:
        ExponentDomainError: If ``x < 2``
    """
    _require_lower("eq4", x)
    return _power_sum(pairs, x)


def coa_upper_baseline(pairs: Sequence[float], y: Exponent) -> float:
    """Right-hand side ``sum_i C_a^y(rho_{AB_{j_i}})`` of the prior upper bound.

    Raises:
        ExponentDomainError: If ``y >= 0``
        ZeroPairError: If a pair value vanishes
    """
    _require_upper("eq5", y)
    zeros = _zero_positions(pairs, DEFAULT_TOLERANCES)
    if zeros:
        raise ZeroPairError("eq5", zeros, "remark_cyclic")
    return _power_sum(pairs, y)


def eq4_report(
    pairs: Sequence[float],
    x: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``C_a^x(A|block) >= sum_i C_a^x(rho_{AB_{j_i}})``."""
    rhs = coa_lower_baseline(pairs, x)
    return _report(
        "eq4", Direction.GE, x, lhs, rhs, (), tol, baseline_rhs=rhs, terms=len(pairs)
    )


def eq5_report(
    pairs: Sequence[float],
    y: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``C_a^y(A|block) < sum_i C_a^y(rho_{AB_{j_i}})``; vanishing pairs leave it unmet."""
    _require_upper("eq5", y)
    if _zero_positions(pairs, tol):
        return _report(
            "eq5", Direction.LT, y, lhs, math.inf, (False,), tol, notes=("vanishing pair value",)
        )
    rhs = _power_sum(pairs, y)
    return _report(
        "eq5", Direction.LT, y, lhs, rhs, (True,), tol, baseline_rhs=rhs, terms=len(pairs)
    )


def concurrence_baselines(
    values: Sequence[float],
    alpha: Exponent,
    lhs: float,
    m_split: int | None,
    profile: OrderingProfile | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[InequalityReport, InequalityReport]:
    """Evaluate the prior concurrence bounds (ids ``eq2`` and ``eq3``).

    The lower form (``alpha >= 2``) weights pair values like ``th1`` with the
    split ``m_split``; the upper form (``alpha < 0``) averages them with
    ``K = 1/(N-1)``. The form whose domain excludes ``alpha`` comes back with
    ``satisfied=None``.

    Raises:
        ExponentDomainError: If ``0 <= alpha < 2``
    """
    if 0 <= alpha < 2:
        raise ExponentDomainError("eq2/eq3", alpha, "alpha >= 2 or alpha < 0")

    outside = "exponent outside domain"
    if alpha >= 2:
        count = len(values)
        if count >= 3 and m_split is not None and 1 <= m_split <= count - 2:
            rhs = _weighted_sum(values, split_weights(alpha, count, m_split), alpha)
            if profile is not None:
                hypotheses = profile.split_hypotheses(m_split)
                notes: tuple[str, ...] = ()
            else:
                hypotheses = (True,)
                notes = ("ordering hypotheses not checked",)
            lower = _report(
                "eq2",
                Direction.GE,
                alpha,
                lhs,
                rhs,
                hypotheses,
                tol,
                baseline_rhs=_power_sum(values, alpha),
                terms=count,
                split=m_split,
                notes=notes,
            )
        elif profile is not None:
            lower = _report(
                "eq2",
                Direction.GE,
                alpha,
                lhs,
                math.nan,
                profile.split_hypotheses(m_split),
                tol,
                baseline_rhs=_power_sum(values, alpha),
                terms=count,
                notes=("no valid split t",),
            )
        else:
            lower = not_applicable("eq2", alpha, "no valid split for the given values")
        if profile is not None and count == profile.m - 1:
            lower = _with_adjacent_split(lower, values, profile, alpha, lhs, tol)
        upper = not_applicable("eq3", alpha, outside)
        return lower, upper

    lower = not_applicable("eq2", alpha, outside)
    if _zero_positions(values, tol):
        upper = _report(
            "eq3", Direction.LT, alpha, lhs, math.inf, (False,), tol, notes=("vanishing pair value",)
        )
    else:
        total = _power_sum(values, alpha)
        upper = _report(
            "eq3",
            Direction.LT,
            alpha,
            lhs,
            total / len(values),
            (True,),
            tol,
            baseline_rhs=total,
            terms=len(values),
        )
    return lower, upper


# -- concurrence of assistance -------------------------------------------------


def _split_bound(
    inequality_id: str,
    values: Sequence[float],
    profile: OrderingProfile,
    x: Exponent,
    lhs: float | None,
    tol: Tolerances,
    notes: Sequence[str] = (),
) -> InequalityReport:
    _require_lower(inequality_id, x)
    if len(values) != profile.m - 1:
        raise InvalidSelectionError(
            f"{inequality_id}: {len(values)} values for a block of m={profile.m}"
        )
    lhs_value = profile.block_value if lhs is None else lhs
    if lhs_value is None:
        raise InvalidSelectionError(f"{inequality_id}: no one-to-group value supplied")

    baseline = _power_sum(values, x)
    hypotheses = profile.split_hypotheses(profile.t)
    if not hypotheses[0]:
        reason = "m < 4" if profile.m < 4 else "no valid split t"
        unmet = _report(
            inequality_id,
            Direction.GE,
            x,
            lhs_value,
            math.nan,
            hypotheses,
            tol,
            baseline_rhs=baseline,
            terms=len(values),
            notes=(reason, *notes),
        )
        return _with_adjacent_split(unmet, values, profile, x, lhs_value, tol)
    assert profile.t is not None
    rhs = _weighted_sum(values, split_weights(x, len(values), profile.t), x)
    report = _report(
        inequality_id,
        Direction.GE,
        x,
        lhs_value,
        rhs,
        hypotheses,
        tol,
        baseline_rhs=baseline,
        terms=len(values),
        split=profile.t,
        notes=notes,
    )
    return _with_adjacent_split(report, values, profile, x, lhs_value, tol)


def _ordered_bound(
    inequality_id: str,
    values: Sequence[float],
    x: Exponent,
    lhs: float | None,
    profile: OrderingProfile | None,
    tol: Tolerances,
    notes: Sequence[str] = (),
) -> InequalityReport:
    _require_lower(inequality_id, x)
    if profile is None:
        profile = profile_from_pairs(values, tol)
    if len(values) != profile.m - 1:
        raise InvalidSelectionError(
            f"{inequality_id}: {len(values)} values for a block of m={profile.m}"
        )
    lhs_value = profile.block_value if lhs is None else lhs
    if lhs_value is None:
        raise InvalidSelectionError(f"{inequality_id}: no one-to-group value supplied")
    rhs = _weighted_sum(values, ordered_weights(x, len(values)), x)
    report = _report(
        inequality_id,
        Direction.GE,
        x,
        lhs_value,
        rhs,
        (profile.all_ordered,),
        tol,
        baseline_rhs=_power_sum(values, x),
        terms=len(values),
        notes=notes,
    )
    if not profile.adjacent_all_ordered:
        return report
    return replace(
        report, adjacent_satisfied=_holds(Direction.GE, report.lhs, report.rhs, tol)
    )


def _averaged_bound(
    inequality_id: str,
    values: Sequence[float],
    y: Exponent,
    lhs: float,
    route: str,
    tol: Tolerances,
) -> InequalityReport:
    _require_upper(inequality_id, y)
    zeros = _zero_positions(values, tol)
    if zeros:
        raise ZeroPairError(inequality_id, zeros, route)
    total = _power_sum(values, y)
    return _report(
        inequality_id,
        Direction.LT,
        y,
        lhs,
        total / len(values),
        (True,),
        tol,
        baseline_rhs=total,
        terms=len(values),
    )


def _removed_term_bound(
    inequality_id: str,
    values: Sequence[float],
    y: Exponent,
    lhs: float,
    factor: RemarkFactor,
    tol: Tolerances,
) -> InequalityReport:
    _require_upper(inequality_id, y)
    zeros = _zero_positions(values, tol)
    if len(zeros) != 1:
        raise InvalidSelectionError(
            f"{inequality_id} needs exactly one vanishing value, found {len(zeros)}"
        )
    m = len(values) + 1
    surviving = [v for i, v in enumerate(values, start=1) if i not in zeros]
    total = _power_sum(surviving, y)
    if factor == "literal":
        rhs = total / (m - 1)
    elif factor == "surviving":
        rhs = total / len(surviving) if surviving else math.inf
    else:
        raise ValueError(f"Unknown remark factor: {factor}")
    return _report(
        inequality_id,
        Direction.LT,
        y,
        lhs,
        rhs,
        (bool(surviving),),
        tol,
        baseline_rhs=total,
        terms=len(surviving),
        notes=(f"removed position {zeros[0]}", f"factor={factor}"),
    )


def coa_lower_th1(
    pairs: Sequence[float],
    profile: OrderingProfile,
    x: Exponent,
    lhs: float | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """Split-weighted lower bound on ``C_a^x(rho_{A|block})`` (id ``th1``).

    ``lhs`` defaults to the profile's closed-form block concurrence, which
    bounds the block's concurrence of assistance from below.
    """
    return _split_bound("th1", pairs, profile, x, lhs, tol)


def coa_lower_th2(
    pairs: Sequence[float],
    x: Exponent,
    lhs: float | None = None,
    profile: OrderingProfile | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """Fully ordered lower bound on ``C_a^x(rho_{A|block})`` (id ``th2``).

    Without a profile the ordering is derived from ``pairs`` as for a W-class
    state (see :func:`profile_from_pairs`).
    """
    return _ordered_bound("th2", pairs, x, lhs, profile, tol)


def coa_upper_th3(
    pairs: Sequence[float],
    y: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``C_a^y(rho_{A|block}) < (1/(m-1)) sum_i C_a^y(rho_{AB_{j_i}})`` (id ``th3``).

    Raises:
        ExponentDomainError: If ``y >= 0``
        ZeroPairError: If a pair value vanishes; use :func:`remark_cyclic`
    """
    return _averaged_bound("th3", pairs, y, lhs, "remark_cyclic", tol)


def remark_cyclic(
    pairs: Sequence[float],
    y: Exponent,
    lhs: float,
    factor: RemarkFactor = "surviving",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``th3`` with its single vanishing pair removed (id ``remark1``).

    ``pairs`` is the full list of ``m-1`` values with exactly one zero. With
    ``factor="surviving"`` the surviving terms are averaged (``1/(m-2)``);
    ``factor="literal"`` keeps ``1/(m-1)``, which does not bound the
    one-to-group value in general.

    Raises:
        ExponentDomainError: If ``y >= 0``
        InvalidSelectionError: Unless exactly one value vanishes
    """
    return _removed_term_bound("remark1", pairs, y, lhs, factor, tol)


# -- negativities ----------------------------------------------------------------


def neg_lower_lemma2(
    values: Sequence[float],
    x: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``N_c^x(rho_{A|B...}) >= sum_i N_c^x(rho_{AB_i})`` (id ``lem2``)."""
    _require_lower("lem2", x)
    rhs = _power_sum(values, x)
    return _report("lem2", Direction.GE, x, lhs, rhs, (), tol)


def neg_lower_lemma3(
    values: Sequence[float],
    profile: OrderingProfile,
    x: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """Split-weighted lower bound on ``N_c^x`` (id ``lem3``)."""
    return _split_bound("lem3", values, profile, x, lhs, tol)


def neg_upper_lemma4(
    values: Sequence[float],
    x: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``N_c^x(rho_{A|B...}) < (1/(N-1)) sum_i N_c^x(rho_{AB_i})`` for ``x < 0`` (id ``lem4``).

    Vanishing values leave the hypothesis unmet.
    """
    _require_upper("lem4", x)
    if _zero_positions(values, tol):
        return _report(
            "lem4", Direction.LT, x, lhs, math.inf, (False,), tol, notes=("vanishing value",)
        )
    total = _power_sum(values, x)
    return _report(
        "lem4",
        Direction.LT,
        x,
        lhs,
        total / len(values),
        (True,),
        tol,
        baseline_rhs=total,
        terms=len(values),
    )


def crenoa_th4(
    values: Sequence[float],
    profile: OrderingProfile,
    x: Exponent,
    lhs: float | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """Split-weighted lower bound on ``N_a^x(rho_{A|block})`` (id ``th4``)."""
    return _split_bound("th4", values, profile, x, lhs, tol)


def crenoa_th5(
    values: Sequence[float],
    x: Exponent,
    lhs: float | None = None,
    profile: OrderingProfile | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """Fully ordered lower bound on ``N_a^x(rho_{A|block})`` (id ``th5``)."""
    return _ordered_bound("th5", values, x, lhs, profile, tol)


def crenoa_th6(
    values: Sequence[float],
    y: Exponent,
    lhs: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``N_a^y(rho_{A|block}) < (1/(m-1)) sum_i N_a^y(rho_{AB_{j_i}})`` (id ``th6``).

    Raises:
        ZeroPairError: If a value vanishes; use :func:`crenoa_remark2`
    """
    return _averaged_bound("th6", values, y, lhs, "crenoa_remark2", tol)


def crenoa_remark2(
    values: Sequence[float],
    y: Exponent,
    lhs: float,
    factor: RemarkFactor = "surviving",
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """``th6`` with its single vanishing value removed (id ``remark2``)."""
    return _removed_term_bound("remark2", values, y, lhs, factor, tol)
