"""Closed-form achievable sum-DoF calculus.

Per applicable case the RIS cancels f1 rows/columns of the cross channel
H21 and f2 rows/columns of H12 within its element budget r; zero-forcing
and interference decoding on the reduced channels then achieve a sum-DoF
given by a min-form objective in (f1, f2).  This module evaluates the
closed-form optimizer of that integer program, the resulting sum-DoF
value per case, the no-RIS baseline, and the two helper characterizations
(the sufficient condition for a positive RIS gain, and the exact gain for
symmetric antenna configurations).

All arithmetic is exact integer arithmetic; floors are integer floor
divisions, never float operations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import AntennaConfig, CaseLabel, RisConfig, classify_cases, is_canonical


class ElimMode(enum.Enum):
    """Which dimension of a cross channel the RIS cancels."""

    ROW = "row"
    COLUMN = "column"


@dataclass(frozen=True)
class EliminationPlan:
    """How many leading rows/columns of each cross link the RIS zeroes.

    ``cost`` is the number of scalar channel entries forced to zero, one
    RIS element per entry, and never exceeds the element budget.
    """

    f1: int
    f2: int
    mode1: ElimMode
    mode2: ElimMode
    cost: int


@dataclass(frozen=True)
class CaseResult:
    case: CaseLabel
    plan: EliminationPlan
    sumdof: int


@dataclass(frozen=True)
class DofReport:
    """Achievable sum-DoF summary for one configuration and RIS budget."""

    config: AntennaConfig
    ris: RisConfig
    per_case: tuple[CaseResult, ...]
    achievable: int
    baseline: int
    gain: int
    ris_helps: bool

    @property
    def best_case(self) -> CaseLabel:
        """First applicable case attaining the achievable value."""
        for entry in self.per_case:
            if entry.sumdof == self.achievable:
                return entry.case
        raise AssertionError("no per-case entry attains the reported maximum")


def case_modes(case: CaseLabel) -> tuple[ElimMode, ElimMode]:
    """Elimination directions (link 2->1, link 1->2) for a case."""
    if case is CaseLabel.CASE1:
        return (ElimMode.ROW, ElimMode.ROW)
    if case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        return (ElimMode.COLUMN, ElimMode.ROW)
    return (ElimMode.COLUMN, ElimMode.COLUMN)


def case_limits(cfg: AntennaConfig, case: CaseLabel) -> tuple[int, int, int, int]:
    """(f1_max, f2_max, cost per unit f1, cost per unit f2) for a case.

    Zeroing one row costs as many RIS elements as the channel has
    columns, and vice versa.
    """
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    if case is CaseLabel.CASE1:
        return (n1, n2, m2, m1)
    if case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        return (m2, n2, n1, m1)
    return (m2, m1, n1, n2)


def _require_applicable(cfg: AntennaConfig, case: CaseLabel) -> None:
    if case not in classify_cases(cfg):
        raise ValueError(f"{case} does not apply to configuration {cfg}")


def baseline_sumdof(cfg: AntennaConfig) -> int:
    """Sum-DoF of the two-user MIMO IC without any RIS.

    min{m1 + m2, n1 + n2, max(m1, n2), max(m2, n1)}; under each case's
    premises this specializes to the per-case three-term form.
    """
    if not is_canonical(cfg):
        raise ValueError("configuration must be canonical")
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    return min(m1 + m2, n1 + n2, max(m1, n2), max(m2, n1))


def elimination_objective(cfg: AntennaConfig, case: CaseLabel, f1: int, f2: int) -> int:
    """Achievable sum-DoF at elimination counts (f1, f2), before optimizing.

    The full four-term min; the extra transmit/receive-space term that the
    per-case analysis drops is provably non-binding under that case's
    premises, so keeping it is harmless and uniform.
    """
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    if case is CaseLabel.CASE1:
        return min(m2 + f1, m1 + f2, n1 + n2, m1 + m2)
    if case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        return min(n1 + f1, m1 + f2, m1 + m2, n1 + n2)
    return min(n1 + f1, n2 + f2, m1 + m2, n1 + n2)


def optimal_elimination(cfg: AntennaConfig, ris: RisConfig, case: CaseLabel) -> EliminationPlan:
    """Closed-form optimizer (f1*, f2*) of the per-case integer program.

    Above the per-case budget threshold the two link terms of the
    objective are balanced, giving floor-of-quotient counts clipped to
    their boxes; below it the whole budget goes to the bottleneck link.
    At the threshold both branches coincide; the balanced branch is used.
    """
    _require_applicable(cfg, case)
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    r = ris.r
    if case is CaseLabel.CASE1:
        if r >= m1 * m2 - m2 * m2:
            f1 = min((r - m1 * m2 + m1 * m1) // (m1 + m2), n1)
            f2 = min((r - m1 * m2 + m2 * m2) // (m1 + m2), n2)
        else:
            f1, f2 = min(r // m2, n1), 0
    elif case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        threshold = m1 * n1 - (n1 * n1 if case is CaseLabel.CASE2_1 else m1 * m1)
        if r >= threshold:
            f1 = min((r - m1 * n1 + m1 * m1) // (m1 + n1), m2)
            f2 = min((r - m1 * n1 + n1 * n1) // (m1 + n1), n2)
        elif case is CaseLabel.CASE2_1:
            f1, f2 = min(r // n1, m2), 0
        else:
            f1, f2 = 0, min(r // m1, n2)
    else:
        if r >= n1 * n2 - n2 * n2:
            f1 = min((r - n1 * n2 + n2 * n2) // (n1 + n2), m2)
            f2 = min((r - n1 * n2 + n1 * n1) // (n1 + n2), m1)
        else:
            f1, f2 = 0, min(r // n2, m1)
    mode1, mode2 = case_modes(case)
    _, _, cost1, cost2 = case_limits(cfg, case)
    cost = cost1 * f1 + cost2 * f2
    assert cost <= r, "optimizer exceeded the RIS budget"
    return EliminationPlan(f1, f2, mode1, mode2, cost)


def case_sumdof(cfg: AntennaConfig, ris: RisConfig, case: CaseLabel) -> int:
    """Achievable sum-DoF of one case at budget r (the tabulated value).

    Equals ``elimination_objective`` evaluated at the plan returned by
    :func:`optimal_elimination`.
    """
    _require_applicable(cfg, case)
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    r = ris.r
    if case is CaseLabel.CASE1:
        if r >= m1 * m2 - m2 * m2:
            lead = (r + m1 * m1 + m2 * m2) // (m1 + m2)
        else:
            lead = m2 + r // m2
        return min(lead, m2 + n1, n1 + n2)
    if case is CaseLabel.CASE2_1:
        if r >= m1 * n1 - n1 * n1:
            lead = (r + m1 * m1 + n1 * n1) // (m1 + n1)
        else:
            lead = n1 + r // n1
        return min(lead, m2 + n1, n1 + n2)
    if case is CaseLabel.CASE2_2:
        if r >= m1 * n1 - m1 * m1:
            lead = (r + m1 * m1 + n1 * n1) // (m1 + n1)
        else:
            lead = m1 + r // m1
        return min(lead, m1 + n2, m1 + m2)
    if r >= n1 * n2 - n2 * n2:
        lead = (r + n1 * n1 + n2 * n2) // (n1 + n2)
    else:
        lead = n2 + r // n2
    return min(lead, m1 + n2, m1 + m2)


def ris_help_condition(cfg: AntennaConfig, ris: RisConfig) -> bool:
    """Sufficient condition for a strictly positive RIS gain.

    Per case: enough elements to cancel one interference link of the
    bottleneck dimension (two when the two leading dimensions are equal),
    plus, where the no-RIS sum-DoF could already be receiver- or
    transmitter-limited, the requirement that it is not.  When several
    cases apply, any one case's condition suffices.  The condition is
    sufficient only; a gain may exist even when it fails.
    """
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    r = ris.r
    for case in classify_cases(cfg):
        if case is CaseLabel.CASE1:
            if r >= m2 + m2 * (m1 == m2) and m2 < n1 + n2:
                return True
        elif case is CaseLabel.CASE2_1:
            if r >= n1 + n1 * (m1 == n1):
                return True
        elif case is CaseLabel.CASE2_2:
            if r >= m1:
                return True
        else:
            if r >= n2 + n2 * (n1 == n2) and n2 < m1 + m2:
                return True
    return False


def achievable_sumdof(cfg: AntennaConfig, ris: RisConfig) -> DofReport:
    """Best achievable sum-DoF over all applicable cases, with breakdown."""
    per_case = tuple(
        CaseResult(case, optimal_elimination(cfg, ris, case), case_sumdof(cfg, ris, case))
        for case in classify_cases(cfg)
    )
    achievable = max(entry.sumdof for entry in per_case)
    baseline = baseline_sumdof(cfg)
    return DofReport(
        config=cfg,
        ris=ris,
        per_case=per_case,
        achievable=achievable,
        baseline=baseline,
        gain=achievable - baseline,
        ris_helps=ris_help_condition(cfg, ris),
    )


def ris_gain_symmetric(m: int, n: int, r: int) -> int:
    """Exact RIS gain for m1 = m2 = m, n1 = n2 = n.

    min{r // 2m, 2n - m} when n <= m < 2n, min{r // 2n, 2m - n} when
    m < n < 2m, and 0 once either side has at least twice the antennas of
    the other (zero-forcing plus interference decoding already suffice).
    """
    if m < 1 or n < 1:
        raise ValueError("antenna counts must be positive")
    if r < 0:
        raise ValueError("r must be non-negative")
    if n <= m < 2 * n:
        return min(r // (2 * m), 2 * n - m)
    if m < n < 2 * m:
        return min(r // (2 * n), 2 * m - n)
    return 0
