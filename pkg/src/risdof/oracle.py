"""Independent brute-force references used to validate the closed forms.

Everything here is deliberately self-contained: the objectives and
constraint boxes are restated from the per-case analysis rather than
imported from :mod:`risdof.dof_core`, so a bug in the closed forms cannot
leak into the reference values.  Two reference routes are provided:

* the min-form objective of each case's integer program, maximized by
  exhaustive enumeration, and
* a deeper recomputation that re-derives the sum-DoF of a given (f1, f2)
  from the per-sub-case zero-forcing and interference-decoding space
  counting, which must collapse to the same min-form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .model import AntennaConfig, CaseLabel

MAX_ENUM_POINTS = 10_000


@dataclass(frozen=True)
class SearchSpace:
    """Integer box with a linear budget: cost1*f1 + cost2*f2 <= budget."""

    f1_max: int
    f2_max: int
    cost1: int
    cost2: int
    budget: int


def case_search_space(cfg: AntennaConfig, case: CaseLabel, budget: int) -> SearchSpace:
    """Constraint set of the case's elimination problem (restated here)."""
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    if case is CaseLabel.CASE1:
        return SearchSpace(f1_max=n1, f2_max=n2, cost1=m2, cost2=m1, budget=budget)
    if case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        return SearchSpace(f1_max=m2, f2_max=n2, cost1=n1, cost2=m1, budget=budget)
    return SearchSpace(f1_max=m2, f2_max=m1, cost1=n1, cost2=n2, budget=budget)


def per_case_objective(cfg: AntennaConfig, case: CaseLabel) -> Callable[[int, int], int]:
    """The exact four-term min objective of the case's integer program."""
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    if case is CaseLabel.CASE1:
        return lambda f1, f2: min(m2 + f1, m1 + f2, n1 + n2, m1 + m2)
    if case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        return lambda f1, f2: min(n1 + f1, m1 + f2, m1 + m2, n1 + n2)
    return lambda f1, f2: min(n1 + f1, n2 + f2, m1 + m2, n1 + n2)


def brute_force_optimum(
    space: SearchSpace, objective: Callable[[int, int], int]
) -> tuple[int, int, int]:
    """Enumerate every feasible pair and return (f1, f2, best value).

    Ties break toward smaller f1, then smaller f2, so the result is
    deterministic.  (0, 0) is always feasible, so the space is never
    empty.
    """
    points = (space.f1_max + 1) * (space.f2_max + 1)
    if points > MAX_ENUM_POINTS:
        raise ValueError(f"search space of {points} points exceeds desk scale")
    best = None
    for f1 in range(space.f1_max + 1):
        if space.cost1 * f1 > space.budget:
            break
        for f2 in range(space.f2_max + 1):
            if space.cost1 * f1 + space.cost2 * f2 > space.budget:
                break
            value = objective(f1, f2)
            if best is None or value > best[2]:
                best = (f1, f2, value)
    assert best is not None
    return best


def optimum_over_budgets(
    space: SearchSpace, objective: Callable[[int, int], int], budget_max: int
) -> list[int]:
    """Brute-force optima for every budget 0..budget_max at once.

    Same enumeration as :func:`brute_force_optimum` (the budget only
    gates which pairs count), organized as one pass over the box followed
    by a running maximum over budgets, so grid-wide equivalence checks
    stay cheap.  ``space.budget`` is ignored.
    """
    points = (space.f1_max + 1) * (space.f2_max + 1)
    if points > MAX_ENUM_POINTS:
        raise ValueError(f"search space of {points} points exceeds desk scale")
    best_at_cost = [-1] * (budget_max + 1)
    for f1 in range(space.f1_max + 1):
        for f2 in range(space.f2_max + 1):
            cost = space.cost1 * f1 + space.cost2 * f2
            if cost <= budget_max:
                value = objective(f1, f2)
                if value > best_at_cost[cost]:
                    best_at_cost[cost] = value
    running = -1
    out = []
    for cost_value in best_at_cost:
        running = max(running, cost_value)
        out.append(running)
    return out


def subcase_sumdof(cfg: AntennaConfig, case: CaseLabel, f1: int, f2: int) -> int:
    """Sum-DoF of (f1, f2) recounted from the per-sub-case spaces.

    For each case the (f1, f2) box splits into sub-cases by whether the
    zero-forcing spaces hit their receive-dimension caps; each sub-case
    adds up its zero-forcing and interference-decoding dimensions, and
    the total is capped by the transmit space m1 + m2.  Agreement of this
    count with :func:`per_case_objective` for every in-box pair is the
    sub-case collapse property.
    """
    m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
    if case is CaseLabel.CASE1:
        zf1_fits = m1 - (n2 - f2) <= n1
        zf2_fits = m2 - (n1 - f1) <= n2
        if zf1_fits and zf2_fits:
            raw = (
                (m1 - (n2 - f2))
                + (m2 - (n1 - f1))
                + min(n1 + n2 - m1 - f2, n1 + n2 - m2 - f1)
            )
        elif not zf1_fits and not zf2_fits:
            raw = n1 + n2
        elif zf1_fits:
            raw = m1 + f2
        else:
            raw = m2 + f1
    elif case in (CaseLabel.CASE2_1, CaseLabel.CASE2_2):
        zf1_fits = m1 - (n2 - f2) <= n1
        zf2_fits = f1 <= n2
        if zf1_fits and zf2_fits:
            raw = (m1 - (n2 - f2)) + f1 + min(n2 - f1, n1 + n2 - m1 - f2)
        elif not zf1_fits and not zf2_fits:
            raw = n1 + n2
        elif zf1_fits:
            raw = m1 + f2
        else:
            raw = n1 + f1
    else:
        if f1 <= n2:
            raw = f2 + f1 + min(n1 - f2, n2 - f1)
        else:
            raw = f2 + n2
    return min(raw, m1 + m2)
