import itertools

import pytest

from risdof import oracle
from risdof.dof_core import case_sumdof
from risdof.model import CaseLabel, RisConfig, canonicalize, classify_cases
from risdof.oracle import (
    SearchSpace,
    brute_force_optimum,
    case_search_space,
    optimum_over_budgets,
    per_case_objective,
    subcase_sumdof,
)


def test_brute_force_case1_example():
    cfg = canonicalize(5, 3, 3, 4)
    space = case_search_space(cfg, CaseLabel.CASE1, budget=10)
    f1, f2, value = brute_force_optimum(space, per_case_objective(cfg, CaseLabel.CASE1))
    assert value == 5


def test_brute_force_zero_budget_returns_origin():
    cfg = canonicalize(5, 3, 3, 4)
    objective = per_case_objective(cfg, CaseLabel.CASE1)
    f1, f2, value = brute_force_optimum(case_search_space(cfg, CaseLabel.CASE1, 0), objective)
    assert (f1, f2) == (0, 0)
    assert value == objective(0, 0)


def test_brute_force_saturated_symmetric():
    cfg = canonicalize(10, 10, 10, 10)
    space = case_search_space(cfg, CaseLabel.CASE1, budget=200)
    _, _, value = brute_force_optimum(space, per_case_objective(cfg, CaseLabel.CASE1))
    assert value == 20


def test_brute_force_tie_break_is_smallest_pair():
    space = SearchSpace(f1_max=3, f2_max=3, cost1=1, cost2=1, budget=6)
    assert brute_force_optimum(space, lambda f1, f2: 7) == (0, 0, 7)
    # strictly increasing in f2 only: smallest f1 among maximizers
    assert brute_force_optimum(space, lambda f1, f2: f2)[0] == 0


def test_brute_force_rejects_oversized_space():
    with pytest.raises(ValueError):
        brute_force_optimum(SearchSpace(200, 200, 1, 1, 10), lambda f1, f2: 0)


def test_brute_force_deterministic():
    cfg = canonicalize(6, 4, 3, 3)
    space = case_search_space(cfg, CaseLabel.CASE1, budget=9)
    objective = per_case_objective(cfg, CaseLabel.CASE1)
    assert brute_force_optimum(space, objective) == brute_force_optimum(space, objective)


def test_objective_case1_example():
    objective = per_case_objective(canonicalize(6, 4, 3, 3), CaseLabel.CASE1)
    assert objective(2, 0) == 6  # min{6, 6, 6, 10}


def test_objective_case3_example():
    objective = per_case_objective(canonicalize(3, 3, 5, 4), CaseLabel.CASE3)
    assert objective(0, 1) == 5  # min{5, 5, 6, 9}


def test_objective_at_origin_matches_zero_budget_value():
    for raw in itertools.product(range(1, 7), repeat=4):
        cfg = canonicalize(*raw)
        if cfg.swapped:
            continue
        for case in classify_cases(cfg):
            objective = per_case_objective(cfg, case)
            assert objective(0, 0) == case_sumdof(cfg, RisConfig(0), case)


def test_optimum_over_budgets_matches_single_budget_enumeration():
    cfg = canonicalize(5, 3, 3, 4)
    for case in classify_cases(cfg):
        space = case_search_space(cfg, case, budget=0)
        objective = per_case_objective(cfg, case)
        swept = optimum_over_budgets(space, objective, budget_max=40)
        for budget in range(41):
            single = brute_force_optimum(
                case_search_space(cfg, case, budget), objective
            )[2]
            assert swept[budget] == single


def test_simplified_three_term_forms_agree():
    # dropping the provably non-binding term never changes the objective
    for raw in itertools.product(range(1, 8), repeat=4):
        cfg = canonicalize(*raw)
        if cfg.swapped:
            continue
        m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
        for case in classify_cases(cfg):
            space = case_search_space(cfg, case, budget=0)
            objective = per_case_objective(cfg, case)
            for f1 in range(space.f1_max + 1):
                for f2 in range(space.f2_max + 1):
                    if case is CaseLabel.CASE1:
                        simplified = min(m2 + f1, m1 + f2, n1 + n2)
                    elif case is CaseLabel.CASE3:
                        simplified = min(n1 + f1, n2 + f2, m1 + m2)
                    else:
                        simplified = objective(f1, f2)
                    assert objective(f1, f2) == simplified


def test_subcase_recount_collapses_to_objective_sample():
    for raw in itertools.product(range(1, 7), repeat=4):
        cfg = canonicalize(*raw)
        if cfg.swapped:
            continue
        for case in classify_cases(cfg):
            space = case_search_space(cfg, case, budget=0)
            objective = per_case_objective(cfg, case)
            for f1 in range(space.f1_max + 1):
                for f2 in range(space.f2_max + 1):
                    assert subcase_sumdof(cfg, case, f1, f2) == objective(f1, f2)
