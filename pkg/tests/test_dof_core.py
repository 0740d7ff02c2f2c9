import itertools

import pytest

from risdof import dof_core
from risdof.dof_core import (
    achievable_sumdof,
    baseline_sumdof,
    case_sumdof,
    elimination_objective,
    optimal_elimination,
    ris_gain_symmetric,
    ris_help_condition,
)
from risdof.model import CaseLabel, RisConfig, canonicalize, classify_cases


def _canonical_grid(top):
    for raw in itertools.product(range(1, top + 1), repeat=4):
        cfg = canonicalize(*raw)
        if not cfg.swapped:
            yield cfg


@pytest.mark.parametrize(
    "counts,expected",
    [((6, 4, 3, 3), 4), ((1, 1, 1, 1), 1), ((10, 10, 10, 10), 10)],
)
def test_baseline_examples(counts, expected):
    assert baseline_sumdof(canonicalize(*counts)) == expected


def test_optimal_elimination_case1_example():
    plan = optimal_elimination(canonicalize(5, 3, 3, 4), RisConfig(10), CaseLabel.CASE1)
    assert (plan.f1, plan.f2) == (2, 0)
    assert plan.cost == 6


def test_optimal_elimination_case3_example():
    plan = optimal_elimination(canonicalize(3, 3, 5, 4), RisConfig(12), CaseLabel.CASE3)
    assert (plan.f1, plan.f2) == (0, 1)
    assert plan.cost == 4


def test_optimal_elimination_empty_budget():
    for counts in [(5, 3, 3, 4), (5, 3, 3, 3), (2, 2, 3, 2), (3, 3, 5, 4)]:
        cfg = canonicalize(*counts)
        for case in classify_cases(cfg):
            plan = optimal_elimination(cfg, RisConfig(0), case)
            assert (plan.f1, plan.f2, plan.cost) == (0, 0, 0)


def test_optimal_elimination_rejects_inapplicable_case():
    with pytest.raises(ValueError):
        optimal_elimination(canonicalize(6, 4, 3, 3), RisConfig(5), CaseLabel.CASE3)


def test_plan_cost_within_budget_and_boxes():
    for cfg in _canonical_grid(7):
        for case in classify_cases(cfg):
            f1_max, f2_max, c1, c2 = dof_core.case_limits(cfg, case)
            for r in range(0, 2 * max(cfg.m1, cfg.n1) * max(cfg.m2, cfg.n2) + 6, 3):
                plan = optimal_elimination(cfg, RisConfig(r), case)
                assert 0 <= plan.f1 <= f1_max and 0 <= plan.f2 <= f2_max
                assert plan.cost == c1 * plan.f1 + c2 * plan.f2 <= r


@pytest.mark.parametrize(
    "counts,r,case,expected",
    [
        ((10, 10, 10, 10), 200, CaseLabel.CASE1, 20),
        ((6, 4, 3, 3), 8, CaseLabel.CASE1, 6),
        ((6, 4, 3, 3), 0, CaseLabel.CASE1, 4),
    ],
)
def test_case_sumdof_examples(counts, r, case, expected):
    assert case_sumdof(canonicalize(*counts), RisConfig(r), case) == expected


def test_case_sumdof_rejects_inapplicable_case():
    with pytest.raises(ValueError):
        case_sumdof(canonicalize(6, 4, 3, 3), RisConfig(8), CaseLabel.CASE2_1)


def test_case_sumdof_equals_plan_objective():
    for cfg in _canonical_grid(6):
        for case in classify_cases(cfg):
            for r in range(0, 2 * max(cfg.m1, cfg.n1) * max(cfg.m2, cfg.n2) + 6):
                ris = RisConfig(r)
                plan = optimal_elimination(cfg, ris, case)
                assert case_sumdof(cfg, ris, case) == elimination_objective(
                    cfg, case, plan.f1, plan.f2
                )


def test_budget_branch_boundary_continuity():
    # at the per-case threshold both branch formulas coincide
    for cfg in _canonical_grid(6):
        for case in classify_cases(cfg):
            m1, m2, n1, n2 = cfg.m1, cfg.m2, cfg.n1, cfg.n2
            threshold = {
                CaseLabel.CASE1: m1 * m2 - m2 * m2,
                CaseLabel.CASE2_1: m1 * n1 - n1 * n1,
                CaseLabel.CASE2_2: m1 * n1 - m1 * m1,
                CaseLabel.CASE3: n1 * n2 - n2 * n2,
            }[case]
            if threshold < 1:
                continue
            at = case_sumdof(cfg, RisConfig(threshold), case)
            below = case_sumdof(cfg, RisConfig(threshold - 1), case)
            assert 0 <= at - below <= 1


@pytest.mark.parametrize(
    "counts,r,achievable,baseline,gain",
    [
        ((6, 4, 3, 3), 4, 5, 4, 1),
        ((10, 10, 10, 10), 200, 20, 10, 10),
        ((10, 8, 4, 3), 100, 7, 7, 0),
    ],
)
def test_achievable_examples(counts, r, achievable, baseline, gain):
    report = achievable_sumdof(canonicalize(*counts), RisConfig(r))
    assert report.achievable == achievable
    assert report.baseline == baseline
    assert report.gain == gain


@pytest.mark.parametrize(
    "counts,r,expected",
    [
        ((6, 4, 3, 3), 4, True),
        ((4, 4, 2, 2), 7, False),
        ((10, 8, 4, 3), 100, False),
    ],
)
def test_ris_help_condition_examples(counts, r, expected):
    assert ris_help_condition(canonicalize(*counts), RisConfig(r)) is expected


@pytest.mark.parametrize(
    "m,n,r,expected",
    [(10, 10, 40, 2), (20, 10, 1000, 0), (10, 10, 19, 0)],
)
def test_ris_gain_symmetric_examples(m, n, r, expected):
    assert ris_gain_symmetric(m, n, r) == expected


def test_monotone_in_budget():
    for counts in [(6, 4, 3, 3), (5, 3, 3, 4), (2, 2, 3, 2), (3, 3, 5, 4), (7, 7, 7, 7)]:
        cfg = canonicalize(*counts)
        previous = -1
        for r in range(0, 2 * max(cfg.m1, cfg.n1) * max(cfg.m2, cfg.n2) + 6):
            value = achievable_sumdof(cfg, RisConfig(r)).achievable
            assert value >= previous
            previous = value


def test_saturation_symmetric():
    for m in range(1, 13):
        for n in range(1, 13):
            cfg = canonicalize(m, m, n, n)
            assert achievable_sumdof(cfg, RisConfig(2 * m * n)).achievable == 2 * min(m, n)


def test_zero_budget_matches_baseline():
    for cfg in _canonical_grid(7):
        report = achievable_sumdof(cfg, RisConfig(0))
        assert report.achievable == report.baseline == baseline_sumdof(cfg)
        assert report.gain == 0


def test_cap_and_nonnegative_gain():
    for cfg in _canonical_grid(6):
        for r in (0, 3, 11, 60, 250):
            report = achievable_sumdof(cfg, RisConfig(r))
            assert report.gain >= 0
            assert report.achievable <= min(cfg.m1 + cfg.m2, cfg.n1 + cfg.n2)


def test_relabeling_symmetry():
    for raw in itertools.product(range(1, 7), repeat=4):
        m1, m2, n1, n2 = raw
        for r in (0, 5, 17, 80):
            direct = achievable_sumdof(canonicalize(m1, m2, n1, n2), RisConfig(r))
            flipped = achievable_sumdof(canonicalize(m2, m1, n2, n1), RisConfig(r))
            assert direct.achievable == flipped.achievable
            assert direct.baseline == flipped.baseline
