import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairseat.audit import maxmin_value, social_welfare
from fairseat.errors import (
    BudgetExceeded,
    InfeasibleThreshold,
    InstanceTooLarge,
    NonUnitCredits,
    NotExpanded,
    SemanticError,
)
from fairseat.fixtures import fixture_a
from fairseat.model import Course, General, Instance, Student, TimeInterval, expand_seats, validate_allocation
from fairseat.oracle import (
    GeneralConflictInstance,
    exhaustive_optimum,
    maxmin_upper_bound,
    opt_maxmin,
    opt_social_welfare,
    opt_sw_given_maxmin,
    solve_bmatching_with_conflicts,
    to_conflict_instance,
    two_stage_optimum,
)
from support import reference_optimum, sample_instance

KINDS = ["uniform", "binary", "general"]


def small(seed, kind, **kw):
    kw.setdefault("m_range", (1, 7))
    kw.setdefault("n_range", (1, 3))
    return sample_instance(seed, utility_kind=kind, cap_range=(0, 3), value_range=(0, 4), **kw)


class TestFixtures:
    def test_a(self, fa):
        result = opt_social_welfare(fa)
        assert result.value == 4 and result.proven_optimal
        assert social_welfare(fa, result.allocation) == 4
        assert opt_maxmin(fa).value == 1

    def test_b(self, fb):
        assert opt_social_welfare(fb).value == 3
        assert opt_maxmin(fb).value == 1
        assert opt_sw_given_maxmin(fb, 1).value == 3

    def test_c(self, fc):
        assert opt_social_welfare(fc).value == 2
        assert opt_maxmin(fc).value == 1
        with pytest.raises(InfeasibleThreshold):
            opt_sw_given_maxmin(fc, 2)

    def test_exhaustive_agrees(self, fa, fb, fc):
        assert [exhaustive_optimum(i) for i in (fa, fb, fc)] == [4, 3, 2]
        assert [exhaustive_optimum(i, "maxmin") for i in (fa, fb, fc)] == [1, 1, 1]

    def test_upper_bound(self, fa):
        assert maxmin_upper_bound(fa) == 1


@given(st.integers(0, 10_000), st.sampled_from(KINDS))
def test_search_matches_naive_enumeration(seed, kind):
    inst = small(seed, kind, credits_range=(1, 2))
    sw, mm, sw_at_mm = reference_optimum(inst)
    best = opt_social_welfare(inst)
    assert best.value == sw
    assert validate_allocation(inst, best.allocation).valid
    assert social_welfare(inst, best.allocation) == sw
    fair = opt_maxmin(inst)
    assert fair.value == mm
    assert maxmin_value(inst, fair.allocation) >= mm
    assert two_stage_optimum(inst)[1].value == sw_at_mm


@given(st.integers(0, 10_000), st.sampled_from(KINDS))
def test_bitmask_enumeration_matches_search(seed, kind):
    inst = small(seed, kind, n_range=(2, 4), m_range=(4, 10))
    assert exhaustive_optimum(inst) == opt_social_welfare(inst).value
    assert exhaustive_optimum(inst, "maxmin") == opt_maxmin(inst).value


@given(st.integers(0, 10_000), st.sampled_from(KINDS))
def test_threshold_properties(seed, kind):
    inst = small(seed, kind, n_range=(2, 4), m_range=(4, 10))
    sw = opt_social_welfare(inst).value
    assert opt_sw_given_maxmin(inst, 0).value == sw
    first, second = two_stage_optimum(inst)
    assert second.value <= sw
    assert maxmin_value(inst, second.allocation) >= first.value
    assert maxmin_upper_bound(inst) >= first.value


def test_fractional_utilities_use_direct_search():
    inst = expand_seats(Instance(
        [Student("s1", 1, General({"a": 0.5, "b": 1.5})), Student("s2", 1, General({"a": 2.5, "b": 0.25}))],
        [Course("a", TimeInterval(0, 1)), Course("b", TimeInterval(0, 1))]))
    assert opt_maxmin(inst).value == 1.5
    assert exhaustive_optimum(inst, "maxmin") == 1.5


class TestGuards:
    def test_too_many_students(self):
        inst = sample_instance(0, n_range=(6, 6), m_range=(4, 4))
        with pytest.raises(InstanceTooLarge):
            opt_social_welfare(inst)

    def test_too_many_courses(self):
        inst = sample_instance(0, n_range=(2, 2), m_range=(21, 21))
        with pytest.raises(InstanceTooLarge):
            opt_maxmin(inst)

    def test_node_budget(self, fa):
        with pytest.raises(BudgetExceeded):
            opt_social_welfare(fa, node_budget=2)

    def test_needs_expansion(self):
        with pytest.raises(NotExpanded):
            opt_social_welfare(fixture_a(expanded=False))


class TestBMatching:
    def test_star(self):
        k = 4
        g = GeneralConflictInstance({"hub": k}, {f"r{i}": 1 for i in range(k)},
                                    [("hub", f"r{i}", 1.0) for i in range(k)])
        assert solve_bmatching_with_conflicts(g).value == k

    def test_degree_bound(self):
        g = GeneralConflictInstance({"hub": 2}, {f"r{i}": 1 for i in range(4)},
                                    [("hub", f"r{i}", 1.0) for i in range(4)])
        assert solve_bmatching_with_conflicts(g).value == 2

    def test_all_conflicting(self):
        rs = [f"r{i}" for i in range(3)]
        g = GeneralConflictInstance({"a": 3}, {r: 1 for r in rs}, [("a", r, 1.0) for r in rs],
                                    {frozenset(p) for p in [("r0", "r1"), ("r0", "r2"), ("r1", "r2")]})
        result = solve_bmatching_with_conflicts(g)
        assert result.value == 1 and len(result.allocation.bundle("a")) == 1

    def test_empty(self):
        assert solve_bmatching_with_conflicts(GeneralConflictInstance({"a": 1}, {}, [])).value == 0

    def test_agent_side_conflict(self):
        # one resource, two agents that may not share it
        g = GeneralConflictInstance({"a": 1, "b": 1}, {"r": 2}, [("a", "r", 1.0), ("b", "r", 2.0)],
                                    {frozenset(("a", "b"))})
        assert solve_bmatching_with_conflicts(g).value == 2

    @pytest.mark.parametrize("edges,conflicts", [
        ([("a", "ghost", 1.0)], set()),
        ([("a", "r", 1.0)], {frozenset(("a", "r"))}),
    ])
    def test_rejects_bad_graphs(self, edges, conflicts):
        with pytest.raises(SemanticError):
            GeneralConflictInstance({"a": 1}, {"r": 1}, edges, conflicts)

    def test_edge_limit(self):
        g = GeneralConflictInstance({"a": 30}, {f"r{i}": 1 for i in range(30)},
                                    [("a", f"r{i}", 1.0) for i in range(30)])
        with pytest.raises(InstanceTooLarge):
            solve_bmatching_with_conflicts(g)

    def test_conversion_needs_unit_credits(self):
        inst = expand_seats(Instance([Student("s", 2)], [Course("a", TimeInterval(0, 1), credits=2)]))
        with pytest.raises(NonUnitCredits):
            to_conflict_instance(inst)

    @given(st.integers(0, 10_000), st.sampled_from(KINDS))
    def test_equivalent_to_course_allocation(self, seed, kind):
        inst = small(seed, kind, n_range=(1, 3), m_range=(1, 6))
        g = to_conflict_instance(inst)
        result = solve_bmatching_with_conflicts(g)
        assert math.isclose(result.value, opt_social_welfare(inst).value)
        assert validate_allocation(inst, result.allocation).valid
