from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairseat.errors import AlreadyExpanded, NotExpanded, SemanticError
from fairseat.fixtures import fixture_a
from fairseat.model import (
    Allocation,
    Binary,
    Course,
    General,
    Instance,
    Student,
    TimeInterval,
    Uniform,
    ViolationKind,
    expand_seats,
    instance_stats,
    overlaps,
    validate_allocation,
)

intervals = st.tuples(st.integers(0, 30), st.integers(1, 10)).map(lambda t: TimeInterval(t[0], t[0] + t[1]))


class TestTimeInterval:
    def test_duration(self):
        assert TimeInterval(3, 7).duration == 4

    @pytest.mark.parametrize("start,end", [(2, 2), (5, 1), (-1, 3)])
    def test_rejects_bad_bounds(self, start, end):
        with pytest.raises(SemanticError):
            TimeInterval(start, end)


class TestOverlaps:
    @pytest.mark.parametrize("a,b,expected", [
        ((0, 2), (1, 3), True),
        ((0, 2), (2, 4), False),  # touching endpoints share no time step
        ((0, 5), (1, 2), True),
        ((3, 4), (0, 3), False),
        ((0, 1), (0, 1), True),
    ])
    def test_examples(self, a, b, expected):
        assert overlaps(TimeInterval(*a), TimeInterval(*b)) is expected

    @given(intervals, intervals)
    def test_symmetric(self, a, b):
        assert overlaps(a, b) == overlaps(b, a)

    @given(intervals, intervals)
    def test_matches_shared_time_steps(self, a, b):
        shared = set(range(a.start, a.end)) & set(range(b.start, b.end))
        assert overlaps(a, b) == bool(shared)

    @given(intervals)
    def test_reflexive(self, a):
        assert overlaps(a, a)


class TestCourseAndStudent:
    def test_origin_defaults_to_id(self):
        assert Course("x", TimeInterval(0, 1)).origin_id == "x"

    @pytest.mark.parametrize("kw", [{"credits": 0}, {"seats": 0}])
    def test_positive_fields(self, kw):
        with pytest.raises(SemanticError):
            Course("x", TimeInterval(0, 1), **kw)

    def test_negative_cap(self):
        with pytest.raises(SemanticError):
            Student("s", -1)

    def test_general_rejects_negative(self):
        with pytest.raises(SemanticError):
            General({"a": -1})


class TestInstance:
    def test_duplicate_ids(self):
        c = Course("a", TimeInterval(0, 1))
        with pytest.raises(SemanticError):
            Instance([Student("s", 1)], [c, c])
        with pytest.raises(SemanticError):
            Instance([Student("s", 1), Student("s", 2)], [c])

    def test_needs_a_student(self):
        with pytest.raises(SemanticError):
            Instance([], [])

    def test_dangling_desire(self):
        with pytest.raises(SemanticError):
            Instance([Student("s", 1, Binary({"ghost"}))], [Course("a", TimeInterval(0, 1))])

    def test_values_follow_origin(self):
        inst = expand_seats(Instance([Student("s", 1, General({"a": 3}))],
                                     [Course("a", TimeInterval(0, 1), seats=2)]))
        assert [inst.value(inst.students[0], c) for c in inst.courses] == [3, 3]


class TestExpandSeats:
    def test_fixture_a_with_two_seats(self):
        inst = fixture_a(c2_seats=2)
        assert inst.m == 6
        assert all(c.seats == 1 for c in inst.courses)
        copies = [c for c in inst.courses if c.origin_id == "C2"]
        assert [c.id for c in copies] == ["C2#0", "C2#1"]
        assert {c.interval for c in copies} == {TimeInterval(1, 6)}

    def test_single_seat_keeps_id(self):
        assert [c.id for c in fixture_a().courses] == ["C1", "C2", "C3", "C4", "C5"]

    def test_twice_is_an_error(self):
        with pytest.raises(AlreadyExpanded):
            expand_seats(fixture_a())

    @given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
    def test_seat_count_preserved(self, seats):
        courses = [Course(f"c{k}", TimeInterval(k, k + 1), seats=s) for k, s in enumerate(seats)]
        inst = expand_seats(Instance([Student("s", 1)], courses))
        assert inst.m == sum(seats)
        assert len({c.id for c in inst.courses}) == inst.m


def _independent_violations(inst, assignments):
    """Re-derive the violation kinds straight from the definitions."""
    kinds = set()
    courses = inst.course_by_id
    caps = {s.id: s.credit_cap for s in inst.students}
    seen = {}
    for sid, cids in assignments.items():
        if sid not in caps or any(c not in courses for c in cids):
            kinds.add(ViolationKind.UNKNOWN_ID)
        for c in cids:
            seen[c] = seen.get(c, 0) + 1
        if sid not in caps:
            continue  # nothing to check a stranger's bundle against
        known = [courses[c] for c in cids if c in courses]
        if sum(c.credits for c in known) > caps[sid]:
            kinds.add(ViolationKind.CREDIT_CAP_EXCEEDED)
        for i, a in enumerate(known):
            for b in known[i + 1:]:
                if set(range(a.start, a.end)) & set(range(b.start, b.end)):
                    kinds.add(ViolationKind.CONFLICT_WITHIN_STUDENT)
    if any(v > 1 for v in seen.values()):
        kinds.add(ViolationKind.DUPLICATE_ASSIGNMENT)
    return kinds


class TestValidate:
    def test_requires_expansion(self):
        with pytest.raises(NotExpanded):
            validate_allocation(fixture_a(expanded=False), Allocation({}))

    def test_valid(self, fa):
        alloc = Allocation.from_assignments(fa, {"s1": ["C1", "C5"], "s2": ["C2"], "s3": ["C3"]})
        assert validate_allocation(fa, alloc).valid
        assert alloc.charity == {"C4"}

    def test_conflict(self, fa):
        alloc = Allocation.from_assignments(fa, {"s1": ["C1", "C2"]})
        assert validate_allocation(fa, alloc).kinds() == {ViolationKind.CONFLICT_WITHIN_STUDENT}

    def test_cap(self):
        inst = expand_seats(Instance([Student("s", 1)], [Course("a", TimeInterval(0, 1)),
                                                           Course("b", TimeInterval(1, 2))]))
        alloc = Allocation.from_assignments(inst, {"s": ["a", "b"]})
        assert validate_allocation(inst, alloc).kinds() == {ViolationKind.CREDIT_CAP_EXCEEDED}

    def test_duplicate_and_unknown(self, fa):
        alloc = Allocation({"s1": frozenset({"C1"}), "s2": frozenset({"C1", "Z"}), "ghost": frozenset()})
        assert validate_allocation(fa, alloc).kinds() == {
            ViolationKind.DUPLICATE_ASSIGNMENT, ViolationKind.UNKNOWN_ID}

    def test_charity_overlap_is_duplicate(self, fa):
        alloc = Allocation({"s1": frozenset({"C1"})}, frozenset({"C1"}))
        assert ViolationKind.DUPLICATE_ASSIGNMENT in validate_allocation(fa, alloc).kinds()

    @given(st.dictionaries(st.sampled_from(["s1", "s2", "s3", "sX"]),
                           st.lists(st.sampled_from(["C1", "C2", "C3", "C4", "C5", "CX"]), unique=True,
                                    max_size=4), max_size=4))
    def test_agrees_with_definitions(self, raw):
        fa = fixture_a()
        alloc = Allocation({k: frozenset(v) for k, v in raw.items()})
        assert validate_allocation(fa, alloc).kinds() == _independent_violations(fa, raw)


class TestInstanceStats:
    def test_fixture_a(self, fa):
        stats = instance_stats(fa)
        assert stats.total_utility_U == 5
        assert stats.maxmin_upper_bound == 1
        assert stats.duration_ratio_c == Fraction(5, 2)

    def test_fraction_ratio(self):
        inst = expand_seats(Instance([Student("s", 1)], [Course("a", TimeInterval(0, 2)),
                                                           Course("b", TimeInterval(0, 3))]))
        assert instance_stats(inst).duration_ratio_c == Fraction(3, 2)

    def test_no_courses(self):
        stats = instance_stats(expand_seats(Instance([Student("s", 1)], [])))
        assert (stats.total_utility_U, stats.duration_ratio_c, stats.maxmin_upper_bound) == (0, 1, 0)


def test_utility_kinds():
    assert Uniform().value("x") == 1
    assert Binary({"x"}).value("x") == 1 and Binary({"x"}).value("y") == 0
    assert General({"x": 2.5}).value("x") == 2.5 and General({}).value("x") == 0
