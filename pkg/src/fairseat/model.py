"""Problem instances, allocations and feasibility checking.

Times are integer steps and every interval is half-open, so a course ending
at 3 and another starting at 3 can share a schedule.  Utilities are looked up
through a course's ``origin_id``, which means every seat copy produced by
:func:`expand_seats` is worth the same to a given student.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Union

from .errors import AlreadyExpanded, NotExpanded, SemanticError


@dataclass(frozen=True, order=True)
class TimeInterval:
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0:
            raise SemanticError(f"interval start {self.start} is negative")
        if self.start >= self.end:
            raise SemanticError(f"interval [{self.start}, {self.end}) has start >= end")

    @property
    def duration(self) -> int:
        return self.end - self.start


def overlaps(a: TimeInterval, b: TimeInterval) -> bool:
    """Strict overlap test; touching endpoints do not conflict."""
    return a.start < b.end and b.start < a.end


@dataclass(frozen=True)
class Course:
    id: str
    interval: TimeInterval
    credits: int = 1
    seats: int = 1
    origin_id: str = None

    def __post_init__(self):
        if self.credits < 1:
            raise SemanticError(f"course {self.id!r}: credits must be >= 1")
        if self.seats < 1:
            raise SemanticError(f"course {self.id!r}: seats must be >= 1")
        if self.origin_id is None:
            object.__setattr__(self, "origin_id", self.id)

    @property
    def start(self) -> int:
        return self.interval.start

    @property
    def end(self) -> int:
        return self.interval.end

    @property
    def duration(self) -> int:
        return self.interval.duration


# Utility specifications.  Each exposes ``value(origin_id)``.


@dataclass(frozen=True)
class Uniform:
    kind = "uniform"

    def value(self, origin_id: str) -> int:
        return 1


@dataclass(frozen=True)
class Binary:
    desired: frozenset = frozenset()
    kind = "binary"

    def __post_init__(self):
        object.__setattr__(self, "desired", frozenset(self.desired))

    def value(self, origin_id: str) -> int:
        return 1 if origin_id in self.desired else 0


@dataclass(frozen=True)
class General:
    values: Mapping[str, float] = field(default_factory=dict)
    kind = "general"

    def __post_init__(self):
        for key, v in self.values.items():
            if not math.isfinite(v) or v < 0:
                raise SemanticError(f"utility for {key!r} must be finite and >= 0, got {v}")
        object.__setattr__(self, "values", dict(self.values))

    def __hash__(self):
        return hash(tuple(sorted(self.values.items())))

    def value(self, origin_id: str) -> float:
        return self.values.get(origin_id, 0)


UtilitySpec = Union[Uniform, Binary, General]


def is_binary_valued(utility: UtilitySpec) -> bool:
    if isinstance(utility, General):
        return all(v in (0, 1) for v in utility.values.values())
    return True


@dataclass(frozen=True)
class Student:
    id: str
    credit_cap: int
    utility: UtilitySpec = Uniform()

    def __post_init__(self):
        if self.credit_cap < 0:
            raise SemanticError(f"student {self.id!r}: credit cap must be >= 0")


@dataclass(frozen=True)
class Instance:
    students: tuple
    courses: tuple = ()
    expanded: bool = False

    def __post_init__(self):
        object.__setattr__(self, "students", tuple(self.students))
        object.__setattr__(self, "courses", tuple(self.courses))
        if not self.students:
            raise SemanticError("an instance needs at least one student")
        _require_distinct("student", (s.id for s in self.students))
        _require_distinct("course", (c.id for c in self.courses))
        known = {c.origin_id for c in self.courses}
        for s in self.students:
            refs = ()
            if isinstance(s.utility, Binary):
                refs = s.utility.desired
            elif isinstance(s.utility, General):
                refs = s.utility.values
            dangling = sorted(set(refs) - known)
            if dangling:
                raise SemanticError(f"student {s.id!r} references unknown courses {dangling}")

    @property
    def n(self) -> int:
        return len(self.students)

    @property
    def m(self) -> int:
        return len(self.courses)

    @cached_property
    def course_by_id(self) -> dict:
        return {c.id: c for c in self.courses}

    @cached_property
    def student_by_id(self) -> dict:
        return {s.id: s for s in self.students}

    @cached_property
    def student_index(self) -> dict:
        return {s.id: k for k, s in enumerate(self.students)}

    def value(self, student: Student, course: Course) -> float:
        return student.utility.value(course.origin_id)

    def bundle_value(self, student: Student, course_ids: Iterable[str]) -> float:
        return math.fsum(self.value(student, self.course_by_id[c]) for c in course_ids)

    def require_expanded(self):
        if not self.expanded:
            raise NotExpanded("call expand_seats() on the instance first")


def _require_distinct(what, ids):
    seen = set()
    for i in ids:
        if i in seen:
            raise SemanticError(f"duplicate {what} id {i!r}")
        seen.add(i)


def expand_seats(instance: Instance) -> Instance:
    """Replace every course with ``seats`` single-seat copies.

    Copies of a multi-seat course ``X`` are named ``X#0``, ``X#1``, ... and
    keep ``X`` as their origin.  Single-seat courses keep their id.
    """
    if instance.expanded:
        raise AlreadyExpanded("instance has already been seat-expanded")
    courses = []
    for c in instance.courses:
        if c.seats == 1:
            courses.append(c)
            continue
        for k in range(c.seats):
            courses.append(replace(c, id=f"{c.id}#{k}", seats=1, origin_id=c.origin_id))
    return Instance(instance.students, courses, expanded=True)


@dataclass(frozen=True)
class Allocation:
    """Per-student course sets; ``charity`` holds everything unassigned."""

    assignments: Mapping[str, frozenset]
    charity: frozenset = frozenset()

    @classmethod
    def from_assignments(cls, instance: Instance, assignments: Mapping[str, Iterable[str]]):
        bundles = {s.id: frozenset(assignments.get(s.id, ())) for s in instance.students}
        for sid in assignments:
            if sid not in bundles:
                bundles[sid] = frozenset(assignments[sid])
        taken = set().union(*bundles.values()) if bundles else set()
        charity = frozenset(c.id for c in instance.courses if c.id not in taken)
        return cls(bundles, charity)

    @classmethod
    def empty(cls, instance: Instance):
        return cls.from_assignments(instance, {})

    def bundle(self, student_id: str) -> frozenset:
        return self.assignments.get(student_id, frozenset())

    def owner_of(self) -> dict:
        return {c: sid for sid, b in self.assignments.items() for c in b}

    def __hash__(self):
        return hash((tuple(sorted((k, tuple(sorted(v))) for k, v in self.assignments.items())), self.charity))


class ViolationKind(enum.Enum):
    CONFLICT_WITHIN_STUDENT = "ConflictWithinStudent"
    CREDIT_CAP_EXCEEDED = "CreditCapExceeded"
    DUPLICATE_ASSIGNMENT = "DuplicateAssignment"
    UNKNOWN_ID = "UnknownId"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def kinds(self) -> set:
        return {v.kind for v in self.violations}


def validate_allocation(instance: Instance, alloc: Allocation) -> ValidationReport:
    instance.require_expanded()
    found = []
    courses = instance.course_by_id
    holders = {}
    for sid in sorted(alloc.assignments, key=lambda s: instance.student_index.get(s, len(instance.students))):
        student = instance.student_by_id.get(sid)
        if student is None:
            found.append(Violation(ViolationKind.UNKNOWN_ID, f"student {sid!r}"))
            for cid in sorted(alloc.assignments[sid]):
                holders.setdefault(cid, []).append(sid)
            continue
        bundle = sorted(alloc.assignments[sid])
        known = []
        for cid in bundle:
            holders.setdefault(cid, []).append(sid)
            if cid not in courses:
                found.append(Violation(ViolationKind.UNKNOWN_ID, f"course {cid!r} held by {sid!r}"))
                continue
            known.append(courses[cid])
        credits = sum(c.credits for c in known)
        if credits > student.credit_cap:
            found.append(Violation(
                ViolationKind.CREDIT_CAP_EXCEEDED,
                f"{sid!r} holds {credits} credits, cap {student.credit_cap}"))
        for a_pos, a in enumerate(known):
            for b in known[a_pos + 1:]:
                if overlaps(a.interval, b.interval):
                    found.append(Violation(
                        ViolationKind.CONFLICT_WITHIN_STUDENT, f"{sid!r} holds {a.id!r} and {b.id!r}"))
    for cid, sids in holders.items():
        if len(sids) > 1:
            found.append(Violation(ViolationKind.DUPLICATE_ASSIGNMENT, f"{cid!r} held by {sids}"))
    for cid in sorted(alloc.charity):
        if cid not in courses:
            found.append(Violation(ViolationKind.UNKNOWN_ID, f"charity course {cid!r}"))
        elif cid in holders:
            found.append(Violation(ViolationKind.DUPLICATE_ASSIGNMENT, f"{cid!r} both assigned and in charity"))
    return ValidationReport(tuple(found))


@dataclass(frozen=True)
class InstanceStats:
    total_utility_U: int
    duration_ratio_c: Fraction
    maxmin_upper_bound: int


def instance_stats(instance: Instance) -> InstanceStats:
    """Course count ``U``, duration ratio ``c`` and the ``floor(U/n)`` cap.

    ``U`` counts courses, i.e. total utility when every course is worth 1.
    With no courses the duration ratio is undefined and reported as 1.
    """
    instance.require_expanded()
    u = instance.m
    if instance.courses:
        durations = [c.duration for c in instance.courses]
        ratio = Fraction(max(durations), min(durations))
    else:
        ratio = Fraction(1)
    return InstanceStats(u, ratio, u // instance.n)
