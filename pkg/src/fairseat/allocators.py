"""Allocation algorithms.

Four greedy/round-robin allocators plus an exact dynamic program for a small
number of students.  Every "break ties arbitrarily" point is resolved by the
student's position in ``instance.students`` and by the canonical course order
of :func:`fairseat.intervals.sort_courses_by_end`, so each algorithm is a
deterministic function of its instance.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import (
    AugmentationLimitExceeded,
    InvariantBreach,
    NonBinaryUtilities,
    NonUnitCredits,
    StateBudgetExceeded,
    TooManyStudents,
)
from .intervals import conflicts_with_any, greedy_mis, sorted_by_end
from .model import Allocation, Instance, is_binary_valued, overlaps, validate_allocation


def _require_binary(instance: Instance):
    for s in instance.students:
        if not is_binary_valued(s.utility):
            raise NonBinaryUtilities(f"student {s.id!r} has non-binary utilities")


def _require_unit_credits(instance: Instance):
    bad = [c.id for c in instance.courses if c.credits != 1]
    if bad:
        raise NonUnitCredits(f"courses with credits != 1: {bad[:5]}")


def _round_robin_pass(instance: Instance, desired_only: bool) -> Allocation:
    bundles = {s.id: [] for s in instance.students}
    credits = {s.id: 0 for s in instance.students}
    for course in sorted_by_end(instance.courses):
        best = None
        for s in instance.students:
            if desired_only and instance.value(s, course) <= 0:
                continue
            if credits[s.id] + course.credits > s.credit_cap:
                continue
            if conflicts_with_any(course, bundles[s.id]):
                continue
            # strict < keeps the lowest-index student among equal loads
            if best is None or len(bundles[s.id]) < len(bundles[best]):
                best = s.id
        if best is not None:
            bundles[best].append(course)
            credits[best] += course.credits
    return Allocation.from_assignments(instance, {sid: [c.id for c in b] for sid, b in bundles.items()})


def round_robin(instance: Instance) -> Allocation:
    """Earliest-finish round robin for unit utilities.

    Utilities are ignored.  Each course, in end-time order, goes to the
    least-loaded student who still has credit room and no clashing course.
    """
    instance.require_expanded()
    return _round_robin_pass(instance, desired_only=False)


def ef1cc_round_robin(instance: Instance) -> Allocation:
    """Round robin restricted to students who desire the course.

    Under binary utilities and uniform course credits the result is EF1 and
    EF1 with respect to the charity (unassigned) courses.
    """
    instance.require_expanded()
    _require_binary(instance)
    return _round_robin_pass(instance, desired_only=True)


def mis_round_robin(instance: Instance) -> Allocation:
    """Give each student, largest credit cap first, a maximum independent set
    of the desired courses still available, cut to the first ``credit_cap``
    courses by end time.
    """
    instance.require_expanded()
    _require_binary(instance)
    _require_unit_credits(instance)
    index = instance.student_index
    order = sorted(instance.students, key=lambda s: (-s.credit_cap, index[s.id]))
    remaining = list(instance.courses)
    bundles = {}
    for s in order:
        wanted = [c for c in remaining if instance.value(s, c) > 0]
        chosen = greedy_mis(wanted)[: s.credit_cap]
        bundles[s.id] = [c.id for c in chosen]
        taken = set(bundles[s.id])
        remaining = [c for c in remaining if c.id not in taken]
    return Allocation.from_assignments(instance, bundles)


# -- max-min augmenting paths -------------------------------------------------

CONFLICT_SWAP = "ConflictSwap"
DUMMY_ENTRY = "DummyEntry"


@dataclass(frozen=True)
class Dummy:
    """Placeholder node standing for an empty slot of ``student``."""

    student: str


@dataclass(frozen=True)
class Edge:
    source: object  # course id or Dummy
    target: str
    reason: str


@dataclass(frozen=True)
class AugmentGraph:
    nodes: tuple
    edges: tuple
    processed: frozenset

    def successors(self) -> dict:
        out = {}
        for e in self.edges:
            out.setdefault(e.source, []).append(e.target)
        return out


def _bundles_of(instance: Instance, alloc: Allocation) -> dict:
    return {s.id: set(alloc.bundle(s.id)) for s in instance.students}


def _build_graph(instance: Instance, bundles: dict, root: str) -> AugmentGraph:
    courses = instance.course_by_id
    students = instance.students
    load = {sid: len(b) for sid, b in bundles.items()}
    credits = {sid: sum(courses[c].credits for c in b) for sid, b in bundles.items()}

    nodes = {}
    edges = []
    seen = set()

    def add_edge(src, dst, reason):
        if (src, dst) in seen:
            return
        seen.add((src, dst))
        nodes.setdefault(src, None)
        nodes.setdefault(dst, None)
        edges.append(Edge(src, dst, reason))

    queue = deque([root])
    processed = set()
    while queue:
        x = queue.popleft()
        if x in processed:
            continue
        for cid in sorted(bundles[x], key=lambda c: (courses[c].end, courses[c].start, c)):
            course = courses[cid]
            nodes.setdefault(cid, None)
            for b in students:
                if b.id == x or instance.value(b, course) <= 0:
                    continue
                held = [courses[h] for h in bundles[b.id]]
                clashes = [h for h in held if overlaps(h.interval, course.interval)]
                if (b.id not in processed and load[b.id] < load[x] and len(clashes) == 1
                        and credits[b.id] - clashes[0].credits + course.credits <= b.credit_cap):
                    add_edge(clashes[0].id, cid, CONFLICT_SWAP)
                    queue.append(b.id)
                if (not clashes and load[b.id] <= load[x]
                        and credits[b.id] + course.credits <= b.credit_cap):
                    add_edge(Dummy(b.id), cid, DUMMY_ENTRY)
                    queue.append(b.id)
        processed.add(x)
    return AugmentGraph(tuple(nodes), tuple(edges), frozenset(processed))


def build_augment_graph(instance: Instance, alloc: Allocation, student_id: str) -> AugmentGraph:
    """Exchange graph rooted at ``student_id``, built by breadth-first
    expansion over students."""
    return _build_graph(instance, _bundles_of(instance, alloc), student_id)


def _shortest_path(instance: Instance, bundles: dict, root: str) -> Optional[list]:
    graph = _build_graph(instance, bundles, root)
    succ = graph.successors()
    root_load = len(bundles[root])
    # only students strictly lighter than the root may absorb a course
    sources = [n for n in graph.nodes
               if isinstance(n, Dummy) and len(bundles[n.student]) < root_load]
    targets = bundles[root]
    parent = {s: None for s in sources}
    frontier = deque(sources)
    while frontier:
        node = frontier.popleft()
        if node in targets:
            path = [node]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for nxt in succ.get(node, ()):
            if nxt not in parent:
                parent[nxt] = node
                frontier.append(nxt)
    return None


def find_augmenting_path(instance: Instance, alloc: Allocation, student_id: str) -> Optional[list]:
    """Shortest path ``[Dummy(b), c1, ..., ck]`` ending at a course of
    ``student_id``, or None."""
    return _shortest_path(instance, _bundles_of(instance, alloc), student_id)


def _apply_path(instance: Instance, bundles: dict, path: list):
    courses = instance.course_by_id
    owner = {c: sid for sid, b in bundles.items() for c in b}
    receiver = path[0].student
    for cid in path[1:]:
        giver = owner[cid]
        bundles[giver].discard(cid)
        held = [courses[h] for h in bundles[receiver]]
        student = instance.student_by_id[receiver]
        if (conflicts_with_any(courses[cid], held)
                or sum(h.credits for h in held) + courses[cid].credits > student.credit_cap):
            raise InvariantBreach(f"moving {cid!r} to {receiver!r} breaks feasibility")
        bundles[receiver].add(cid)
        receiver = giver


def apply_augmenting_path(instance: Instance, alloc: Allocation, path: list) -> Allocation:
    """Shift every course on ``path`` to the owner of its predecessor.

    Moves run from the dummy end so that each course lands in a slot that
    was just vacated.
    """
    bundles = _bundles_of(instance, alloc)
    _apply_path(instance, bundles, path)
    return Allocation.from_assignments(instance, bundles)


def maxmin_augmenting(instance: Instance, check=True) -> Allocation:
    """Greedy desired-course assignment followed by exchange-path balancing.

    After each course is handed to the least-loaded eligible student ``i``,
    courses are shifted along shortest exchange paths that move one course
    off ``i`` and onto a student holding fewer courses than ``i``, until no
    such path remains.  Each exchange lowers ``i``'s load by one and ``i``
    gains nothing meanwhile, so at most ``len(A_i)`` exchanges follow a
    single assignment.  ``check`` re-validates the whole allocation after every
    exchange.
    """
    instance.require_expanded()
    _require_binary(instance)
    bundles = {s.id: set() for s in instance.students}
    courses = instance.course_by_id
    limit = instance.n * instance.m
    for course in sorted_by_end(instance.courses):
        best = None
        for s in instance.students:
            held = [courses[h] for h in bundles[s.id]]
            if (instance.value(s, course) <= 0
                    or sum(h.credits for h in held) + course.credits > s.credit_cap
                    or conflicts_with_any(course, held)):
                continue
            if best is None or len(bundles[s.id]) < len(bundles[best]):
                best = s.id
        if best is None:
            continue
        bundles[best].add(course.id)
        steps = 0
        while (path := _shortest_path(instance, bundles, best)) is not None:
            steps += 1
            if steps > limit:
                raise AugmentationLimitExceeded(
                    f"more than {limit} exchanges after assigning {course.id!r}")
            _apply_path(instance, bundles, path)
            if check:
                report = validate_allocation(instance, Allocation.from_assignments(instance, bundles))
                if not report.valid:
                    raise InvariantBreach(f"exchange produced an invalid allocation: {report.violations}")
    return Allocation.from_assignments(instance, bundles)


# -- exact dynamic program -------------------------------------------------------


def dp_exact_small(instance: Instance, max_states: int = 2_000_000, max_students: int = 3):
    """Exact maximum social welfare for a handful of students.

    Memoised recursion over (course index, remaining credits per student,
    earliest free time per student) with courses in start-time order.
    Returns ``(value, allocation)``.
    """
    instance.require_expanded()
    if instance.n > max_students:
        raise TooManyStudents(f"{instance.n} students, limit {max_students}")
    students = instance.students
    order = sorted(instance.courses, key=lambda c: (c.start, c.end, c.id))
    m = len(order)
    vals = [[instance.value(s, c) for s in students] for c in order]
    memo = {}

    def best(j, credits_left, free_at):
        if j == m:
            return 0
        key = (j, credits_left, free_at)
        hit = memo.get(key)
        if hit is not None:
            return hit
        c = order[j]
        value = best(j + 1, credits_left, free_at)
        for i in range(len(students)):
            if c.start >= free_at[i] and c.credits <= credits_left[i]:
                cand = vals[j][i] + best(
                    j + 1,
                    credits_left[:i] + (credits_left[i] - c.credits,) + credits_left[i + 1:],
                    free_at[:i] + (c.end,) + free_at[i + 1:],
                )
                if cand > value:
                    value = cand
        if len(memo) >= max_states:
            raise StateBudgetExceeded(f"dynamic program exceeded {max_states} states")
        memo[key] = value
        return value

    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * m + 200))
    try:
        credits_left = tuple(s.credit_cap for s in students)
        free_at = (0,) * len(students)
        total = best(0, credits_left, free_at)

        bundles = {s.id: [] for s in students}
        for j, c in enumerate(order):
            target = best(j, credits_left, free_at)
            if best(j + 1, credits_left, free_at) == target:
                continue
            for i, s in enumerate(students):
                if c.start >= free_at[i] and c.credits <= credits_left[i]:
                    nxt_credits = credits_left[:i] + (credits_left[i] - c.credits,) + credits_left[i + 1:]
                    nxt_free = free_at[:i] + (c.end,) + free_at[i + 1:]
                    if vals[j][i] + best(j + 1, nxt_credits, nxt_free) == target:
                        bundles[s.id].append(c.id)
                        credits_left, free_at = nxt_credits, nxt_free
                        break
            else:
                raise InvariantBreach("dynamic program backtracking found no matching transition")
    finally:
        sys.setrecursionlimit(old_limit)
    return total, Allocation.from_assignments(instance, bundles)
