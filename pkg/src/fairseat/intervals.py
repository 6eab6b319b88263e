"""Interval-graph primitives shared by the allocators and auditors."""

from __future__ import annotations

from typing import Iterable, Sequence

from .model import Course, overlaps


def end_order_key(course: Course):
    return (course.end, course.start, course.id)


def sort_courses_by_end(courses: Iterable[Course]) -> list:
    """Canonical order: end time, then start time, then id (all ascending).

    Returns the ids in order.
    """
    return [c.id for c in sorted(courses, key=end_order_key)]


def sorted_by_end(courses: Iterable[Course]) -> list:
    return sorted(courses, key=end_order_key)


def conflict_set(course: Course, courses: Iterable[Course]) -> set:
    return {c.id for c in courses if c.id != course.id and overlaps(c.interval, course.interval)}


def conflicts_with_any(course: Course, others: Iterable[Course]) -> bool:
    return any(overlaps(course.interval, o.interval) for o in others)


def greedy_mis(courses: Sequence[Course]) -> list:
    """Earliest-finish greedy; returns the selected courses in end order."""
    chosen = []
    free_from = None
    for c in sorted_by_end(courses):
        if free_from is None or c.start >= free_from:
            chosen.append(c)
            free_from = c.end
    return chosen


def interval_mis(courses: Iterable[Course]) -> set:
    """Maximum set of pairwise non-overlapping courses.

    The earliest-finish greedy is exact on interval graphs; ties follow the
    canonical order so the selection is reproducible.
    """
    return {c.id for c in greedy_mis(list(courses))}
