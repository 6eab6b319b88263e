"""Seeded synthetic instances.

The eight ``example-K`` presets are made-up workloads of increasing size.
They are not any published benchmark; the larger ones deliberately exceed
the exact oracle's size guard.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .model import Binary, Course, General, Instance, Student, TimeInterval, Uniform

UTILITY_KINDS = ("uniform", "binary", "general")


@dataclass(frozen=True)
class GenParams:
    n_students: int
    n_courses: int
    seed: int = 0
    slot_grid: int = 50
    duration_range: tuple = (1, 5)
    seats_range: tuple = (1, 1)
    cap_range: tuple = (1, 3)
    credits_range: tuple = (1, 1)
    utility_kind: str = "uniform"
    desire_probability: float = 0.5
    value_range: tuple = (0, 5)

    def validate(self):
        if self.n_students < 1 or self.n_courses < 1:
            raise InvalidParams("need at least one student and one course")
        for name in ("duration_range", "seats_range", "cap_range", "credits_range", "value_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise InvalidParams(f"{name} is empty: {lo} > {hi}")
        if self.duration_range[0] < 1 or self.seats_range[0] < 1 or self.credits_range[0] < 1:
            raise InvalidParams("durations, seats and credits must be >= 1")
        if self.cap_range[0] < 0 or self.value_range[0] < 0:
            raise InvalidParams("caps and utility values must be >= 0")
        if self.duration_range[1] > self.slot_grid:
            raise InvalidParams("longest duration does not fit in the slot grid")
        if self.utility_kind not in UTILITY_KINDS:
            raise InvalidParams(f"utility_kind must be one of {UTILITY_KINDS}")
        if not 0 <= self.desire_probability <= 1:
            raise InvalidParams("desire_probability must lie in [0, 1]")


def _draw(rng, bounds):
    return int(rng.integers(bounds[0], bounds[1] + 1))


def generate_instance(params: GenParams) -> Instance:
    """Random instance, identical for identical parameters.  Not expanded."""
    params.validate()
    rng = np.random.default_rng(params.seed)
    courses = []
    for k in range(params.n_courses):
        duration = _draw(rng, params.duration_range)
        start = int(rng.integers(0, params.slot_grid - duration + 1))
        seats = _draw(rng, params.seats_range)
        credits = _draw(rng, params.credits_range)
        courses.append(Course(f"c{k:02d}", TimeInterval(start, start + duration), credits, seats))
    students = []
    for k in range(params.n_students):
        cap = _draw(rng, params.cap_range)
        if params.utility_kind == "binary":
            draws = rng.random(len(courses))
            utility = Binary(frozenset(c.id for c, x in zip(courses, draws) if x < params.desire_probability))
        elif params.utility_kind == "general":
            utility = General({c.id: _draw(rng, params.value_range) for c in courses})
        else:
            utility = Uniform()
        students.append(Student(f"s{k}", cap, utility))
    return Instance(students, courses)


PRESETS = {
    "example-1": GenParams(3, 6, seed=101, slot_grid=20, duration_range=(2, 4), cap_range=(2, 3),
                           utility_kind="binary", desire_probability=0.6),
    "example-2": GenParams(3, 5, seed=102, slot_grid=12, duration_range=(2, 5), seats_range=(1, 2),
                           cap_range=(1, 3), utility_kind="binary", desire_probability=0.5),
    "example-3": GenParams(4, 8, seed=103, slot_grid=20, duration_range=(1, 3), cap_range=(2, 4),
                           utility_kind="binary", desire_probability=0.5),
    "example-4": GenParams(4, 6, seed=104, slot_grid=10, duration_range=(2, 4), cap_range=(1, 2),
                           utility_kind="binary", desire_probability=0.4),
    "example-5": GenParams(4, 7, seed=105, slot_grid=15, duration_range=(2, 6), cap_range=(1, 3),
                           utility_kind="binary", desire_probability=0.5),
    "example-6": GenParams(3, 12, seed=106, slot_grid=24, duration_range=(2, 2), cap_range=(4, 4),
                           utility_kind="binary", desire_probability=0.8),
    "example-7": GenParams(8, 30, seed=107, slot_grid=40, duration_range=(2, 4), seats_range=(1, 3),
                           cap_range=(2, 5), utility_kind="binary", desire_probability=0.4),
    "example-8": GenParams(20, 60, seed=108, slot_grid=60, duration_range=(2, 6), seats_range=(1, 4),
                           cap_range=(2, 5), utility_kind="binary", desire_probability=0.3),
}


def preset(name: str) -> GenParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidParams(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
