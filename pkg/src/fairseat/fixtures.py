"""Small hand-built instances used throughout the tests and demos.

``fixture_a`` reconstructs the conflict pattern of a three-student,
five-course example in which every pair of courses overlaps except the first
and the last.  Credit caps are set to 2; they are a choice, not data.
"""

from .model import Binary, Course, Instance, Student, TimeInterval, Uniform, expand_seats


def _course(cid, start, end, **kw):
    return Course(cid, TimeInterval(start, end), **kw)


def fixture_a(expanded=True, c2_seats=1) -> Instance:
    students = [Student(f"s{k}", 2, Uniform()) for k in (1, 2, 3)]
    courses = [
        _course("C1", 0, 2),
        _course("C2", 1, 6, seats=c2_seats),
        _course("C3", 1, 6),
        _course("C4", 1, 6),
        _course("C5", 3, 5),
    ]
    inst = Instance(students, courses)
    return expand_seats(inst) if expanded else inst


def fixture_b(expanded=True) -> Instance:
    students = [
        Student("s1", 2, Binary({"a", "c"})),
        Student("s2", 2, Binary({"b", "c"})),
    ]
    courses = [_course("a", 0, 1), _course("b", 0, 1), _course("c", 1, 2)]
    inst = Instance(students, courses)
    return expand_seats(inst) if expanded else inst


def fixture_c(expanded=True) -> Instance:
    students = [Student("s1", 1, Uniform()), Student("s2", 1, Uniform())]
    courses = [_course(f"x{k}", 0, 1) for k in range(3)]
    inst = Instance(students, courses)
    return expand_seats(inst) if expanded else inst
