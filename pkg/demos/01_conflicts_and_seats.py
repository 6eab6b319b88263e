"""Building an instance by hand: intervals, seat copies and feasibility.

Run: python3 demos/01_conflicts_and_seats.py
"""

from fairseat import Allocation, Course, Instance, Student, TimeInterval, Uniform, expand_seats, overlaps
from fairseat.intervals import conflict_set, interval_mis, sort_courses_by_end
from fairseat.model import instance_stats, validate_allocation

# Intervals are half-open: a class ending at 10 and one starting at 10 do not clash.
print("[9,10) vs [10,11) overlap?", overlaps(TimeInterval(9, 10), TimeInterval(10, 11)))
print("[9,11) vs [10,12) overlap?", overlaps(TimeInterval(9, 11), TimeInterval(10, 12)))

courses = [
    Course("algebra", TimeInterval(9, 11)),
    Course("biology", TimeInterval(10, 12), seats=2),
    Course("chemistry", TimeInterval(11, 13)),
    Course("drama", TimeInterval(13, 14)),
]
students = [Student("ana", 2, Uniform()), Student("ben", 2, Uniform())]
raw = Instance(students, courses)

# Every seat becomes its own single-seat course; both biology copies share an origin.
inst = expand_seats(raw)
print("\nseat copies:", [c.id for c in inst.courses])
print("canonical order:", sort_courses_by_end(inst.courses))
print("clashes with algebra:", sorted(conflict_set(inst.course_by_id["algebra"], inst.courses)))
print("largest clash-free timetable:", sorted(interval_mis(inst.courses)))

stats = instance_stats(inst)
print(f"\nU = {stats.total_utility_U}, duration ratio = {stats.duration_ratio_c}, "
      f"max-min can be at most {stats.maxmin_upper_bound}")

# A feasible allocation and a broken one.
good = Allocation.from_assignments(inst, {"ana": ["algebra", "chemistry"], "ben": ["biology#0", "drama"]})
bad = Allocation.from_assignments(inst, {"ana": ["algebra", "biology#0", "drama"]})
print("\ngood allocation valid:", validate_allocation(inst, good).valid, "charity:", sorted(good.charity))
for v in validate_allocation(inst, bad).violations:
    print("bad allocation:", v.kind.value, "-", v.detail)
