"""Exchange paths in the max-min algorithm, and where it falls short.

Run: python3 demos/04_maxmin_exchange_paths.py
"""

from fairseat import Allocation, Binary, Course, Instance, Student, TimeInterval, expand_seats
from fairseat.allocators import apply_augmenting_path, build_augment_graph, find_augmenting_path, maxmin_augmenting
from fairseat.audit import maxmin_value
from fairseat.oracle import opt_maxmin


def make(students, courses):
    return expand_seats(Instance([Student(s, cap, Binary(d)) for s, cap, d in students],
                                 [Course(c, TimeInterval(a, b)) for c, a, b in courses]))


# A holds two courses.  B holds h, which clashes with j1.  C is empty and wants h.
inst = make([("A", 2, {"j1", "j2"}), ("B", 2, {"j1", "h"}), ("C", 2, {"h"})],
            [("j1", 0, 2), ("j2", 2, 4), ("h", 1, 3)])
alloc = Allocation.from_assignments(inst, {"A": ["j1", "j2"], "B": ["h"]})
graph = build_augment_graph(inst, alloc, "A")
print("exchange graph rooted at A:")
for e in graph.edges:
    print(f"  {e.source} -> {e.target}  ({e.reason})")
path = find_augmenting_path(inst, alloc, "A")
print("shortest path:", path)
after = apply_augmenting_path(inst, alloc, path)
print("after the exchange:", {s: sorted(b) for s, b in after.assignments.items()})

# A two-student case where the greedy hand-off leaves one student empty.
# Both durations are equal, yet the result is below the optimum.
inst = make([("s0", 1, {"c02"}), ("s1", 3, {"c01", "c02"})],
            [("c00", 1, 3), ("c03", 2, 4), ("c02", 4, 6), ("c01", 5, 7)])
alloc = maxmin_augmenting(inst)
best = opt_maxmin(inst)
print("\nhand-off counterexample")
print("  algorithm:", {s: sorted(b) for s, b in alloc.assignments.items()}, "max-min", maxmin_value(inst, alloc))
print("  optimum:  ", {s: sorted(b) for s, b in best.allocation.assignments.items()}, "max-min", best.value)
