"""How close does earliest-finish round robin get to the optimum?

Uniform utilities and a shared credit cap.  With equal course lengths the
welfare matches the optimum exactly; with mixed lengths it stays within half.

Run: python3 demos/02_round_robin_guarantees.py
"""

import numpy as np

from fairseat import expand_seats, maxmin_value, opt_maxmin, opt_social_welfare, round_robin, social_welfare
from fairseat.audit import audit_efx
from fairseat.fixtures import fixture_a
from fairseat.generate import GenParams, generate_instance

inst = fixture_a()
alloc = round_robin(inst)
print("fixture A, round robin:", {s: sorted(b) for s, b in alloc.assignments.items()})
print("  welfare", social_welfare(inst, alloc), "vs optimum", opt_social_welfare(inst).value)


def ratios(durations, trials=150):
    sw, mm, efx = [], [], 0
    for seed in range(trials):
        cap = 1 + seed % 3
        params = GenParams(3, 9, seed=seed, slot_grid=20, duration_range=durations, cap_range=(cap, cap))
        inst = expand_seats(generate_instance(params))
        alloc = round_robin(inst)
        sw.append(social_welfare(inst, alloc) / max(opt_social_welfare(inst).value, 1))
        best_mm = opt_maxmin(inst).value
        mm.append(maxmin_value(inst, alloc) / best_mm if best_mm else 1.0)
        efx += audit_efx(inst, alloc)[0]
    return np.array(sw), np.array(mm), efx / trials


for label, durations in [("equal lengths (3,3)", (3, 3)), ("mixed lengths (1,6)", (1, 6))]:
    sw, mm, efx = ratios(durations)
    print(f"\n{label}")
    print(f"  welfare ratio   min {sw.min():.3f}  mean {sw.mean():.3f}  share optimal {np.mean(sw == 1):.2f}")
    print(f"  max-min ratio   min {mm.min():.3f}  mean {mm.mean():.3f}")
    print(f"  EFX rate        {efx:.2f}")
