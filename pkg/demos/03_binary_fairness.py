"""Binary preferences: welfare-oriented MIS round robin vs envy-oriented
EF1-CC round robin, audited side by side.

Run: python3 demos/03_binary_fairness.py
"""

from fairseat import audit, ef1cc_round_robin, expand_seats, mis_round_robin, opt_social_welfare
from fairseat.generate import GenParams, generate_instance

params = GenParams(4, 10, seed=11, slot_grid=20, duration_range=(2, 5), cap_range=(1, 4),
                   utility_kind="binary", desire_probability=0.5)
inst = expand_seats(generate_instance(params))
for s in inst.students:
    print(f"{s.id} cap {s.credit_cap} wants {sorted(s.utility.desired)}")
print("optimal welfare:", opt_social_welfare(inst).value)

for name, algo in [("MIS round robin", mis_round_robin), ("EF1-CC round robin", ef1cc_round_robin)]:
    alloc = algo(inst)
    report = audit(inst, alloc)
    print(f"\n{name}")
    for sid in sorted(alloc.assignments):
        print(f"  {sid}: {sorted(alloc.bundle(sid))}  utility {report.per_student_utility[sid]:g}")
    print(f"  charity {sorted(alloc.charity)}")
    print(f"  welfare {report.social_welfare:g}, min {report.min_utility:g}, "
          f"EFX {report.efx}, EF1 {report.ef1}, EF1-CC {report.ef1cc}")
    for w in report.envy_witnesses[:3]:
        print(f"  witness: {w.envier} -> {w.envied}: {w.detail}")
