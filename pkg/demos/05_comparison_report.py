"""Algorithm-vs-optimum tables over the generator presets, plus the same
instance viewed as a b-matching with conflicts.

Run: python3 demos/05_comparison_report.py
"""

from fairseat import expand_seats, opt_social_welfare
from fairseat.generate import PRESETS, generate_instance, preset
from fairseat.harness import AlgorithmChoice, emit_report, run_comparison
from fairseat.oracle import solve_bmatching_with_conflicts, to_conflict_instance

algorithms = [AlgorithmChoice(n) for n in ("round-robin", "mis", "ef1cc", "maxmin")]
for name in sorted(PRESETS)[:3] + ["example-7"]:
    inst = expand_seats(generate_instance(preset(name)))
    table = run_comparison(inst, algorithms, include_oracle=True, dataset=name)
    print(emit_report(table, "pretty").decode())

# The larger presets exceed the oracle guard; the OPT row says so instead of
# stalling.  On a small preset, the general matching solver agrees with the
# welfare oracle.
inst = expand_seats(generate_instance(preset("example-4")))
g = to_conflict_instance(inst)
print(f"example-4 as b-matching: {len(g.edges)} edges, {len(g.conflicts)} conflict pairs")
print("  matching optimum", solve_bmatching_with_conflicts(g).value,
      "| course-allocation optimum", opt_social_welfare(inst).value)
