"""Shared helpers: a seeded instance sampler and a naive reference solver.

The reference solver tries every owner (a student or nobody) for every
course and keeps the feasible outcomes.  It shares no code with the
package's search routines beyond the feasibility checker.
"""

from __future__ import annotations

import itertools
import json
import math

import numpy as np

from fairseat.generate import GenParams, generate_instance
from fairseat.model import Allocation, expand_seats, validate_allocation


def sample_instance(seed, n_range=(2, 4), m_range=(4, 12), slot_grid=20, **kw):
    """Expanded random instance with n and m drawn from the given ranges."""
    rng = np.random.default_rng([seed, 7919])
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    m = int(rng.integers(m_range[0], m_range[1] + 1))
    params = GenParams(n_students=n, n_courses=m, seed=seed, slot_grid=slot_grid, **kw)
    return expand_seats(generate_instance(params))


def owner_assignments(instance):
    """Every feasible allocation, by brute force over course owners."""
    ids = [s.id for s in instance.students]
    courses = [c.id for c in instance.courses]
    for owners in itertools.product([None, *ids], repeat=len(courses)):
        bundles = {sid: [] for sid in ids}
        for cid, sid in zip(courses, owners):
            if sid is not None:
                bundles[sid].append(cid)
        alloc = Allocation.from_assignments(instance, bundles)
        if validate_allocation(instance, alloc).valid:
            yield alloc


def reference_optimum(instance):
    """(max welfare, max-min, best welfare at that max-min) by enumeration."""
    best_sw, best_mm, sw_at_mm = -math.inf, -math.inf, -math.inf
    for alloc in owner_assignments(instance):
        utils = [instance.bundle_value(s, alloc.bundle(s.id)) for s in instance.students]
        sw, mm = math.fsum(utils), min(utils)
        best_sw = max(best_sw, sw)
        if mm > best_mm:
            best_mm, sw_at_mm = mm, sw
        elif mm == best_mm:
            sw_at_mm = max(sw_at_mm, sw)
    return best_sw, best_mm, sw_at_mm


def describe(instance) -> str:
    """Full instance as compact JSON, for failure logs."""
    doc = {
        "students": [{"id": s.id, "credit_cap": s.credit_cap,
                      "utility": sorted(s.utility.desired) if hasattr(s.utility, "desired")
                      else getattr(s.utility, "values", "uniform")}
                     for s in instance.students],
        "courses": [{"id": c.id, "start": c.start, "end": c.end, "credits": c.credits}
                    for c in instance.courses],
    }
    return json.dumps(doc, sort_keys=True)
