"""Welfare, max-min value and envy audits (EFX, EF1, EF1 with charity)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidAllocation, UnsupportedUtilityKind
from .intervals import interval_mis
from .model import Allocation, General, Instance, validate_allocation

CHARITY = "<charity>"

# slack for float utilities; sums of binary/uniform values are exact
_EPS = 1e-9


@dataclass(frozen=True)
class Witness:
    envier: str
    envied: str  # a student id or CHARITY
    detail: str


@dataclass(frozen=True)
class AuditReport:
    social_welfare: float
    min_utility: float
    per_student_utility: dict
    efx: bool
    ef1: bool
    ef1cc: object  # bool, or None when utilities are general
    envy_witnesses: tuple = ()
    charity_mis_sizes: dict = field(default_factory=dict)


def _checked(instance, alloc):
    report = validate_allocation(instance, alloc)
    if not report.valid:
        raise InvalidAllocation(report)


def utilities(instance: Instance, alloc: Allocation) -> dict:
    return {s.id: instance.bundle_value(s, alloc.bundle(s.id)) for s in instance.students}


def social_welfare(instance: Instance, alloc: Allocation) -> float:
    _checked(instance, alloc)
    return math.fsum(utilities(instance, alloc).values())


def maxmin_value(instance: Instance, alloc: Allocation) -> float:
    _checked(instance, alloc)
    return min(utilities(instance, alloc).values())


def at_credit_cap(instance: Instance, alloc: Allocation, student) -> bool:
    used = sum(instance.course_by_id[c].credits for c in alloc.bundle(student.id))
    return used == student.credit_cap


def _envy_pairs(instance, alloc):
    """Yield (student, other, own value, value of other's bundle) for every
    ordered pair where the first student is under cap and envious."""
    own = utilities(instance, alloc)
    for s in instance.students:
        if at_credit_cap(instance, alloc, s):
            continue
        for o in instance.students:
            if o.id == s.id:
                continue
            theirs = instance.bundle_value(s, alloc.bundle(o.id))
            if theirs > own[s.id] + _EPS:
                yield s, o, own[s.id], theirs


def audit_efx(instance: Instance, alloc: Allocation, positive_only: bool = False):
    """EFX: removing any single item from an envied bundle ends the envy.

    With ``positive_only`` the quantifier ranges over items the envier values
    above zero; by default it covers every item.
    """
    _checked(instance, alloc)
    witnesses = []
    for s, o, mine, theirs in _envy_pairs(instance, alloc):
        for cid in sorted(alloc.bundle(o.id)):
            v = instance.value(s, instance.course_by_id[cid])
            if positive_only and v <= 0:
                continue
            if theirs - v > mine + _EPS:
                witnesses.append(Witness(s.id, o.id, f"still envious after removing {cid!r}"))
                break
    return not witnesses, witnesses


def audit_ef1(instance: Instance, alloc: Allocation, form: str = "value"):
    """EF1 audit.

    ``form="value"`` applies the definition with utility sums.  ``form=
    "cardinality"`` counts desired courses instead and is only meaningful
    for binary or uniform utilities, where the two agree.
    """
    _checked(instance, alloc)
    if form == "cardinality":
        witnesses = _cardinality_ef1(instance, alloc)
        return not witnesses, witnesses
    if form != "value":
        raise ValueError(f"unknown EF1 form {form!r}")
    witnesses = []
    for s, o, mine, theirs in _envy_pairs(instance, alloc):
        best = max((instance.value(s, instance.course_by_id[c]) for c in alloc.bundle(o.id)), default=0)
        if best <= 0 or theirs - best > mine + _EPS:
            witnesses.append(Witness(s.id, o.id, f"value {mine} vs {theirs}, best single item {best}"))
    return not witnesses, witnesses


def _desired_count(instance, student, course_ids):
    courses = instance.course_by_id
    return sum(1 for c in course_ids if instance.value(student, courses[c]) > 0)


def _cardinality_ef1(instance, alloc):
    witnesses = []
    for s in instance.students:
        if at_credit_cap(instance, alloc, s):
            continue
        mine = _desired_count(instance, s, alloc.bundle(s.id))
        for o in instance.students:
            if o.id == s.id:
                continue
            theirs = _desired_count(instance, s, alloc.bundle(o.id))
            if mine < theirs - 1:
                witnesses.append(Witness(s.id, o.id, f"{mine} desired courses vs {theirs}"))
    return witnesses


def charity_mis_sizes(instance: Instance, alloc: Allocation) -> dict:
    courses = instance.course_by_id
    out = {}
    for s in instance.students:
        desired = [courses[c] for c in alloc.charity if instance.value(s, courses[c]) > 0]
        out[s.id] = len(interval_mis(desired))
    return out


def audit_ef1cc(instance: Instance, alloc: Allocation):
    """EF1 counting desired courses, plus no under-cap student trails the
    largest conflict-free set of desired charity courses by more than one."""
    _checked(instance, alloc)
    if any(isinstance(s.utility, General) for s in instance.students):
        raise UnsupportedUtilityKind("EF1-CC is defined for binary or uniform utilities only")
    witnesses = _cardinality_ef1(instance, alloc)
    mis = charity_mis_sizes(instance, alloc)
    for s in instance.students:
        if at_credit_cap(instance, alloc, s):
            continue
        mine = _desired_count(instance, s, alloc.bundle(s.id))
        if mine < mis[s.id] - 1:
            witnesses.append(Witness(s.id, CHARITY, f"{mine} desired courses vs charity set of {mis[s.id]}"))
    return not witnesses, witnesses


def audit(instance: Instance, alloc: Allocation) -> AuditReport:
    _checked(instance, alloc)
    per = utilities(instance, alloc)
    efx, w_efx = audit_efx(instance, alloc)
    ef1, w_ef1 = audit_ef1(instance, alloc)
    ef1cc, w_cc = None, []
    if not any(isinstance(s.utility, General) for s in instance.students):
        ef1cc, w_cc = audit_ef1cc(instance, alloc)
    return AuditReport(
        social_welfare=math.fsum(per.values()),
        min_utility=min(per.values()),
        per_student_utility=per,
        efx=efx,
        ef1=ef1,
        ef1cc=ef1cc,
        envy_witnesses=tuple(w_efx + w_ef1 + w_cc),
        charity_mis_sizes=charity_mis_sizes(instance, alloc),
    )
