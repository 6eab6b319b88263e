"""JSON instance and allocation files, plus a CSV desire-list import.

Instance document::

    {"students": [{"id": "s1", "credit_cap": 2,
                   "utility": {"kind": "binary", "desired": ["a", "c"]}}],
     "courses":  [{"id": "a", "start": 0, "end": 1, "credits": 1, "seats": 1}]}

``utility`` is ``{"kind": "uniform"}``, ``{"kind": "binary", "desired": [...]}``
or ``{"kind": "general", "values": {course_id: number}}``.  ``credits`` and
``seats`` default to 1.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .errors import ParseError, SemanticError
from .model import Allocation, Binary, Course, General, Instance, Student, TimeInterval, Uniform


def _decode(data):
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _field(obj, key, kind, where, default=None, required=True):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    if key not in obj:
        if required:
            raise ParseError(f"missing field {key!r}", where)
        return default
    value = obj[key]
    ok = isinstance(value, kind) and not (kind is int and isinstance(value, bool))
    if not ok:
        raise ParseError(f"field {key!r} has the wrong type", f"{where}.{key}")
    return value


def _utility(obj, where):
    kind = _field(obj, "kind", str, where)
    if kind == "uniform":
        return Uniform()
    if kind == "binary":
        desired = _field(obj, "desired", list, where)
        if not all(isinstance(d, str) for d in desired):
            raise ParseError("desired entries must be course ids", f"{where}.desired")
        return Binary(frozenset(desired))
    if kind == "general":
        values = _field(obj, "values", dict, where)
        for k, v in values.items():
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParseError("utility values must be finite numbers", f"{where}.values.{k}")
        return General(values)
    raise ParseError(f"unknown utility kind {kind!r}", f"{where}.kind")


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")
    students_raw = _field(doc, "students", list, "$")
    courses_raw = _field(doc, "courses", list, "$")
    courses = []
    for k, c in enumerate(courses_raw):
        where = f"courses[{k}]"
        cid = _field(c, "id", str, where)
        start = _field(c, "start", int, where)
        end = _field(c, "end", int, where)
        credits = _field(c, "credits", int, where, 1, required=False)
        seats = _field(c, "seats", int, where, 1, required=False)
        try:
            courses.append(Course(cid, TimeInterval(start, end), credits, seats))
        except SemanticError as exc:
            raise SemanticError(f"{where}: {exc}") from None
    students = []
    for k, s in enumerate(students_raw):
        where = f"students[{k}]"
        sid = _field(s, "id", str, where)
        cap = _field(s, "credit_cap", int, where)
        util = _utility(_field(s, "utility", dict, where), f"{where}.utility")
        try:
            students.append(Student(sid, cap, util))
        except SemanticError as exc:
            raise SemanticError(f"{where}: {exc}") from None
    return Instance(students, courses)


def parse_instance(data) -> Instance:
    """Parse an instance document (str or bytes).  The result is not
    seat-expanded."""
    return instance_from_dict(_decode(data))


def _utility_to_dict(u):
    if isinstance(u, Uniform):
        return {"kind": "uniform"}
    if isinstance(u, Binary):
        return {"kind": "binary", "desired": sorted(u.desired)}
    return {"kind": "general", "values": dict(u.values)}


def instance_to_dict(instance: Instance) -> dict:
    if instance.expanded:
        raise ValueError("serialise the instance before seat expansion")
    return {
        "students": [
            {"id": s.id, "credit_cap": s.credit_cap, "utility": _utility_to_dict(s.utility)}
            for s in instance.students
        ],
        "courses": [
            {"id": c.id, "start": c.start, "end": c.end, "credits": c.credits, "seats": c.seats}
            for c in instance.courses
        ],
    }


def serialize_instance(instance: Instance) -> bytes:
    return (json.dumps(instance_to_dict(instance), indent=2) + "\n").encode()


def allocation_to_dict(instance: Instance, alloc: Allocation) -> dict:
    order = {c.id: k for k, c in enumerate(instance.courses)}

    def ordered(ids):
        return sorted(ids, key=lambda c: (order.get(c, len(order)), c))

    return {
        "assignments": {s.id: ordered(alloc.bundle(s.id)) for s in instance.students},
        "charity": ordered(alloc.charity),
    }


def serialize_allocation(instance: Instance, alloc: Allocation, fmt: str = "json") -> bytes:
    doc = allocation_to_dict(instance, alloc)
    if fmt == "json":
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["student_id", "course_id"])
        for sid, cids in doc["assignments"].items():
            for cid in cids:
                writer.writerow([sid, cid])
        for cid in doc["charity"]:
            writer.writerow(["", cid])
        return buf.getvalue().encode()
    raise ValueError(f"unknown allocation format {fmt!r}")


def parse_allocation(data) -> Allocation:
    """Read an allocation document.  Charity is taken as written; run
    :func:`~fairseat.model.validate_allocation` to check it."""
    doc = _decode(data)
    raw = _field(doc, "assignments", dict, "$")
    bundles = {}
    for sid, cids in raw.items():
        if not isinstance(cids, list) or not all(isinstance(c, str) for c in cids):
            raise ParseError("bundle must be a list of course ids", f"assignments.{sid}")
        bundles[sid] = frozenset(cids)
    charity = _field(doc, "charity", list, "$", [], required=False)
    return Allocation(bundles, frozenset(charity))


def read_desire_csv(data) -> dict:
    """Read ``student_id,course_id,desired`` rows, as exported from a survey
    form, into ``{student_id: set of desired course ids}``."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    reader = csv.DictReader(io.StringIO(data))
    need = {"student_id", "course_id", "desired"}
    if reader.fieldnames is None or not need <= set(reader.fieldnames):
        raise ParseError(f"header must contain {sorted(need)}", "line 1")
    desires = {}
    for row in reader:
        flag = row["desired"].strip().lower()
        if flag not in {"0", "1", "true", "false", "yes", "no"}:
            raise ParseError(f"bad desired flag {row['desired']!r}", f"line {reader.line_num}")
        wanted = desires.setdefault(row["student_id"], set())
        if flag in {"1", "true", "yes"}:
            wanted.add(row["course_id"])
    return desires


def with_desires(instance: Instance, desires: dict) -> Instance:
    """Replace utilities with binary ones from ``desires``; students absent
    from the mapping desire nothing."""
    students = [Student(s.id, s.credit_cap, Binary(frozenset(desires.get(s.id, ())))) for s in instance.students]
    unknown = sorted(set(desires) - {s.id for s in instance.students})
    if unknown:
        raise SemanticError(f"desires mention unknown students {unknown}")
    return Instance(students, instance.courses, instance.expanded)
