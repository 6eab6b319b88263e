"""Exact solvers for desk-sized instances.

These stand in for integer programs: a depth-first branch and bound for
welfare and max-min objectives, an exhaustive bundle enumerator used to
cross-check it, and a solver for the general b-matching-with-conflicts model
that interval course allocation specialises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import BudgetExceeded, InfeasibleThreshold, InstanceTooLarge, NonUnitCredits, SemanticError
from .intervals import greedy_mis, sorted_by_end
from .model import Allocation, Binary, General, Instance, Uniform, overlaps

MAX_STUDENTS = 5
MAX_COURSES = 20
MAX_BMATCHING_EDGES = 24
DEFAULT_NODE_BUDGET = 20_000_000

_EPS = 1e-9


@dataclass(frozen=True)
class OracleResult:
    value: float
    allocation: Allocation
    nodes_explored: int
    proven_optimal: bool = True


def _guard(instance: Instance):
    instance.require_expanded()
    if instance.n > MAX_STUDENTS or instance.m > MAX_COURSES:
        raise InstanceTooLarge(
            f"exact oracle handles n <= {MAX_STUDENTS}, m <= {MAX_COURSES}; got n={instance.n}, m={instance.m}")


class _BranchAndBound:
    """DFS over courses in end-time order.

    A course either goes to a student who values it, has credit room and is
    free at its start, or to charity.  Because courses arrive in end order,
    a student's clash test reduces to comparing against their latest end.
    Students in identical states are interchangeable, so only the first of
    each such group is branched on.
    """

    def __init__(self, instance, threshold=None, node_budget=DEFAULT_NODE_BUDGET):
        self.instance = instance
        self.students = instance.students
        self.order = sorted_by_end(instance.courses)
        self.vals = [[instance.value(s, c) for s in self.students] for c in self.order]
        n, m = len(self.students), len(self.order)
        self.threshold = threshold
        self.node_budget = node_budget
        self.nodes = 0
        self.suffix_best = [0.0] * (m + 1)
        self.suffix_own = [[0.0] * (m + 1) for _ in range(n)]
        for j in range(m - 1, -1, -1):
            self.suffix_best[j] = self.suffix_best[j + 1] + max(0, max(self.vals[j], default=0))
            for i in range(n):
                self.suffix_own[i][j] = self.suffix_own[i][j + 1] + self.vals[j][i]
        self.credits_left = [s.credit_cap for s in self.students]
        self.free_at = [0] * n
        self.util = [0.0] * n
        self.owner = [None] * m
        self.track_util = threshold is not None and threshold > 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"branch and bound exceeded {self.node_budget} nodes")

    def _children(self, j):
        course = self.order[j]
        seen = set()
        for i, s in enumerate(self.students):
            v = self.vals[j][i]
            if v <= 0 or course.credits > self.credits_left[i] or self.free_at[i] > course.start:
                continue
            sig = (self.credits_left[i], self.free_at[i], self.util[i] if self.track_util else 0,
                   s.credit_cap, s.utility)
            if sig in seen:
                continue
            seen.add(sig)
            yield i, v

    def _assign(self, j, i):
        course = self.order[j]
        saved = (self.free_at[i], self.util[i])
        self.credits_left[i] -= course.credits
        self.free_at[i] = course.end
        self.util[i] += self.vals[j][i]
        self.owner[j] = i
        return saved

    def _unassign(self, j, i, saved):
        self.credits_left[i] += self.order[j].credits
        self.free_at[i], self.util[i] = saved
        self.owner[j] = None

    def _threshold_dead(self, j):
        t = self.threshold
        return t is not None and any(
            self.util[i] + self.suffix_own[i][j] < t - _EPS for i in range(len(self.students)))

    def allocation(self, owner):
        bundles = {s.id: [] for s in self.students}
        for j, i in enumerate(owner):
            if i is not None:
                bundles[self.students[i].id].append(self.order[j].id)
        return Allocation.from_assignments(self.instance, bundles)

    # objective: max welfare subject to every utility >= threshold

    def max_welfare(self, first_feasible=False):
        self.best = -math.inf
        self.best_owner = None
        self.first_feasible = first_feasible
        self._welfare(0, 0.0)
        return self.best, self.best_owner

    def _welfare(self, j, sw):
        self._tick()
        if j == len(self.order):
            if self.threshold is not None and min(self.util) < self.threshold - _EPS:
                return False
            if sw > self.best + _EPS or self.best_owner is None:
                self.best, self.best_owner = sw, list(self.owner)
            return self.first_feasible
        if self.best_owner is not None and sw + self.suffix_best[j] <= self.best + _EPS:
            return False
        if self._threshold_dead(j):
            return False
        for i, v in self._children(j):
            saved = self._assign(j, i)
            done = self._welfare(j + 1, sw + v)
            self._unassign(j, i, saved)
            if done:
                return True
        return self._welfare(j + 1, sw)

    # objective: max of the minimum utility (used for non-integral values)

    def max_min(self):
        self.track_util = True
        self.best = -math.inf
        self.best_owner = None
        self._maxmin(0)
        return self.best, self.best_owner

    def _maxmin(self, j):
        self._tick()
        if j == len(self.order):
            if min(self.util) > self.best + _EPS or self.best_owner is None:
                self.best, self.best_owner = min(self.util), list(self.owner)
            return
        if self.best_owner is not None:
            bound = min(self.util[i] + self.suffix_own[i][j] for i in range(len(self.students)))
            if bound <= self.best + _EPS:
                return
        for i, _ in self._children(j):
            saved = self._assign(j, i)
            self._maxmin(j + 1)
            self._unassign(j, i, saved)
        self._maxmin(j + 1)


def opt_social_welfare(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Exact maximum total utility over all feasible allocations."""
    _guard(instance)
    search = _BranchAndBound(instance, node_budget=node_budget)
    value, owner = search.max_welfare()
    return OracleResult(value, search.allocation(owner), search.nodes)


def opt_sw_given_maxmin(instance: Instance, threshold: float, node_budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Exact maximum total utility among allocations giving every student at
    least ``threshold``."""
    _guard(instance)
    search = _BranchAndBound(instance, threshold=threshold, node_budget=node_budget)
    value, owner = search.max_welfare()
    if owner is None:
        raise InfeasibleThreshold(f"no allocation gives every student at least {threshold}")
    return OracleResult(value, search.allocation(owner), search.nodes)


def _integral(instance):
    for s in instance.students:
        if isinstance(s.utility, General) and any(float(v) != int(v) for v in s.utility.values.values()):
            return False
    return True


def maxmin_upper_bound(instance: Instance) -> int:
    """Integer cap on the max-min value for integral utilities.

    Combines ``floor(total / n)``, where ``total`` sums each course's best
    value, with per-student caps: for 0/1 utilities a student can hold at
    most a maximum independent set of the courses they value.
    """
    n = instance.n
    total = sum(max((instance.value(s, c) for s in instance.students), default=0) for c in instance.courses)
    bound = math.floor(total / n + _EPS)
    for s in instance.students:
        wanted = [c for c in instance.courses if instance.value(s, c) > 0]
        if isinstance(s.utility, (Uniform, Binary)):
            own = len(greedy_mis(wanted))
            if wanted and all(c.credits == 1 for c in wanted):
                own = min(own, s.credit_cap)
        else:
            own = math.floor(sum(instance.value(s, c) for c in wanted) + _EPS)
        bound = min(bound, own)
    return max(bound, 0)


def opt_maxmin(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET) -> OracleResult:
    """Exact max-min utility.

    For integral utilities, thresholds are tried from an upper bound down to
    zero with a feasibility search; the first feasible one is optimal.
    """
    _guard(instance)
    if not _integral(instance):
        search = _BranchAndBound(instance, node_budget=node_budget)
        value, owner = search.max_min()
        return OracleResult(value, search.allocation(owner), search.nodes)
    nodes = 0
    for t in range(maxmin_upper_bound(instance), 0, -1):
        search = _BranchAndBound(instance, threshold=t, node_budget=node_budget - nodes)
        _, owner = search.max_welfare(first_feasible=True)
        nodes += search.nodes
        if owner is not None:
            return OracleResult(t, search.allocation(owner), nodes)
    return OracleResult(0, Allocation.empty(instance), nodes)


def two_stage_optimum(instance: Instance, node_budget: int = DEFAULT_NODE_BUDGET):
    """Max-min value first, then the best welfare that keeps it.

    Returns ``(maxmin_result, welfare_result)``.
    """
    first = opt_maxmin(instance, node_budget)
    second = opt_sw_given_maxmin(instance, first.value, node_budget)
    return first, second


# -- exhaustive cross-check --------------------------------------------------------


def feasible_bundles(instance: Instance, student):
    """All conflict-free, within-cap course subsets for one student, as
    (bitmask over ``instance.courses``, value) pairs."""
    courses = list(instance.courses)
    out = []

    def rec(k, chosen, credits):
        if k == len(courses):
            mask = sum(1 << j for j in chosen)
            out.append((mask, math.fsum(instance.value(student, courses[j]) for j in chosen)))
            return
        rec(k + 1, chosen, credits)
        c = courses[k]
        if credits + c.credits <= student.credit_cap and not any(
                overlaps(c.interval, courses[j].interval) for j in chosen):
            rec(k + 1, chosen + [k], credits + c.credits)

    rec(0, [], 0)
    return out


def exhaustive_optimum(instance: Instance, objective: str = "sw", threshold: float = 0) -> float:
    """Optimum by enumerating every feasible bundle of every student.

    No bounds are used: a table indexed by the set of courses used so far is
    folded over students one at a time.  ``objective`` is ``"sw"`` (welfare
    with every utility at least ``threshold``) or ``"maxmin"``.  Returns
    ``-inf`` when the threshold is infeasible.
    """
    instance.require_expanded()
    m = instance.m
    if m > 16:
        raise InstanceTooLarge("exhaustive enumeration is limited to 16 courses")
    masks = np.arange(1 << m, dtype=np.int64)
    table = np.full(1 << m, -np.inf)
    table[0] = np.inf if objective == "maxmin" else 0.0
    for s in instance.students:
        nxt = np.full(1 << m, -np.inf)
        for bmask, value in feasible_bundles(instance, s):
            if objective == "sw" and value < threshold - _EPS:
                continue
            free = (masks & bmask) == 0
            src = masks[free]
            dst = src | bmask
            if objective == "maxmin":
                cand = np.minimum(table[src], value)
            else:
                cand = table[src] + value
            nxt[dst] = np.maximum(nxt[dst], cand)
        table = nxt
    return float(table.max())


# -- b-matching with conflicts ------------------------------------------------------


@dataclass(frozen=True)
class GeneralConflictInstance:
    """Bipartite graph with degree bounds ``b`` and same-side conflict pairs.

    A node may not be matched to both members of any conflict pair.
    """

    agents: dict
    resources: dict
    edges: tuple
    conflicts: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "conflicts", frozenset(frozenset(p) for p in self.conflicts))
        for a, r, _ in self.edges:
            if a not in self.agents or r not in self.resources:
                raise SemanticError(f"edge ({a!r}, {r!r}) references an unknown node")
        for pair in self.conflicts:
            if len(pair) != 2:
                raise SemanticError(f"conflict {set(pair)} is not a pair")
            if not (pair <= self.agents.keys() or pair <= self.resources.keys()):
                raise SemanticError(f"conflict {set(pair)} must join two nodes on the same side")


def solve_bmatching_with_conflicts(g: GeneralConflictInstance) -> OracleResult:
    """Maximum-weight feasible edge set, by include/exclude branch and bound.

    The returned allocation maps each agent to the resources matched to it.
    """
    if len(g.edges) > MAX_BMATCHING_EDGES:
        raise InstanceTooLarge(f"{len(g.edges)} edges, limit {MAX_BMATCHING_EDGES}")
    edges = list(g.edges)
    partners = {}
    for pair in g.conflicts:
        a, b = tuple(pair)
        partners.setdefault(a, set()).add(b)
        partners.setdefault(b, set()).add(a)
    suffix = [0.0] * (len(edges) + 1)
    for k in range(len(edges) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + max(0.0, edges[k][2])
    degree = {}
    matched = {}  # node -> set of nodes on the other side
    chosen = []
    best = {"value": 0.0, "edges": [], "nodes": 0}

    def ok(a, r):
        if degree.get(a, 0) >= g.agents[a] or degree.get(r, 0) >= g.resources[r]:
            return False
        if partners.get(r, set()) & matched.get(a, set()):
            return False
        if partners.get(a, set()) & matched.get(r, set()):
            return False
        return True

    def rec(k, value):
        best["nodes"] += 1
        if value > best["value"] + _EPS:
            best["value"], best["edges"] = value, list(chosen)
        if k == len(edges) or value + suffix[k] <= best["value"] + _EPS:
            return
        a, r, w = edges[k]
        if w > 0 and ok(a, r):
            degree[a] = degree.get(a, 0) + 1
            degree[r] = degree.get(r, 0) + 1
            matched.setdefault(a, set()).add(r)
            matched.setdefault(r, set()).add(a)
            chosen.append(k)
            rec(k + 1, value + w)
            chosen.pop()
            matched[a].discard(r)
            matched[r].discard(a)
            degree[a] -= 1
            degree[r] -= 1
        rec(k + 1, value)

    rec(0, 0.0)
    bundles = {a: frozenset(edges[k][1] for k in best["edges"] if edges[k][0] == a) for a in g.agents}
    used = set().union(*bundles.values()) if bundles else set()
    alloc = Allocation(bundles, frozenset(r for r in g.resources if r not in used))
    return OracleResult(best["value"], alloc, best["nodes"])


def to_conflict_instance(instance: Instance) -> GeneralConflictInstance:
    """Students become agents with ``b`` = credit cap, seat copies become
    resources with ``b`` = 1, and overlapping courses become conflict pairs.

    Needs unit credits, since degree bounds count courses, not credits.
    """
    instance.require_expanded()
    if any(c.credits != 1 for c in instance.courses):
        raise NonUnitCredits("b-matching form needs unit course credits")
    agents = {s.id: s.credit_cap for s in instance.students}
    resources = {c.id: 1 for c in instance.courses}
    edges = [(s.id, c.id, float(instance.value(s, c)))
             for s in instance.students for c in instance.courses if instance.value(s, c) > 0]
    conflicts = {frozenset((a.id, b.id)) for a, b in combinations(instance.courses, 2)
                 if overlaps(a.interval, b.interval)}
    return GeneralConflictInstance(agents, resources, edges, frozenset(conflicts))
