"""Maximal intersecting families as maximal cliques of the intersection graph.

Vertices are the k-subsets of [n] indexed by colex rank; two vertices are
adjacent when the sets meet.  A maximal clique is exactly a maximal
intersecting k-uniform family, so M(n, k) is the number of maximal cliques.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from .core import binomial, ksubset_masks
from .families import SetFamily, is_maximal_intersecting

DEFAULT_VERTEX_BUDGET = 200


class BudgetError(ValueError):
    """Raised when an instance is larger than the configured budget."""

    def __init__(self, message: str, required: int) -> None:
        super().__init__(message)
        self.required = required


def intersection_graph(n: int, k: int) -> tuple[list[int], list[int]]:
    """(vertex set masks in colex order, adjacency bitsets over vertex indices)."""
    verts = list(ksubset_masks(n, k))
    adj = []
    for i, a in enumerate(verts):
        row = 0
        for j, b in enumerate(verts):
            if i != j and a & b:
                row |= 1 << j
        adj.append(row)
    return verts, adj


def _check_budget(n: int, k: int, budget: int) -> None:
    size = binomial(n, k)
    if size > budget:
        raise BudgetError(f"C({n},{k}) = {size} vertices exceeds the budget of {budget}", size)


def _pivot(p: int, x: int, adj: list[int]) -> int:
    # most neighbours inside P; ties go to the lowest index (lowest colex rank)
    best_u, best_deg = -1, -1
    cand = p | x
    while cand:
        low = cand & -cand
        u = low.bit_length() - 1
        cand ^= low
        d = (p & adj[u]).bit_count()
        if d > best_deg:
            best_u, best_deg = u, d
    return best_u


class _Stop(Exception):
    pass


class _Meter:
    """Call counter shared by one recursion; raises _Stop past its limits."""

    __slots__ = ("nodes", "found", "limit", "deadline")

    def __init__(self, limit: int | None = None, deadline: float | None = None) -> None:
        self.nodes = 0
        self.found = 0
        self.limit = limit
        self.deadline = deadline

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise _Stop
        if self.deadline is not None and not self.nodes & 1023 and time.time() > self.deadline:
            raise _Stop


def _bron_kerbosch(r: int, p: int, x: int, adj: list[int], emit: Callable[[int], None] | None,
                   meter: _Meter | None = None) -> int:
    if meter is not None:
        meter.tick()
    if not p:
        if not x:
            if emit is not None:
                emit(r)
            if meter is not None:
                meter.found += 1
            return 1
        return 0
    u = _pivot(p, x, adj)
    count = 0
    cand = p & ~adj[u]
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        count += _bron_kerbosch(r | low, p & adj[v], x & adj[v], adj, emit, meter)
        p &= ~low
        x |= low
    return count


def root_tasks(adj: list[int]) -> list[tuple[int, int, int]]:
    """Split the top level of the pivoted recursion into independent
    (R, P, X) subproblems, in the order the serial search would visit them."""
    size = len(adj)
    p = (1 << size) - 1
    x = 0
    if not p:
        return []
    u = _pivot(p, x, adj)
    tasks = []
    cand = p & ~adj[u]
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        tasks.append((low, p & adj[v], x & adj[v]))
        p &= ~low
        x |= low
    return tasks


@dataclass(frozen=True)
class CliqueCount:
    """Maximal cliques found; when ``complete`` is False some root task ran
    out of budget and ``count`` is a lower bound."""

    count: int
    complete: bool
    nodes: int
    tasks: int
    finished: int


def _count_task(args: tuple) -> tuple[int, bool, int]:
    (r, p, x), adj, limit, deadline = args
    meter = _Meter(limit, deadline)
    try:
        return _bron_kerbosch(r, p, x, adj, None, meter), True, meter.nodes
    except _Stop:
        return meter.found, False, meter.nodes


def count_maximal_cliques(n: int, k: int, workers: int = 1,
                          vertex_budget: int = DEFAULT_VERTEX_BUDGET,
                          node_budget: int | None = None,
                          time_budget: float | None = None) -> CliqueCount:
    """Count maximal cliques, one independent subproblem per root branch.

    A node budget is split evenly over the root tasks, so whether a task
    finishes does not depend on the worker count.
    """
    _check_budget(n, k, vertex_budget)
    if binomial(n, k) == 0:
        return CliqueCount(0, True, 0, 0, 0)
    _, adj = intersection_graph(n, k)
    tasks = root_tasks(adj)
    share = None if node_budget is None else max(1, node_budget // max(1, len(tasks)))
    deadline = None if time_budget is None else time.time() + time_budget
    jobs = [(t, adj, share, deadline) for t in tasks]
    if workers <= 1 or len(tasks) <= 1:
        parts = [_count_task(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_task, jobs))
    return CliqueCount(sum(c for c, _, _ in parts), all(ok for _, ok, _ in parts),
                       sum(nd for _, _, nd in parts), len(tasks), sum(ok for _, ok, _ in parts))


def maximal_clique_families(n: int, k: int,
                            vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Iterator[SetFamily]:
    """Every maximal intersecting family at (n, k), members in colex order."""
    _check_budget(n, k, vertex_budget)
    verts, adj = intersection_graph(n, k)
    if not verts:
        return
    found: list[int] = []
    for r, p, x in root_tasks(adj):
        found.clear()
        _bron_kerbosch(r, p, x, adj, found.append)
        for clique in found:
            yield SetFamily.from_masks(n, _members(clique, verts), k)


def _members(index_mask: int, verts: list[int]) -> list[int]:
    out = []
    while index_mask:
        low = index_mask & -index_mask
        out.append(verts[low.bit_length() - 1])
        index_mask ^= low
    return out


def count_by_closure(n: int, k: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> int:
    """Independent count of maximal families by include/exclude backtracking.

    Vertices are decided in colex order.  An excluded set must end up
    disjoint from some included set, so a branch is cut as soon as an
    excluded, still-compatible set has no disjoint candidate left.  Each
    leaf is confirmed as a fixed point of the I-closure.
    """
    _check_budget(n, k, vertex_budget)
    verts = list(ksubset_masks(n, k))
    size = len(verts)
    if not size:
        return 0
    disjoint = [sum(1 << j for j, b in enumerate(verts) if not a & b) for a in verts]
    count = 0

    def rec(chosen: list[int], p: int, pending: list[int]) -> None:
        nonlocal count
        for e in pending:
            if not p & disjoint[e]:
                return
        if not p:
            members = [verts[i] for i in chosen]
            if is_maximal_intersecting(members, n, k):
                count += 1
            return
        low = p & -p
        v = low.bit_length() - 1
        rest = p ^ low
        # include v: drop candidates disjoint from it; pending sets it blocks are settled
        chosen.append(v)
        rec(chosen, rest & ~disjoint[v], [e for e in pending if not disjoint[v] >> e & 1])
        chosen.pop()
        # exclude v: some later included set must miss it
        rec(chosen, rest, pending + [v])

    rec([], (1 << size) - 1, [])
    return count


def naive_count_maximal(n: int, k: int, limit: int = 20) -> int:
    """Scan all 2^C(n,k) subfamilies and count the maximal intersecting ones."""
    size = binomial(n, k)
    if size > limit:
        raise BudgetError(f"power-set oracle limited to C(n,k) <= {limit}, got {size}", size)
    verts = list(ksubset_masks(n, k))
    count = 0
    for sub in range(1 << size):
        fam = [verts[i] for i in range(size) if sub >> i & 1]
        ok = True
        for i, a in enumerate(fam):
            for b in fam[i + 1:]:
                if not a & b:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if is_maximal_intersecting(fam, n, k):
            count += 1
    return count
