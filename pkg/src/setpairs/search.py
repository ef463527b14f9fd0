"""Exact desk-scale searches for the extremal quantities.

M(n, k) is counted by maximal-clique enumeration.  The vertex maxima n, n1,
n2 and g are found by depth-first branch and bound over set-pair systems
grown one pair at a time; f is found the same way over intersecting
families.  Elements are labelled by first appearance and fresh points enter
in a fixed order, so isomorphic extensions that only differ in the names of
new points are generated once.

Every system can be padded with fresh points until |A_i| = k and |B_i| = l
without breaking any flavor and without shrinking the union, so the pair
searches only generate full-size pairs.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from . import bounds
from .cliques import (
    DEFAULT_VERTEX_BUDGET,
    count_maximal_cliques,
    maximal_clique_families,
    naive_count_maximal,
)
from .constructions import tuza_tau_k_family
from .core import binomial
from .families import SetFamily, covering_number
from .systems import PairFlavor, SetPairSystem, verify_flavor, vertex_set

DEFAULT_NODE_BUDGET = 5_000_000


def default_node_budget() -> int:
    raw = os.environ.get("SETPAIR_BUDGET_NODES")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"SETPAIR_BUDGET_NODES must be an integer, got {raw!r}") from None
    return DEFAULT_NODE_BUDGET


@dataclass
class SearchResult:
    quantity: str
    params: dict
    value: int
    witness: SetFamily | SetPairSystem | None
    proven_optimal: bool
    nodes_explored: int = 0
    wall_time: float = 0.0
    certificate: str = ""
    notes: list[str] = field(default_factory=list)

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "quantity": self.quantity,
            "params": dict(self.params),
            "value": str(self.value),
            "proven_optimal": self.proven_optimal,
            "certificate": self.certificate,
            "nodes_explored": self.nodes_explored,
            "witness": None if self.witness is None else self.witness.to_json(),
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out


class _OutOfBudget(Exception):
    pass


# ---------------------------------------------------------------- M(n, k)

def count_maximal_intersecting(n: int, k: int, workers: int = 1,
                               vertex_budget: int = DEFAULT_VERTEX_BUDGET,
                               budget: int | None = None,
                               time_budget: float | None = None) -> SearchResult:
    """M(n, k) via pivoted Bron-Kerbosch on the intersection graph.

    If the budget runs out the value is a lower bound: every maximal family
    found before the stop is counted.
    """
    start = time.perf_counter()
    budget = default_node_budget() if budget is None else budget
    cc = count_maximal_cliques(n, k, workers=workers, vertex_budget=vertex_budget,
                               node_budget=budget, time_budget=time_budget)
    notes = [] if cc.complete else [f"{cc.finished} of {cc.tasks} root branches finished; value is a lower bound"]
    return SearchResult("M", {"n": n, "k": k}, cc.count, None, cc.complete, cc.nodes,
                        time.perf_counter() - start,
                        "complete maximal-clique enumeration" if cc.complete else "search budget exhausted",
                        notes)


def catalog_maximal_families(n: int, k: int,
                             vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Iterator[SetFamily]:
    return maximal_clique_families(n, k, vertex_budget=vertex_budget)


# ------------------------------------------------------- pair-system search

@lru_cache(maxsize=None)
def _combos(v: int, size: int) -> tuple[int, ...]:
    return tuple(sum(1 << e for e in c) for c in itertools.combinations(range(v), size))


@dataclass(frozen=True)
class _PairConfig:
    k: int
    l: int
    flavor: PairFlavor
    a_objective: bool  # maximise |union of A| (g) instead of the vertex count
    max_pairs: int
    gain: int  # most points a non-first pair can add to the objective
    cap: int | None  # proven global upper bound, if one is used
    budget: int
    deadline: float | None = None  # time.time() value


def _pair_key(cfg: _PairConfig, pairs: tuple) -> tuple:
    return pairs if cfg.flavor is PairFlavor.SKEW else tuple(sorted(pairs))


def _objective(cfg: _PairConfig, v: int, a_union: int) -> int:
    return a_union.bit_count() if cfg.a_objective else v


def _twin_classes(pairs: tuple, v: int) -> list[int]:
    """Masks of old points that lie in exactly the same A's and B's so far.

    Twins are interchangeable, so a new pair only ever takes the lowest
    labelled members of a class (first for A, then for B).
    """
    groups: dict[tuple[int, int], int] = {}
    for e in range(v):
        bit = 1 << e
        sig_a = sig_b = 0
        for i, (a, b) in enumerate(pairs):
            if a & bit:
                sig_a |= 1 << i
            if b & bit:
                sig_b |= 1 << i
        groups[(sig_a, sig_b)] = groups.get((sig_a, sig_b), 0) | bit
    return [c for c in groups.values() if c & (c - 1)]


def _lowest(mask: int, count: int) -> int:
    out = 0
    for _ in range(count):
        low = mask & -mask
        out |= low
        mask ^= low
    return out


def _canonical_in(classes: list[int], part: int, taken: int = 0) -> bool:
    for c in classes:
        free = c & ~taken
        used = part & c
        if used != _lowest(free, used.bit_count()):
            return False
    return True


def _packing(masks) -> int:
    """Number of pairwise disjoint members picked greedily: a lower bound on
    the covering number."""
    used = 0
    count = 0
    for m in sorted(masks, key=lambda x: (x.bit_count(), x)):
        if not m & used:
            used |= m
            count += 1
    return count


def _children(cfg: _PairConfig, pairs: tuple, v: int) -> list[tuple[int, int, int]]:
    k, l = cfg.k, cfg.l
    if not pairs:
        a = (1 << k) - 1
        return [(a, ((1 << (k + l)) - 1) ^ a, k + l)]
    As = [a for a, _ in pairs]
    Bs = [b for _, b in pairs]
    existing = set(pairs)
    flavor = cfg.flavor
    classes = _twin_classes(pairs, v)
    weakly = flavor is PairFlavor.WEAKLY

    valid_a: dict[int, list[tuple[int, int]]] = {}
    for size in range(k + 1):
        lst = []
        for a_old in _combos(v, size):
            if not _canonical_in(classes, a_old):
                continue
            if cfg.a_objective and not all(a_old & a for a in As):
                continue
            miss = 0
            for i, b in enumerate(Bs):
                if not a_old & b:
                    miss |= 1 << i
            if miss and flavor is PairFlavor.CROSS:
                continue
            lst.append((a_old, miss))
        valid_a[size] = lst
    valid_b: dict[int, list[tuple[int, int]]] = {}
    for size in range(l + 1):
        lst = []
        for b_old in _combos(v, size):
            miss = 0
            for i, a in enumerate(As):
                if not b_old & a:
                    miss |= 1 << i
            if miss and not weakly:
                continue
            lst.append((b_old, miss))
        valid_b[size] = lst

    out = []
    for fa in range(k, -1, -1):
        fresh_a = ((1 << fa) - 1) << v
        for fb in range(l, -1, -1):
            fresh_b = ((1 << fb) - 1) << (v + fa)
            for a_old, miss_a in valid_a[k - fa]:
                for b_old, miss_b in valid_b[l - fb]:
                    if a_old & b_old:
                        continue
                    if weakly and miss_a & miss_b:
                        continue
                    if not _canonical_in(classes, b_old, a_old):
                        continue
                    pair = (a_old | fresh_a, b_old | fresh_b)
                    if pair not in existing:
                        out.append((pair[0], pair[1], v + fa + fb))
    return out


class _PairRun:
    def __init__(self, cfg: _PairConfig, best: int, split_depth: int | None = None) -> None:
        self.cfg = cfg
        self.best = best
        self.best_key: tuple | None = None
        self.nodes = 0
        self.seen: set = set()
        self.split_depth = split_depth
        self.frontier: list[tuple[tuple, int, int]] = []
        self.stopped_at_cap = False

    def bound(self, pairs: tuple, v: int, a_union: int) -> int:
        cfg = self.cfg
        gain = cfg.gain
        if pairs:
            # a new B meets every A so far, hence holds at least tau(A) old
            # points; likewise a cross A holds at least tau(B) old points
            k, l = cfg.k, cfg.l
            tau_a = _packing([a for a, _ in pairs])
            if cfg.a_objective:
                gain = min(gain, max(0, k - _packing([x for p in pairs for x in p])))
            elif cfg.flavor is PairFlavor.CROSS:
                tau_b = _packing([b for _, b in pairs])
                gain = min(gain, max(0, k - tau_b) + max(0, l - tau_a))
            elif cfg.flavor is PairFlavor.SKEW:
                gain = min(gain, k + max(0, l - tau_a))
        b = _objective(cfg, v, a_union) + (cfg.max_pairs - len(pairs)) * gain
        return b if cfg.cap is None else min(b, cfg.cap)

    def visit(self, pairs: tuple, v: int, a_union: int) -> None:
        cfg = self.cfg
        key = pairs if cfg.flavor is PairFlavor.SKEW else frozenset(pairs)
        if key in self.seen:
            return
        self.seen.add(key)
        self.nodes += 1
        if self.nodes > cfg.budget or (
                cfg.deadline is not None and not self.nodes & 255 and time.time() > cfg.deadline):
            raise _OutOfBudget
        if pairs:
            val = _objective(cfg, v, a_union)
            if val > self.best or (val == self.best and self._better_key(pairs)):
                self.best = val
                self.best_key = _pair_key(cfg, pairs)
                if cfg.cap is not None and val >= cfg.cap:
                    self.stopped_at_cap = True
                    raise _OutOfBudget
        if len(pairs) >= cfg.max_pairs:
            return
        # strict: systems tying the incumbent are still explored, which keeps
        # the reported witness independent of visiting order
        if self.bound(pairs, v, a_union) < self.best:
            return
        if self.split_depth is not None and len(pairs) == self.split_depth:
            self.frontier.append((pairs, v, a_union))
            return
        for a, b, nv in _children(cfg, pairs, v):
            self.visit(pairs + ((a, b),), nv, a_union | a)

    def _better_key(self, pairs: tuple) -> bool:
        return self.best_key is None or _pair_key(self.cfg, pairs) < self.best_key


def _run_subtree(args: tuple[_PairConfig, int, tuple, int, int]) -> tuple[int, tuple | None, int, bool, bool]:
    cfg, best, pairs, v, a_union = args
    run = _PairRun(cfg, best)
    done = True
    try:
        for a, b, nv in _children(cfg, pairs, v):
            run.visit(pairs + ((a, b),), nv, a_union | a)
    except _OutOfBudget:
        done = run.stopped_at_cap
    return run.best, run.best_key, run.nodes, done, run.stopped_at_cap


def _pair_search(cfg: _PairConfig, quantity: str, params: dict, warm: int,
                 warm_witness: SetPairSystem | None, workers: int) -> SearchResult:
    start = time.perf_counter()
    split = 2 if workers > 1 else None
    run = _PairRun(cfg, warm, split_depth=split)
    complete = True
    try:
        run.visit((), 0, 0)
    except _OutOfBudget:
        complete = run.stopped_at_cap
    best, best_key, nodes = run.best, run.best_key, run.nodes
    at_cap = run.stopped_at_cap
    if complete and not at_cap and run.frontier:
        # each subtree gets the incumbent known after the frontier phase and
        # its own share of the node budget, so results only depend on the split
        share = max(1, (cfg.budget - nodes) // len(run.frontier))
        sub_cfg = _PairConfig(**{**cfg.__dict__, "budget": share})
        tasks = [(sub_cfg, best, p, v, au) for p, v, au in run.frontier]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_subtree, tasks))
        for val, key, sub_nodes, done, capped in results:
            nodes += sub_nodes
            complete &= done
            at_cap |= capped
            if key is not None and (val > best or (val == best and (best_key is None or key < best_key))):
                best, best_key = val, key
    witness = None
    if best_key is not None:
        witness = _relabel_pairs(cfg, best_key)
    elif warm_witness is not None:
        witness = warm_witness
    if at_cap:
        cert = "incumbent reaches a proven upper bound"
    elif complete:
        cert = "exhaustive branch and bound"
    else:
        cert = "search budget exhausted"
    return SearchResult(quantity, params, best, witness, complete or at_cap, nodes,
                        time.perf_counter() - start, cert)


def _relabel_pairs(cfg: _PairConfig, pairs: tuple) -> SetPairSystem:
    # search labels are 0-based bit positions; ElementSet bit i is element i+1
    return SetPairSystem.from_masks(cfg.k, cfg.l, pairs, cfg.flavor)


def _deadline(seconds: float | None) -> float | None:
    return None if seconds is None else time.time() + seconds


def _max_pairs(k: int, l: int, flavor: PairFlavor) -> int:
    if flavor is PairFlavor.WEAKLY:
        return bounds.mmax_bounds(k, l)[0]
    return bounds.bollobas_pair_bound(k, l)


def _gain(k: int, l: int, flavor: PairFlavor) -> int:
    if flavor is PairFlavor.CROSS:
        # A must meet every earlier B and B every earlier A
        return (k - 1) + (l - 1)
    # skew: the new B meets every earlier A; weakly: not both sides all-fresh
    return k + l - 1


def _closed_form_cap(k: int, l: int, flavor: PairFlavor) -> int | None:
    if flavor is not PairFlavor.CROSS:
        return None
    cap = bounds.lemma_g_bound(k, l)
    if k == l >= 2:
        cap = min(cap, bounds.tuza_n_bounds(k, l)[1])
    return cap


def search_vertex_max(k: int, l: int, flavor: str | PairFlavor = PairFlavor.CROSS,
                      budget: int | None = None, workers: int = 1,
                      use_closed_form_bounds: bool = False,
                      warm_start: SetPairSystem | None = None,
                      time_budget: float | None = None) -> SearchResult:
    """Largest vertex set of a (k,l) system of the given flavor.

    Pruning uses only the pair-count caps (the Bollobas bound and its skew
    version for cross and skew, Tuza's m_max bound for weakly) and a
    per-pair count of possible
    new points, unless ``use_closed_form_bounds`` also enables the closed-form
    vertex bounds for cross systems.
    """
    flavor = PairFlavor.parse(flavor)
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    if k + l > 6:
        raise ValueError(f"vertex search refuses k+l = {k + l} > 6")
    budget = default_node_budget() if budget is None else budget
    cap = _closed_form_cap(k, l, flavor) if use_closed_form_bounds else None
    cfg = _PairConfig(k, l, flavor, False, _max_pairs(k, l, flavor), _gain(k, l, flavor), cap, budget,
                      _deadline(time_budget))
    warm = 0
    if warm_start is not None:
        if not verify_flavor(warm_start, flavor):
            raise ValueError("warm-start system fails verification for this flavor")
        if warm_start.k > k or warm_start.l > l:
            raise ValueError("warm-start system exceeds the size caps")
        warm = len(vertex_set(warm_start))
    quantity = {"cross": "n_cross", "skew": "n_skew", "weakly": "n_weakly"}[flavor.value]
    res = _pair_search(cfg, quantity, {"k": k, "l": l, "flavor": flavor.value}, warm, warm_start, workers)
    if k == 1 and l == 1 and flavor is PairFlavor.CROSS and res.proven_optimal:
        res.notes.append(f"closed-form Tuza upper bound at k=l=1 is {bounds.tuza_n_bounds(1, 1)[1]}")
    return res


def search_g(k: int, budget: int | None = None, workers: int = 1,
             use_closed_form_bounds: bool = False, time_budget: float | None = None) -> SearchResult:
    """Largest |union of A_i| over (k,k) cross systems whose A_i pairwise meet.

    Doubling such a system gives a skew system of 2m pairs, so m is capped
    at C(2k,k)/2; each further pair adds at most k-1 new A-points because
    its A meets the first A.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > 3:
        raise ValueError("g search refuses k > 3")
    budget = default_node_budget() if budget is None else budget
    cap = None
    if use_closed_form_bounds and k >= 2:
        cap = min(bounds.s_of_k(k)[0], bounds.lemma_g_bound(k, k))
    cfg = _PairConfig(k, k, PairFlavor.CROSS, True, binomial(2 * k, k) // 2, k - 1, cap, budget,
                      _deadline(time_budget))
    res = _pair_search(cfg, "g", {"k": k}, 0, None, workers)
    return res


# ------------------------------------------------------------------ f(k)

def f_universe_cap(k: int) -> int:
    """Heuristic cap on the union: ceil((3/2) C(2k-2, k-1)) + 2k."""
    c = binomial(2 * k - 2, k - 1)
    return -(-3 * c // 2) + 2 * k


def _family_twins(fam: tuple, v: int) -> list[int]:
    groups: dict[int, int] = {}
    for e in range(v):
        sig = 0
        for i, f in enumerate(fam):
            if f >> e & 1:
                sig |= 1 << i
        groups[sig] = groups.get(sig, 0) | 1 << e
    return [c for c in groups.values() if c & (c - 1)]


def search_f(k: int, budget: int | None = None, cap: int | None = None,
             time_budget: float | None = None) -> SearchResult:
    """Largest union of a k-uniform intersecting family with covering number k.

    Families grow one k-set at a time; a new set may bring at most k-1 fresh
    points (it has to meet the first set).  Once the union has hit the cap,
    a family whose minimum transversal cannot be missed by any admissible
    new set can never reach covering number k and is cut.
    """
    if k < 2:
        raise ValueError("f(k) needs k >= 2")
    if k > 3:
        raise ValueError("f search refuses k > 3")
    budget = default_node_budget() if budget is None else budget
    cap = f_universe_cap(k) if cap is None else cap
    deadline = _deadline(time_budget)
    start = time.perf_counter()
    best = 0
    best_key: tuple | None = None
    notes = []
    seed = None
    if k >= 3:
        seed = tuza_tau_k_family(k)
        if len(seed.union()) <= cap and covering_number(seed)[0] == k:
            best = len(seed.union())
            notes.append(f"incumbent seeded with the tau=k construction ({best} points)")
    seen: set = set()
    nodes = 0
    saturated = False

    def tau_is_k(fam: tuple) -> bool:
        return covering_number(fam)[0] == k

    def killable(fam: tuple, v: int) -> bool:
        t, trans = covering_number(fam)
        if t >= k:
            return True
        for s in _combos(v, k):
            if not s & trans.mask and all(s & f for f in fam):
                return True
        return False

    def visit(fam: tuple, v: int) -> None:
        nonlocal best, best_key, nodes, saturated
        key = frozenset(fam)
        if key in seen:
            return
        seen.add(key)
        nodes += 1
        if nodes > budget or (deadline is not None and not nodes & 255 and time.time() > deadline):
            raise _OutOfBudget
        if fam and v >= best and tau_is_k(fam):
            skey = tuple(sorted(fam))
            if v > best or best_key is None or skey < best_key:
                best, best_key = v, skey
            if v >= cap:
                saturated = True
        if cap < best:
            return
        if v >= cap and fam and not killable(fam, v):
            return
        classes = _family_twins(fam, v)
        for fa in range(k if not fam else k - 1, -1, -1):
            if v + fa > cap:
                continue
            fresh = ((1 << fa) - 1) << v
            for old in _combos(v, k - fa):
                if not all(old & f for f in fam) or not _canonical_in(classes, old):
                    continue
                s = old | fresh
                if s in key:
                    continue
                visit(fam + (s,), v + fa)

    complete = True
    try:
        visit((), 0)
    except _OutOfBudget:
        complete = False
    if best_key is not None:
        witness = SetFamily.from_masks(best, best_key, k)
    else:
        witness = seed
    if saturated:
        notes.append(f"search reached the universe cap {cap}; value may be cap-limited")
    return SearchResult("f", {"k": k, "cap": cap}, best, witness, complete, nodes,
                        time.perf_counter() - start,
                        "exhaustive within the universe cap" if complete else "search budget exhausted",
                        notes)


# ------------------------------------------------------ independent oracles

def naive_vertex_max(k: int, l: int, flavor: str | PairFlavor, universe: int) -> tuple[int, SetPairSystem | None]:
    """Exhaustive maximum over all systems on [universe] with |A| <= k, |B| <= l.

    No padding, relabelling or pair-count caps: every disjoint (A, B) over
    the universe is a candidate, and cross/weakly systems are grown in
    candidate order while skew systems are grown in every order.
    """
    flavor = PairFlavor.parse(flavor)
    subsets = [m for m in range(1 << universe)]
    cands = [(a, b) for a in subsets if a.bit_count() <= k
             for b in subsets if b.bit_count() <= l and not a & b]
    best = 0
    best_pairs: tuple = ()

    def ok_with(pairs: tuple, a: int, b: int) -> bool:
        for a2, b2 in pairs:
            if flavor is PairFlavor.CROSS:
                if not (a2 & b and a & b2):
                    return False
            elif flavor is PairFlavor.SKEW:
                if not a2 & b:
                    return False
            elif not (a2 & b or a & b2):
                return False
        return True

    def grow(pairs: tuple, union: int, start: int) -> None:
        nonlocal best, best_pairs
        size = union.bit_count()
        if pairs and size > best:
            best, best_pairs = size, pairs
        lo = 0 if flavor is PairFlavor.SKEW else start
        for idx in range(lo, len(cands)):
            a, b = cands[idx]
            if (a, b) in pairs or not ok_with(pairs, a, b):
                continue
            grow(pairs + ((a, b),), union | a | b, idx + 1)

    grow((), 0, 0)
    witness = SetPairSystem.from_masks(k, l, best_pairs, flavor) if best_pairs else None
    return best, witness


__all__ = [
    "SearchResult",
    "catalog_maximal_families",
    "count_maximal_intersecting",
    "naive_count_maximal",
    "naive_vertex_max",
    "search_f",
    "search_g",
    "search_vertex_max",
]
