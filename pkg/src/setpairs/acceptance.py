"""Reproduction suite: each criterion is a function returning a verdict plus
human-readable detail lines, run under a wall-clock limit."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bounds
from .bounds import ANOMALY
from .core import binomial, ksubset_masks
from .constructions import (
    colex_skew_system,
    erdos_lovasz_pairs,
    expected_counts,
    tuza_tau_k_family,
    weakly_triple_system,
)
from .families import (
    covering_number,
    doubled_pair_system,
    is_intersecting,
    minimal_generator,
    witness_pair_system,
)
from .search import (
    catalog_maximal_families,
    count_maximal_intersecting,
    naive_count_maximal,
    search_f,
    search_vertex_max,
)
from .systems import (
    PairFlavor,
    SetPairSystem,
    alpha_beta_profile,
    bollobas_weight,
    peel_decomposition,
    verify_flavor,
    vertex_set,
)


@dataclass
class Outcome:
    number: int
    name: str
    ok: bool
    seconds: float
    limit: float
    lines: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds <= self.limit

    def headline(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        slow = "" if self.seconds <= self.limit else " (over time limit)"
        return f"[{mark}] {self.number}. {self.name}: {self.seconds:.2f}s / {self.limit:g}s{slow}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "checks_ok": self.ok, "seconds": round(self.seconds, 3),
                "limit_seconds": self.limit, "details": list(self.lines)}


Verdict = tuple[bool, list[str]]


def _tally(checks: list[tuple[str, bool]]) -> Verdict:
    bad = [label for label, ok in checks if not ok]
    lines = [f"{len(checks) - len(bad)}/{len(checks)} checks hold"]
    lines += [f"failed: {label}" for label in bad]
    return not bad, lines


# ------------------------------------------------------------------ criteria

def constructions_conform() -> Verdict:
    checks: list[tuple[str, bool]] = []
    for k in range(2, 7):
        fam = tuza_tau_k_family(k)
        exp = expected_counts("tuza", k)
        checks.append((f"tuza k={k} intersecting", is_intersecting(fam)))
        checks.append((f"tuza k={k} members {exp['members']}", len(fam) == exp["members"]))
        checks.append((f"tuza k={k} union {exp['vertices']}", len(fam.union()) == exp["vertices"]))
        if k <= 4:
            tau = covering_number(fam)[0]
            checks.append((f"tuza k={k} covering number {k} (got {tau})", tau == k))

        el = erdos_lovasz_pairs(k)
        exp = expected_counts("erdos-lovasz", k)
        checks.append((f"erdos-lovasz k={k} cross", bool(verify_flavor(el))))
        checks.append((f"erdos-lovasz k={k} union {exp['vertices']}",
                       len(vertex_set(el)) == exp["vertices"]))

        for l in range(k, 7):
            sk = colex_skew_system(k, l)
            exp = expected_counts("colex-skew", k, l)
            checks.append((f"colex-skew ({k},{l}) skew", bool(verify_flavor(sk))))
            checks.append((f"colex-skew ({k},{l}) pairs {exp['members']}",
                           len(sk.pairs) == exp["members"] == bounds.bollobas_pair_bound(k, l)))
            checks.append((f"colex-skew ({k},{l}) union {exp['vertices']}",
                           len(vertex_set(sk)) == exp["vertices"]))

            tr = weakly_triple_system(k, l)
            exp = expected_counts("weakly-triple", k, l)
            checks.append((f"triples ({k},{l}) weakly", bool(verify_flavor(tr))))
            checks.append((f"triples ({k},{l}) pairs {exp['members']}", len(tr.pairs) == exp["members"]))
            checks.append((f"triples ({k},{l}) union {exp['vertices']}",
                           len(vertex_set(tr)) == exp["vertices"]))
    return _tally(checks)


def squeeze_n22() -> Verdict:
    res = search_vertex_max(2, 2, PairFlavor.CROSS)
    upper = Fraction(11, 10) * binomial(4, 2)
    lower = bounds.erdos_lovasz_lower(2)
    ok = res.value == 6 and res.proven_optimal and lower <= res.value <= upper
    return ok, [f"n(2,2) = {res.value}, proven_optimal={res.proven_optimal}, "
                f"nodes={res.nodes_explored}; window {lower} <= n(2,2) <= {upper}"]


def m_dual_oracle() -> Verdict:
    checks = []
    for n, k in [(3, 2), (4, 2), (5, 2), (6, 2), (5, 3)]:
        fast = count_maximal_intersecting(n, k).value
        slow = naive_count_maximal(n, k)
        checks.append((f"M({n},{k}) clique {fast} vs naive {slow}", fast == slow))
    for n in range(4, 9):
        got = count_maximal_intersecting(n, 2).value
        want = n + binomial(n, 3)
        checks.append((f"M({n},2) = {got}, n + C(n,3) = {want}", got == want))
    ok, lines = _tally(checks)
    return ok, lines + [label for label, _ in checks]


def generator_catalogs() -> Verdict:
    checks = []
    lines = []
    for n, k in [(5, 2), (6, 2), (5, 3)]:
        cap = binomial(2 * k, k) // 2
        largest = 0
        count = 0
        good = True
        for fam in catalog_maximal_families(n, k):
            count += 1
            gw = minimal_generator(fam, n, k)
            size = len(gw.generator)
            largest = max(largest, size)
            cross = witness_pair_system(gw, k)
            good &= size <= cap
            good &= bool(verify_flavor(cross, PairFlavor.CROSS))
            good &= bollobas_weight(cross) <= 1
            good &= bool(verify_flavor(doubled_pair_system(gw, k), PairFlavor.SKEW))
        checks.append((f"({n},{k})", good))
        lines.append(f"({n},{k}): {count} maximal families, largest generator {largest} <= {cap}")
    ok, tally = _tally(checks)
    return ok, tally + lines


def f_of_2() -> Verdict:
    res = search_f(2)
    fam = res.witness
    triangle = (fam is not None and len(fam) == 3 and len(fam.union()) == 3
                and sorted(fam.masks()) == [0b011, 0b101, 0b110])
    eighth, lower, _ = bounds.f_bounds(2)
    ok = res.value == 3 and res.proven_optimal and triangle and eighth < 3 and lower == 3
    return ok, [f"f(2) = {res.value}, proven_optimal={res.proven_optimal}, triangle witness={triangle}; "
                f"window {eighth} < f(2), lower formula {lower}"]


def bounds_ledger() -> Verdict:
    s = {k: bounds.s_of_k(k) for k in range(1, 41)}
    checks = [
        ("S(2)=6, S(3)=22, S(4)=77", (s[2][0], s[3][0], s[4][0]) == (6, 22, 77)),
        ("s(3) = s(4) = 11/10", s[3][1] == s[4][1] == Fraction(11, 10)),
        ("s strictly decreasing on 4..40", all(s[k][1] > s[k + 1][1] for k in range(4, 40))),
        ("s <= 11/10 on 3..40", all(s[k][1] <= Fraction(11, 10) for k in range(3, 41))),
        ("k=l upper sum equals S(k) on 2..20",
         all(bounds.tuza_n_bounds(k, k)[1] == s[k][0] for k in range(2, 21))),
        ("n1_bounds(2,2) = (8,12)", bounds.n1_bounds(2, 2) == (8, 12)),
        ("mmax_bounds(2,2) = (16,12)", bounds.mmax_bounds(2, 2) == (16, 12)),
        ("n2_lower(2,2) = 12", bounds.n2_lower(2, 2) == 12),
    ]
    ok, lines = _tally(checks)
    return ok, lines + [f"s(k) for k=1..6: " + ", ".join(str(s[k][1]) for k in range(1, 7))]


def _complement_system(k: int, l: int) -> SetPairSystem:
    full = (1 << (k + l)) - 1
    return SetPairSystem.from_masks(k, l, [(a, full ^ a) for a in ksubset_masks(k + l, k)], PairFlavor.CROSS)


def _conditions_hold(pairs: list[tuple[set, set]]) -> bool:
    for i, (a, _) in enumerate(pairs):
        for j, (_, b) in enumerate(pairs):
            if (i == j) == bool(a & b):
                return False
    return True


def bollobas_property(trials: int = 1000, seed: int = 20240601) -> Verdict:
    rng = random.Random(seed)
    sources = [erdos_lovasz_pairs(k) for k in (2, 3, 4)]
    sources += [_complement_system(k, l) for k, l in [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3)]]
    weight_fail = count_fail = missed = mutations = 0
    for _ in range(trials):
        src = rng.choice(sources)
        m = rng.randint(1, len(src.pairs))
        picked = rng.sample([(set(a), set(b)) for a, b in src.pairs], m)
        points = sorted(set().union(*(a | b for a, b in picked)))
        image = rng.sample(range(1, 3 * len(points) + 1), len(points))
        relabel = dict(zip(points, image))
        pairs = [({relabel[x] for x in a}, {relabel[x] for x in b}) for a, b in picked]
        sys = SetPairSystem.from_lists(src.k, src.l, pairs)
        if not verify_flavor(sys) or bollobas_weight(sys) > 1:
            weight_fail += 1
        if len(pairs) > bounds.bollobas_pair_bound(src.k, src.l):
            count_fail += 1

        # mutate one pair so that it may break (1) or (2), then compare
        # the verifier with the plain-set oracle
        mutated = [(set(a), set(b)) for a, b in pairs]
        i = rng.randrange(len(mutated))
        a, b = mutated[i]
        if rng.random() < 0.5 or len(mutated) == 1:
            if a and b:
                a.discard(rng.choice(sorted(a)))
                a.add(rng.choice(sorted(b)))
        else:
            j = rng.choice([t for t in range(len(mutated)) if t != i])
            bj = mutated[j][1]
            spare = iter(range(3 * len(points) + 1, 4 * len(points) + 2))
            for x in sorted(bj & a):
                bj.discard(x)
                bj.add(next(spare))
        broken = not _conditions_hold(mutated)
        if broken:
            mutations += 1
            if verify_flavor(SetPairSystem.from_lists(src.k, src.l, mutated)):
                missed += 1
    ok = weight_fail == count_fail == missed == 0
    return ok, [f"{trials} relabelled subsystems: {weight_fail} weight violations, "
                f"{count_fail} count violations",
                f"{mutations} breaking mutations, {missed} missed by the verifier"]


def peeling_identities() -> Verdict:
    systems = [colex_skew_system(k, l) for k in range(1, 5) for l in range(1, 5)]
    systems += [erdos_lovasz_pairs(k) for k in (2, 3, 4)]
    systems += [weakly_triple_system(k, l) for k in range(1, 4) for l in range(k, 5)]
    identity_ok = True
    for sys in systems:
        alpha, beta = alpha_beta_profile(sys)
        identity_ok &= sum(alpha) + sum(beta) == len(vertex_set(sys))
    lines = [f"alpha/beta identity on {len(systems)} systems: {'holds' if identity_ok else 'FAILS'}"]
    full_ok = True
    for k in range(1, 5):
        for l in range(1, 5):
            tr = peel_decomposition(colex_skew_system(k, l))
            full_ok &= tr.full_sum == tr.vertex_count and not tr.class_bound_excess()
            verdict = "equal" if tr.gap == 0 else f"gap {tr.gap}"
            lines.append(f"peel colex-skew ({k},{l}): levels {tr.level_sizes}, "
                         f"sum to k+l-1 = {tr.truncated_sum}, all levels = {tr.full_sum}, "
                         f"|V| = {tr.vertex_count} ({verdict})")
    return identity_ok and full_ok, lines


def anomaly_report() -> Verdict:
    res = search_vertex_max(1, 1, PairFlavor.CROSS)
    formula = bounds.tuza_n_bounds(1, 1)[1]
    report = next(r for r in bounds.bound_reports(1, 1) if r.name == "tuza_n_upper")
    skew = search_vertex_max(1, 1, PairFlavor.SKEW)
    skew_formula = bounds.n1_upper(1, 1)
    ok = (res.value == 2 and res.proven_optimal and formula == 1 and ANOMALY in report.flags)
    return ok, [f"n(1,1): search {res.value} vs summation formula {formula} [{ANOMALY}]",
                f"n1(1,1): search {skew.value} vs skew formula {skew_formula} [{ANOMALY}]"]


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    limit: float
    run: Callable[[], Verdict]


CRITERIA = (
    Criterion(1, "constructions", 10, constructions_conform),
    Criterion(2, "squeeze", 60, squeeze_n22),
    Criterion(3, "m-oracle", 60, m_dual_oracle),
    Criterion(4, "generators", 120, generator_catalogs),
    Criterion(5, "f2", 30, f_of_2),
    Criterion(6, "bounds", 5, bounds_ledger),
    Criterion(7, "bollobas", 30, bollobas_property),
    Criterion(8, "peeling", 30, peeling_identities),
    Criterion(9, "anomaly", 60, anomaly_report),
)


def select(only: str | None) -> list[Criterion]:
    if not only:
        return list(CRITERIA)
    wanted = {w.strip() for w in only.split(",") if w.strip()}
    picked = [c for c in CRITERIA if c.name in wanted or str(c.number) in wanted]
    unknown = wanted - {c.name for c in picked} - {str(c.number) for c in picked}
    if unknown:
        names = ", ".join(c.name for c in CRITERIA)
        raise ValueError(f"unknown criteria {sorted(unknown)}; choose from {names} or 1-9")
    return picked


def run_criterion(c: Criterion) -> Outcome:
    start = time.perf_counter()
    try:
        ok, lines = c.run()
    except Exception as exc:  # a crash is a failed criterion, not a crashed report
        ok, lines = False, [f"raised {type(exc).__name__}: {exc}"]
    return Outcome(c.number, c.name, ok, time.perf_counter() - start, c.limit, lines)


def run_all(only: str | None = None) -> list[Outcome]:
    return [run_criterion(c) for c in select(only)]
