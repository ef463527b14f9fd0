"""Explicit constructions of intersecting families and set-pair systems.

Fresh points are always numbered consecutively after the base set Y, in the
order they are generated, so outputs are stable across runs.
"""

from __future__ import annotations

from .core import binomial, ksubset_masks
from .families import SetFamily
from .systems import PairFlavor, SetPairSystem, verify_flavor


class _Fresh:
    def __init__(self, start: int) -> None:
        self._next = start

    def take(self) -> int:
        e = self._next
        self._next += 1
        return e

    def block(self, count: int) -> list[int]:
        return [self.take() for _ in range(count)]


def tuza_tau_k_family(k: int) -> SetFamily:
    """k-uniform intersecting family built on |Y| = 2k-2 points.

    Every split of Y into two (k-1)-halves E, E' gets its own new point x and
    contributes E + x and E' + x.  This gives C(2k-2, k-1) sets on
    2k-2 + C(2k-2, k-1)/2 points.  For k >= 3 the covering number is k; at
    k = 2 the family is {a,x}, {b,x}, whose covering number is 1.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    y = 2 * k - 2
    full = (1 << y) - 1
    top = 1 << (y - 1)
    fresh = _Fresh(y + 1)
    sets = []
    for e in ksubset_masks(y, k - 1):
        if e & top:
            continue  # each split once: E is the half avoiding the largest point
        bit = 1 << (fresh.take() - 1)
        sets.append(e | bit)
        sets.append((full ^ e) | bit)
    return SetFamily.from_masks(fresh._next - 1, sets, k)


def erdos_lovasz_pairs(k: int) -> SetPairSystem:
    """(k,k) cross-intersecting system with C(2k-2, k-1) pairs.

    For each (k-1)-subset A' of Y = [2k-2]: A = A' + a, B = (Y - A') + b with
    a, b fresh and distinct from every other fresh point.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    y = 2 * k - 2
    full = (1 << y) - 1
    fresh = _Fresh(y + 1)
    pairs = []
    for a_prime in ksubset_masks(y, k - 1):
        a = a_prime | 1 << (fresh.take() - 1)
        b = (full ^ a_prime) | 1 << (fresh.take() - 1)
        pairs.append((a, b))
    return SetPairSystem.from_masks(k, k, pairs, PairFlavor.CROSS)


def colex_skew_system(k: int, l: int) -> SetPairSystem:
    """(k,l) skew system meeting the pair-count bound C(k+l, k) with equality.

    A_i runs over the k-subsets of [k+l] in colex order; B_i consists of
    [max A_i] - A_i padded with fresh points to exactly l elements.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    fresh = _Fresh(k + l + 1)
    pairs = []
    for a in ksubset_masks(k + l, k):
        top = a.bit_length()
        b = ((1 << top) - 1) & ~a
        for e in fresh.block(l - b.bit_count()):
            b |= 1 << (e - 1)
        pairs.append((a, b))
    return SetPairSystem.from_masks(k, l, pairs, PairFlavor.SKEW)


def _augmenting_matching(adj: list[list[int]], n_right: int) -> list[int] | None:
    """Kuhn's augmenting-path matching; left index -> right index, or None if
    some left vertex stays unmatched."""
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if seen[v]:
                continue
            seen[v] = True
            if match_right[v] == -1 or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in range(len(adj)):
        if not augment(u, [False] * n_right):
            return None
    match_left = [-1] * len(adj)
    for v, u in enumerate(match_right):
        if u != -1:
            match_left[u] = v
    return match_left


def distinct_representatives(k: int, l: int, rotation: int = 0) -> list[tuple[int, int]]:
    """Injective map from (k-1)-subsets A' of Y = [k+l-1] to (l-1)-subsets
    B' of Y - A', as (A', B') mask pairs in colex order of A'."""
    y = k + l - 1
    left = list(ksubset_masks(y, k - 1))
    right = list(ksubset_masks(y, l - 1))
    if rotation:
        r = rotation % len(right)
        right = right[r:] + right[:r]
    adj = [[j for j, b in enumerate(right) if not a & b] for a in left]
    match = _augmenting_matching(adj, len(right))
    if match is None:
        raise RuntimeError(f"no system of distinct representatives for k={k}, l={l}")
    return [(a, right[j]) for a, j in zip(left, match)]


def weakly_triple_system(k: int, l: int, max_retries: int = 8) -> SetPairSystem:
    """(k,l) weakly cross-intersecting system of 3*C(k+l-1, k-1) pairs.

    Each (A', B') from :func:`distinct_representatives` gets three fresh
    points x, y, z and yields (A'+x, B'+y), (A'+y, B'+z), (A'+z, B'+x).
    At k = 1 the single A' is empty and one point of Y goes unused, so the
    vertex set has l + 2 points rather than l + 3.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > l:
        raise ValueError("the triple construction needs k <= l")
    y = k + l - 1
    for attempt in range(max_retries + 1):
        fresh = _Fresh(y + 1)
        pairs = []
        for a, b in distinct_representatives(k, l, rotation=attempt):
            x, yy, z = (1 << (e - 1) for e in fresh.block(3))
            pairs += [(a | x, b | yy), (a | yy, b | z), (a | z, b | x)]
        system = SetPairSystem.from_masks(k, l, pairs, PairFlavor.WEAKLY)
        if verify_flavor(system):
            return system
    raise RuntimeError(f"triple system failed weakly verification after {max_retries} retries")


def ekr_star(n: int, k: int, e: int) -> SetFamily:
    """All k-subsets of [n] containing ``e``, in colex order."""
    if not 1 <= e <= n:
        raise ValueError(f"centre {e} outside 1..{n}")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}")
    bit = 1 << (e - 1)
    return SetFamily.from_masks(n, [s for s in ksubset_masks(n, k) if s & bit], k)


def expected_counts(name: str, k: int, l: int | None = None) -> dict[str, int]:
    """Closed-form member and vertex counts for each construction."""
    if name == "tuza":
        c = binomial(2 * k - 2, k - 1)
        return {"members": c, "vertices": 2 * k - 2 + c // 2}
    if name == "erdos-lovasz":
        c = binomial(2 * k - 2, k - 1)
        return {"members": c, "vertices": 2 * k - 2 + 2 * c}
    if name == "colex-skew":
        return {"members": binomial(k + l, k), "vertices": k + l + binomial(k + l, k + 1)}
    if name == "weakly-triple":
        c = binomial(k + l - 1, k - 1)
        return {"members": 3 * c, "vertices": k + l - 1 + 3 * c}
    raise ValueError(f"unknown construction {name!r}")
