"""Set-pair systems (A_i, B_i): flavor predicates, weights, and decompositions."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import ElementSet, binomial, mask_elements


class PairFlavor(enum.Enum):
    CROSS = "cross"
    SKEW = "skew"
    WEAKLY = "weakly"

    @classmethod
    def parse(cls, value: "str | PairFlavor") -> "PairFlavor":
        if isinstance(value, PairFlavor):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown flavor {value!r}; expected cross, skew or weakly") from None


@dataclass(frozen=True)
class SetPairSystem:
    """Ordered pairs (A_i, B_i) with |A_i| <= k and |B_i| <= l.

    Order matters for the skew flavor.  ``flavor`` is only a claim; use
    :func:`verify_flavor` to check it.
    """

    k: int
    l: int
    pairs: tuple[tuple[ElementSet, ElementSet], ...] = ()
    flavor: PairFlavor = PairFlavor.CROSS

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((a, b) for a, b in self.pairs))
        object.__setattr__(self, "flavor", PairFlavor.parse(self.flavor))
        if self.k < 0 or self.l < 0:
            raise ValueError("size caps must be nonnegative")
        for i, (a, b) in enumerate(self.pairs):
            if len(a) > self.k or len(b) > self.l:
                raise ValueError(
                    f"pair {i} has sizes ({len(a)},{len(b)}) exceeding caps ({self.k},{self.l})"
                )

    @classmethod
    def from_lists(
        cls,
        k: int,
        l: int,
        pairs: Iterable[tuple[Iterable[int], Iterable[int]]],
        flavor: str | PairFlavor = PairFlavor.CROSS,
    ) -> "SetPairSystem":
        return cls(k, l, tuple((ElementSet.of(a), ElementSet.of(b)) for a, b in pairs), flavor)

    @classmethod
    def from_masks(
        cls, k: int, l: int, pairs: Iterable[tuple[int, int]], flavor: str | PairFlavor
    ) -> "SetPairSystem":
        return cls(k, l, tuple((ElementSet(a), ElementSet(b)) for a, b in pairs), flavor)

    def __len__(self) -> int:
        return len(self.pairs)

    def masks(self) -> tuple[list[int], list[int]]:
        return [a.mask for a, _ in self.pairs], [b.mask for _, b in self.pairs]

    def with_pairs(self, pairs: Sequence[tuple[ElementSet, ElementSet]]) -> "SetPairSystem":
        return SetPairSystem(self.k, self.l, tuple(pairs), self.flavor)

    def with_flavor(self, flavor: str | PairFlavor) -> "SetPairSystem":
        return SetPairSystem(self.k, self.l, self.pairs, flavor)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "flavor": self.flavor.value,
            "pairs": [{"A": a.to_json(), "B": b.to_json()} for a, b in self.pairs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SetPairSystem":
        try:
            pairs = [(p["A"], p["B"]) for p in data["pairs"]]
            return cls.from_lists(int(data["k"]), int(data["l"]), pairs, data.get("flavor", "cross"))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed set-pair system: {exc}") from exc


@dataclass(frozen=True)
class FlavorCheck:
    ok: bool
    violation: tuple[int, int] | None = None
    condition: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violation": list(self.violation) if self.violation else None,
            "condition": self.condition,
        }


def verify_flavor(sys: SetPairSystem, flavor: str | PairFlavor | None = None) -> FlavorCheck:
    """Check the disjointness condition and the flavor's crossing condition.

    On failure the lexicographically first violating index pair ``(i, j)`` is
    reported (0-based; ``i == j`` means A_i and B_i meet).
    """
    flavor = sys.flavor if flavor is None else PairFlavor.parse(flavor)
    A, B = sys.masks()
    m = len(A)
    for i in range(m):
        a_i, b_i = A[i], B[i]
        for j in range(m):
            if i == j:
                if a_i & b_i:
                    return FlavorCheck(False, (i, i), "A_i and B_i must be disjoint")
                continue
            if a_i & B[j]:
                continue
            if flavor is PairFlavor.CROSS:
                return FlavorCheck(False, (i, j), "A_i must meet B_j for i != j")
            if flavor is PairFlavor.SKEW:
                if i < j:
                    return FlavorCheck(False, (i, j), "A_i must meet B_j for i < j")
            elif not A[j] & b_i:
                return FlavorCheck(False, (i, j), "A_i meets B_j or A_j meets B_i for i != j")
    return FlavorCheck(True)


def bollobas_weight(sys: SetPairSystem) -> Fraction:
    """Sum of 1 / C(|A_i| + |B_i|, |A_i|) over all pairs."""
    total = Fraction(0)
    for i, (a, b) in enumerate(sys.pairs):
        if a.intersects(b):
            raise ValueError(f"pair {i} is not disjoint")
        total += Fraction(1, binomial(len(a) + len(b), len(a)))
    return total


def vertex_set(sys: SetPairSystem) -> ElementSet:
    mask = 0
    for a, b in sys.pairs:
        mask |= a.mask | b.mask
    return ElementSet(mask)


def alpha_beta_profile(sys: SetPairSystem) -> tuple[list[int], list[int]]:
    """Counts of pairs whose A (resp. B) brings at least t points new to the prefix.

    ``alpha[t-1]`` is the number of i with |A_i minus the union of earlier
    pairs| >= t, for t = 1..k; ``beta`` likewise for B with t = 1..l.  When
    every A_i is disjoint from B_i, sum(alpha) + sum(beta) is the vertex count.
    """
    alpha = [0] * sys.k
    beta = [0] * sys.l
    seen = 0
    for a, b in sys.pairs:
        new_a = (a.mask & ~seen).bit_count()
        new_b = (b.mask & ~seen).bit_count()
        for t in range(new_a):
            alpha[t] += 1
        for t in range(new_b):
            beta[t] += 1
        seen |= a.mask | b.mask
    return alpha, beta


@dataclass(frozen=True)
class PeelLevel:
    """One peeling step: survivors S_j chosen from level j-1 and the private
    point x_i removed from each survivor to form level j."""

    j: int
    survivors: tuple[int, ...]
    removed: dict[int, int]
    before: dict[int, tuple[int, int]]
    classes: dict[tuple[int, int], int]

    @property
    def size(self) -> int:
        return len(self.survivors)


@dataclass(frozen=True)
class PeelTrace:
    k: int
    l: int
    levels: tuple[PeelLevel, ...]
    vertex_count: int

    @property
    def level_sizes(self) -> list[int]:
        return [lv.size for lv in self.levels]

    @property
    def truncated_sum(self) -> int:
        """Sum of |M_j| over 1 <= j <= k+l-1."""
        return sum(lv.size for lv in self.levels if 1 <= lv.j <= self.k + self.l - 1)

    @property
    def full_sum(self) -> int:
        return sum(lv.size for lv in self.levels)

    @property
    def gap(self) -> int:
        return self.vertex_count - self.truncated_sum

    def class_bound_excess(self) -> list[tuple[int, tuple[int, int], int, int]]:
        """Index-pair classes whose size exceeds C(k+l-j, k-a).

        That is the skew Bollobas bound for the class of level j with |A| <= k-a and
        |B| <= l-b; empty for any skew input.
        """
        out = []
        for lv in self.levels:
            for (a, b), count in sorted(lv.classes.items()):
                cap = binomial(self.k + self.l - lv.j, self.k - a)
                if count > cap:
                    out.append((lv.j, (a, b), count, cap))
        return out

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "vertex_count": self.vertex_count,
            "level_sizes": self.level_sizes,
            "truncated_sum": self.truncated_sum,
            "full_sum": self.full_sum,
            "gap": self.gap,
            "levels": [
                {
                    "j": lv.j,
                    "survivors": list(lv.survivors),
                    "removed": {str(i): x for i, x in lv.removed.items()},
                    "classes": {f"{a},{b}": c for (a, b), c in sorted(lv.classes.items())},
                }
                for lv in self.levels
            ],
        }


def peel_decomposition(sys: SetPairSystem) -> PeelTrace:
    """Repeatedly keep a minimal union-preserving index set and strip one
    private point from each kept pair, until nothing is left.

    The minimal set is chosen greedily: indices are visited in increasing
    order and dropped when every point they hold is held by another
    survivor.  Each survivor loses its smallest private point.  The trace runs
    to exhaustion, so ``full_sum`` always equals the vertex count; whether the
    levels up to k+l-1 alone already account for it is reported by ``gap``.
    """
    if not (verify_flavor(sys, PairFlavor.SKEW) or verify_flavor(sys, PairFlavor.WEAKLY)):
        raise ValueError("peeling needs a skew or weakly cross-intersecting system")
    A, B = sys.masks()
    orig_a = {i: A[i] for i in range(len(A))}
    orig_b = {i: B[i] for i in range(len(B))}
    current = {i: (A[i], B[i]) for i in range(len(A))}
    survivors = list(range(len(A)))
    levels = []
    j = 0
    while True:
        counts: dict[int, int] = {}
        for i in survivors:
            a, b = current[i]
            for e in mask_elements(a | b):
                counts[e] = counts.get(e, 0) + 1
        if not counts:
            break
        kept = []
        for i in survivors:
            a, b = current[i]
            pts = mask_elements(a | b)
            if all(counts[e] >= 2 for e in pts):
                for e in pts:
                    counts[e] -= 1
            else:
                kept.append(i)
        j += 1
        removed = {}
        before = {}
        nxt = {}
        classes: dict[tuple[int, int], int] = {}
        for i in kept:
            a, b = current[i]
            before[i] = (a, b)
            x = min(e for e in mask_elements(a | b) if counts[e] == 1)
            removed[i] = x
            bit = 1 << (x - 1)
            na, nb = a & ~bit, b & ~bit
            nxt[i] = (na, nb)
            cls = ((orig_a[i] & ~na).bit_count(), (orig_b[i] & ~nb).bit_count())
            classes[cls] = classes.get(cls, 0) + 1
        levels.append(PeelLevel(j, tuple(kept), removed, before, classes))
        current = nxt
        survivors = kept
    return PeelTrace(sys.k, sys.l, tuple(levels), len(vertex_set(sys)))
