"""Intersecting families: predicates, the I(F) closure, covering number, and
minimal generators with their cross-intersecting witness pairs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ElementSet, Universe, ksubset_masks
from .systems import PairFlavor, SetPairSystem


@dataclass(frozen=True)
class SetFamily:
    """Distinct sets over ``[n]``, optionally k-uniform."""

    n: int
    sets: tuple[ElementSet, ...]
    k: int | None = None

    def __post_init__(self) -> None:
        sets = tuple(self.sets)
        object.__setattr__(self, "sets", sets)
        Universe(self.n)
        if len({s.mask for s in sets}) != len(sets):
            raise ValueError("family contains duplicate sets")
        for s in sets:
            if s.mask.bit_length() > self.n:
                raise ValueError(f"set {s!r} is not inside [{self.n}]")
            if self.k is not None and len(s) != self.k:
                raise ValueError(f"set {s!r} is not of size {self.k}")

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]], k: int | None = None) -> "SetFamily":
        return cls(n, tuple(ElementSet.of(s) for s in sets), k)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], k: int | None = None) -> "SetFamily":
        return cls(n, tuple(ElementSet(m) for m in masks), k)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def masks(self) -> list[int]:
        return [s.mask for s in self.sets]

    def mask_set(self) -> frozenset[int]:
        return frozenset(s.mask for s in self.sets)

    def union(self) -> ElementSet:
        mask = 0
        for s in self.sets:
            mask |= s.mask
        return ElementSet(mask)

    def sorted_colex(self) -> "SetFamily":
        return SetFamily(self.n, tuple(sorted(self.sets, key=lambda s: s.mask)), self.k)

    def same_members(self, other: "SetFamily") -> bool:
        return self.mask_set() == other.mask_set()

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "sets": [s.to_json() for s in self.sets]}

    @classmethod
    def from_json(cls, data: dict) -> "SetFamily":
        try:
            k = data.get("k")
            return cls.of(int(data["n"]), data["sets"], None if k is None else int(k))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed set family: {exc}") from exc


def _masks(fam: SetFamily | Sequence[int]) -> list[int]:
    return fam.masks() if isinstance(fam, SetFamily) else list(fam)


def is_intersecting(fam: SetFamily | Sequence[int]) -> bool:
    masks = _masks(fam)
    for i, a in enumerate(masks):
        if not a:
            return False
        for b in masks[i + 1:]:
            if not a & b:
                return False
    return True


def closure_masks(masks: Sequence[int], n: int, k: int) -> list[int]:
    out = []
    for g in ksubset_masks(n, k):
        for f in masks:
            if not g & f:
                break
        else:
            out.append(g)
    return out


def closure_I(fam: SetFamily | Sequence[int], n: int, k: int) -> SetFamily:
    """All k-subsets of [n] meeting every member of ``fam``, in colex order."""
    return SetFamily.from_masks(n, closure_masks(_masks(fam), n, k), k)


def is_maximal_intersecting(fam: SetFamily | Sequence[int], n: int, k: int) -> bool:
    masks = _masks(fam)
    if not is_intersecting(masks):
        return False
    return sorted(masks) == closure_masks(masks, n, k)


def covering_number(fam: SetFamily | Sequence[int]) -> tuple[int, ElementSet]:
    """Exact minimum transversal size, with one minimum transversal.

    Branches on the elements of a smallest member not yet hit; a greedy
    transversal gives the initial incumbent and a greedy packing of pairwise
    disjoint unhit members gives the lower bound used for pruning.
    """
    masks = list(dict.fromkeys(_masks(fam)))
    if not masks:
        raise ValueError("covering number of an empty family is undefined")
    if any(m == 0 for m in masks):
        raise ValueError("family contains the empty set, which no transversal meets")

    best = _greedy_transversal(masks)
    best_size = best.bit_count()

    def packing_bound(unhit: list[int]) -> int:
        used = 0
        count = 0
        for m in sorted(unhit, key=int.bit_count):
            if not m & used:
                used |= m
                count += 1
        return count

    def branch(chosen: int, size: int, unhit: list[int]) -> None:
        nonlocal best, best_size
        if not unhit:
            if size < best_size:
                best, best_size = chosen, size
            return
        if size + packing_bound(unhit) >= best_size:
            return
        target = min(unhit, key=lambda m: (m.bit_count(), m))
        x = target
        while x:
            low = x & -x
            x ^= low
            branch(chosen | low, size + 1, [m for m in unhit if not m & low])

    branch(0, 0, masks)
    return best_size, ElementSet(best)


def _greedy_transversal(masks: list[int]) -> int:
    chosen = 0
    unhit = list(masks)
    while unhit:
        counts: dict[int, int] = {}
        for m in unhit:
            x = m
            while x:
                low = x & -x
                x ^= low
                counts[low] = counts.get(low, 0) + 1
        low = max(counts, key=lambda b: (counts[b], -b))
        chosen |= low
        unhit = [m for m in unhit if not m & low]
    return chosen


@dataclass(frozen=True)
class GeneratorWitness:
    """A minimal generator F0 of a maximal family and, for each F_i in F0, a
    k-set G_i outside the family meeting every member of F0 except F_i."""

    generator: SetFamily
    witnesses: tuple[tuple[ElementSet, ElementSet], ...]

    def to_json(self) -> dict:
        return {
            "generator": self.generator.to_json(),
            "witnesses": [{"F": f.to_json(), "G": g.to_json()} for f, g in self.witnesses],
        }


def minimal_generator(fam: SetFamily | Sequence[int], n: int, k: int) -> GeneratorWitness:
    """Inclusion-minimal F0 inside a maximal family F with I(F0) = F.

    Members are tried for removal once each, in colex order.  A single pass
    suffices: I is antitone, so a removal that failed early keeps failing
    once F0 has shrunk further.
    """
    masks = sorted(_masks(fam))
    if not is_maximal_intersecting(masks, n, k):
        raise ValueError("minimal_generator needs a maximal intersecting family")
    target = masks
    gen = list(masks)
    for f in masks:
        trial = [g for g in gen if g != f]
        if closure_masks(trial, n, k) == target:
            gen = trial
    members = set(masks)
    witnesses = []
    for f in gen:
        rest = [g for g in gen if g != f]
        g_i = next(g for g in closure_masks(rest, n, k) if g not in members)
        witnesses.append((ElementSet(f), ElementSet(g_i)))
    return GeneratorWitness(SetFamily.from_masks(n, gen, k), tuple(witnesses))


def witness_pair_system(gw: GeneratorWitness, k: int) -> SetPairSystem:
    """The (k,k) cross-intersecting system {(F_i, G_i)}."""
    return SetPairSystem(k, k, gw.witnesses, PairFlavor.CROSS)


def doubled_pair_system(gw: GeneratorWitness, k: int) -> SetPairSystem:
    """(F_1,G_1),...,(F_s,G_s),(G_1,F_1),...,(G_s,F_s): skew because F0 is intersecting."""
    pairs = list(gw.witnesses) + [(g, f) for f, g in gw.witnesses]
    return SetPairSystem(k, k, tuple(pairs), PairFlavor.SKEW)

