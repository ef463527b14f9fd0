"""Ground-set arithmetic: bit-indexed element sets, exact binomials and colex order.

Elements are positive integers ``1..n``; element ``e`` is stored as bit ``e - 1``
of a Python integer.  Colex order on k-subsets coincides with numeric order of
these bitmasks, which is what makes Gosper's hack a colex enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

#: Largest element an :class:`ElementSet` may hold.  Construction unions grow
#: like C(2k, k), so the default leaves plenty of room for desk-scale work.
MAX_ELEMENT = 4096


def set_max_element(limit: int) -> None:
    global MAX_ELEMENT
    if limit < 1:
        raise ValueError("element limit must be positive")
    MAX_ELEMENT = limit


def binomial(n: int, k: int) -> int:
    """C(n, k) as an exact integer, 0 outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def mask_elements(mask: int) -> list[int]:
    """Members (1-based, ascending) of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def elements_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


@dataclass(frozen=True, order=False)
class ElementSet:
    """Immutable finite set of positive integers backed by a bitmask."""

    mask: int = 0

    @classmethod
    def of(cls, elements: Iterable[int]) -> "ElementSet":
        mask = 0
        for e in elements:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"elements must be integers, got {e!r}")
            if e < 1 or e > MAX_ELEMENT:
                raise ValueError(f"element {e} outside 1..{MAX_ELEMENT}")
            mask |= 1 << (e - 1)
        return cls(mask)

    def __post_init__(self) -> None:
        if self.mask < 0:
            raise ValueError("negative mask")
        if self.mask.bit_length() > MAX_ELEMENT:
            raise ValueError(f"element {self.mask.bit_length()} outside 1..{MAX_ELEMENT}")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(mask_elements(self.mask))

    def __contains__(self, e: object) -> bool:
        return isinstance(e, int) and e >= 1 and bool(self.mask >> (e - 1) & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask & ~other.mask)

    def __xor__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.mask ^ other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        return self.mask & ~other.mask == 0

    def intersects(self, other: "ElementSet") -> bool:
        return self.mask & other.mask != 0

    def isdisjoint(self, other: "ElementSet") -> bool:
        return self.mask & other.mask == 0

    def max(self) -> int:
        if not self.mask:
            raise ValueError("max of empty set")
        return self.mask.bit_length()

    def to_json(self) -> list[int]:
        return mask_elements(self.mask)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> "ElementSet":
        return cls.of(data)

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


@dataclass(frozen=True)
class Universe:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("universe size must be at least 1")

    def full(self) -> ElementSet:
        return ElementSet((1 << self.n) - 1)

    def contains(self, s: ElementSet) -> bool:
        return s.mask.bit_length() <= self.n


def colex_rank(s: ElementSet | Iterable[int]) -> int:
    """0-based colex position of ``s`` among all k-subsets of the naturals."""
    elems = list(s) if isinstance(s, ElementSet) else sorted(s)
    if not elems:
        raise ValueError("colex rank of the empty set is undefined")
    return sum(comb(a - 1, j) for j, a in enumerate(elems, start=1))


def colex_unrank(r: int, k: int) -> ElementSet:
    """Inverse of :func:`colex_rank` for k-subsets."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    if k < 1:
        raise ValueError("k must be positive")
    elems = []
    for j in range(k, 0, -1):
        # largest c with C(c, j) <= r; c >= j - 1 always works
        c = j - 1
        while comb(c + 1, j) <= r:
            c += 1
        r -= comb(c, j)
        elems.append(c + 1)
    return ElementSet.of(elems)


def ksubset_masks(n: int, k: int) -> Iterator[int]:
    """All k-subsets of [n] as bitmasks, in colex (= numeric) order."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        # Gosper's hack: next integer with the same popcount
        low = x & -x
        ripple = x + low
        x = (((ripple ^ x) >> 2) // low) | ripple


def ksubsets_colex(universe: Universe | int, k: int) -> Iterator[ElementSet]:
    n = universe.n if isinstance(universe, Universe) else universe
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    for mask in ksubset_masks(n, k):
        yield ElementSet(mask)
