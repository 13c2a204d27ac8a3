"""Exact set-system solvers: minimum hitting set and maximum disjoint packing.

Sets are handled as integer bitmasks over a universe ``[0, U)``. Both solvers
are exact branch and bound searches; all state lives inside one call.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import InstanceSet, mask_members, members_mask, popcount
from .errors import BudgetExceeded, CapExceeded

EXACT_UNIVERSE_CAP = 32
# above this many sets, minimization goes through the dense subset lattice
_DENSE_THRESHOLD = 64
_DENSE_UNIVERSE_CAP = 16


@dataclass(frozen=True)
class SetFamily:
    universe: int
    masks: tuple[int, ...]

    def __post_init__(self):
        limit = 1 << self.universe
        for m in self.masks:
            if m <= 0:
                raise ValueError("set families may not contain the empty set")
            if m >= limit:
                raise ValueError(f"set {mask_members(m)} leaves universe [0, {self.universe})")

    @classmethod
    def from_sets(cls, universe: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(universe, tuple(members_mask(s) for s in sets))

    @property
    def sets(self) -> list[frozenset[int]]:
        return [frozenset(mask_members(m)) for m in self.masks]

    def __len__(self):
        return len(self.masks)


def dense_minimal(present: np.ndarray, universe: int) -> np.ndarray:
    """Inclusion-minimal elements of a set system given as a dense indicator.

    ``present`` has length ``2**universe`` and is indexed by bitmask. Returns a
    boolean array of the same shape marking the minimal members.
    """
    present = np.asarray(present, dtype=bool)
    if universe == 0:
        return present.copy()
    cube = present.reshape((2,) * universe)
    # closure[B]: some member of the system is a subset of B
    closure = cube.copy()
    for ax in range(universe):
        lo = (slice(None),) * ax + (0,)
        hi = (slice(None),) * ax + (1,)
        closure[hi] |= closure[lo]
    strict = np.zeros_like(cube)
    for ax in range(universe):
        lo = (slice(None),) * ax + (0,)
        hi = (slice(None),) * ax + (1,)
        strict[hi] |= closure[lo]
    return (cube & ~strict).reshape(-1)


def _sort_key(mask: int):
    return (popcount(mask), mask_members(mask))


def minimize_family(fam: SetFamily) -> SetFamily:
    """Drop every set that contains another member of the family."""
    masks = sorted(set(fam.masks), key=_sort_key)
    if len(masks) > _DENSE_THRESHOLD and fam.universe <= _DENSE_UNIVERSE_CAP:
        present = np.zeros(1 << fam.universe, dtype=bool)
        present[np.asarray(masks, dtype=np.int64)] = True
        keep = np.flatnonzero(dense_minimal(present, fam.universe))
        return SetFamily(fam.universe, tuple(sorted((int(m) for m in keep), key=_sort_key)))
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return SetFamily(fam.universe, tuple(kept))


def _greedy_packing(masks: Sequence[int]) -> int:
    used = 0
    count = 0
    for m in sorted(masks, key=popcount):
        if not m & used:
            used |= m
            count += 1
    return count


def _greedy_hitting(masks: Sequence[int]) -> int:
    unhit = list(masks)
    chosen = 0
    while unhit:
        counts: dict[int, int] = {}
        for m in unhit:
            for e in mask_members(m):
                counts[e] = counts.get(e, 0) + 1
        e = min(counts, key=lambda i: (-counts[i], i))
        chosen |= 1 << e
        unhit = [m for m in unhit if not m >> e & 1]
    return chosen


def _lex_first_hitting_set(masks: Sequence[int], k: int) -> int | None:
    """Lexicographically first hitting set of size <= k, or None."""

    def search(unhit, start, budget, chosen):
        if not unhit:
            return chosen
        if budget == 0:
            return None
        # only elements >= start remain available
        tail = [m >> start for m in unhit]
        if 0 in tail or _greedy_packing(tail) > budget:
            return None
        limit = min(m.bit_length() for m in unhit) - 1
        union = 0
        for m in unhit:
            union |= m
        for e in range(start, limit + 1):
            if not union >> e & 1:
                continue
            rest = [m for m in unhit if not m >> e & 1]
            found = search(rest, e + 1, budget - 1, chosen | (1 << e))
            if found is not None:
                return found
        return None

    return search(list(masks), 0, k, 0)


def min_hitting_set(fam: SetFamily, budget: int | None = None) -> InstanceSet:
    """Smallest set meeting every member of ``fam``.

    Among all optimal sets the lexicographically smallest sorted member list is
    returned. With ``budget`` set, raises ``BudgetExceeded`` as soon as the
    optimum is proven larger than the budget.
    """
    if fam.universe > EXACT_UNIVERSE_CAP:
        raise CapExceeded(f"universe {fam.universe} exceeds {EXACT_UNIVERSE_CAP}")
    masks = minimize_family(fam).masks
    if not masks:
        return InstanceSet((), fam.universe)
    lower = _greedy_packing(masks)
    upper = popcount(_greedy_hitting(masks))
    for k in range(lower, upper + 1):
        if budget is not None and k > budget:
            raise BudgetExceeded(k, budget)
        found = _lex_first_hitting_set(masks, k)
        if found is not None:
            return InstanceSet.from_mask(found, fam.universe)
    raise AssertionError("greedy solution should bound the search")  # pragma: no cover


def max_disjoint_packing(fam: SetFamily) -> int:
    """Largest number of pairwise disjoint members of ``fam``."""
    if fam.universe > EXACT_UNIVERSE_CAP:
        raise CapExceeded(f"universe {fam.universe} exceeds {EXACT_UNIVERSE_CAP}")
    # replacing a set by a subset keeps a packing disjoint, so minimal sets suffice
    masks = sorted(minimize_family(fam).masks, key=popcount)
    best = _greedy_packing(masks)

    def bound(cands):
        union = 0
        for m in cands:
            union |= m
        return min(len(cands), popcount(union) // popcount(cands[0]))

    def search(cands, count):
        nonlocal best
        if not cands:
            best = max(best, count)
            return
        if count + bound(cands) <= best:
            return
        union = 0
        for m in cands:
            union |= m
        low = union & -union
        for m in cands:
            if m & low:
                search([t for t in cands if not t & m], count + 1)
        search([t for t in cands if not t & low], count)

    search(masks, 0)
    return best
