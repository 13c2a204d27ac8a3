"""Learning-side measures: teaching sets, specifying sets, MEMB, Bondy sets."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import Concept, ConceptClass, InstanceSet, mask_members, popcount
from .errors import CapExceeded, NotAMember
from .solvers import SetFamily, min_hitting_set

ETD_SWEEP_CAP_N = 3
MEMB_MEMO_CAP = 20
# at or below this many instances the version-space game has at most 3**8 states
MEMB_SMALL_X = 8


@dataclass(frozen=True)
class TeachingRecord:
    concept: Concept
    teaching_set: InstanceSet

    @property
    def size(self) -> int:
        return len(self.teaching_set)


@dataclass(frozen=True)
class SpecifyingRecord:
    concept: Concept
    specifying_set: InstanceSet
    consistent: int

    @property
    def size(self) -> int:
        return len(self.specifying_set)


def _as_table(cls: ConceptClass, f) -> int:
    if isinstance(f, Concept):
        if f.n != cls.n:
            raise ValueError(f"concept over n={f.n}, class over n={cls.n}")
        return f.table
    return int(f)


def teaching_set(cls: ConceptClass, f) -> TeachingRecord:
    """Canonical minimum teaching set of member ``f``.

    The set must reveal a disagreement with every other member, i.e. hit each
    difference set, so it is a minimum hitting set of those.
    """
    t = _as_table(cls, f)
    if t not in cls:
        raise NotAMember(f"{Concept(cls.n, t).bitstring()} is not in the class")
    diffs = tuple(t ^ g for g in cls.tables if g != t)
    ts = min_hitting_set(SetFamily(cls.size_x, diffs))
    return TeachingRecord(Concept(cls.n, t), ts)


def teaching_dimensions(cls: ConceptClass) -> list[int]:
    """``TD_F(f)`` for each member, in class order."""
    return [teaching_set(cls, t).size for t in cls.tables]


def td(cls: ConceptClass) -> int:
    return max(teaching_dimensions(cls))


def atd(cls: ConceptClass) -> Fraction:
    return Fraction(sum(teaching_dimensions(cls)), cls.m)


@lru_cache(maxsize=64)
def _subset_masks(universe: int, k: int) -> np.ndarray:
    # lexicographic order of the sorted member tuples
    masks = [sum(1 << i for i in combo) for combo in itertools.combinations(range(universe), k)]
    return np.asarray(masks, dtype=np.int64)


def specifying_set(cls: ConceptClass, f) -> SpecifyingRecord:
    """Smallest set on which at most one member agrees with ``f``.

    Sizes are tried in increasing order; within a size, candidate sets are
    scanned in lexicographic order against all members at once.
    """
    t = _as_table(cls, f)
    U = cls.size_x
    diffs = np.fromiter((t ^ g for g in cls.tables), dtype=np.int64, count=cls.m)
    for k in range(U + 1):
        masks = _subset_masks(U, k)
        for start in range(0, len(masks), 2048):
            chunk = masks[start:start + 2048]
            agree = np.zeros(len(chunk), dtype=np.int64)
            for lo in range(0, len(diffs), 4096):
                agree += ((diffs[lo:lo + 4096, None] & chunk[None, :]) == 0).sum(axis=0)
            hits = np.flatnonzero(agree <= 1)
            if hits.size:
                i = int(hits[0])
                return SpecifyingRecord(Concept(cls.n, t), InstanceSet.from_mask(int(chunk[i]), U), int(agree[i]))
    raise AssertionError("the full instance set always specifies")  # pragma: no cover


def specifying_sizes(cls: ConceptClass, sweep_cap_n: int = ETD_SWEEP_CAP_N, force: bool = False) -> list[int]:
    """Minimal specifying-set size of every concept on ``cls.n`` variables."""
    if cls.n > sweep_cap_n and not force:
        raise CapExceeded(f"ETD sweep over 2^(2^{cls.n}) concepts exceeds cap n <= {sweep_cap_n}")
    if cls.m <= 1:
        return [0] * (1 << (1 << cls.n))
    return [specifying_set(cls, t).size for t in range(1 << (1 << cls.n))]


def etd(cls: ConceptClass, sweep_cap_n: int = ETD_SWEEP_CAP_N, force: bool = False) -> int:
    return max(specifying_sizes(cls, sweep_cap_n, force))


def memb(cls: ConceptClass, memo_cap: int = MEMB_MEMO_CAP) -> int:
    """Optimal worst-case number of membership queries to identify a member.

    Minimax over version spaces (bitmasks over members). The adversary may only
    give answers that leave some member consistent, and the game stops once a
    single member remains.
    """
    if cls.m > memo_cap and cls.size_x > MEMB_SMALL_X:
        raise CapExceeded(f"MEMB needs m <= {memo_cap} or |X| <= {MEMB_SMALL_X}")
    ones = []
    for x in range(cls.size_x):
        mask = 0
        for i, t in enumerate(cls.tables):
            if t >> x & 1:
                mask |= 1 << i
        ones.append(mask)
    full = (1 << cls.m) - 1

    @lru_cache(maxsize=None)
    def value(state: int) -> int:
        size = popcount(state)
        if size <= 1:
            return 0
        floor = math.ceil(math.log2(size))
        best = None
        for x in range(cls.size_x):
            yes = state & ones[x]
            if yes == 0 or yes == state:
                continue
            v = 1 + max(value(yes), value(state ^ yes))
            if best is None or v < best:
                best = v
                if best == floor:
                    break
        return best

    return value(full)


def distinguishing_set(cls: ConceptClass) -> InstanceSet:
    """Instances on which all members are pairwise distinct.

    Greedy: repeatedly reveal the instance separating the most still-colliding
    pairs. Bondy's theorem promises a set of size at most ``m - 1``; when the
    greedy set is larger, an exact search by increasing size takes over.
    """
    U = cls.size_x
    if cls.m < 2:
        return InstanceSet((), U)
    groups = [list(cls.tables)]
    chosen = []
    while any(len(g) > 1 for g in groups):
        def split(x):
            total = 0
            for g in groups:
                ones = sum(t >> x & 1 for t in g)
                total += ones * (len(g) - ones)
            return total
        x = max((x for x in range(U) if x not in chosen), key=lambda x: (split(x), -x))
        chosen.append(x)
        groups = [part for g in groups for part in (
            [t for t in g if t >> x & 1], [t for t in g if not t >> x & 1]) if part]
    if len(chosen) > cls.m - 1:
        exact = _exact_distinguishing(cls, cls.m - 1)
        if exact is not None:
            return exact
    return InstanceSet(tuple(chosen), U)


def _exact_distinguishing(cls: ConceptClass, limit: int) -> InstanceSet | None:
    for k in range(limit + 1):
        for mask in _subset_masks(cls.size_x, k).tolist():
            if len({t & mask for t in cls.tables}) == cls.m:
                return InstanceSet(mask_members(mask), cls.size_x)
    return None
