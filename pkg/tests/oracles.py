"""Brute-force reference implementations used to cross-check the package.

Nothing here imports dimlab's solvers or dynamic programs; every routine
enumerates straight from the definition and is only meant for tiny inputs.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


def subsets_by_size(universe: int):
    """All subsets of range(universe) as sorted tuples: by size, then lexicographically."""
    for k in range(universe + 1):
        yield from itertools.combinations(range(universe), k)


def to_mask(items) -> int:
    return sum(1 << i for i in items)


# -- set systems -------------------------------------------------------------------

def min_hitting_set(universe: int, sets: list[set[int]]) -> tuple[int, ...]:
    for cand in subsets_by_size(universe):
        c = set(cand)
        if all(c & s for s in sets):
            return cand
    raise AssertionError("unreachable for non-empty sets")


def max_packing(sets: list[set[int]]) -> int:
    """Enumerate every pairwise-disjoint subfamily (take or skip each set)."""
    sets = [frozenset(s) for s in sets]

    def walk(i: int, used: frozenset) -> int:
        if i == len(sets):
            return 0
        best = walk(i + 1, used)
        if not sets[i] & used:
            best = max(best, 1 + walk(i + 1, used | sets[i]))
        return best

    return walk(0, frozenset())


def minimal_sets(sets: list[set[int]]) -> set[frozenset[int]]:
    fs = {frozenset(s) for s in sets}
    return {s for s in fs if not any(t < s for t in fs)}


# -- Boolean functions ---------------------------------------------------------------
# ``table`` is a sequence of 0/1 values indexed by assignment; variable j is bit j.

def sensitive_blocks(table, V: int, x: int) -> list[int]:
    return [B for B in range(1, 1 << V) if table[x ^ B] != table[x]]


def minimal_sensitive_blocks(table, V: int, x: int) -> set[int]:
    blocks = sensitive_blocks(table, V, x)
    return {B for B in blocks if not any(C != B and C & B == C for C in blocks)}


def certificate_complexity(table, V: int, x: int) -> int:
    """Smallest S such that every y agreeing with x on S has the same value."""
    for S in subsets_by_size(V):
        mask = to_mask(S)
        if all(table[y] == table[x] for y in range(1 << V) if (y ^ x) & mask == 0):
            return len(S)
    raise AssertionError("the full set is always a certificate")


def block_sensitivity(table, V: int, x: int) -> int:
    blocks = sensitive_blocks(table, V, x)

    @lru_cache(maxsize=None)
    def best(avail: int) -> int:
        if avail == 0:
            return 0
        low = avail & -avail
        out = best(avail & ~low)
        for B in blocks:
            if B & low and B & avail == B:
                out = max(out, 1 + best(avail & ~B))
        return out

    return best((1 << V) - 1)


def decision_tree_depth(table, V: int) -> int:
    """Recursive minimax over restrictions given as (fixed mask, fixed values)."""

    @lru_cache(maxsize=None)
    def depth(mask: int, values: int) -> int:
        outs = {table[y] for y in range(1 << V) if y & mask == values}
        if len(outs) <= 1:
            return 0
        best = V
        for i in range(V):
            if mask >> i & 1:
                continue
            worst = max(depth(mask | 1 << i, values), depth(mask | 1 << i, values | 1 << i))
            best = min(best, 1 + worst)
        return best

    return depth(0, 0)


# -- concept classes -----------------------------------------------------------------

def teaching_dimension(tables: list[int], U: int, f: int) -> int:
    others = [g for g in tables if g != f]
    for S in subsets_by_size(U):
        mask = to_mask(S)
        if all((g ^ f) & mask for g in others):
            return len(S)
    raise AssertionError("distinct concepts differ somewhere")


def specifying_size(tables: list[int], U: int, f: int) -> int:
    for S in subsets_by_size(U):
        mask = to_mask(S)
        if sum(1 for g in tables if (g ^ f) & mask == 0) <= 1:
            return len(S)
    raise AssertionError("unreachable")


def class_certificate(tables: list[int], U: int, g: int) -> int:
    """Certificate complexity of the class indicator at concept ``g``.

    Revealing ``g`` on S proves non-membership when no member agrees on S and
    proves membership when every agreeing concept is a member.
    """
    members = set(tables)
    is_member = g in members
    for S in subsets_by_size(U):
        mask = to_mask(S)
        agreeing = sum(1 for t in members if (t ^ g) & mask == 0)
        if is_member and agreeing == 1 << (U - len(S)):
            return len(S)
        if not is_member and agreeing == 0:
            return len(S)
    raise AssertionError("unreachable")


def memb(tables: list[int], U: int) -> int:
    @lru_cache(maxsize=None)
    def game(space: frozenset) -> int:
        if len(space) <= 1:
            return 0
        best = None
        for x in range(U):
            ones = frozenset(t for t in space if t >> x & 1)
            zeros = space - ones
            if not ones or not zeros:
                continue
            v = 1 + max(game(ones), game(zeros))
            best = v if best is None else min(best, v)
        return best

    return game(frozenset(tables))


def is_linearly_separable(table: int, n: int) -> bool:
    """LP feasibility of w.x - theta >= 1 on ones and <= -1 on zeros."""
    import numpy as np
    from scipy.optimize import linprog

    rows, rhs = [], []
    for x in range(1 << n):
        point = [(x >> j) & 1 for j in range(n)]
        if table >> x & 1:
            rows.append([-p for p in point] + [1.0])   # -(w.x) + theta <= -1
        else:
            rows.append(point + [-1.0])                # w.x - theta <= -1
        rhs.append(-1.0)
    res = linprog(np.zeros(n + 1), A_ub=np.array(rows, float), b_ub=np.array(rhs),
                  bounds=[(None, None)] * (n + 1), method="highs")
    return res.status == 0


def monomial_tables(n: int, monotone: bool) -> set[int]:
    """Conjunctions enumerated from literal choices: each variable absent, positive or negative."""
    out = set()
    choices = (0, 1) if monotone else (0, 1, 2)
    for pattern in itertools.product(choices, repeat=n):
        if not any(pattern):
            continue
        t = 0
        for x in range(1 << n):
            ok = all(c == 0 or (c == 1 and x >> j & 1) or (c == 2 and not x >> j & 1)
                     for j, c in enumerate(pattern))
            if ok:
                t |= 1 << x
        out.add(t)
    return out


def depends_on(table: int, n: int, j: int) -> bool:
    return any((table >> x & 1) != (table >> (x ^ 1 << j) & 1) for x in range(1 << n))
