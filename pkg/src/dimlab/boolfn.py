"""Evaluation-side measures of explicit Boolean functions.

Per-input routines (sensitive blocks, certificates, block sensitivity) work on
one assignment at a time. Whole-function sweeps of certificate complexity and
decision-tree depth run a dynamic program over the ``3**V`` subcubes of the
cube, where a subcube is a ternary word (0, 1 = fixed value, 2 = free).
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import VARIABLE_CAP, ExplicitBooleanFunction, InstanceSet
from .errors import CapExceeded, EmptyLevelSet
from .solvers import SetFamily, dense_minimal, max_disjoint_packing, min_hitting_set

DT_CAP_VARS = 13
_FREE = 2
_MIXED = 2


def _check_cap(f: ExplicitBooleanFunction, cap: int = VARIABLE_CAP):
    if f.V > cap:
        raise CapExceeded(f"V={f.V} exceeds cap {cap}")


def minimal_sensitive_blocks(f: ExplicitBooleanFunction, x: int) -> SetFamily:
    """Inclusion-minimal blocks ``B`` with ``f(x ^ B) != f(x)``."""
    _check_cap(f)
    idx = np.arange(1 << f.V)
    sensitive = f.table[idx ^ x] != f.table[x]
    if not sensitive.any():
        return SetFamily(f.V, ())
    minimal = np.flatnonzero(dense_minimal(sensitive, f.V))
    return SetFamily(f.V, tuple(int(b) for b in minimal))


def certificate(f: ExplicitBooleanFunction, x: int) -> InstanceSet:
    """Canonical minimum certificate of ``f`` at ``x`` (a set of variables).

    A set of variables fixes ``f`` iff it meets every sensitive block, so this
    is a minimum hitting set of the minimal blocks.
    """
    return min_hitting_set(minimal_sensitive_blocks(f, x))


def certificate_complexity_at(f: ExplicitBooleanFunction, x: int) -> int:
    return len(certificate(f, x))


def block_sensitivity_at(f: ExplicitBooleanFunction, x: int) -> int:
    return max_disjoint_packing(minimal_sensitive_blocks(f, x))


# -- subcube dynamic programs -------------------------------------------------

def _axis(V: int, j: int, digit: int):
    # ndarray axis a carries variable V-1-a (C-order reshape of the table)
    # the trailing Ellipsis keeps the result a view even when V == 1
    a = V - 1 - j
    return (slice(None),) * a + (digit, Ellipsis)


def _subcube_values(f: ExplicitBooleanFunction) -> np.ndarray:
    """Ternary array: value of f on each subcube, or _MIXED if not constant."""
    V = f.V
    cube = np.full((3,) * V, 255, dtype=np.uint8)
    cube[(slice(0, 2),) * V] = f.table.reshape((2,) * V)
    for j in range(V):
        lo = cube[_axis(V, j, 0)]
        hi = cube[_axis(V, j, 1)]
        cube[_axis(V, j, _FREE)] = np.where(lo == hi, lo, _MIXED)
    return cube


def _free_counts(V: int) -> np.ndarray:
    digit_free = (np.arange(3) == _FREE).astype(np.int8)
    counts = np.zeros((3,) * V, dtype=np.int8)
    for a in range(V):
        shape = [1] * V
        shape[a] = 3
        counts += digit_free.reshape(shape)
    return counts


@lru_cache(maxsize=4)
def _certificate_profile(f: ExplicitBooleanFunction) -> np.ndarray:
    V = f.V
    if V == 0:
        return np.zeros(1, dtype=np.int64)
    values = _subcube_values(f)
    free = _free_counts(V)
    # best[c]: most free variables of a monochromatic subcube containing c
    best = np.where(values != _MIXED, free, -1).astype(np.int8)
    del values, free
    for j in range(V):
        star = best[_axis(V, j, _FREE)]
        np.maximum(best[_axis(V, j, 0)], star, out=best[_axis(V, j, 0)])
        np.maximum(best[_axis(V, j, 1)], star, out=best[_axis(V, j, 1)])
    corner = np.ascontiguousarray(best[(slice(0, 2),) * V]).reshape(-1)
    out = V - corner.astype(np.int64)
    out.flags.writeable = False
    return out


def certificate_profile(f: ExplicitBooleanFunction) -> np.ndarray:
    """``C_f(x)`` for every input ``x`` (read-only int array of length 2**V)."""
    _check_cap(f)
    return _certificate_profile(f)


def _level(f, b):
    xs = f.level_set(b)
    if xs.size == 0:
        raise EmptyLevelSet(f"f has no inputs with value {b}")
    return xs


def c_side(f: ExplicitBooleanFunction, b: int, empty: int | None = None) -> int:
    """``C^b(f)``; with ``empty`` given, an empty level set yields that value."""
    try:
        xs = _level(f, b)
    except EmptyLevelSet:
        if empty is None:
            raise
        return empty
    return int(certificate_profile(f)[xs].max())


def ac_side(f: ExplicitBooleanFunction, b: int) -> Fraction:
    xs = _level(f, b)
    return Fraction(int(certificate_profile(f)[xs].sum()), int(xs.size))


def c_max(f: ExplicitBooleanFunction) -> int:
    return int(certificate_profile(f).max())


def ac_all(f: ExplicitBooleanFunction) -> Fraction:
    return Fraction(int(certificate_profile(f).sum()), 1 << f.V)


def _bs_chunk(args):
    f, xs = args
    return [block_sensitivity_at(f, int(x)) for x in xs]


def block_sensitivity_profile(f: ExplicitBooleanFunction, workers: int = 1) -> np.ndarray:
    """``BS_f(x)`` for every input; ``workers > 1`` splits inputs over processes."""
    _check_cap(f)
    xs = np.arange(1 << f.V)
    if workers <= 1:
        return np.array(_bs_chunk((f, xs)), dtype=np.int64)
    chunks = np.array_split(xs, workers * 8)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_bs_chunk, [(f, c) for c in chunks]))
    return np.array([v for part in parts for v in part], dtype=np.int64)


def bs_max(f: ExplicitBooleanFunction, workers: int = 1) -> int:
    return int(block_sensitivity_profile(f, workers).max())


def abs_mean(f: ExplicitBooleanFunction, workers: int = 1) -> Fraction:
    return Fraction(int(block_sensitivity_profile(f, workers).sum()), 1 << f.V)


def decision_tree_depth(f: ExplicitBooleanFunction, cap_vars: int = DT_CAP_VARS, force: bool = False) -> int:
    """Exact deterministic decision-tree depth by minimax over restrictions.

    ``D(c) = 0`` when f is constant on subcube ``c``; otherwise
    ``1 + min_i max_v D(c with x_i = v)`` over free variables ``i``. The table
    holds one entry per restriction and is filled in order of free-variable
    count.
    """
    V = f.V
    if V > cap_vars and not force:
        raise CapExceeded(f"decision tree depth capped at {cap_vars} variables (V={V})")
    _check_cap(f)
    if f.is_constant():
        return 0
    # C-order flattening gives variable j the place value 3**j
    values = _subcube_values(f).reshape(-1)
    mixed = values == _MIXED
    del values
    free = _free_counts(V).reshape(-1)
    depth = np.zeros(3**V, dtype=np.int8)
    order = np.argsort(free, kind="stable")
    bounds = np.searchsorted(free[order], np.arange(V + 2))
    place = [3**j for j in range(V)]
    for s in range(1, V + 1):
        level = order[bounds[s]:bounds[s + 1]]
        level = level[mixed[level]]
        if level.size == 0:
            continue
        best = np.full(level.size, 127, dtype=np.int8)
        for j in range(V):
            sel = (level // place[j]) % 3 == _FREE
            if not sel.any():
                continue
            c = level[sel]
            worst = np.maximum(depth[c - 2 * place[j]], depth[c - place[j]])
            best[sel] = np.minimum(best[sel], worst + 1)
        depth[level] = best
    return int(depth[3**V - 1])
