"""Generators for the named concept classes and Boolean functions."""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .core import META_CAP_N, ConceptClass, ExplicitBooleanFunction, popcount
from .errors import CapExceeded, DegenerateK, InvalidAnchor, InvalidK

SMALL_N_CAP = 16
# largest class any enumerating generator may produce
DEFAULT_SIZE_CAP = 1 << 16


def _check_small(n: int, what: str):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > META_CAP_N:
        raise CapExceeded(f"{what} needs n <= {META_CAP_N}, got {n}")


def powerset(n: int) -> ConceptClass:
    _check_small(n, "powerset")
    return ConceptClass(n, range(1 << (1 << n)))


def singletons(n: int) -> ConceptClass:
    if n > SMALL_N_CAP:
        raise CapExceeded(f"singletons needs n <= {SMALL_N_CAP}")
    return ConceptClass(n, (1 << x for x in range(1 << n)))


def singletons_with_empty(n: int) -> ConceptClass:
    if n > SMALL_N_CAP:
        raise CapExceeded(f"singletons_with_empty needs n <= {SMALL_N_CAP}")
    return ConceptClass(n, [0, *(1 << x for x in range(1 << n))])


def dictator(n: int, anchor: int = 0) -> ConceptClass:
    """All concepts labelling the anchor instance 1 (half of all functions)."""
    _check_small(n, "dictator")
    if not 0 <= anchor < (1 << n):
        raise InvalidAnchor(f"anchor {anchor} is not an instance for n={n}")
    bit = 1 << anchor
    return ConceptClass(n, (t for t in range(1 << (1 << n)) if t & bit))


# -- monomials -----------------------------------------------------------------

def _subcube_table(n: int, care: int, value: int) -> int:
    """Table of the conjunction fixing the variables in ``care`` to ``value``."""
    t = 0
    for x in range(1 << n):
        if (x ^ value) & care == 0:
            t |= 1 << x
    return t


def _monomial_tables(n: int, monotone: bool, size: int | None = None) -> set[int]:
    tables = set()
    for care in range(1, 1 << n):
        k = popcount(care)
        if size is not None and k != size:
            continue
        values = [care] if monotone else [v for v in range(1 << n) if v & ~care == 0]
        for value in values:
            tables.add(_subcube_table(n, care, value))
    return tables


def _check_k(n: int, k: int, low: int = 1):
    if not low <= k <= n:
        raise InvalidK(f"k={k} must lie in [{low}, {n}]")


def monotone_monomials(n: int) -> ConceptClass:
    if n < 1:
        raise InvalidK("monomial classes need n >= 1")
    return ConceptClass.from_tables(n, _monomial_tables(n, True))


def monomials(n: int) -> ConceptClass:
    if n < 1:
        raise InvalidK("monomial classes need n >= 1")
    return ConceptClass.from_tables(n, _monomial_tables(n, False))


def monotone_monomials_exactly(n: int, k: int) -> ConceptClass:
    """Monotone conjunctions whose shortest representation has ``k`` variables."""
    _check_k(n, k)
    return ConceptClass.from_tables(n, _monomial_tables(n, True, k))


def monomials_exactly(n: int, k: int) -> ConceptClass:
    _check_k(n, k)
    return ConceptClass.from_tables(n, _monomial_tables(n, False, k))


# -- DNF, juntas, threshold functions -------------------------------------------

def _dnf_levels(n: int, k: int, monotone: bool, size_cap: int) -> list[set[int]]:
    """levels[j]: functions expressible with at most j+1 terms."""
    terms = sorted(_monomial_tables(n, monotone))
    levels = [set(terms)]
    for _ in range(k - 1):
        prev = levels[-1]
        nxt = set(prev)
        for t in prev:
            for term in terms:
                nxt.add(t | term)
            if len(nxt) > size_cap:
                raise CapExceeded(f"k-term DNF enumeration exceeds {size_cap} functions")
        levels.append(nxt)
        if nxt == prev:
            # closed under adding terms; later levels are identical
            levels.extend([nxt] * (k - len(levels)))
            break
    return levels


def kterm_dnf(n: int, k: int, monotone: bool = False, exact: bool = False,
              size_cap: int = DEFAULT_SIZE_CAP) -> ConceptClass:
    """ORs of at most ``k`` monomials (or, with ``exact``, needing exactly ``k``)."""
    _check_small(n, "k-term DNF")
    if k < 1:
        raise InvalidK("k-term DNF needs k >= 1")
    if n < 1:
        raise InvalidK("k-term DNF needs n >= 1")
    levels = _dnf_levels(n, k, monotone, size_cap)
    tables = levels[-1]
    if exact:
        tables = tables - levels[-2] if k > 1 else tables
    return ConceptClass.from_tables(n, tables)


def kjuntas(n: int, k: int, size_cap: int = DEFAULT_SIZE_CAP) -> ConceptClass:
    _check_small(n, "k-juntas")
    _check_k(n, k, low=0)
    xs = np.arange(1 << n)
    weights = [1 << x for x in range(1 << n)]
    tables = set()
    for subset in itertools.combinations(range(n), k):
        proj = np.zeros(1 << n, dtype=np.int64)
        for pos, var in enumerate(subset):
            proj |= ((xs >> var) & 1) << pos
        for h in range(1 << (1 << k)):
            tables.add(sum(w for w, p in zip(weights, proj.tolist()) if h >> p & 1))
        if len(tables) > size_cap:
            raise CapExceeded(f"k-junta enumeration exceeds {size_cap}")
    return ConceptClass.from_tables(n, tables)


def _pack_rows(bits: np.ndarray) -> np.ndarray:
    # (rows, 2**n) booleans -> table integers, column i becoming bit i
    return bits.astype(np.int64) @ (1 << np.arange(bits.shape[1], dtype=np.int64))


def ltf(n: int, weight_bound: int | None = None) -> ConceptClass:
    """Linear threshold functions ``[w.x >= theta]`` on ``n`` variables.

    Integer weights in ``[-W, W]`` with ``W = 2**n`` by default; thresholds
    range over the attained values of ``w.x`` plus one value above them all.
    """
    _check_small(n, "LTF")
    W = (1 << n) if weight_bound is None else weight_bound
    xs = np.arange(1 << n)
    points = ((xs[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)  # (2^n, n)
    tables = {0}
    span = np.arange(-W, W + 1, dtype=np.int64)
    grids = np.stack(np.meshgrid(*([span] * n), indexing="ij"), axis=-1).reshape(-1, n) if n else np.zeros((1, 0), np.int64)
    for start in range(0, len(grids), 4096):
        w = grids[start:start + 4096]
        scores = w @ points.T  # (chunk, 2^n)
        # threshold at each attained score: f(x) = score(x) >= score(x_j)
        bits = scores[:, None, :] >= scores[:, :, None]  # (chunk, j, x)
        tables.update(np.unique(_pack_rows(bits.reshape(-1, 1 << n))).tolist())
    return ConceptClass.from_tables(n, tables)


def complement_class(cls: ConceptClass) -> ConceptClass:
    """Every concept on ``cls.n`` variables that is not a member."""
    _check_small(cls.n, "complement class")
    members = set(cls.tables)
    return ConceptClass(cls.n, (t for t in range(1 << (1 << cls.n)) if t not in members))


# -- Rubinstein function ---------------------------------------------------------

def rubinstein(k: int) -> ExplicitBooleanFunction:
    """Rubinstein's function on ``4k^2`` variables.

    Variables split into ``2k`` contiguous pieces of ``2k``; the value is 1 iff
    some piece holds exactly two ones at cyclically adjacent positions.
    """
    if k < 2:
        raise DegenerateK(f"k={k}: pieces of size {2 * k} have no room for the construction")
    V = 4 * k * k
    if V > 16:
        raise CapExceeded(f"full truth table of rubinstein({k}) needs {V} variables")
    w = 2 * k
    good = np.zeros(1 << w, dtype=bool)
    for j in range(w):
        good[(1 << j) | (1 << ((j + 1) % w))] = True
    xs = np.arange(1 << V)
    out = np.zeros(1 << V, dtype=bool)
    for p in range(w):
        out |= good[(xs >> (p * w)) & ((1 << w) - 1)]
    return ExplicitBooleanFunction(V, out.astype(np.uint8))


# -- registry --------------------------------------------------------------------

@dataclass(frozen=True)
class ClassSpec:
    family: str
    n: int
    k: int | None = None
    anchor: int | None = None
    complement: bool = False

    def label(self) -> str:
        parts = [f"{self.family}(n={self.n}"]
        if self.k is not None:
            parts.append(f",k={self.k}")
        if self.anchor is not None:
            parts.append(f",anchor={self.anchor}")
        parts.append(")")
        text = "".join(parts)
        return f"complement[{text}]" if self.complement else text

    def to_dict(self) -> dict:
        return {key: v for key, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class Family:
    build: Callable
    uses_k: bool = False
    uses_anchor: bool = False
    summary: str = ""


FAMILIES: dict[str, Family] = {
    "powerset": Family(lambda n, k, a: powerset(n), summary="all 2^(2^n) concepts"),
    "singletons": Family(lambda n, k, a: singletons(n), summary="indicators of single instances"),
    "singletons_with_empty": Family(lambda n, k, a: singletons_with_empty(n), summary="singletons plus the all-zero concept"),
    "dictator": Family(lambda n, k, a: dictator(n, 0 if a is None else a), uses_anchor=True,
                       summary="concepts labelling the anchor instance 1"),
    "monotone_monomials": Family(lambda n, k, a: monotone_monomials(n), summary="conjunctions of positive literals"),
    "monomials": Family(lambda n, k, a: monomials(n), summary="conjunctions of literals"),
    "monotone_monomials_exactly": Family(lambda n, k, a: monotone_monomials_exactly(n, k), uses_k=True,
                                         summary="monotone monomials of size exactly k"),
    "monomials_exactly": Family(lambda n, k, a: monomials_exactly(n, k), uses_k=True,
                                summary="monomials of size exactly k"),
    "monotone_kterm_dnf": Family(lambda n, k, a: kterm_dnf(n, k, monotone=True), uses_k=True,
                                 summary="ORs of at most k monotone monomials"),
    "kterm_dnf": Family(lambda n, k, a: kterm_dnf(n, k), uses_k=True, summary="ORs of at most k monomials"),
    "kjuntas": Family(lambda n, k, a: kjuntas(n, k), uses_k=True, summary="functions of at most k variables"),
    "ltf": Family(lambda n, k, a: ltf(n), summary="linear threshold functions"),
}


def build(spec: ClassSpec) -> ConceptClass:
    try:
        fam = FAMILIES[spec.family]
    except KeyError:
        raise ValueError(f"unknown zoo family {spec.family!r}; known: {', '.join(FAMILIES)}") from None
    if fam.uses_k and spec.k is None:
        raise InvalidK(f"{spec.family} needs k")
    cls = fam.build(spec.n, spec.k, spec.anchor)
    return complement_class(cls) if spec.complement else cls


def default_zoo(n: int) -> list[ClassSpec]:
    """The classes swept by the verification harness at a given ``n``."""
    specs = [
        ClassSpec("powerset", n),
        ClassSpec("singletons", n),
        ClassSpec("singletons_with_empty", n),
        ClassSpec("dictator", n, anchor=0),
        ClassSpec("monotone_monomials", n),
        ClassSpec("monomials", n),
    ]
    specs += [ClassSpec("monotone_monomials_exactly", n, k=k) for k in range(1, n + 1)]
    specs += [ClassSpec("monomials_exactly", n, k=k) for k in range(1, n + 1)]
    specs += [ClassSpec("monotone_kterm_dnf", n, k=2), ClassSpec("kterm_dnf", n, k=2)]
    specs += [ClassSpec("kjuntas", n, k=k) for k in range(0, n)]
    specs += [ClassSpec("ltf", n), ClassSpec("singletons_with_empty", n, complement=True)]
    return specs
