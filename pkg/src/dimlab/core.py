"""Instances, concepts, concept classes and the meta-function lift.

Conventions used everywhere in the package:

* an instance is an integer in ``[0, 2**n)``; bit ``j`` holds variable ``x^(j)``
  (variable 0 is the least significant bit);
* a concept is stored as an integer bitset over instances: bit ``i`` of the
  table is the label of instance ``i``;
* the meta-function of a class has one variable per instance, so an assignment
  to it *is* a concept table, and ``F(g) = 1`` iff ``g`` is a member.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    ArityMismatch,
    CapExceeded,
    ContradictorySamples,
    DuplicateConcept,
    EmptyClass,
    InvalidClassFile,
)

VARIABLE_CAP = 16
META_CAP_N = 4


def popcount(v: int) -> int:
    return bin(v).count("1")


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def members_mask(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class Instance:
    index: int
    n: int

    def __post_init__(self):
        if not 0 <= self.index < (1 << self.n):
            raise ValueError(f"instance {self.index} out of range for n={self.n}")

    @property
    def weight(self) -> int:
        return popcount(self.index)

    def bit(self, j: int) -> int:
        return (self.index >> j) & 1


@dataclass(frozen=True, order=True)
class Concept:
    """A Boolean function on ``{0,1}^n`` given by its full truth table."""

    n: int
    table: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if not 0 <= self.table < (1 << (1 << self.n)):
            raise ValueError(f"table does not fit 2**{self.n} positions")

    @property
    def size(self) -> int:
        return 1 << self.n

    def __call__(self, x: int) -> int:
        return (self.table >> x) & 1

    def bits(self) -> list[int]:
        return [(self.table >> i) & 1 for i in range(self.size)]

    def ones(self) -> tuple[int, ...]:
        return mask_members(self.table)

    @property
    def weight(self) -> int:
        return popcount(self.table)

    def bitstring(self) -> str:
        return "".join(str(b) for b in self.bits())

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "Concept":
        bits = list(bits)
        n = len(bits).bit_length() - 1
        if len(bits) != 1 << n:
            raise ValueError(f"table length {len(bits)} is not a power of two")
        table = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"non-binary table entry {b!r}")
            table |= b << i
        return cls(n, table)

    @classmethod
    def from_bitstring(cls, s: str) -> "Concept":
        if any(ch not in "01" for ch in s):
            raise ValueError(f"non-binary character in {s!r}")
        return cls.from_bits(int(ch) for ch in s)

    @classmethod
    def indicator(cls, n: int, x: int) -> "Concept":
        return cls(n, 1 << x)

    @classmethod
    def constant(cls, n: int, value: int) -> "Concept":
        return cls(n, (1 << (1 << n)) - 1 if value else 0)


@dataclass(frozen=True)
class LabeledSample:
    instance: int
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError("label must be 0 or 1")


@dataclass(frozen=True)
class InstanceSet:
    """A set of instance indices inside an ambient range ``[0, ambient)``."""

    members: tuple[int, ...]
    ambient: int

    def __post_init__(self):
        ordered = tuple(sorted(set(self.members)))
        if ordered and not (0 <= ordered[0] and ordered[-1] < self.ambient):
            raise ValueError(f"members {ordered} outside [0, {self.ambient})")
        object.__setattr__(self, "members", ordered)

    @classmethod
    def from_mask(cls, mask: int, ambient: int) -> "InstanceSet":
        return cls(mask_members(mask), ambient)

    @property
    def mask(self) -> int:
        return members_mask(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self.members


class ConceptClass:
    """A finite, duplicate-free set of concepts over a common ``n``.

    Members are kept sorted by table value so that iteration order and
    fingerprints do not depend on how the class was produced.
    """

    def __init__(self, n: int, concepts: Iterable["Concept | int"]):
        tables = []
        for c in concepts:
            if isinstance(c, Concept):
                if c.n != n:
                    raise ArityMismatch(f"concept over n={c.n} in class over n={n}")
                tables.append(c.table)
            else:
                t = int(c)
                if not 0 <= t < (1 << (1 << n)):
                    raise ValueError(f"table {t} does not fit n={n}")
                tables.append(t)
        if not tables:
            raise EmptyClass("a concept class needs at least one member")
        tables.sort()
        for a, b in zip(tables, tables[1:]):
            if a == b:
                raise DuplicateConcept(f"duplicate concept {Concept(n, a).bitstring()}")
        self.n = n
        self.tables: tuple[int, ...] = tuple(tables)
        self._index = {t: i for i, t in enumerate(self.tables)}

    @classmethod
    def from_tables(cls, n: int, tables: Iterable[int]) -> "ConceptClass":
        """Build a class from possibly repeated tables (duplicates are merged)."""
        return cls(n, set(tables))

    @property
    def m(self) -> int:
        return len(self.tables)

    @property
    def size_x(self) -> int:
        return 1 << self.n

    def __len__(self):
        return len(self.tables)

    def __iter__(self) -> Iterator[Concept]:
        return (Concept(self.n, t) for t in self.tables)

    def __getitem__(self, i) -> Concept:
        return Concept(self.n, self.tables[i])

    def __contains__(self, c) -> bool:
        if isinstance(c, Concept):
            return c.n == self.n and c.table in self._index
        return c in self._index

    def index_of(self, c: "Concept | int") -> int:
        t = c.table if isinstance(c, Concept) else c
        return self._index[t]

    def __eq__(self, other):
        return isinstance(other, ConceptClass) and self.n == other.n and self.tables == other.tables

    def __hash__(self):
        return hash((self.n, self.tables))

    def __repr__(self):
        return f"ConceptClass(n={self.n}, m={self.m})"

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256(f"class:{self.n}:".encode())
        width = max(1, (1 << self.n) // 8)
        for t in self.tables:
            h.update(t.to_bytes(width, "little"))
        return h.hexdigest()[:16]

    def to_dict(self) -> dict:
        return {"n": self.n, "concepts": [Concept(self.n, t).bitstring() for t in self.tables]}

    @classmethod
    def from_dict(cls, data: dict) -> "ConceptClass":
        try:
            n = data["n"]
            strings = data["concepts"]
        except (KeyError, TypeError) as exc:
            raise InvalidClassFile(f"missing field: {exc}") from None
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InvalidClassFile(f"bad n: {n!r}")
        if not isinstance(strings, list):
            raise InvalidClassFile("'concepts' must be a list of bitstrings")
        tables = []
        for s in strings:
            if not isinstance(s, str) or len(s) != 1 << n:
                raise InvalidClassFile(f"concept {s!r} must have {1 << n} characters")
            if set(s) - {"0", "1"}:
                raise InvalidClassFile(f"concept {s!r} has non-binary characters")
            tables.append(Concept.from_bitstring(s).table)
        try:
            return cls(n, tables)
        except (DuplicateConcept, EmptyClass) as exc:
            raise InvalidClassFile(str(exc)) from None


def load_class(path) -> ConceptClass:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidClassFile(f"{path}: {exc}") from None
    return ConceptClass.from_dict(data)


def dump_class(cls: ConceptClass, path) -> None:
    Path(path).write_text(json.dumps(cls.to_dict()) + "\n")


@dataclass(frozen=True, eq=False)
class ExplicitBooleanFunction:
    """Truth table of a function on ``V`` variables, indexed by assignment."""

    V: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 0 <= self.V <= VARIABLE_CAP:
            raise CapExceeded(f"V={self.V} exceeds the variable cap {VARIABLE_CAP}")
        t = np.asarray(self.table, dtype=np.uint8)
        if t.shape != (1 << self.V,):
            raise ValueError(f"table must have length 2**{self.V}")
        if t.size and t.max() > 1:
            raise ValueError("table entries must be 0/1")
        t = t.copy()
        t.flags.writeable = False
        object.__setattr__(self, "table", t)

    @classmethod
    def from_function(cls, V: int, fn) -> "ExplicitBooleanFunction":
        return cls(V, np.fromiter((1 if fn(x) else 0 for x in range(1 << V)), dtype=np.uint8, count=1 << V))

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def complement(self) -> "ExplicitBooleanFunction":
        return ExplicitBooleanFunction(self.V, 1 - self.table)

    def level_set(self, b: int) -> np.ndarray:
        return np.flatnonzero(self.table == b)

    def is_constant(self) -> bool:
        return bool(self.table.min() == self.table.max())

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256(f"fn:{self.V}:".encode())
        h.update(np.packbits(self.table, bitorder="little").tobytes())
        return h.hexdigest()[:16]

    def __eq__(self, other):
        return (
            isinstance(other, ExplicitBooleanFunction)
            and self.V == other.V
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.V, self.fingerprint))


def meta_function(cls: ConceptClass) -> ExplicitBooleanFunction:
    """The class viewed as a Boolean function of its ``2**n`` instance labels."""
    if cls.n > META_CAP_N:
        raise CapExceeded(f"meta-function needs n <= {META_CAP_N}, got n={cls.n}")
    table = np.zeros(1 << (1 << cls.n), dtype=np.uint8)
    table[np.fromiter(cls.tables, dtype=np.int64, count=cls.m)] = 1
    return ExplicitBooleanFunction(1 << cls.n, table)


def difference_set(f: Concept, g: Concept) -> InstanceSet:
    if f.n != g.n:
        raise ArityMismatch(f"n={f.n} vs n={g.n}")
    return InstanceSet.from_mask(f.table ^ g.table, f.size)


def consistent_concepts(cls: ConceptClass, samples: Iterable[LabeledSample]) -> list[Concept]:
    care = 0
    want = 0
    for s in samples:
        if not 0 <= s.instance < cls.size_x:
            raise ValueError(f"instance {s.instance} out of range for n={cls.n}")
        bit = 1 << s.instance
        if care & bit and bool(want & bit) != bool(s.label):
            raise ContradictorySamples(f"instance {s.instance} labelled both ways")
        care |= bit
        if s.label:
            want |= bit
    return [Concept(cls.n, t) for t in cls.tables if (t ^ want) & care == 0]
