"""Automorphisms of meta-functions and weak symmetry.

An instance permutation ``pi`` acts on concepts by ``f -> f o pi^-1`` and is an
automorphism of a class when it maps the class onto itself; since it is a
bijection on all concepts, this is exactly invariance of the meta-function
under the matching permutation of its variables.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

from .boolfn import decision_tree_depth
from .core import ConceptClass, meta_function
from .errors import ArityMismatch, CapExceeded

EXHAUSTIVE_CAP = 8


@dataclass(frozen=True)
class InstancePermutation:
    mapping: tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a bijection")
        object.__setattr__(self, "mapping", mapping)

    @classmethod
    def identity(cls, size: int) -> "InstancePermutation":
        return cls(tuple(range(size)))

    def __len__(self):
        return len(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def inverse(self) -> "InstancePermutation":
        inv = [0] * len(self.mapping)
        for x, y in enumerate(self.mapping):
            inv[y] = x
        return InstancePermutation(tuple(inv))

    def compose(self, other: "InstancePermutation") -> "InstancePermutation":
        """``self o other`` (apply ``other`` first)."""
        return InstancePermutation(tuple(self.mapping[y] for y in other.mapping))

    def act(self, table: int) -> int:
        """Table of ``f o pi^-1``: the label of ``x`` moves to ``pi(x)``."""
        out = 0
        for x, y in enumerate(self.mapping):
            if table >> x & 1:
                out |= 1 << y
        return out


def lift_variable_permutation(n: int, sigma, negation_mask: int = 0) -> InstancePermutation:
    """Instance permutation induced by renaming and negating variables.

    Bit ``j`` of ``x`` moves to position ``sigma[j]``; afterwards the variables
    in ``negation_mask`` are negated.
    """
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"sigma {sigma} is not a permutation of range({n})")
    mapping = []
    for x in range(1 << n):
        y = 0
        for j in range(n):
            if x >> j & 1:
                y |= 1 << sigma[j]
        mapping.append(y ^ negation_mask)
    return InstancePermutation(tuple(mapping))


def is_automorphism(cls: ConceptClass, pi: InstancePermutation) -> bool:
    if len(pi) != cls.size_x:
        raise ArityMismatch(f"permutation of {len(pi)} instances, class has {cls.size_x}")
    return all(pi.act(t) in cls for t in cls.tables)


class SymmetryStatus(str, enum.Enum):
    WEAKLY_SYMMETRIC = "WeaklySymmetric"
    NOT_WEAKLY_SYMMETRIC = "NotWeaklySymmetric"
    UNKNOWN = "Unknown"


@dataclass
class SymmetryVerdict:
    status: SymmetryStatus
    witnesses: dict[tuple[int, int], InstancePermutation] = field(default_factory=dict)
    witness_pair: tuple[int, int] | None = None
    proof_mode: str | None = None
    budget_used: int = 0
    swap: bool = False

    def to_record(self) -> dict:
        return {
            "status": self.status.value,
            "reading": "swap" if self.swap else "transitive",
            "witnesses": [
                {"pair": list(pair), "permutation": list(pi.mapping)}
                for pair, pi in sorted(self.witnesses.items())
            ],
            "witness_pair": list(self.witness_pair) if self.witness_pair else None,
            "proof_mode": self.proof_mode,
            "budget_used": self.budget_used,
        }


def occurrence_counts(cls: ConceptClass) -> list[int]:
    """Number of members labelling each instance 1.

    Automorphisms preserve this count, so instances with different counts can
    never be exchanged (for monotone monomials of size k this is the weight
    argument: low-weight instances lie in no member's 1-set).
    """
    return [sum(t >> x & 1 for t in cls.tables) for x in range(cls.size_x)]


def structured_automorphisms(cls: ConceptClass) -> list[InstancePermutation]:
    """Automorphisms among variable renamings combined with XOR-translations.

    Pure translations ``x -> x ^ d`` come first, then the remaining renamings in
    lexicographic order of ``sigma``.
    """
    n = cls.n
    found = []
    for sigma in itertools.permutations(range(n)):
        for d in range(1 << n):
            pi = lift_variable_permutation(n, sigma, d)
            if is_automorphism(cls, pi):
                found.append(pi)
    return found


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


def exhaustive_pair_search(cls: ConceptClass, a: int, b: int, swap: bool = False,
                           prune: bool = True, budget=None) -> InstancePermutation | None:
    """Search all instance permutations with ``pi(a) = b`` for an automorphism.

    With ``swap`` the permutation must also send ``b`` to ``a``. ``prune`` skips
    images whose occurrence count differs (a necessary condition); with
    ``prune=False`` every permutation is checked.
    """
    U = cls.size_x
    if U > EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive permutation search needs 2^n <= {EXHAUSTIVE_CAP}")
    counter = budget if isinstance(budget, _Budget) else _Budget(budget)
    counts = occurrence_counts(cls) if prune else [0] * U
    fixed = {a: b}
    if swap and a != b:
        fixed[b] = a
    if len(set(fixed.values())) != len(fixed):
        return None
    if prune and any(counts[x] != counts[y] for x, y in fixed.items()):
        return None
    rest = [x for x in range(U) if x not in fixed]
    targets = [y for y in range(U) if y not in fixed.values()]

    def assign(i, mapping, free):
        if i == len(rest):
            counter.spend()
            pi = InstancePermutation(tuple(mapping[x] for x in range(U)))
            return pi if is_automorphism(cls, pi) else None
        x = rest[i]
        for y in free:
            if prune and counts[y] != counts[x]:
                continue
            mapping[x] = y
            found = assign(i + 1, mapping, [z for z in free if z != y])
            if found is not None:
                return found
        mapping.pop(x, None)
        return None

    return assign(0, dict(fixed), targets)


def weak_symmetry(cls: ConceptClass, budget: int | None = None, swap: bool = False) -> SymmetryVerdict:
    """Decide whether the meta-function of ``cls`` is weakly symmetric.

    Weak symmetry is read as a transitive action: for every ordered pair of
    instances ``(a, b)`` some automorphism maps ``a`` to ``b`` (with ``swap``,
    it must also map ``b`` to ``a``). Pairs are resolved in order by
    (1) renaming/XOR-translation automorphisms, (2) the occurrence-count
    invariant, (3) exhaustive search when ``2**n <= 8``. ``budget`` bounds the
    number of candidate permutations examined in phase (3).
    """
    counter = _Budget(budget)
    structured = structured_automorphisms(cls)
    counts = occurrence_counts(cls)
    U = cls.size_x
    witnesses: dict[tuple[int, int], InstancePermutation] = {}
    unresolved = False
    for a, b in itertools.permutations(range(U), 2):
        if swap and (b, a) in witnesses:
            witnesses[(a, b)] = witnesses[(b, a)]
            continue
        pi = next((p for p in structured if p(a) == b and (not swap or p(b) == a)), None)
        if pi is not None:
            witnesses[(a, b)] = pi
            continue
        if counts[a] != counts[b]:
            return SymmetryVerdict(SymmetryStatus.NOT_WEAKLY_SYMMETRIC, witnesses, (a, b),
                                   "weight-argument", counter.used, swap)
        if U > EXHAUSTIVE_CAP:
            unresolved = True
            continue
        try:
            pi = exhaustive_pair_search(cls, a, b, swap=swap, budget=counter)
        except _OutOfBudget:
            unresolved = True
            continue
        if pi is None:
            return SymmetryVerdict(SymmetryStatus.NOT_WEAKLY_SYMMETRIC, witnesses, (a, b),
                                   "exhaustive", counter.used, swap)
        witnesses[(a, b)] = pi
    status = SymmetryStatus.UNKNOWN if unresolved else SymmetryStatus.WEAKLY_SYMMETRIC
    return SymmetryVerdict(status, witnesses, None, None, counter.used, swap)


class EvasivenessPrediction(str, enum.Enum):
    PREDICT_EVASIVE = "PredictEvasive"
    NO_PREDICTION = "NoPrediction"


@dataclass(frozen=True)
class EvasivenessReport:
    prediction: EvasivenessPrediction
    depth: int | None
    variables: int
    consistent: bool | None

    def to_record(self) -> dict:
        return {
            "prediction": self.prediction.value,
            "depth": self.depth,
            "variables": self.variables,
            "consistent": self.consistent,
        }


def rivest_vuillemin_flag(cls: ConceptClass, verdict: SymmetryVerdict | None = None,
                          cross_check: bool = True, dt_cap_vars: int = 13) -> EvasivenessReport:
    """Predict evasiveness of the meta-function from weak symmetry.

    The meta-function always has ``2**n`` variables, a prime power, so any
    non-constant weakly symmetric one is predicted evasive. When the depth is
    computable it is reported next to the prediction.
    """
    if verdict is None:
        verdict = weak_symmetry(cls)
    F = meta_function(cls)
    predict = (not F.is_constant()) and verdict.status is SymmetryStatus.WEAKLY_SYMMETRIC
    prediction = EvasivenessPrediction.PREDICT_EVASIVE if predict else EvasivenessPrediction.NO_PREDICTION
    depth = None
    consistent = None
    if cross_check and F.V <= dt_cap_vars:
        depth = decision_tree_depth(F, cap_vars=dt_cap_vars)
        consistent = (depth == F.V) if predict else None
    return EvasivenessReport(prediction, depth, F.V, consistent)
