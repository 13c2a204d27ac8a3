"""Relation checks, Rubinstein report and the measured comparison table."""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import boolfn, teach, zoo
from .core import Concept, ConceptClass, meta_function
from .errors import CapExceeded, EmptyLevelSet
from .report import HOLDS, SKIPPED, VIOLATED, CheckResult, MeasureReport, encode_value

MEASURE_NAMES = ("td", "atd", "etd", "c0", "c1", "ac0", "ac1", "bs", "abs", "d", "memb")


@dataclass(frozen=True)
class RunConfig:
    etd_max_n: int = teach.ETD_SWEEP_CAP_N
    dt_max_vars: int = boolfn.DT_CAP_VARS
    td_max_m: int = 4096
    memb_memo_cap: int = teach.MEMB_MEMO_CAP
    max_seconds: float | None = None
    threads: int = 1
    force_caps: bool = False

    def to_record(self) -> dict:
        return asdict(self)


class Skip(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class ClassMeasures:
    """Lazily computed, cached measures of one class under the run's caps.

    Getters raise ``Skip`` when a cap or the time budget forbids the
    computation, so callers can turn the failure into a skipped check.
    """

    def __init__(self, cls: ConceptClass, config: RunConfig = RunConfig(), deadline: float | None = None):
        self.cls = cls
        self.config = config
        self.deadline = deadline
        self.timing: dict[str, float] = {}
        self._cache: dict[str, object] = {}

    def _get(self, name, compute):
        if name in self._cache:
            value = self._cache[name]
            if isinstance(value, Skip):
                raise value
            return value
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Skip("time budget exhausted")
        start = time.perf_counter()
        try:
            value = compute()
        except CapExceeded as exc:
            self._cache[name] = Skip(f"cap: {exc}")
            raise self._cache[name] from None
        self.timing[name] = time.perf_counter() - start
        self._cache[name] = value
        return value

    # -- evaluation side ------------------------------------------------------

    def meta(self):
        return self._get("meta", lambda: meta_function(self.cls))

    def profile(self) -> np.ndarray:
        return self._get("profile", lambda: boolfn.certificate_profile(self.meta()))

    def member_c1(self) -> np.ndarray:
        idx = np.fromiter(self.cls.tables, dtype=np.int64, count=self.cls.m)
        return self.profile()[idx]

    def c1(self) -> int:
        return int(self.member_c1().max())

    def ac1(self) -> Fraction:
        return Fraction(int(self.member_c1().sum()), self.cls.m)

    def nonmember_c0(self) -> tuple[np.ndarray, np.ndarray]:
        xs = self.meta().level_set(0)
        return xs, self.profile()[xs]

    def c0(self) -> int:
        """``C^0`` of the meta-function; 0 when every concept is a member."""
        xs, vals = self.nonmember_c0()
        return int(vals.max()) if xs.size else 0

    def c0_witness(self) -> int | None:
        xs, vals = self.nonmember_c0()
        return int(xs[int(np.argmax(vals))]) if xs.size else None

    def ac0(self) -> Fraction:
        xs, vals = self.nonmember_c0()
        if xs.size == 0:
            raise Skip("aC0 undefined: the meta-function has no 0-inputs")
        return Fraction(int(vals.sum()), int(xs.size))

    def complement_sides(self) -> tuple[int, Fraction | None]:
        def compute():
            neg = self.meta().complement()
            c0 = boolfn.c_side(neg, 0, empty=0)
            try:
                ac0 = boolfn.ac_side(neg, 0)
            except EmptyLevelSet:
                ac0 = None
            return c0, ac0
        return self._get("complement", compute)

    def bs_profile(self) -> np.ndarray:
        return self._get("bs", lambda: boolfn.block_sensitivity_profile(self.meta(), self.config.threads))

    def depth(self) -> int:
        cap = self.config.dt_max_vars
        return self._get("d", lambda: boolfn.decision_tree_depth(self.meta(), cap_vars=cap, force=self.config.force_caps))

    # -- learning side --------------------------------------------------------

    def td_list(self) -> list[int]:
        def compute():
            if self.cls.m > self.config.td_max_m and not self.config.force_caps:
                raise CapExceeded(f"teaching dimensions capped at m <= {self.config.td_max_m} (m={self.cls.m})")
            return teach.teaching_dimensions(self.cls)
        return self._get("td", compute)

    def td(self) -> int:
        return max(self.td_list())

    def atd(self) -> Fraction:
        return Fraction(sum(self.td_list()), self.cls.m)

    def sps_sizes(self) -> list[int]:
        return self._get("etd", lambda: teach.specifying_sizes(
            self.cls, self.config.etd_max_n, force=self.config.force_caps))

    def etd(self) -> int:
        return max(self.sps_sizes())

    def memb(self) -> int:
        cap = math.inf if self.config.force_caps else self.config.memb_memo_cap
        return self._get("memb", lambda: teach.memb(self.cls, memo_cap=cap))


def _concept_witness(cls: ConceptClass, table: int, **extra) -> dict:
    return {"concept": Concept(cls.n, table).bitstring(), **extra}


_RELATIONS = {
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
}


def _run_check(check_id, subject, relation, body) -> CheckResult:
    """Evaluate one relation; ``body`` returns (lhs, op, rhs, witness, detail)."""
    start = time.perf_counter()
    try:
        lhs, op, rhs, witness, detail = body()
    except Skip as exc:
        return CheckResult(check_id, subject, relation, None, None, SKIPPED, reason=exc.reason,
                           elapsed=time.perf_counter() - start)
    ok = _RELATIONS[op](lhs, rhs)
    return CheckResult(check_id, subject, relation, lhs, rhs, HOLDS if ok else VIOLATED,
                       witness=None if ok else witness, detail=detail or {},
                       elapsed=time.perf_counter() - start)


def verify(cls: ConceptClass, subject: str = "", config: RunConfig = RunConfig(),
           measures: ClassMeasures | None = None) -> list[CheckResult]:
    """Evaluate every applicable relation on ``cls``; failures are data."""
    deadline = None if config.max_seconds is None else time.monotonic() + config.max_seconds
    M = measures or ClassMeasures(cls, config, deadline)
    X = cls.size_x
    subject = subject or f"class(n={cls.n},m={cls.m})"
    out = []

    def member_sums():
        return np.asarray(M.td_list(), dtype=np.int64) + M.member_c1()

    def fact_ublb():
        sums = member_sums()
        i = int(np.argmax(sums))
        lo, hi = int(sums.min()), int(sums.max())
        ok_low = lo >= 0
        return (hi if ok_low else lo), ("<=" if ok_low else ">="), (2 * X if ok_low else 0), \
            _concept_witness(cls, cls.tables[i] if ok_low else cls.tables[int(np.argmin(sums))]), \
            {"min_sum": lo, "max_sum": hi}

    def theorem_lb():
        sums = member_sums()
        i = int(np.argmin(sums))
        lo = int(sums[i])
        return lo, ">=", X, _concept_witness(cls, cls.tables[i], td=M.td_list()[i], c1=int(M.member_c1()[i])), \
            {"equality": lo == X, "members_at_equality": int((sums == X).sum())}

    out.append(_run_check("fact_ublb", subject, "0 <= TD_F(f) + C1_F(f) <= 2|X| for all members", fact_ublb))
    out.append(_run_check("theorem_lb", subject, "TD_F(f) + C1_F(f) >= |X| for all members", theorem_lb))
    out.append(_run_check("corollary_lb_worst", subject, "TD(F) + C1(F) >= |X|",
                          lambda: (M.td() + M.c1(), ">=", X, None, {"td": M.td(), "c1": M.c1()})))
    out.append(_run_check("corollary_lb_avg", subject, "aTD(F) + aC1(F) >= |X|",
                          lambda: (M.atd() + M.ac1(), ">=", X, None, {"atd": M.atd(), "ac1": M.ac1()})))
    out.append(_run_check("c1_ge_x_minus_atd", subject, "C1(F) >= |X| - aTD(F)",
                          lambda: (M.c1(), ">=", X - M.atd(), None, {})))

    def c0_le_m():
        if cls.m >= X:
            raise Skip(f"not applicable: m={cls.m} >= |X|={X}")
        return M.c0(), "<=", cls.m, _concept_witness(cls, M.c0_witness() or 0, c0=M.c0()), \
            {"slack": cls.m - M.c0()}

    out.append(_run_check("c0_le_m", subject, "C0(F) <= m when m < |X|", c0_le_m))

    def both_max():
        return max(M.td(), M.c0())

    def sandwich_detail():
        return {"td": M.td(), "c0": M.c0(), "etd": M.etd()}

    def etd_claimed_lower():
        w = M.c0_witness()
        witness = _concept_witness(cls, w, c0=M.c0(), sps=M.sps_sizes()[w]) if w is not None else None
        return both_max(), "<=", M.etd(), witness, sandwich_detail()

    out.append(_run_check("etd_claimed_lower", subject, "max(TD, C0) <= ETD", etd_claimed_lower))
    out.append(_run_check("etd_claimed_upper", subject, "ETD <= max(TD, C0) + 1",
                          lambda: (M.etd(), "<=", both_max() + 1, None, sandwich_detail())))
    out.append(_run_check("etd_def_td_le_etd", subject, "TD <= ETD",
                          lambda: (M.td(), "<=", M.etd(), None, sandwich_detail())))
    out.append(_run_check("etd_def_etd_le_max", subject, "ETD <= max(TD, C0)",
                          lambda: (M.etd(), "<=", both_max(), None, sandwich_detail())))
    out.append(_run_check("etd_def_max_le_etd_plus_1", subject, "max(TD, C0) <= ETD + 1",
                          lambda: (both_max(), "<=", M.etd() + 1, None, sandwich_detail())))

    def c0_le_memb():
        w = M.c0_witness()
        witness = _concept_witness(cls, w, c0=M.c0()) if w is not None else None
        return M.c0(), "<=", M.memb(), witness, {}

    out.append(_run_check("c0_le_memb", subject, "C0(F) <= MEMB(F)", c0_le_memb))
    out.append(_run_check("etd_le_memb", subject, "ETD(F) <= MEMB(F)",
                          lambda: (M.etd(), "<=", M.memb(), None, {})))
    out.append(_run_check("memb_plus_d", subject, "MEMB(F) + D(F) >= |X|",
                          lambda: (M.memb() + M.depth(), ">=", X, None, {"memb": M.memb(), "d": M.depth()})))

    def duality():
        c0n, ac0n = M.complement_sides()
        return [c0n, ac0n], "==", [M.c1(), M.ac1()], None, {}

    out.append(_run_check("complement_duality", subject, "C0(1-F) = C1(F) and aC0(1-F) = aC1(F)", duality))
    return out


def _verify_task(args):
    spec, config = args
    cls = zoo.build(spec)
    return verify(cls, spec.label(), config)


def verify_many(specs: list[zoo.ClassSpec], config: RunConfig = RunConfig()) -> list[list[CheckResult]]:
    """Verify several zoo classes; results come back in input order."""
    tasks = [(s, config) for s in specs]
    if config.threads <= 1 or len(tasks) <= 1:
        return [_verify_task(t) for t in tasks]
    inner = RunConfig(**{**asdict(config), "threads": 1})
    with ProcessPoolExecutor(max_workers=config.threads) as pool:
        return list(pool.map(_verify_task, [(s, inner) for s in specs]))


# -- measures ---------------------------------------------------------------------

_METHODS = {
    "td": ("global", "max over members of min hitting set of difference sets"),
    "atd": ("average", "exact mean of per-member teaching dimensions"),
    "etd": ("global", "max over all concepts of minimal specifying set (size-ordered scan)"),
    "c0": ("b-side", "max over non-members; subcube dynamic program"),
    "c1": ("b-side", "max over members; subcube dynamic program"),
    "ac0": ("average", "exact mean over non-members; subcube dynamic program"),
    "ac1": ("average", "exact mean over members; subcube dynamic program"),
    "bs": ("global", "max over inputs of disjoint packing of minimal sensitive blocks"),
    "abs": ("average", "exact mean over all inputs of block sensitivity"),
    "d": ("global", "minimax over restrictions"),
    "memb": ("global", "minimax over version spaces"),
}


def measure(cls: ConceptClass, names=MEASURE_NAMES, subject: str = "",
            config: RunConfig = RunConfig()) -> MeasureReport:
    """Compute the requested measures of a class; raises CapExceeded on caps."""
    M = ClassMeasures(cls, config)
    getters = {
        "td": M.td, "atd": M.atd, "etd": M.etd, "c0": M.c0, "c1": M.c1, "ac0": M.ac0,
        "ac1": M.ac1, "bs": lambda: int(M.bs_profile().max()),
        "abs": lambda: Fraction(int(M.bs_profile().sum()), 1 << M.meta().V),
        "d": M.depth, "memb": M.memb,
    }
    report = MeasureReport(subject or f"class(n={cls.n},m={cls.m})", cls.fingerprint)
    report.add("m", cls.m, "global", "class size")
    report.add("instances", cls.size_x, "global", "|X| = 2^n")
    for name in names:
        if name not in getters:
            raise ValueError(f"unknown measure {name!r}; choose from {', '.join(MEASURE_NAMES)}")
        start = time.perf_counter()
        try:
            value = getters[name]()
        except Skip as exc:
            if exc.reason.startswith("cap"):
                raise CapExceeded(f"{name}: {exc.reason}") from None
            value = None
        scope, method = _METHODS[name]
        report.add(name, value, scope, method, time.perf_counter() - start)
    return report


# -- Rubinstein function ----------------------------------------------------------

def rubinstein_report(k: int = 2, workers: int = 1, cross_check_stride: int = 97):
    """Exact averages for Rubinstein's function plus the relations around them.

    Returns ``(report, checks)``. Certificate complexities come from the
    subcube program and are re-derived by minimum hitting sets on every
    ``cross_check_stride``-th input.
    """
    f = zoo.rubinstein(k)
    subject = f"rubinstein(k={k})"
    rep = MeasureReport(subject, f.fingerprint)
    width = 2 * k

    t = time.perf_counter()
    zeros = int((f.table == 0).sum())
    rep.add("variables", f.V, "global", "4k^2", 0.0)
    rep.add("zero_inputs", zeros, "global", "exhaustive count", time.perf_counter() - t)
    formula = (2**width - width) ** width
    rep.add("zero_inputs_formula", formula, "global", "(2^(2k) - 2k)^(2k)")

    t = time.perf_counter()
    prof = boolfn.certificate_profile(f)
    el = time.perf_counter() - t
    ac = Fraction(int(prof.sum()), 1 << f.V)
    ac0 = boolfn.ac_side(f, 0)
    ac1 = boolfn.ac_side(f, 1)
    rep.add("c", int(prof.max()), "global", "subcube dynamic program", el)
    rep.add("c0", boolfn.c_side(f, 0), "b-side", "subcube dynamic program")
    rep.add("c1", boolfn.c_side(f, 1), "b-side", "subcube dynamic program")
    rep.add("ac", ac, "average", "subcube dynamic program")
    rep.add("ac0", ac0, "average", "subcube dynamic program")
    rep.add("ac1", ac1, "average", "subcube dynamic program")

    t = time.perf_counter()
    bs = boolfn.block_sensitivity_profile(f, workers)
    el = time.perf_counter() - t
    abs_ = Fraction(int(bs.sum()), 1 << f.V)
    rep.add("bs", int(bs.max()), "global", "disjoint packing of minimal sensitive blocks", el)
    rep.add("abs", abs_, "average", "disjoint packing of minimal sensitive blocks")

    t = time.perf_counter()
    sample = range(0, 1 << f.V, cross_check_stride)
    mismatches = [x for x in sample if boolfn.certificate_complexity_at(f, x) != prof[x]]
    cross_el = time.perf_counter() - t
    per_input_ok = bool(np.all(bs <= prof))

    checks = [
        CheckResult("rubinstein_zero_count", subject, "|X0| = (2^(2k) - 2k)^(2k)", zeros, formula,
                    HOLDS if zeros == formula else VIOLATED),
        CheckResult("rubinstein_abs_ge_sqrt", subject, "aBS >= sqrt(|X|) = 2k", abs_, width,
                    HOLDS if abs_ >= width else VIOLATED),
        CheckResult("rubinstein_ac_ge_abs", subject, "aC >= aBS", ac, abs_,
                    HOLDS if ac >= abs_ else VIOLATED),
        CheckResult("rubinstein_bs_le_c_pointwise", subject, "BS(x) <= C(x) for all x",
                    int((bs <= prof).sum()), 1 << f.V, HOLDS if per_input_ok else VIOLATED,
                    witness=None if per_input_ok else {"input": int(np.flatnonzero(bs > prof)[0])}),
        CheckResult("rubinstein_ac0_near_sqrt", subject, "aC0 >= 2k * (1 - 1e-2)", ac0,
                    Fraction(width) * Fraction(99, 100), HOLDS if ac0 >= Fraction(width) * Fraction(99, 100) else VIOLATED),
        CheckResult("rubinstein_certificate_routes", subject,
                    "hitting-set certificates equal subcube program on sampled inputs",
                    len(sample) - len(mismatches), len(sample), HOLDS if not mismatches else VIOLATED,
                    witness={"input": mismatches[0]} if mismatches else None,
                    detail={"stride": cross_check_stride}, elapsed=cross_el),
    ]
    return rep, checks


# -- comparison table -------------------------------------------------------------

TABLE_NOTES = {
    "monotone_monomials": "TD Theta(n); aTD Theta(n); C1 Omega(2^n)",
    "monomials": "TD Theta(n); aTD Theta(n); C1 Omega(2^n)",
    "monotone_kterm_dnf": "TD n^k + k; aTD O(kn); C1 Omega(2^n)",
    "kterm_dnf": "aTD O(kn); C1 Omega(2^n)",
    "ltf": "TD Theta(2^n); aTD in [n+1, n^2]; C1 Omega(2^n)",
    "kjuntas": "TD O(k 2^k log n), Omega(2^k log n); aTD Theta(2^k); C1 Omega(2^n)",
}

TABLE_COLUMNS = ["class", "n", "m", "TD", "aTD", "C1", "C0", "ETD", "MEMB", "note"]


def table_report(specs: list[zoo.ClassSpec], config: RunConfig = RunConfig()) -> list[dict]:
    """Measured values per class; cells that hit a cap hold ``None``."""
    rows = []
    for spec in specs:
        try:
            cls = zoo.build(spec)
        except CapExceeded as exc:
            rows.append({"class": spec.label(), "n": spec.n, "note": f"skipped: {exc}"})
            continue
        M = ClassMeasures(cls, config)
        row = {"class": spec.label(), "n": spec.n, "m": cls.m}
        for col, getter in (("TD", M.td), ("aTD", M.atd), ("C1", M.c1), ("C0", M.c0),
                            ("ETD", M.etd), ("MEMB", M.memb)):
            try:
                row[col] = getter()
            except Skip:
                row[col] = None
        note = TABLE_NOTES.get(spec.family, "")
        if spec.family in ("kterm_dnf", "monotone_kterm_dnf") and spec.k:
            exact = zoo.kterm_dnf(spec.n, spec.k, monotone=spec.family.startswith("monotone"), exact=True)
            note = f"{note}; exactly-{spec.k}-term reading m={exact.m}"
        row["note"] = ("measured; " + note) if note else "measured"
        rows.append(row)
    return rows


def table_record(row: dict) -> dict:
    return {"kind": "table_row", **{k: encode_value(v) for k, v in row.items()}}


# -- symmetry and the complement class ---------------------------------------------

def symmetry_report(cls: ConceptClass, subject: str = "", budget: int | None = None,
                    dt_cap_vars: int = boolfn.DT_CAP_VARS) -> dict:
    """Weak-symmetry verdict, evasiveness prediction, and the swap reading.

    At ``2**n <= 8`` both readings of weak symmetry are decided and any
    disagreement between them is flagged.
    """
    from . import symmetry

    verdict = symmetry.weak_symmetry(cls, budget=budget)
    flag = symmetry.rivest_vuillemin_flag(cls, verdict, dt_cap_vars=dt_cap_vars)
    record = {
        "kind": "symmetry",
        "subject": subject or f"class(n={cls.n},m={cls.m})",
        "fingerprint": cls.fingerprint,
        "verdict": verdict.to_record(),
        "evasiveness": flag.to_record(),
        "swap_verdict": None,
        "readings_disagree": None,
    }
    if cls.size_x <= symmetry.EXHAUSTIVE_CAP:
        swap = symmetry.weak_symmetry(cls, budget=budget, swap=True)
        record["swap_verdict"] = swap.to_record()
        record["readings_disagree"] = swap.status is not verdict.status
    return record


def complement_atd_report(ns=(2, 3)) -> list[dict]:
    """Measured aTD of the complement of singletons-with-empty next to the
    same class's aTD and ``|X| - 1``, without asserting any equality."""
    rows = []
    for n in ns:
        se = zoo.singletons_with_empty(n)
        comp = zoo.complement_class(se)
        M = ClassMeasures(comp)
        rows.append({
            "kind": "complement_atd",
            "n": n,
            "instances": se.size_x,
            "atd_complement": encode_value(M.atd()),
            "atd_singletons_with_empty": encode_value(teach.atd(se)),
            "instances_minus_one": se.size_x - 1,
            "ac0_complement": encode_value(M.ac0()),
            "ac1_singletons_with_empty": encode_value(ClassMeasures(se).ac1()),
        })
    return rows
