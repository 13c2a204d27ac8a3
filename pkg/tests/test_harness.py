from fractions import Fraction

import pytest

from dimlab import boolfn, harness, teach, zoo
from dimlab.core import Concept, meta_function
from dimlab.errors import CapExceeded
from dimlab.report import HOLDS, SKIPPED, VIOLATED, decode_value, without_timing


def by_id(results):
    return {r.check_id: r for r in results}


def test_verify_dictator_equality():
    r = by_id(harness.verify(zoo.dictator(3, 0)))["theorem_lb"]
    assert r.status == HOLDS and r.lhs == 8 == r.rhs
    assert r.detail["equality"] and r.detail["members_at_equality"] == 128


def test_verify_powerset_equality():
    r = by_id(harness.verify(zoo.powerset(2)))["theorem_lb"]
    assert r.status == HOLDS and r.lhs == 4 == r.rhs


def test_verify_singletons_etd_pin_and_witness():
    cls = zoo.singletons(3)
    res = by_id(harness.verify(cls))
    lower = res["etd_claimed_lower"]
    assert lower.status == VIOLATED and (lower.lhs, lower.rhs) == (8, 7)
    for cid in ("etd_def_td_le_etd", "etd_def_etd_le_max", "etd_def_max_le_etd_plus_1", "etd_claimed_upper"):
        assert res[cid].status == HOLDS
    # the witness is a concept whose own numbers reproduce the violation
    g = Concept.from_bitstring(lower.witness["concept"])
    F = meta_function(cls)
    assert g.table not in cls
    assert boolfn.certificate_complexity_at(F, g.table) == 8
    assert teach.specifying_set(cls, g).size == 7 == teach.etd(cls)


def test_c0_memb_witness_re_verifies():
    cls = zoo.singletons(3)
    r = by_id(harness.verify(cls))["c0_le_memb"]
    assert r.status == VIOLATED
    g = Concept.from_bitstring(r.witness["concept"])
    assert boolfn.certificate_complexity_at(meta_function(cls), g.table) == r.lhs
    assert teach.memb(cls) == r.rhs


def test_c0_le_m_only_when_applicable():
    res = by_id(harness.verify(zoo.singletons(3)))
    assert res["c0_le_m"].status == SKIPPED
    res = by_id(harness.verify(zoo.monotone_monomials(3)))
    assert res["c0_le_m"].status == HOLDS and res["c0_le_m"].rhs == 7


def test_fact_and_corollaries_hold_on_small_zoo():
    for spec in zoo.default_zoo(2):
        res = by_id(harness.verify(zoo.build(spec), spec.label()))
        for cid in ("fact_ublb", "theorem_lb", "corollary_lb_worst", "corollary_lb_avg",
                    "c1_ge_x_minus_atd", "etd_def_td_le_etd", "etd_def_etd_le_max",
                    "etd_def_max_le_etd_plus_1", "etd_le_memb", "memb_plus_d", "complement_duality"):
            assert res[cid].status == HOLDS, (spec.label(), cid)


def test_singletons_with_empty_attains_fact_upper_region():
    r = by_id(harness.verify(zoo.singletons_with_empty(3)))["fact_ublb"]
    assert r.status == HOLDS and r.detail["max_sum"] == 2 * 8 - 1


def test_skipped_operands_never_hold():
    cfg = harness.RunConfig(max_seconds=1e-9)
    res = harness.verify(zoo.kterm_dnf(3, 2), config=cfg)
    assert all(r.status == SKIPPED for r in res)
    assert all(r.lhs is None and r.rhs is None and r.reason for r in res)


def test_caps_become_skips_in_verify():
    res = by_id(harness.verify(zoo.singletons(4)))
    assert res["etd_claimed_lower"].status == SKIPPED and "cap" in res["etd_claimed_lower"].reason
    assert res["memb_plus_d"].status == SKIPPED
    assert res["theorem_lb"].status == HOLDS


def test_verify_many_parallel_matches_serial():
    specs = zoo.default_zoo(2)[:6]
    serial = harness.verify_many(specs)
    parallel = harness.verify_many(specs, harness.RunConfig(threads=2))
    strip = lambda rs: [[without_timing(r.to_record()) for r in group] for group in rs]
    assert strip(serial) == strip(parallel)


def test_measure_report_values():
    rep = harness.measure(zoo.singletons_with_empty(3), ("td", "atd", "c0", "ac0", "c1", "ac1"))
    assert rep.get("td") == 8 and rep.get("atd") == Fraction(16, 9)
    assert rep.get("c0") == rep.get("ac0") == 2 and rep.get("c1") == rep.get("ac1") == 7
    rec = rep.to_record()
    atd = next(m for m in rec["measures"] if m["name"] == "atd")
    assert atd["value"] == {"num": 16, "den": 9} and decode_value(atd["value"]) == Fraction(16, 9)


def test_measure_raises_on_cap():
    with pytest.raises(CapExceeded):
        harness.measure(zoo.singletons(4), ("etd",))
    rep = harness.measure(zoo.singletons(4), ("etd",), config=harness.RunConfig(etd_max_n=4))
    assert rep.get("etd") == 15


def test_measure_rejects_unknown_name():
    with pytest.raises(ValueError):
        harness.measure(zoo.singletons(2), ("nope",))


def test_table_rows():
    rows = harness.table_report([zoo.ClassSpec("monotone_monomials", 3),
                                 zoo.ClassSpec("singletons_with_empty", 3),
                                 zoo.ClassSpec("powerset", 2),
                                 zoo.ClassSpec("kterm_dnf", 3, k=2)])
    mm, se, ps, dnf = rows
    assert mm["TD"] == 3 and mm["note"].startswith("measured") and "Theta(n)" in mm["note"]
    assert se["aTD"] == Fraction(16, 9)
    assert ps["C1"] == ps["C0"] == 0
    assert "exactly-2-term reading m=" in dnf["note"]


def test_complement_atd_report_is_measured():
    rows = harness.complement_atd_report((2, 3))
    n3 = rows[1]
    assert decode_value(n3["atd_complement"]) == Fraction(1920, 247)
    assert decode_value(n3["atd_singletons_with_empty"]) == Fraction(16, 9)
    assert n3["ac0_complement"] == n3["ac1_singletons_with_empty"] == 7


def test_symmetry_report_both_readings():
    rec = harness.symmetry_report(zoo.monomials_exactly(3, 2), "m")
    assert rec["verdict"]["status"] == rec["swap_verdict"]["status"] == "WeaklySymmetric"
    assert rec["readings_disagree"] is False
    rec4 = harness.symmetry_report(zoo.monomials_exactly(4, 2))
    assert rec4["swap_verdict"] is None


def test_class_measures_match_oracles_at_n2():
    import oracles
    for spec in zoo.default_zoo(2):
        cls = zoo.build(spec)
        M = harness.ClassMeasures(cls)
        tables = list(cls.tables)
        td = [oracles.teaching_dimension(tables, 4, t) for t in tables]
        assert M.td_list() == td, spec.label()
        certs = {g: oracles.class_certificate(tables, 4, g) for g in range(16)}
        outside = [certs[g] for g in range(16) if g not in cls]
        assert M.c0() == (max(outside) if outside else 0), spec.label()
        assert M.c1() == max(certs[t] for t in tables), spec.label()
        assert M.etd() == max(oracles.specifying_size(tables, 4, g) for g in range(16)), spec.label()
        assert M.memb() == oracles.memb(tables, 4), spec.label()


def test_c0_exceeds_memb_by_brute_force():
    # independent confirmation of the C0 <= MEMB violation on singletons(2)
    import oracles
    tables = list(zoo.singletons(2).tables)
    assert oracles.class_certificate(tables, 4, 0) == 4
    assert oracles.memb(tables, 4) == 3
