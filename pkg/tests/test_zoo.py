import itertools

import pytest

from dimlab import zoo
from dimlab.errors import CapExceeded, DegenerateK, EmptyClass, InvalidAnchor, InvalidK

import oracles


def test_simple_class_sizes():
    for n in range(1, 4):
        assert zoo.singletons(n).m == 2 ** n
        assert zoo.singletons_with_empty(n).m == 2 ** n + 1
        assert zoo.dictator(n, 0).m == 2 ** (2 ** n - 1)
        assert zoo.powerset(n).m == 2 ** (2 ** n)
        assert zoo.kjuntas(n, 0).m == 2


def test_singletons_have_weight_one():
    assert all(c.weight == 1 for c in zoo.singletons(3))


def test_dictator_anchor():
    cls = zoo.dictator(2, 3)
    assert cls.m == 8 and all(c(3) == 1 for c in cls)
    with pytest.raises(InvalidAnchor):
        zoo.dictator(2, 4)


def test_caps():
    with pytest.raises(CapExceeded):
        zoo.powerset(5)
    with pytest.raises(CapExceeded):
        zoo.rubinstein(3)
    with pytest.raises(DegenerateK):
        zoo.rubinstein(1)


def test_monomial_examples():
    assert sorted(zoo.monotone_monomials_exactly(3, 2).tables) == sorted([
        sum(1 << x for x in range(8) if x & m == m) for m in (0b011, 0b101, 0b110)])
    assert sorted(zoo.monomials_exactly(2, 2).tables) == [1, 2, 4, 8]
    for n in range(1, 5):
        assert zoo.monotone_monomials_exactly(n, n).m == 1
    with pytest.raises(InvalidK):
        zoo.monomials_exactly(3, 4)
    with pytest.raises(InvalidK):
        zoo.monomials_exactly(3, 0)


def test_monomials_match_literal_enumeration():
    for n in range(1, 5):
        assert set(zoo.monomials(n).tables) == oracles.monomial_tables(n, False)
        assert set(zoo.monotone_monomials(n).tables) == oracles.monomial_tables(n, True)


def test_exactly_k_monomials_are_disjoint_and_cover():
    for n in range(1, 5):
        parts = [set(zoo.monomials_exactly(n, k).tables) for k in range(1, n + 1)]
        for a, b in itertools.combinations(parts, 2):
            assert not a & b
        assert set().union(*parts) == set(zoo.monomials(n).tables)


def test_kterm_dnf_examples():
    assert zoo.kterm_dnf(2, 1, monotone=True) == zoo.monotone_monomials(2)
    assert 0b0110 in zoo.kterm_dnf(2, 2)
    for t in zoo.kterm_dnf(3, 2, monotone=True).tables:
        for x in range(8):
            for j in range(3):
                if not x >> j & 1:
                    assert (t >> x & 1) <= (t >> (x | 1 << j) & 1)


def test_kterm_dnf_exact_reading():
    at_most = zoo.kterm_dnf(3, 2)
    exact = zoo.kterm_dnf(3, 2, exact=True)
    one = zoo.kterm_dnf(3, 1)
    assert set(exact.tables) == set(at_most.tables) - set(one.tables)


def test_kjuntas_examples():
    assert zoo.kjuntas(3, 1).m == 8
    assert zoo.kjuntas(3, 3) == zoo.powerset(3)
    for n, k in [(3, 2), (4, 2)]:
        expected = [t for t in range(1 << (1 << n))
                    if sum(oracles.depends_on(t, n, j) for j in range(n)) <= k]
        assert sorted(zoo.kjuntas(n, k).tables) == expected


def test_ltf_counts_and_oracle():
    assert zoo.ltf(1).m == 4
    assert zoo.ltf(2).m == 14
    assert 0b0110 not in zoo.ltf(2) and 0b1001 not in zoo.ltf(2)
    for n in (1, 2, 3):
        separable = [t for t in range(1 << (1 << n)) if oracles.is_linearly_separable(t, n)]
        assert list(zoo.ltf(n).tables) == separable


def test_ltf_members_are_unate():
    for t in zoo.ltf(3).tables:
        for j in range(3):
            ups = {(t >> (x | 1 << j) & 1) - (t >> x & 1) for x in range(8) if not x >> j & 1}
            assert not ({1, -1} <= ups)


def test_complement_class():
    with pytest.raises(EmptyClass):
        zoo.complement_class(zoo.powerset(2))
    comp = zoo.complement_class(zoo.singletons_with_empty(2))
    assert comp.m == 11
    from dimlab.core import meta_function
    F, G = meta_function(zoo.singletons_with_empty(2)), meta_function(comp)
    assert (G.table == 1 - F.table).all()


def test_rubinstein_examples():
    f = zoo.rubinstein(2)
    assert f.V == 16
    assert int((f.table == 0).sum()) == 20736 == (2 ** 4 - 4) ** 4
    assert f(0) == 0
    assert f(0b0011) == 1          # piece 0 holds positions 0 and 1
    assert f(0b1001) == 1          # cyclic wrap within piece 0
    assert f(0b0101) == 0
    assert f(0b0111) == 0


def test_generators_are_deterministic():
    for spec in zoo.default_zoo(3):
        assert zoo.build(spec).fingerprint == zoo.build(spec).fingerprint


def test_build_validates_family():
    with pytest.raises(ValueError):
        zoo.build(zoo.ClassSpec("nope", 2))
    with pytest.raises(InvalidK):
        zoo.build(zoo.ClassSpec("kjuntas", 2))
