from collections import Counter
from fractions import Fraction

import mpmath
import pytest

from charlevel import census, oracle
from charlevel.bounds import HypothesisError, mixing_bound
from charlevel.gfcore import GroupSpec


def table(name):
    return oracle.dixon_table(GroupSpec.parse(name))


def test_s3_table():
    T = table("GL(2,2)")
    assert T.k == 3
    assert sorted(T.degrees) == [1, 1, 2]
    oracle.validate_table(T)


def test_sl23_table():
    T = table("SL(2,3)")
    assert T.k == 7
    assert Counter(T.degrees) == Counter({1: 3, 2: 3, 3: 1})


def test_cache_hit_is_identical():
    spec = GroupSpec.parse("SL(2,3)")
    a = oracle.dixon_table(spec).to_json()
    b = oracle.dixon_table(spec).to_json()
    c = oracle.dixon_table(spec, use_cache=False).to_json()
    assert a == b == c


def test_dixon_prime():
    p = oracle.dixon_prime(24, 12)
    assert p % 12 == 1 and p * p > 4 * 24


def test_tau_powers_gl():
    T = table("GL(2,3)")
    assert [oracle.power_inner_with_trivial(T, m) for m in range(5)] == [1, 2, 6, 27, 171]


def test_parity_default_range():
    for name in ("GU(2,2)", "GU(3,2)"):
        T = table(name)
        assert oracle.parity_check(T)
    # past n it fails
    assert not oracle.parity_check(table("GU(2,2)"), 4)


def test_empirical_levels_match_labels():
    for name in ("GU(2,2)", "GL(3,2)", "GU(2,3)"):
        spec = GroupSpec.parse(name)
        T = oracle.dixon_table(spec)
        got = Counter(zip(T.degrees, oracle.empirical_level(T)))
        assert got == census.degree_level_multiset(spec, "level")


@pytest.mark.parametrize("name", ["SL(2,3)", "SL(2,4)", "SL(3,2)", "SU(2,2)", "SU(3,2)"])
def test_restriction(name):
    S = GroupSpec.parse(name)
    TS = oracle.dixon_table(S)
    rep = oracle.restriction_check_sl(oracle.dixon_table(S.nonspecial()), TS)
    assert rep.ok, rep.failures
    assert Counter(TS.degrees) == census.sl_degree_multiset(S)


def test_dual_pair_gl22():
    res = oracle.dual_pair_decompose(2, 1, 2, 1)
    rep = oracle.dual_pair_certify(res)
    assert rep.ok
    assert oracle.dual_pair_label_match(res, rep.top)


def test_walk_sl23():
    T = table("SL(2,3)")
    cls = next(t for t in range(T.k) if T.sizes[t] == 4)
    prev = None
    for t in range(1, 11):
        w = oracle.random_walk(T, cls, t)
        assert w.total == 1
        assert w.l1 ** 2 <= w.ds_bound
        if prev is not None:
            assert w.linf <= prev
        prev = w.linf


def test_commutator_measure():
    mu = oracle.mu_commutator(table("SL(2,4)"))
    assert all(x > 0 for x in mu)
    T = table("SL(2,3)")
    mu = oracle.mu_commutator(T)
    # mu(g) |C(g)| / |G| sums to 1 over classes
    assert sum(m * s for m, s in zip(mu, T.sizes)) / T.order == 1


def test_mixing_bound_on_noncentral_classes():
    spec = GroupSpec.parse("SL(2,3)")
    T = oracle.dixon_table(spec)
    degs = census.sl_degree_multiset(spec)
    zeta = lambda s: census.witten_zeta(degs, s)
    t = 28
    bound = mixing_bound(zeta, 2, t, "inf")
    for cls in range(T.k):
        if T.sizes[cls] > 1:
            linf = oracle.random_walk(T, cls, t).linf
            assert mpmath.mpf(linf.numerator) / linf.denominator <= bound
    with pytest.raises(HypothesisError):
        mixing_bound(zeta, 2, 27, "inf")


def test_small_centralizer_scan():
    small, ratio = oracle.small_centralizer_scan(table("SL(2,5)"))
    assert small == []
    assert 0 < ratio < 1
