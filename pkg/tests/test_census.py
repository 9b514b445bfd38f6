from collections import Counter

import pytest

from charlevel import census, gfcore
from charlevel.gfcore import GroupSpec

GROUPS = ["GL(2,2)", "GL(2,3)", "GL(3,2)", "GU(2,2)", "GU(2,3)", "GU(3,2)", "GL(3,3)", "GU(4,2)"]


@pytest.mark.parametrize("name", GROUPS)
def test_degree_squares_sum_to_order(name):
    spec = GroupSpec.parse(name)
    ms = census.degree_multiset(spec)
    assert sum(c * d * d for d, c in ms.items()) == spec.order


@pytest.mark.parametrize("name", ["GL(2,2)", "GL(2,3)", "GU(2,2)", "GU(2,3)", "GL(3,2)"])
def test_class_number_matches_brute_force(name):
    spec = GroupSpec.parse(name)
    assert census.class_number(spec) == len(gfcore.conj_classes(spec))


def test_counting_and_explicit_modes_agree():
    for name in ("GL(3,3)", "GU(3,2)", "GL(4,2)"):
        spec = GroupSpec.parse(name)
        assert sum(1 for _ in census.enumerate_labels(spec)) == census.class_number(spec)


def test_gl1():
    assert census.class_number(GroupSpec(1, 1, 5)) == 4


def test_class_number_bounds():
    for n in range(1, 6):
        for q in (2, 3, 4):
            assert census.class_number_bounds_check(GroupSpec(1, n, q))
            assert census.class_number_bounds_check(GroupSpec(-1, n, q))


def test_level_statistics_totals():
    spec = GroupSpec(1, 3, 3)
    st = census.level_statistics(spec)
    assert sum(v[0] for v in st.values()) == census.class_number(spec)
    assert st[0][1] == 1


def test_sl_degrees():
    assert census.sl_degree_multiset(GroupSpec(1, 2, 3, True)) == Counter({1: 3, 2: 3, 3: 1})
    assert census.sl_degree_multiset(GroupSpec(1, 2, 4, True)) == Counter({1: 1, 3: 2, 4: 1, 5: 1})


def test_witten_zeta():
    spec = GroupSpec(1, 2, 3)
    # zeta(-2) = sum chi(1)^2 = |G|; zeta(0) = class number
    assert census.witten_zeta(spec, -2) == spec.order
    assert census.witten_zeta(spec, 0) == 8
    assert census.witten_zeta(spec, 0, exclude_trivial=True) == 7
