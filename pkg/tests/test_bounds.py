from fractions import Fraction

import pytest

from charlevel import bounds, census, gfcore
from charlevel.gfcore import GroupSpec


def test_orbit_formula_values():
    assert bounds.orbit_formula(1, 2, 2) == 5
    assert bounds.orbit_formula(-1, 1, 2) == 3
    assert bounds.gl_orbit_count(2, 3, 2) == 15
    assert bounds.gl_orbit_count(5, 3, 2) == bounds.orbit_formula(1, 3, 2)


def test_gu_power_inner():
    assert [bounds.gu_power_inner(m, 2) for m in range(5)] == [1, 0, 3, 0, 27]


def test_pencil_numbers():
    assert [bounds.pencil_f(m) for m in range(3)] == [1, 4, 14]
    assert [bounds.pencil_h(m) for m in range(3)] == [1, 3, 9]
    assert bounds.pencil_F(2, 2) == 21
    assert bounds.pencil_F(1, 3) == gfcore.pencil_orbit_oracle(1, 2, 3)


def test_pencil_sandwich():
    assert bounds.pencil_bounds_check(2, 2, 2)
    assert bounds.pencil_bounds_check(4, 2, 2)
    assert not bounds.pencil_bounds_check(4, 2, 2, value=20)


def test_threshold_base_cases():
    for C in (1, 2, Fraction(5, 2)):
        assert bounds.threshold_f(C, -1, 7) == 1
        assert bounds.threshold_f(C, 2, 0) == 1
    assert bounds.threshold_h(1, 0) >= 10
    with pytest.raises(ValueError):
        bounds.threshold_f(Fraction(1, 2), 0, 1)


def test_threshold_delta_window():
    for m in range(3):
        for k in range(1, 10):
            d = bounds.threshold_delta(2, m, k)
            assert Fraction(1, 2 ** (m + 1)) <= d < Fraction(1, 2 ** m)


@pytest.mark.parametrize("name", bounds.SUITES)
def test_suites_pass(name):
    rep = bounds.inequality_suite(name)
    assert rep.instances > 0
    assert rep.ok, rep.failures[:5]


def test_centralizer_index_exception_is_recorded():
    rep = bounds.inequality_suite("centralizer-index")
    assert ("ii", 3, 3, 2) in rep.exceptions


def test_main_degree_part_three():
    specs = [GroupSpec(1, 7, 2), GroupSpec(-1, 8, 2)]
    assert bounds.inequality_suite("main-degree", specs=specs, parts="iii").ok


def test_weil_hypotheses():
    assert bounds.weil_hypotheses(1, 5) == (False, False)
    assert bounds.weil_hypotheses(1, 6) == (True, False)
    assert bounds.weil_hypotheses(1, 9) == (True, True)
    assert bounds.weil_hypotheses(-1, 3) == (True, False)
    assert bounds.weil_hypotheses(-1, 4) == (True, True)


def test_weil_pieces_degrees():
    spec = GroupSpec(-1, 3, 2)
    pieces = bounds.weil_pieces(spec, gfcore.mat_identity(3))
    assert sorted(p.degree for p in pieces) == [2, 3, 3]
    spec = GroupSpec(1, 3, 3)
    pieces = bounds.weil_pieces(spec, gfcore.mat_identity(3))
    assert sorted(p.degree for p in pieces) == [12, 13]


def test_weil_scan_small():
    scan = bounds.weil_bound_scan(GroupSpec(-1, 4, 2), samples=50, seed=3)
    assert scan.ok and scan.refined_checked > 0
    assert bounds.weil_bound_scan(GroupSpec(1, 6, 2), samples=30).ok


@pytest.mark.parametrize("eps,n,q", [(1, 3, 2), (1, 4, 3), (1, 5, 4), (-1, 3, 2), (-1, 4, 3), (-1, 3, 4)])
def test_transvection_value(eps, n, q):
    r = abs(bounds.transvection_weil_ratio(GroupSpec(eps, n, q)))
    assert 1 - Fraction(2, q) <= r <= 1 + Fraction(2, q)


def test_mixing_bound_hypothesis():
    zeta = lambda s: census.witten_zeta({1: 1, 3: 2, 4: 1, 5: 1}, s)
    assert mixing_bound_ok(zeta)
    with pytest.raises(bounds.HypothesisError):
        bounds.mixing_bound(zeta, 2, 13, "l1")
    with pytest.raises(ValueError):
        bounds.mixing_bound(zeta, 2, 40, "l2")


def mixing_bound_ok(zeta):
    v = bounds.mixing_bound(zeta, 2, 28, "inf")
    w = bounds.mixing_bound(zeta, 2, 28, "l1")
    return v > w > 0
