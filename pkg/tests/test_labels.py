import pytest

from charlevel import labels
from charlevel.gfcore import GroupSpec
from charlevel.labels import CharLabel, EigenOrbit, LabelError


def unip(spec, lam):
    return CharLabel.make(spec, {EigenOrbit.unit(0): lam})


def test_trivial_and_steinberg():
    spec = GroupSpec(1, 4, 3)
    triv = labels.trivial_label(spec)
    assert labels.degree(triv) == 1 and labels.level(triv) == 0
    st = labels.steinberg_label(GroupSpec(1, 3, 2))
    assert labels.degree(st) == 8 and labels.level(st) == 2


def test_weil_unipotent_degree():
    spec = GroupSpec(1, 3, 3)
    lab = unip(spec, (2, 1))
    # (q^n - q)/(q - 1)
    assert labels.degree(lab) == (27 - 3) // 2
    assert labels.level(lab) == 1
    gu = GroupSpec(-1, 3, 2)
    # (q^n + (-1)^n q)/(q + 1)
    assert labels.degree(unip(gu, (2, 1))) == (8 - 2) // 3


def test_degree_poly_agrees_with_value():
    spec = GroupSpec(1, 4, 2)
    lab = CharLabel.make(spec, {EigenOrbit.unit(0): (2,), EigenOrbit.generic(2, 0): (1,)})
    assert labels.degree_poly(lab)(2) == labels.degree(lab)


def test_dual_is_involution():
    spec = GroupSpec(-1, 4, 2)
    lab = unip(spec, (3, 1))
    assert labels.alvis_curtis_dual(labels.alvis_curtis_dual(lab)) == lab
    assert labels.alvis_curtis_dual(labels.trivial_label(spec)) == labels.steinberg_label(spec)


def test_theta_round_trip():
    alpha = unip(GroupSpec(1, 2, 3), (1, 1))
    big = labels.theta_inverse(alpha, 5)
    assert big.unit_partition(0) == (3, 1, 1)
    assert labels.true_level(big) == 2
    assert labels.theta_forward(big) == alpha
    with pytest.raises(LabelError):
        labels.theta_inverse(unip(GroupSpec(1, 3, 2), (3,)), 4)


def test_json_round_trip_and_errors():
    spec = GroupSpec(1, 3, 2)
    lab = CharLabel.make(spec, {EigenOrbit.unit(0): (1,), EigenOrbit.generic(2, 0): (1,)})
    assert CharLabel.from_json(lab.dumps()) == lab
    with pytest.raises(LabelError):
        CharLabel.from_json('{"spec": {"eps": "+", "n": 3, "q": 2}, "entries": []}')
    with pytest.raises(LabelError):
        CharLabel.from_json('{"entries": []}')


def test_twist_moves_unit_entries():
    spec = GroupSpec(1, 2, 3)
    lab = unip(spec, (2,))
    tw = labels.twist_by_linear(lab, 1)
    assert tw.unit_partition(1) == (2,)
    assert labels.level(tw) == 0 and labels.true_level(tw) == 2
