import numpy as np
import pytest

from charlevel import gfcore
from charlevel.gfcore import GroupSpec


def test_field_axioms_small():
    for Q in (2, 3, 4, 8, 9):
        F = gfcore.field_of_size(Q)
        for a in range(1, Q):
            assert F.mul(a, F.inv(a)) == 1
            assert F.pow(a, Q - 1) == 1
        assert F.order(F.gen) == Q - 1


def test_prime_power():
    assert gfcore.prime_power(9) == (3, 2)
    with pytest.raises(ValueError):
        gfcore.prime_power(6)


@pytest.mark.parametrize("name,order,classes", [
    ("GL(2,2)", 6, 3), ("GL(2,3)", 48, 8), ("SL(2,3)", 24, 7), ("GU(2,2)", 18, 9),
    ("SL(2,4)", 60, 5), ("GL(3,2)", 168, 6),
])
def test_class_counts(name, order, classes):
    spec = GroupSpec.parse(name)
    assert spec.order == order
    cls = gfcore.conj_classes(spec)
    assert len(cls) == classes
    assert sum(c.size for c in cls) == order


def test_gu_elements_are_unitary():
    spec = GroupSpec(-1, 2, 3)
    G = gfcore.matrix_group(spec)
    F = spec.field
    for g in G.elements[:50]:
        assert gfcore.gu_member(F, 3, g)


def test_guard():
    with pytest.raises(gfcore.GuardExceeded):
        gfcore.matrix_group(GroupSpec(1, 5, 3))


def test_kron_fixed_dim_matches_explicit_kron():
    F = gfcore.field_of_size(3)
    rng = np.random.default_rng(1)
    for _ in range(10):
        g, s = gfcore.random_gl(F, 2, rng), gfcore.random_gl(F, 2, rng)
        K = gfcore.kron(F, g, s)
        assert gfcore.kron_fixed_dim(F, g, s) == gfcore.fixed_dim(F, K)


def test_delta_max_eigenspace():
    F = gfcore.field_of_size(2)
    assert gfcore.delta_max_eigenspace(F, gfcore.mat_identity(3)) == 3
    assert gfcore.delta_max_eigenspace(F, gfcore.transvection(3)) == 2
    # irreducible cubic: eigenvalues are three distinct conjugates
    C = gfcore.companion(F, [1, 1, 0, 1])
    assert gfcore.delta_max_eigenspace(F, C) == 1


def test_orbit_and_pencil_oracles():
    assert gfcore.tuple_orbit_count_oracle(GroupSpec(1, 2, 2), 2) == 5
    assert gfcore.pencil_orbit_oracle(1, 2, 2) == 5
    assert gfcore.pencil_orbit_oracle(2, 2, 2) == 16


def test_weil_value_at_identity():
    spec = GroupSpec(-1, 3, 2)
    assert gfcore.weil_value(spec, gfcore.mat_identity(3)) == 8  # (-1)^3 (-2)^3
