from math import comb

import pytest

from charlevel import qcomb
from charlevel.qcomb import QPoly


def test_partition_counts():
    assert [qcomb.partition_counts(m)[0] for m in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert [qcomb.partition_counts(m)[1] for m in range(8)] == [1, 0, 1, 1, 2, 2, 4, 4]


def test_partitions_order_and_conjugate():
    parts = list(qcomb.partitions_of(4))
    assert parts[0] == (4,) and parts[-1] == (1, 1, 1, 1)
    for lam in qcomb.partitions_of(7):
        assert qcomb.conjugate(qcomb.conjugate(lam)) == lam


def test_stats():
    a, b, br = qcomb.stats((2, 1))
    assert (a, b, br) == (1, 2, 9 - 10)


@pytest.mark.parametrize("m", range(7))
def test_gauss_binom_at_one_is_binomial(m):
    for k in range(m + 1):
        assert qcomb.gauss_binom(m, k)(1) == comb(m, k)
    with pytest.raises(ValueError):
        qcomb.gauss_binom_eval(m, 0, 1)


def test_gauss_binom_counts_subspaces():
    # subspaces of F_2^3 of dimension 1
    assert qcomb.gauss_binom_eval(3, 1, 2) == 7
    assert qcomb.gauss_binom_eval(4, 2, 3) == 130


def test_qpoly_arithmetic():
    x = QPoly.monomial(1)
    f = (x - 1) * (x + 1)
    assert f == QPoly([-1, 0, 1])
    assert f.exact_div(x - 1) == x + 1
    with pytest.raises(qcomb.ExactDivisionError):
        f.exact_div(x - 2)
    assert f(3) == 8


def test_z_identity():
    assert all(qcomb.z_identity_check(m) for m in range(6))


def test_hall_sum_small():
    for lam in [(1, 1), (2, 1), (1, 1, 1), (3, 2)]:
        for j in (1, 2):
            assert qcomb.hall_elementary_sum(lam, j, 2) == qcomb.abelian_subgroup_oracle(lam, j, 2)
    assert qcomb.hall_elementary_sum((1, 1, 1), 4, 2) == 0


def test_bracket_classifier():
    out = dict(qcomb.sum1_classify(6))
    assert out[(3, 3)] == "iii"
    assert out[(2, 2, 2)] == "i"
    with pytest.raises(ValueError):
        qcomb.sum1_classify(3)
