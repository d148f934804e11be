from fractions import Fraction

import pytest

from ncgeom.linalg import (
    ScalarMatrix,
    cluster_levels,
    eigen_numeric,
    levi_civita,
    merge_sign,
    solve_linear,
)
from ncgeom.scalars import GaussRat, ONE, ZERO


def test_levi_civita():
    assert levi_civita((0, 1, 2, 3)) == 1
    assert levi_civita((1, 0, 2, 3)) == -1
    assert levi_civita((0, 0, 2, 3)) == 0
    assert levi_civita((3, 2, 1, 0)) == 1


def test_merge_sign():
    assert merge_sign((0, 2), (1,)) == ((0, 1, 2), -1)
    assert merge_sign((0,), (1, 2)) == ((0, 1, 2), 1)
    assert merge_sign((1,), (1, 2)) == (None, 0)


def g(x):
    return GaussRat(x)


def test_solve_identity_and_zero():
    ident = ScalarMatrix.identity(3)
    res = solve_linear(ident, [g(0), g(0), g(0)])
    assert res["kernel_dim"] == 0
    zero = ScalarMatrix.zeros(2, 2)
    res = solve_linear(zero, [g(0), g(0)])
    assert res["kernel_dim"] == 2


def test_solution_satisfies_system():
    a = ScalarMatrix([[g(2), g(1)], [g(1), g(-1)]])
    rhs = [g(5), g(1)]
    res = solve_linear(a, rhs)
    x = res["solution"]
    for row, b in zip(a.entries, rhs):
        acc = ZERO
        for r, v in zip(row, x):
            acc = acc + r * v
        assert acc == b
    assert res["kernel_dim"] == 0


def test_inconsistent_system():
    a = ScalarMatrix([[g(1), g(1)], [g(1), g(1)]])
    res = solve_linear(a, [g(0), g(1)])
    assert res["solution"] is None
    assert res["kernel_dim"] == 1


def test_det():
    a = ScalarMatrix([[g(2), g(1)], [g(1), g(-1)]])
    assert a.det() == GaussRat(-3)
    assert ScalarMatrix.zeros(2, 2).det() == GaussRat(0)


def test_eigen_numeric():
    vals = eigen_numeric([[g(2), g(0)], [g(0), g(8)]])
    assert vals == [2.0, 8.0]
    vals = eigen_numeric([[g(0), g(1)], [g(1), g(0)]])
    assert abs(vals[0] + 1) < 1e-9 and abs(vals[1] - 1) < 1e-9
    with pytest.raises(ValueError):
        eigen_numeric([[g(0), g(1)], [g(2), g(0)]])


def test_eigen_known_rational_spectrum():
    # symmetric matrix with spectrum {1, 1, 7}
    m = [
        [Fraction(3), Fraction(2), Fraction(2)],
        [Fraction(2), Fraction(3), Fraction(2)],
        [Fraction(2), Fraction(2), Fraction(3)],
    ]
    vals = eigen_numeric([[g(x) for x in row] for row in m])
    for got, want in zip(vals, [1.0, 1.0, 7.0]):
        assert abs(got - want) < 1e-9


def test_cluster_levels():
    levels = cluster_levels([0.0, 2.0 + 1e-13, 2.0, 8.0])
    assert [m for _, m in levels] == [1, 2, 1]
