from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncgeom.scalars import GaussRat, Scalar, I, ONE


def rat():
    return st.builds(
        Fraction,
        st.integers(min_value=-30, max_value=30),
        st.integers(min_value=1, max_value=12),
    )


def gauss():
    return st.builds(GaussRat, rat(), rat())


PARAMS = ("q", "p")


def scalars():
    exps = st.tuples(
        st.integers(min_value=-3, max_value=3),
        st.integers(min_value=-3, max_value=3),
    )
    return st.builds(
        lambda d: Scalar(PARAMS, d),
        st.dictionaries(exps, gauss(), max_size=4),
    )


def test_gauss_field_basics():
    a = GaussRat(Fraction(1, 2), Fraction(3))
    b = GaussRat(2, -1)
    assert (a * b) / b == a
    assert a * a.conjugate() == GaussRat(a.re * a.re + a.im * a.im)
    assert I * I == GaussRat(-1)


def test_gauss_parse_roundtrip():
    for text in ["i", "-i", "2", "-3/4", "2i", "1+i", "1/2-3i", "0"]:
        v = GaussRat.parse(text)
        assert GaussRat.parse(str(v)) == v
    with pytest.raises(ValueError):
        GaussRat.parse("q")


@given(gauss(), gauss(), gauss())
def test_gauss_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


def q(power=1):
    return Scalar.var("q", PARAMS, power)


def p(power=1):
    return Scalar.var("p", PARAMS, power)


def test_scalar_examples():
    # (q + 1)(q - 1) = q^2 - 1
    assert (q() + 1) * (q() - 1) == q(2) - 1
    # q * q^-1 = 1
    assert q() * q(-1) == Scalar.one(PARAMS)
    # (q - q^-1) + q^-1 = q
    assert (q() - q(-1)) + q(-1) == q()


def test_scalar_param_mismatch():
    other = Scalar.var("q", ("q",))
    with pytest.raises(ValueError):
        q() + other


@given(scalars(), scalars(), scalars())
def test_scalar_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a + (b + c) == (a + b) + c


@given(scalars(), scalars())
def test_evaluate_is_ring_hom(a, b):
    point = {"q": GaussRat(2, 1), "p": GaussRat(Fraction(-3, 2))}
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)


def test_evaluate_at_gaussian_points():
    one_plus_qm2 = Scalar.one(PARAMS) + q(-2)
    assert one_plus_qm2.evaluate({"q": I, "p": ONE}) == GaussRat(0)
    kappa = Scalar.var("kappa", ("kappa",))
    assert kappa.evaluate({"kappa": GaussRat(0)}) == GaussRat(0)
    with pytest.raises(ZeroDivisionError):
        q(-1).evaluate({"q": GaussRat(0), "p": ONE})
    with pytest.raises(KeyError):
        q().evaluate({"p": ONE})


def test_substitute_power():
    # 1 + q^-4 at q^2 = i: rebase to t = q^2 first, then evaluate at t = i
    s = Scalar.one(("q",)) + Scalar.var("q", ("q",), -4)
    t = s.substitute_power("q", 2, "t")
    assert t == Scalar.one(("t",)) + Scalar.var("t", ("t",), -2)
    assert t.evaluate({"t": I}) == GaussRat(0)
    with pytest.raises(ValueError):
        Scalar.var("q", ("q",), 3).substitute_power("q", 2, "t")


def test_scalar_diff():
    x = Scalar.var("x0", ("x0", "x1"))
    y = Scalar.var("x1", ("x0", "x1"))
    f = x * x * y + y
    assert f.diff("x0") == 2 * x * y
    assert f.diff("x1") == x * x + 1


def test_scalar_str():
    s = q(-1) - p()
    assert str(s) == "q^-1 - p"
    assert str(Scalar.zero(PARAMS)) == "0"
    assert str(q() * GaussRat(0, 1)) == "i*q"
