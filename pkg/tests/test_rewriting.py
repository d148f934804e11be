import pytest

from ncgeom.rewriting import NCPoly, Presentation
from ncgeom.scalars import Scalar


def manin():
    params = ("q",)
    qinv = Scalar.var("q", params, -1)
    rules = {("y", "x"): NCPoly(params, {("x", "y"): qinv})}
    return Presentation("manin", ["x", "y"], params, rules)


def test_manin_normal_order():
    pres = manin()
    yx = pres.gen("y") * pres.gen("x")
    nf = pres.normal_order(yx)
    assert nf == NCPoly(pres.params, {("x", "y"): pres.var("q", -1)})
    # idempotent
    assert pres.normal_order(nf) == nf


def test_manin_no_overlaps():
    pres = manin()
    assert pres.overlap_words() == []
    assert pres.confluence_check() == []


def test_linearity_and_power_reduction():
    pres = manin()
    x, y = pres.gen("x"), pres.gen("y")
    lhs = pres.normal_order((x + y) * (x + y))
    rhs = pres.normal_order(x * x + x * y + y * x + y * y)
    assert lhs == rhs


def test_rule_validation():
    params = ("q",)
    with pytest.raises(ValueError):
        # ascending LHS rejected
        Presentation(
            "bad", ["x", "y"], params,
            {("x", "y"): NCPoly(params, {("y", "x"): Scalar.one(params)})},
        )
    with pytest.raises(ValueError):
        # non-decreasing RHS rejected
        Presentation(
            "bad", ["x", "y"], params,
            {("y", "x"): NCPoly(params, {("y", "x"): Scalar.one(params)})},
        )


def test_parse_word():
    pres = manin()
    assert pres.parse_word("yx") == ("y", "x")
    assert pres.parse_word("y x") == ("y", "x")
    with pytest.raises(ValueError):
        pres.parse_word("za")


def test_render():
    pres = manin()
    nf = pres.normal_order(pres.gen("y") * pres.gen("x"))
    assert nf.render() == "q^-1*xy"
