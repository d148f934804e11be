import random

import pytest

from ncgeom.quantum_plane import (
    MatrixQuantumGroup,
    SHIPPED_PRESENTATIONS,
    TensorElement,
    classical_limit_failures,
    coacted_differential_relations,
    coacted_plane_relations,
    coaction_covariance_residuals,
    corrupted_glpq,
    counit_point_is_identity,
    glpq,
    manin_plane,
    plane_forms,
    plane_relation_residuals,
    rhat_matrix,
    rtt_residuals,
    sl_q,
)
from ncgeom.quantum_sigma import PlaneGeometry, connection_params
from ncgeom.rewriting import NCPoly
from ncgeom.scalars import GaussRat, I, ONE, Scalar


# -- presentations and confluence ------------------------------------------------


@pytest.mark.parametrize("name", sorted(SHIPPED_PRESENTATIONS))
def test_confluence_all_shipped(name):
    pres = SHIPPED_PRESENTATIONS[name]()
    assert pres.confluence_check() == []


def test_manin_has_no_overlaps():
    assert manin_plane().overlap_words() == []


def test_glpq_overlaps_are_the_four_descending_triples():
    words = {"".join(w) for w in glpq().overlap_words()}
    assert words == {"cba", "dba", "dca", "dcb"}


def test_corrupted_presentation_fails_with_witness_dba():
    fails = corrupted_glpq().confluence_check()
    witnesses = {"".join(w) for w, _ in fails}
    assert "dba" in witnesses


def test_normal_form_examples():
    m = manin_plane()
    assert m.normal_order(m.gen("y") * m.gen("x")).render() == "q^-1*xy"
    g = glpq()
    assert (
        g.normal_order(g.gen("d") * g.gen("a")).render()
        == "ad + (q^-1 - p)*bc"
    )
    assert g.normal_order(g.gen("a")).render() == "a"
    # da -> ad + (q^-1 - p) bc combines the two-parameter relations
    want = NCPoly(
        g.params,
        {
            ("a", "d"): Scalar.one(g.params),
            ("b", "c"): Scalar.var("q", g.params, -1) - Scalar.var("p", g.params),
        },
    )
    assert g.normal_order(g.gen("d") * g.gen("a")) == want


def test_normal_order_idempotent_and_linear():
    pres = plane_forms()
    rng = random.Random(4)
    gens = pres.generators
    for _ in range(6):
        w1 = tuple(rng.choice(gens) for _ in range(rng.randint(0, 4)))
        w2 = tuple(rng.choice(gens) for _ in range(rng.randint(0, 4)))
        p1 = NCPoly(pres.params, {w1: ONE})
        p2 = NCPoly(pres.params, {w2: GaussRat(3)})
        nf = pres.normal_order(p1 + p2)
        assert pres.normal_order(nf) == nf
        assert nf == pres.normal_order(p1) + pres.normal_order(p2)


def test_classical_limit_collapse():
    for name, factory in SHIPPED_PRESENTATIONS.items():
        assert classical_limit_failures(factory()) == [], name


# -- covariance of the plane under the quantum group ------------------------------


def test_plane_covariance():
    assert coacted_plane_relations().is_zero()
    assert counit_point_is_identity()


def test_differential_covariance_and_qdeterminant():
    residuals = coacted_differential_relations()
    for name, value in residuals.items():
        assert value.is_zero(), name


# -- q-determinant and localisation -------------------------------------------------


@pytest.fixture(scope="module")
def group():
    return MatrixQuantumGroup()


def test_qdet_two_forms_agree(group):
    assert group.pres.normal_order(
        group.qdet() - group.qdet_alternative()
    ).is_zero()


def test_qdet_commutations(group):
    pres, p, q = group.pres, group.p, group.q
    d = group.qdet()
    assert pres.normal_order(
        d * group.gen("b") - group.gen("b") * d * (p() * q(-1))
    ).is_zero()
    assert pres.normal_order(
        d * group.gen("c") - group.gen("c") * d * (q() * p(-1))
    ).is_zero()
    for g in ("a", "d"):
        assert pres.normal_order(d * group.gen(g) - group.gen(g) * d).is_zero()


def test_localisation(group):
    one = group.localized(group.one())
    d = group.localized(group.qdet())
    dinv = group.dinv()
    assert d.mul(dinv) == one
    assert dinv.mul(d) == one
    b = group.localized(group.gen("b"))
    assert b.mul(dinv) == dinv.mul(b).scale(group.p() * group.q(-1))
    c = group.localized(group.gen("c"))
    assert c.mul(dinv) == dinv.mul(c).scale(group.q() * group.p(-1))


def test_counit(group):
    assert group.counit(group.qdet()) == Scalar.one(group.params)
    for rel in group.defining_relations():
        assert group.counit(rel).is_zero()


def test_coproduct_is_algebra_map(group):
    for rel in group.defining_relations():
        assert group.coproduct(rel).is_zero()


def test_coproduct_of_determinant(group):
    dd = group.coproduct(group.qdet())
    want = TensorElement.of(
        group.pres, group.pres, group.qdet(), group.qdet()
    )
    assert dd == want


def test_counit_axiom(group):
    for gname in "abcd":
        delta = group.coproduct(group.gen(gname))
        left = NCPoly.zero(group.params)
        right = NCPoly.zero(group.params)
        for (w1, w2), c in delta.terms.items():
            left = left + NCPoly(group.params, {w2: c * group.counit(NCPoly(group.params, {w1: ONE}))})
            right = right + NCPoly(group.params, {w1: c * group.counit(NCPoly(group.params, {w2: ONE}))})
        assert group.pres.normal_order(left) == group.gen(gname)
        assert group.pres.normal_order(right) == group.gen(gname)


def test_antipode_matrix_inverse(group):
    sm_m, m_sm = group.antipode_matrix_products()
    one = group.localized(group.one())
    zero = group.localized(NCPoly.zero(group.params))
    for i in range(2):
        for j in range(2):
            want = one if i == j else zero
            assert sm_m[i][j] == want
            assert m_sm[i][j] == want


def test_antipode_entry_value(group):
    # (S(M) M)^1_1 = D^-1 (da - q^-1 bc) = 1
    sm_m, _ = group.antipode_matrix_products()
    assert sm_m[0][0] == group.localized(group.one())


def test_antipode_of_determinant(group):
    assert group.antipode(group.qdet()) == group.dinv()


def test_derived_inverse_antipode(group):
    for gname in "abcd":
        loc = group.inverse_antipode_gen(gname)
        assert group.antipode_localized(loc) == group.localized(group.gen(gname))


def test_candidate_inverse_antipode_fails(group):
    # the printed candidate map does not invert S on any generator; the
    # engine exhibits this rather than replacing the formula silently
    for gname in "abcd":
        cand = group.candidate_inverse_antipode_gen(gname)
        assert not (
            group.antipode_localized(cand) == group.localized(group.gen(gname))
        )


def test_antipode_squared_not_identity(group):
    # S^2 rescales b and c by (pq)^-1 and pq
    s2b = group.antipode_localized(group.antipode_gen("b"))
    want = group.localized(group.gen("b") * (group.p(-1) * group.q(-1)))
    assert s2b == want
    s2a = group.antipode_localized(group.antipode_gen("a"))
    assert s2a == group.localized(group.gen("a"))


# -- R-matrix ----------------------------------------------------------------------


def test_rtt_sixteen_components():
    for name, residual in rtt_residuals().items():
        assert residual.is_zero(), name


def test_plane_relation_families():
    for name, residual in plane_relation_residuals().items():
        assert residual.is_zero(), name


def test_rhat_classical_limit():
    # at q = 1 the Rhat matrix becomes the flip
    mat = rhat_matrix()
    point = {"q": ONE}
    flip = [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ]
    for i in range(4):
        for j in range(4):
            assert mat.entries[i][j].evaluate(point) == GaussRat(flip[i][j])


def test_coaction_covariance():
    for name, residual in coaction_covariance_residuals().items():
        assert residual.is_zero(), name


# -- sigma and the connection ---------------------------------------------------------


@pytest.fixture(scope="module")
def geom():
    return PlaneGeometry(connection_params())


def test_sigma_inverse_of_qrhat(geom):
    r1, r2 = geom.sigma_times_qrhat_residual()
    assert r1.is_zero() and r2.is_zero()


def test_sigma_eigenstructure(geom):
    for name, residual in geom.sigma_eigenvector_residuals().items():
        assert all(x.is_zero() for x in residual), name


def test_sigma_basic_values(geom):
    xi, eta = geom.gen("xi"), geom.gen("eta")
    got = geom.apply_sigma(geom.tensor(xi, eta))
    want = geom.tensor(eta, xi).scale(geom.q(-1))
    assert got == want


def test_sigma_theta_relations(geom):
    theta = geom.theta()
    xi, eta = geom.gen("xi"), geom.gen("eta")
    q = geom.q
    one = Scalar.one(geom.params)
    tf = geom.tensor
    # the four relations that hold as printed
    assert geom.apply_sigma(tf(xi, theta)) == tf(theta, xi).scale(q(-3))
    assert geom.apply_sigma(tf(eta, theta)) == tf(theta, eta).scale(q(-3))
    assert geom.apply_sigma(tf(theta, eta)) == tf(eta, theta).scale(q(1)).sub(
        tf(theta, eta).scale(one - q(-2))
    )
    assert geom.apply_sigma(tf(theta, theta)) == tf(theta, theta).scale(q(-2))
    # the stated theta-xi coefficient (1 - q^-1) fails; the engine reports
    # the defect and the (1 - q^-2) analogue of the eta relation holds
    stated = tf(xi, theta).scale(q(1)).sub(tf(theta, xi).scale(one - q(-1)))
    assert not (geom.apply_sigma(tf(theta, xi)) == stated)
    corrected = tf(xi, theta).scale(q(1)).sub(tf(theta, xi).scale(one - q(-2)))
    assert geom.apply_sigma(tf(theta, xi)) == corrected


def test_sigma_middle_linearity(geom):
    rng = random.Random(17)
    xi, eta = geom.gen("xi"), geom.gen("eta")
    x, y = geom.gen("x"), geom.gen("y")
    for _ in range(5):
        f = NCPoly(
            geom.params,
            {
                ("x",) * rng.randint(0, 2) + ("y",) * rng.randint(0, 2): ONE,
            },
        )
        lhs = geom.tensor(geom.normal(xi * f), eta)
        rhs = geom.tensor(xi, geom.normal(f * eta))
        assert lhs == rhs
        assert geom.apply_sigma(lhs) == geom.apply_sigma(rhs)


def test_theta_squared_and_commutations(geom):
    pres = geom.pres
    theta = geom.theta()
    q = geom.q
    assert pres.normal_order(theta * theta).is_zero()
    for gen in (geom.gen("x"), geom.gen("y")):
        assert pres.normal_order(gen * theta - theta * gen * q(1)).is_zero()
    # the differentials anticommute with theta at exponent -3 (the stated
    # +3 exponent contradicts the presentation's own rules; the residual
    # of the stated form is exhibited)
    for gen in (geom.gen("xi"), geom.gen("eta")):
        assert pres.normal_order(gen * theta + theta * gen * q(-3)).is_zero()
        assert not pres.normal_order(gen * theta + theta * gen * q(3)).is_zero()


def test_twisted_leibniz_consistency(geom):
    # D(xi x) via the twisted rule equals D(q^-2 x xi) via the left rule
    lhs = geom.covariant_derivative_right("xi", geom.gen("x"))
    rhs = geom.covariant_derivative(
        NCPoly(geom.params, {("x", "xi"): geom.q(-2)})
    )
    assert lhs == rhs


def test_covariant_derivative_of_theta(geom):
    # D theta = xi (x) eta - q eta (x) xi (the -1 eigenvector line)
    xi, eta = geom.gen("xi"), geom.gen("eta")
    want = geom.tensor(xi, eta).sub(geom.tensor(eta, xi).scale(geom.q(1)))
    assert geom.covariant_derivative(geom.theta()) == want


def test_curvature_rederivation_matches_data(geom):
    for k, leg in ((0, "xi"), (1, "eta")):
        derived = geom.second_derivative_projected(leg)
        data = geom.curvature_data_tensor(k)
        for l3 in ("xi", "eta"):
            diff = derived.get(l3, NCPoly.zero(geom.params)) - data[l3]
            assert geom.pres.normal_order(diff).is_zero()


def test_curvature_prefactor_evaluations():
    pf = PlaneGeometry().curvature_prefactor()
    assert pf.evaluate({"q": I}).is_zero()
    assert pf.evaluate({"q": -I}).is_zero()
    assert pf.evaluate({"q": ONE}) == GaussRat(4)
    rebased = pf.substitute_power("q", 2, "t")
    assert rebased.evaluate({"t": I}).is_zero()
    assert rebased.evaluate({"t": -I}).is_zero()
