import random
from fractions import Fraction

import pytest

from ncgeom.deformation import (
    GENERATORS,
    KappaPoincare,
    BilinearCocycle,
    TableAlgebra,
    central_derivation_failures,
    cocycle_first_order_failures,
    invariant_antisym_solver,
    orbit_invariants,
    parity_flip,
    rational_boost,
    reality_condition_failures,
    spatial_rotation,
    random_word,
    _poly,
)
from ncgeom.rewriting import NCPoly
from ncgeom.scalars import GaussRat, I, ONE, Scalar, ZERO

PARAMS = ("kappa",)


@pytest.fixture(scope="module")
def sym():
    return KappaPoincare()


def test_bracket_examples(sym):
    # [x0, x1] = i kappa M01
    br = sym.bracket("x0", "x1")
    kappa = Scalar.var("kappa", PARAMS)
    assert br == NCPoly(PARAMS, {("M01",): kappa * I})
    # [x0, L0] = i kappa M00 = 0
    assert sym.bracket("x0", "L0").is_zero()
    # [x0, M01] = i(g^{01} L0 - g^{00} L1) = i L1
    assert sym.bracket("x0", "M01") == NCPoly(
        PARAMS, {("L1",): Scalar.constant(I, PARAMS)}
    )
    # [M01, M12]: substitute indices in the M-M relation
    assert sym.bracket("M01", "M12") == NCPoly(
        PARAMS, {("M02",): Scalar.constant(-I, PARAMS)}
    )


@pytest.mark.parametrize("kappa", [None, 0, 1, -1])
def test_jacobi(kappa):
    alg = KappaPoincare(kappa)
    assert alg.jacobi_failures() == []


def test_center_differences(sym):
    assert sym.center_difference_failures() == []
    # degenerate case kappa = 0 as well
    assert KappaPoincare(0).center_difference_failures() == []


def test_uea_normal_order_basics(sym):
    pres = sym.uea()
    x0, x1 = pres.gen("x0"), pres.gen("x1")
    # one rewrite step: x1 x0 -> x0 x1 + [x1, x0]
    nf = pres.normal_order(x1 * x0)
    want = x0 * x1 + sym.bracket("x1", "x0")
    assert nf == pres.normal_order(want)
    # already ordered words are fixed points
    word = _poly({("x0", "L1", "M23"): ONE})
    assert pres.normal_order(word) == word
    # associativity under reduction: (L0 x0) x0 vs L0 (x0 x0)
    l0 = pres.gen("L0")
    lhs = pres.normal_order(pres.normal_order(l0 * x0) * x0)
    rhs = pres.normal_order(l0 * pres.normal_order(x0 * x0))
    assert lhs == rhs


def test_uea_confluence_all_length3_overlaps(sym):
    pres = sym.uea()
    assert len(pres.overlap_words()) == 364  # C(14, 3)
    assert pres.confluence_check() == []


def test_casimir_quadratic_central(sym):
    assert sym.casimir_centrality_failures("C2") == []


def test_casimir_quadratic_at_kappa_zero():
    # reduces to 2 g L L, central in the Poincare enveloping algebra
    alg = KappaPoincare(0)
    c2 = alg.normal_order(alg.casimir_quadratic())
    for word in c2.terms:
        assert all(g.startswith("L") for g in word)
    assert alg.casimir_centrality_failures("C2") == []


def test_casimir_quartic_central(sym):
    assert sym.casimir_centrality_failures("C4") == []


def test_casimir_quartic_bare_contraction_defect(sym):
    # the bare double-epsilon contraction is central only at kappa = 0;
    # symbolically it fails exactly against the x and L generators
    fails = sym.casimir_centrality_failures("C4-displayed")
    assert sorted(g for g, _ in fails) == sorted(
        [f"x{i}" for i in range(4)] + [f"L{i}" for i in range(4)]
    )
    assert KappaPoincare(0).casimir_centrality_failures("C4-displayed") == []
    # and the defect is exactly the commutator of the completion term
    kappa = Scalar.var("kappa", PARAMS)
    p = sym.pseudoscalar()
    completion = sym.normal_order((p * p) * kappa * GaussRat(Fraction(1, 16)))
    for g, residual in fails:
        want = -sym.commutator_normal(completion, _poly({(g,): ONE}))
        assert residual == want


def test_invariant_solver_dimensions():
    assert invariant_antisym_solver("trivial")["kernel_dim"] == 6
    rot = invariant_antisym_solver("rotations")
    assert rot["kernel_dim"] == 0
    assert rot["rows"] == 18 and rot["unknowns"] == 6
    assert invariant_antisym_solver("lorentz")["kernel_dim"] == 0
    # two plane rotations still suffice; only with a single one do
    # invariant directions reappear (the sanity direction of the no-go)
    assert invariant_antisym_solver("rotations_minus_one")["kernel_dim"] == 0
    single = invariant_antisym_solver("single_rotation")
    assert single["kernel_dim"] == 2


def z():
    return [[ZERO] * 4 for _ in range(4)]


def test_orbit_invariants():
    omega = z()
    assert orbit_invariants(omega) == (ZERO, ZERO)
    omega = z()
    omega[0][1] = ONE
    omega[1][0] = -ONE
    alpha, beta = orbit_invariants(omega)
    assert alpha == GaussRat(-2)
    assert beta == ZERO
    omega[2][3] = ONE
    omega[3][2] = -ONE
    alpha, beta = orbit_invariants(omega)
    assert beta == GaussRat(8)
    _, beta_flipped = orbit_invariants(parity_flip(omega))
    assert beta_flipped == -beta
    bad = z()
    bad[0][1] = ONE
    with pytest.raises(ValueError):
        orbit_invariants(bad)


def test_cocycle_identities():
    alg = TableAlgebra.pauli()
    for cocycle in (
        BilinearCocycle.product(alg),
        BilinearCocycle.zero(alg),
        BilinearCocycle.half_i_commutator(alg),
    ):
        assert cocycle_first_order_failures(cocycle) == []
        assert central_derivation_failures(cocycle) == []


def test_cocycle_bracket_is_minus_commutator():
    alg = TableAlgebra.pauli()
    c = BilinearCocycle.half_i_commutator(alg)
    for i in range(alg.dim):
        for j in range(alg.dim):
            u, v = alg.basis_element(i), alg.basis_element(j)
            br = c.bracket(u, v)
            want = [-x for x in alg.comm(u, v)]
            assert br == want
            br_swapped = c.bracket(v, u)
            assert br_swapped == [-x for x in br]


def test_cocycle_reality():
    alg = TableAlgebra.pauli()
    assert reality_condition_failures(BilinearCocycle.product(alg)) == []
    assert reality_condition_failures(BilinearCocycle.zero(alg)) == []
    # the half-i-commutator violates the reality condition on M_2(C);
    # the engine reports rather than corrects
    fails = reality_condition_failures(BilinearCocycle.half_i_commutator(alg))
    assert fails


def test_poincare_action_identity_and_translation(sym):
    ident = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    pres = sym.uea()
    rng = random.Random(2)
    for _ in range(5):
        word = random_word(rng)
        p = _poly({word: ONE})
        assert sym.poincare_action(p, ident) == pres.normal_order(p)
    # pure translation: x0 -> x0 - a0
    moved = sym.poincare_action(_poly({("x0",): ONE}), ident, [Fraction(3), 0, 0, 0])
    assert moved == NCPoly(
        PARAMS, {("x0",): ONE, (): Scalar.constant(GaussRat(-3), PARAMS)}
    )


def test_poincare_action_respects_bracket(sym):
    # acting on [x0, x1] agrees with acting on i kappa M01 directly
    boost = rational_boost()
    x0, x1 = _poly({("x0",): ONE}), _poly({("x1",): ONE})
    lhs = sym.poincare_action(
        sym.normal_order(x0 * x1 - x1 * x0), boost
    )
    rhs = sym.poincare_action(sym.bracket("x0", "x1"), boost)
    assert lhs == rhs
    # and the image of M01 transforms with both inverse-matrix factors
    got = sym.poincare_action(_poly({("M01",): ONE}), boost)
    assert not got.is_zero()


@pytest.mark.parametrize("lorentz", [rational_boost(), spatial_rotation()])
def test_poincare_action_is_homomorphism(sym, lorentz):
    rng = random.Random(8)
    for _ in range(4):
        u = _poly({random_word(rng, 2): ONE})
        v = _poly({random_word(rng, 2): ONE})
        lhs = sym.poincare_action(sym.normal_order(u * v), lorentz, [1, 0, 2, 0])
        rhs = sym.normal_order(
            sym.poincare_action(u, lorentz, [1, 0, 2, 0])
            * sym.poincare_action(v, lorentz, [1, 0, 2, 0])
        )
        assert lhs == rhs


def test_poincare_action_rejects_non_lorentz(sym):
    bad = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(ValueError):
        sym.poincare_action(_poly({("x0",): ONE}), bad)
