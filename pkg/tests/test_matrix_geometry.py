import random
from fractions import Fraction

import pytest

from ncgeom.linalg import m_is_zero, madd, mcomm, meq, mmul, mscale, mtrace
from ncgeom.matrix_geometry import (
    Derivation,
    HodgeStructure,
    MatForm,
    MatrixAlgebra,
    SymplecticStructure,
    canonical_theta,
    hermitian_theta,
    leibniz_defect,
    maurer_cartan_residual,
    theta_structure_residuals,
)
from ncgeom.scalars import GaussRat, I, ONE, ZERO


def test_pauli_basis_structure():
    alg = MatrixAlgebra(2)
    # direct commutator oracle: C_12^3 = -2 under i[E_k, E_m] = C_km^l E_l
    comm = alg.commutator_oracle(0, 1)
    assert meq(comm, mscale(GaussRat(-2), alg.basis[2]))
    assert alg.structure_constant(0, 1, 2) == Fraction(-2)
    # Killing matrix oracle: contract C with C per its definition
    for k in range(3):
        for m in range(3):
            want = Fraction(8) if k == m else Fraction(0)
            assert alg.g[k][m] == want
    # trace Gram for the Pauli set
    assert alg.t == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert alg.t_g_ratio == Fraction(8, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_antisymmetry_and_trace_conditions(n):
    alg = MatrixAlgebra(n)
    for k in range(alg.dim):
        assert alg.c_row(k, k) == {}
    # g = 2n t for the default basis (ratio recorded, not assumed)
    assert alg.t_g_ratio == Fraction(2 * n)


@pytest.mark.parametrize("n", [2, 3])
def test_structure_reconstructs_products(n):
    alg = MatrixAlgebra(n)
    for k in range(alg.dim):
        for m in range(alg.dim):
            prod = mmul(alg.basis[k], alg.basis[m])
            recon = mscale(GaussRat(Fraction(alg.t[k][m], n)), alg.ident)
            for j in range(alg.dim):
                coeff = GaussRat(alg.s_coefficient(k, m, j)) - (
                    I * GaussRat(Fraction(alg.structure_constant(k, m, j), 2))
                )
                recon = madd(recon, mscale(coeff, alg.basis[j]))
            assert meq(prod, recon)


@pytest.mark.parametrize("n", [2, 3])
def test_derivation_bracket_relation(n):
    # [del_k, del_m] = C_km^l del_l as operators on every basis element
    alg = MatrixAlgebra(n)
    for k in range(alg.dim):
        for m in range(alg.dim):
            for j in range(alg.dim):
                lhs = alg.del_k(k, alg.del_k(m, alg.basis[j]))
                lhs = [
                    [a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(lhs, alg.del_k(m, alg.del_k(k, alg.basis[j])))
                ]
                rhs = alg.zero
                for l, c in alg.c_row(k, m).items():
                    rhs = madd(rhs, mscale(GaussRat(c), alg.del_k(l, alg.basis[j])))
                assert meq(tuple(tuple(r) for r in lhs), rhs)


def test_d_on_unit_and_basis():
    alg = MatrixAlgebra(2)
    assert MatForm.from_matrix(alg, alg.ident).d().is_zero()
    # dE_k evaluated on del_m equals del_m E_k (the defining property of d)
    for k in range(3):
        form = MatForm.from_matrix(alg, alg.basis[k]).d()
        for m in range(3):
            assert meq(form.evaluate((m,)), alg.del_k(m, alg.basis[k]))


@pytest.mark.parametrize("n", [2, 3])
def test_d_squared_on_basis(n):
    alg = MatrixAlgebra(n)
    for k in range(alg.dim):
        dd = MatForm.from_matrix(alg, alg.basis[k]).d().d()
        assert dd.is_zero()


def random_matrix(alg, rng):
    return tuple(
        tuple(
            GaussRat(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
            for _ in range(alg.n)
        )
        for _ in range(alg.n)
    )


def random_form(alg, degree, rng, nterms=3):
    from itertools import combinations

    tuples = list(combinations(range(alg.dim), degree))
    comps = {}
    for idx in rng.sample(tuples, min(nterms, len(tuples))):
        comps[idx] = random_matrix(alg, rng)
    return MatForm(alg, degree, comps)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_squared_random_forms_every_degree(n):
    rng = random.Random(7 + n)
    alg = MatrixAlgebra(n)
    degrees = range(alg.dim - 1) if n < 4 else [0, 1, 2, 5, alg.dim - 2]
    for p in degrees:
        form = random_form(alg, p, rng)
        assert form.d().d().is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_graded_leibniz_random(n):
    rng = random.Random(11 + n)
    alg = MatrixAlgebra(n)
    pairs = [(0, 1), (1, 1), (1, 2), (2, 1), (0, 2), (2, 2)]
    for pa, pb in [(a, b) for a, b in pairs if a + b < alg.dim]:
        a = random_form(alg, pa, rng)
        b = random_form(alg, pb, rng)
        lhs = a.wedge(b).d()
        rhs = a.d().wedge(b).add(a.wedge(b.d()).scale(GaussRat((-1) ** pa)))
        assert lhs.sub(rhs).is_zero()


def test_wedge_antisymmetry_and_bilinearity():
    alg = MatrixAlgebra(2)
    t1, t2 = MatForm.theta(alg, 0), MatForm.theta(alg, 1)
    assert t1.wedge(t1).is_zero()
    assert t1.wedge(t2).add(t2.wedge(t1)).is_zero()
    # (E1 theta^1) wedge (E2 theta^2) + (E2 theta^2) wedge (E1 theta^1)
    # equals [E1, E2] theta^1 theta^2 (bilinearity oracle)
    a = t1.left_mul(alg.basis[0])
    b = t2.left_mul(alg.basis[1])
    lhs = a.wedge(b).add(b.wedge(a))
    rhs = MatForm(alg, 2, {(0, 1): mcomm(alg.basis[0], alg.basis[1])})
    assert lhs.sub(rhs).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_theta_structure_identity(n):
    # d theta^k + (1/2) C_ml^k theta^m theta^l = 0, exactly, all k
    alg = MatrixAlgebra(n)
    for residual in theta_structure_residuals(alg):
        assert residual.is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_maurer_cartan(n):
    alg = MatrixAlgebra(n)
    assert maurer_cartan_residual(alg).is_zero()


def test_canonical_theta_normalisation():
    # i * (canonical theta) has components E_k; the hermitian combination
    # itself does not satisfy the Maurer-Cartan identity (the residual is
    # the structural i mismatch), which is why both are provided.
    alg = MatrixAlgebra(2)
    theta = canonical_theta(alg)
    for k in range(3):
        assert meq(mscale(I, theta.comps[(k,)]), alg.basis[k])
    assert not maurer_cartan_residual(alg, hermitian_theta(alg)).is_zero()


def test_interior_and_lie():
    alg = MatrixAlgebra(2)
    # theta^k(del_m) = delta^k_m 1
    for k in range(3):
        for m in range(3):
            val = MatForm.theta(alg, k).interior(alg.basis_derivation(m))
            want = alg.ident if k == m else alg.zero
            assert meq(val.comps.get((), alg.zero), want)
    with pytest.raises(ValueError):
        MatForm.from_matrix(alg, alg.ident).interior(alg.basis_derivation(0))
    # i_X i_X of a 2-form vanishes
    rng = random.Random(3)
    omega = random_form(alg, 2, rng)
    X = alg.basis_derivation(1)
    assert omega.interior(X).interior(X).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lie_derivative_of_symplectic_form_vanishes(n):
    alg = MatrixAlgebra(n)
    omega = hermitian_theta(alg).d()
    for k in range(alg.dim):
        assert omega.lie(alg.basis_derivation(k)).is_zero()
    # and d Omega = d^2 theta = 0
    assert omega.d().is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_poisson_bracket_equals_i_commutator(n):
    alg = MatrixAlgebra(n)
    sym = SymplecticStructure(alg)
    for k in range(alg.dim):
        for m in range(alg.dim):
            br = sym.poisson(alg.basis[k], alg.basis[m])
            assert meq(br, mscale(I, mcomm(alg.basis[k], alg.basis[m])))
    # {f, 1} = 0
    assert m_is_zero(sym.poisson(alg.basis[0], alg.ident))


def test_poisson_jacobi_via_commutator_oracle():
    alg = MatrixAlgebra(2)
    sym = SymplecticStructure(alg)
    e1, e2, e3 = alg.basis
    total = alg.zero
    for a, b, c in [(e1, e2, e3), (e2, e3, e1), (e3, e1, e2)]:
        total = madd(total, sym.poisson(a, sym.poisson(b, c)))
    assert m_is_zero(total)


def test_derivations_not_a_left_module():
    # the Leibniz defect of (E1 . del_1) on (E2, E3) is nonzero for n = 2
    alg = MatrixAlgebra(2)
    X = Derivation(alg, [alg.basis[0], alg.zero, alg.zero])
    defect = leibniz_defect(X, alg.basis[1], alg.basis[2])
    assert not m_is_zero(defect)
    assert meq(defect, mscale(GaussRat(4), alg.basis[0]))


@pytest.mark.parametrize("n", [2, 3])
def test_hodge_and_integration(n):
    alg = MatrixAlgebra(n)
    hodge = HodgeStructure(alg)
    # integral of the volume form is trace(1) = n
    assert hodge.integrate(hodge.volume_form()) == GaussRat(n)
    # star of the constant 0-form 1 is the volume form
    one = MatForm.from_matrix(alg, alg.ident)
    assert hodge.star(one).sub(hodge.volume_form()).is_zero()
    # (theta^1, theta^1) = n * t^{11}; frozen from the expanded definition
    t0 = MatForm.theta(alg, 0)
    want = GaussRat(Fraction(n) / alg.t[0][0])
    assert hodge.inner(t0, t0) == want
    # star star on 1-forms carries the recorded factor
    factor = hodge.star_square_factor(1)
    ss = hodge.star(hodge.star(t0))
    assert ss.sub(t0.scale(GaussRat(factor))).is_zero()


def test_inner_product_symmetry_hermitian_forms():
    rng = random.Random(5)
    alg = MatrixAlgebra(2)
    hodge = HodgeStructure(alg)

    def random_hermitian_form(degree):
        form = random_form(alg, degree, rng)
        comps = {
            idx: mscale(
                GaussRat(Fraction(1, 2)), madd(m, mdagger_local(m))
            )
            for idx, m in form.comps.items()
        }
        return MatForm(alg, degree, comps)

    from ncgeom.linalg import mdagger as mdagger_local  # noqa: E402

    for degree in [1, 2]:
        a = random_hermitian_form(degree)
        b = random_hermitian_form(degree)
        assert hodge.inner(a, b) == hodge.inner(b, a)


def test_user_basis_roundtrip():
    # the Pauli basis fed back through the JSON loader reproduces everything
    alg = MatrixAlgebra(2)
    data = {
        "n": 2,
        "basis": [
            [[["0", "0"], ["1", "0"]], [["1", "0"], ["0", "0"]]],
            [[["0", "0"], ["0", "-1"]], [["0", "1"], ["0", "0"]]],
            [[["1", "0"], ["0", "0"]], [["0", "0"], ["-1", "0"]]],
        ],
    }
    alg2 = MatrixAlgebra.from_json(data)
    assert alg2.C == alg.C and alg2.S == alg.S and alg2.t == alg.t


def test_rejects_bad_bases():
    with pytest.raises(ValueError):
        MatrixAlgebra(1)
    alg = MatrixAlgebra(2)
    bad = [alg.basis[0], alg.basis[0], alg.basis[2]]
    with pytest.raises(ValueError):
        MatrixAlgebra(2, bad)
