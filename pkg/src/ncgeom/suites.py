"""Verification suites: every operation of the engine wired to a named,
stable check.  Checks marked "warn" document discrepancies of printed
formulas that exact computation contradicts; the corrected forms are
verified alongside and the defects are reported verbatim.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from . import gauge_kk, quantum_plane
from .deformation import (
    BilinearCocycle,
    KappaPoincare,
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
from .linalg import m_is_zero, madd, mcomm, meq, mmul, mscale, msub
from .matrix_geometry import (
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
from .quantum_sigma import PlaneGeometry, connection_params
from .reports import Check, failed, passed, warned
from .rewriting import NCPoly
from .scalars import GaussRat, I, ONE, Scalar, ZERO

SUITE_NAMES = ("matrix", "gauge", "deformation", "quantum")


# -- helpers ------------------------------------------------------------------------


def _zero_or_fail(residuals, render=str):
    bad = [(k, v) for k, v in residuals if not _is_zero_like(v)]
    if bad:
        k, v = bad[0]
        return failed(f"{k}: {render(v)}", {"failures": len(bad)})
    return passed()


def _is_zero_like(v):
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return not v


def _random_matform(alg, degree, rng, nterms=2):
    tuples = list(combinations(range(alg.dim), degree))
    comps = {}
    for idx in rng.sample(tuples, min(nterms, len(tuples))):
        comps[idx] = tuple(
            tuple(
                GaussRat(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
                for _ in range(alg.n)
            )
            for _ in range(alg.n)
        )
    return MatForm(alg, degree, comps)


# -- matrix suite ----------------------------------------------------------------------


def matrix_suite(n=2, seed=0, random_forms=20):
    alg = MatrixAlgebra(n)
    rng = random.Random(seed)
    checks = []

    def add(check_id, identity, ops, fn):
        checks.append(Check(check_id, identity, tuple(ops), fn))

    def structure():
        for k in range(alg.dim):
            for m in range(alg.dim):
                want = alg.commutator_oracle(k, m)
                got = alg.zero
                for l, c in alg.c_row(k, m).items():
                    got = madd(got, mscale(GaussRat(c), alg.basis[l]))
                if not meq(want, got):
                    return failed(f"i[E{k}, E{m}] disagrees with C")
        details = {"t_to_g_ratio": str(alg.t_g_ratio)}
        if n == 2 and alg.structure_constant(0, 1, 2) != Fraction(-2):
            return failed("Pauli C_12^3 is not -2")
        return passed(details)

    add(
        "structure-constants",
        "i[E_k, E_m] = C_km^l E_l; products reconstruct exactly",
        ["build_algebra", "scalar_arith"],
        structure,
    )

    def killing():
        for k in range(alg.dim):
            for m in range(alg.dim):
                acc = Fraction(0)
                for l in range(alg.dim):
                    for p in range(alg.dim):
                        acc += alg.structure_constant(
                            k, l, p
                        ) * alg.structure_constant(p, m, l)
                if acc != alg.g[k][m]:
                    return failed(f"g[{k}][{m}] mismatch")
        if n == 2 and alg.g != [[8, 0, 0], [0, 8, 0], [0, 0, 8]]:
            return failed("Pauli Killing matrix is not 8*identity")
        return passed()

    add(
        "killing-contraction",
        "g_km = C_kl^p C_pm^l",
        ["build_algebra"],
        killing,
    )

    def derivation_bracket():
        for k in range(alg.dim):
            for m in range(alg.dim):
                for j in range(alg.dim):
                    lhs = msub(
                        alg.del_k(k, alg.del_k(m, alg.basis[j])),
                        alg.del_k(m, alg.del_k(k, alg.basis[j])),
                    )
                    rhs = alg.zero
                    for l, c in alg.c_row(k, m).items():
                        rhs = madd(rhs, mscale(GaussRat(c), alg.del_k(l, alg.basis[j])))
                    if not meq(lhs, rhs):
                        return failed(f"[del_{k}, del_{m}] on E_{j}")
        return passed()

    add(
        "derivation-bracket",
        "[del_k, del_m] = C_km^l del_l as operators",
        ["build_algebra"],
        derivation_bracket,
    )

    def dual_pairing():
        for k in range(alg.dim):
            for m in range(alg.dim):
                val = MatForm.theta(alg, k).interior(alg.basis_derivation(m))
                want = alg.ident if k == m else alg.zero
                if not meq(val.comps.get((), alg.zero), want):
                    return failed(f"theta^{k}(del_{m})")
        return passed()

    add(
        "dual-basis-pairing",
        "theta^k(del_m) = delta^k_m 1",
        ["interior_and_lie"],
        dual_pairing,
    )

    def d_unit_and_basis():
        if not MatForm.from_matrix(alg, alg.ident).d().is_zero():
            return failed("d1 != 0")
        for k in range(alg.dim):
            form = MatForm.from_matrix(alg, alg.basis[k])
            for m in range(alg.dim):
                if not meq(form.d().evaluate((m,)), alg.del_k(m, alg.basis[k])):
                    return failed(f"dE_{k}(del_{m}) != del_{m} E_{k}")
            if not form.d().d().is_zero():
                return failed(f"d(dE_{k}) != 0")
        return passed()

    add(
        "exterior-differential-basis",
        "d1 = 0; dE_k = (del_m E_k) theta^m; d(dE_k) = 0",
        ["differential"],
        d_unit_and_basis,
    )

    def theta_structure():
        residuals = theta_structure_residuals(alg)
        return _zero_or_fail(list(enumerate(residuals)))

    add(
        "theta-structure-equation",
        "d theta^k + (1/2) C_ml^k theta^m theta^l = 0",
        ["differential"],
        theta_structure,
    )

    def mc():
        res = maurer_cartan_residual(alg)
        if not res.is_zero():
            return failed("d theta + theta wedge theta != 0")
        # the i-normalisation: i * theta has components E_k
        theta = canonical_theta(alg)
        for k in range(alg.dim):
            if not meq(mscale(I, theta.comps[(k,)]), alg.basis[k]):
                return failed("canonical form components are not -i E_k")
        return passed()

    add(
        "maurer-cartan",
        "d theta + theta wedge theta = 0 for the canonical 1-form",
        ["canonical_theta", "wedge", "differential"],
        mc,
    )

    def d_squared_random():
        degrees = [p for p in range(min(alg.dim - 1, 5))]
        count = 0
        while count < random_forms:
            p = degrees[count % len(degrees)]
            form = _random_matform(alg, p, rng)
            if not form.d().d().is_zero():
                return failed(f"d^2 != 0 on a random {p}-form")
            count += 1
        return passed({"forms": count})

    add(
        "d-squared-random",
        "d(d omega) = 0 on randomized forms of every degree",
        ["differential"],
        d_squared_random,
    )

    def leibniz():
        pairs = [(0, 1), (1, 1), (1, 2), (0, 2), (2, 2)]
        count = 0
        while count < random_forms:
            pa, pb = pairs[count % len(pairs)]
            if pa + pb >= alg.dim:
                count += 1
                continue
            a = _random_matform(alg, pa, rng)
            b = _random_matform(alg, pb, rng)
            lhs = a.wedge(b).d()
            rhs = a.d().wedge(b).add(
                a.wedge(b.d()).scale(GaussRat((-1) ** pa))
            )
            if not lhs.sub(rhs).is_zero():
                return failed(f"graded Leibniz fails at degrees {(pa, pb)}")
            count += 1
        return passed({"pairs": count})

    add(
        "graded-leibniz-random",
        "d(alpha beta) = (d alpha) beta + (-1)^|alpha| alpha d beta",
        ["differential", "wedge"],
        leibniz,
    )

    def lie_invariance():
        omega = hermitian_theta(alg).d()
        if not omega.d().is_zero():
            return failed("d Omega != 0")
        for k, form in enumerate(omega.lie_along_basis()):
            if not form.is_zero():
                return failed(f"L_del_{k} Omega != 0")
        return passed()

    add(
        "symplectic-invariance",
        "L_X Omega = 0 for all basis derivations; d Omega = 0",
        ["interior_and_lie", "symplectic"],
        lie_invariance,
    )

    def poisson():
        sym = SymplecticStructure(alg)
        for k in range(alg.dim):
            for m in range(alg.dim):
                got = sym.poisson(alg.basis[k], alg.basis[m])
                want = mscale(I, mcomm(alg.basis[k], alg.basis[m]))
                if not meq(got, want):
                    return failed(f"{{E_{k}, E_{m}}} != i[E_{k}, E_{m}]")
        if not m_is_zero(sym.poisson(alg.basis[0], alg.ident)):
            return failed("{E_1, 1} != 0")
        e = alg.basis
        total = alg.zero
        for a, b, c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
            total = madd(total, sym.poisson(e[a], sym.poisson(e[b], e[c])))
        if not m_is_zero(total):
            return failed("Poisson Jacobi sum != 0")
        return passed()

    add(
        "poisson-commutator",
        "{E_k, E_m} = Omega(del_k, del_m) = i[E_k, E_m]",
        ["symplectic", "solve_linear"],
        poisson,
    )

    def not_left_module():
        X = Derivation(alg, [alg.basis[0]] + [alg.zero] * (alg.dim - 1))
        defect = leibniz_defect(X, alg.basis[1], alg.basis[2])
        if m_is_zero(defect):
            return failed("expected a nonzero Leibniz defect")
        return passed()

    add(
        "derivations-not-left-module",
        "module-coefficient fields violate the Leibniz rule",
        ["build_algebra"],
        not_left_module,
    )

    def hodge():
        hodge_s = HodgeStructure(alg)
        if hodge_s.integrate(hodge_s.volume_form()) != GaussRat(n):
            return failed("integral of the volume form is not n")
        one_form = MatForm.from_matrix(alg, alg.ident)
        if not hodge_s.star(one_form).sub(hodge_s.volume_form()).is_zero():
            return failed("star 1 != volume form")
        t0 = MatForm.theta(alg, 0)
        want = GaussRat(Fraction(n) / alg.t[0][0])
        got = hodge_s.inner(t0, t0)
        if got != want:
            return failed(f"(theta^1, theta^1) = {got}, expected {want}")
        factor = hodge_s.star_square_factor(1)
        if not hodge_s.star(hodge_s.star(t0)).sub(
            t0.scale(GaussRat(factor))
        ).is_zero():
            return failed("star star factor mismatch")
        return passed(
            {
                "theta1-inner": str(want),
                "star-square-factor-degree1": str(factor),
            }
        )

    add(
        "hodge-integration",
        "integral(eta) = n; (alpha, beta) = integral(alpha wedge star beta)",
        ["hodge_integrate", "levi_civita"],
        hodge,
    )

    return checks


# -- gauge suite ---------------------------------------------------------------------


def gauge_suite(n=2, vacuum="delta", metric="trace", seed=0):
    alg = MatrixAlgebra(n)
    lalg = gauge_kk.LiftedAlgebra(alg)
    rng = random.Random(seed)
    checks = []

    def add(check_id, identity, ops, fn):
        checks.append(Check(check_id, identity, tuple(ops), fn))

    def mc_flat():
        theta = gauge_kk.maurer_cartan_hybrid(lalg)
        if not theta.d().add(theta.wedge(theta)).is_zero():
            return failed("hybrid Maurer-Cartan form is not flat")
        return passed()

    add(
        "maurer-cartan-flat",
        "the internal canonical connection has zero curvature",
        ["hybrid_d"],
        mc_flat,
    )

    def d_squared():
        for _ in range(3):
            fields = gauge_kk.random_fields(alg, rng)
            form = gauge_kk.connection_form(lalg, fields)
            if not form.d().d().is_zero():
                return failed("hybrid d^2 != 0")
        return passed()

    add("hybrid-d-squared", "d(d A) = 0 on random hybrid forms", ["hybrid_d"], d_squared)

    def graded():
        f1 = gauge_kk.connection_form(lalg, gauge_kk.random_fields(alg, rng))
        f2 = gauge_kk.connection_form(lalg, gauge_kk.random_fields(alg, rng))
        lhs = f1.wedge(f2).d()
        rhs = f1.d().wedge(f2).add(f1.wedge(f2.d()).scale(GaussRat(-1)))
        if not lhs.sub(rhs).is_zero():
            return failed("hybrid graded Leibniz fails")
        return passed()

    add(
        "hybrid-graded-leibniz",
        "d(AB) = (dA)B + (-1)^deg A dB on hybrid forms",
        ["hybrid_d"],
        graded,
    )

    def split():
        x = gauge_kk.HybridDerivation(
            lalg,
            {0: gauge_kk.s_const(1)},
            {1: Scalar.var("x1", gauge_kk.PARAMS)},
        )
        xs, xi = x.split()
        if xs.internal or xi.spacetime:
            return failed("split is not a clean decomposition")
        mat = tuple(
            tuple(
                Scalar.var("x0", gauge_kk.PARAMS) if i == j else gauge_kk.s_zero()
                for j in range(alg.n)
            )
            for i in range(alg.n)
        )
        for mu in range(4):
            for k in range(alg.dim):
                res = gauge_kk.mixed_bracket_residual(lalg, mu, k, mat)
                if not all(v.is_zero() for row in res for v in row):
                    return failed(f"[d_{mu}, del_{k}] != 0")
        return passed()

    add(
        "split-derivation",
        "X = X^mu d_mu + xi^k del_k; mixed brackets vanish",
        ["split_derivation"],
        split,
    )

    def reassembly():
        for _ in range(2):
            fields = gauge_kk.random_fields(alg, rng)
            fs = gauge_kk.field_strength(alg, fields)
            direct = gauge_kk.curvature_hybrid(lalg, fields)
            if not gauge_kk.assemble_field_strength(lalg, fs).sub(direct).is_zero():
                return failed("component families do not reassemble dA + A wedge A")
        return passed()

    add(
        "field-strength-reassembly",
        "the component families reassemble exactly to dA + A wedge A",
        ["field_strength", "hybrid_d"],
        reassembly,
    )

    def abelian():
        fields = gauge_kk.random_fields(alg, rng)
        fs = gauge_kk.field_strength(alg, fields)
        lam = Scalar.var("x0", gauge_kk.PARAMS) * Scalar.var("x1", gauge_kk.PARAMS)
        shifted = gauge_kk.GaugeFields(
            alg.n,
            A0={mu: fields.a0(mu) + lam.diff(gauge_kk.COORDS[mu]) for mu in range(4)},
            A=dict(fields.A),
            B0=dict(fields.B0),
            B=dict(fields.B),
        )
        fs2 = gauge_kk.field_strength(alg, shifted)
        for key in fs.F0:
            if not (fs.F0[key] - fs2.F0[key]).is_zero():
                return failed("F0 is not invariant under A0 -> A0 + d lambda")
        return passed()

    add(
        "abelian-gauge-invariance",
        "F0 invariant under abelian shifts of A0",
        ["field_strength"],
        abelian,
    )

    def vacua():
        ok0, res0 = gauge_kk.vacuum_check(alg, gauge_kk.zero_tensor(alg))
        okd, resd = gauge_kk.vacuum_check(alg, gauge_kk.delta_tensor(alg))
        if not ok0 or not okd:
            return failed("zero or delta tensor rejected as vacuum")
        ok2, res2 = gauge_kk.vacuum_check(alg, gauge_kk.delta_tensor(alg, 2))
        if ok2:
            return failed("2*delta accepted as vacuum")
        for (m, k, l), val in res2.items():
            if val != GaussRat(-2 * alg.structure_constant(k, l, m)):
                return failed("2*delta residual disagrees with the closed form")
        return passed()

    add(
        "vacuum-pair",
        "the quartic family vanishes at B = 0 and B = delta only as claimed",
        ["vacuum_check"],
        vacua,
    )

    def search():
        found = gauge_kk.vacuum_search(alg, seed=seed, trials=80)
        return passed({"nontrivial-vacua-found": len(found)})

    add(
        "vacuum-search",
        "finite randomized search over small integer tensors",
        ["vacuum_check"],
        search,
    )

    def covariance():
        b = [
            [GaussRat(rng.randint(-2, 2)) for _ in range(alg.dim)]
            for _ in range(alg.dim)
        ]
        for u in gauge_kk.phase_and_permutation_unitaries(alg):
            rot = gauge_kk.adjoint_rotation(alg, u)
            transported = gauge_kk.transport_tensor(rot, b)
            lhs = gauge_kk.gpot_residual(alg, transported)
            raw = gauge_kk.gpot_residual(alg, b)
            for k, l in combinations(range(alg.dim), 2):
                for m in range(alg.dim):
                    want = ZERO
                    for j in range(alg.dim):
                        want = want + rot[m][j] * raw.get((j, k, l), ZERO)
                    if lhs.get((m, k, l), ZERO) != want:
                        return failed("quartic family is not gauge covariant")
            if gauge_kk.vacuum_check(alg, transported)[0] != gauge_kk.vacuum_check(alg, b)[0]:
                return failed("vacuum property not preserved by transport")
        return passed()

    add(
        "gauge-covariance",
        "under B -> U^-1 B the quartic family transports covariantly",
        ["vacuum_check"],
        covariance,
    )

    def not_related():
        delta = gauge_kk.delta_tensor(alg)
        zero = gauge_kk.zero_tensor(alg)
        for u in gauge_kk.phase_and_permutation_unitaries(alg):
            rot = gauge_kk.adjoint_rotation(alg, u)
            if gauge_kk.transport_tensor(rot, zero) == delta:
                return failed("zero tensor transported onto delta")
            if gauge_kk.transport_tensor(rot, delta) == zero:
                return failed("delta transported onto zero")
        return passed()

    add(
        "vacua-not-gauge-related",
        "no unitary from the finite generator set links the two vacua",
        ["vacuum_check"],
        not_related,
    )

    def spectrum_zero():
        out = gauge_kk.mass_spectrum(alg, gauge_kk.zero_tensor(alg), metric=metric)
        if out["massless_families"] != ["A", "A0"]:
            return failed(f"massless families {out['massless_families']}")
        bl, b0l = out["levels"]["B"], out["levels"]["B0"]
        if len(bl) != 1 or len(b0l) != 1:
            return failed("B-family masses are not all equal at B = 0")
        if abs(bl[0][0] - b0l[0][0]) > 1e-9 * max(1.0, abs(bl[0][0])):
            return failed("B0 and B levels differ at B = 0")
        return passed({"levels": _levels_out(out)})

    add(
        "mass-spectrum-zero-vacuum",
        "gauge fields massless; all B modes share one level at B = 0",
        ["mass_spectrum", "eigen_numeric"],
        spectrum_zero,
    )

    def spectrum_delta():
        out = gauge_kk.mass_spectrum(alg, gauge_kk.delta_tensor(alg), metric=metric)
        if out["massless_families"] != ["A0"]:
            return failed(f"massless families {out['massless_families']}")
        levels = out["levels"]["B"]
        nonzero = [lv for lv, _ in levels if abs(lv) > 1e-9]
        if len(levels) != 3 or len(nonzero) != 2:
            return failed(f"expected three levels, got {levels}")
        if abs(nonzero[1] / nonzero[0] - 4.0) > 1e-9:
            return failed(f"nonzero level ratio {nonzero[1] / nonzero[0]} != 4")
        b0 = out["levels"]["B0"]
        if len(b0) != 1 or abs(b0[0][0] / nonzero[0] - 1.0) > 1e-9:
            return failed("B0 mass^2 does not match the lowest Higgs level")
        return passed({"levels": _levels_out(out)})

    add(
        "mass-spectrum-delta-vacuum",
        "three Higgs levels with nonzero ratio 1:4; B0 at the lowest one",
        ["mass_spectrum", "eigen_numeric"],
        spectrum_delta,
    )

    def metric_stability():
        t_out = gauge_kk.mass_spectrum(alg, gauge_kk.delta_tensor(alg), metric="trace")
        g_out = gauge_kk.mass_spectrum(alg, gauge_kk.delta_tensor(alg), metric="killing")
        t_nz = [lv for lv, _ in t_out["levels"]["B"] if abs(lv) > 1e-9]
        g_nz = [lv for lv, _ in g_out["levels"]["B"] if abs(lv) > 1e-9]
        if abs(t_nz[1] / t_nz[0] - g_nz[1] / g_nz[0]) > 1e-9:
            return failed("mass ratios depend on the metric choice")
        return passed(
            {
                "trace-levels": _levels_out(t_out),
                "killing-levels": _levels_out(g_out),
            }
        )

    add(
        "metric-stability",
        "mass ratios agree between the trace and Killing contractions",
        ["mass_spectrum"],
        metric_stability,
    )

    def connection():
        conn = gauge_kk.LinearConnection(alg)
        for r in range(alg.dim):
            if conn.torsion_residual(r).comps:
                return failed(f"torsion of theta^{r} nonzero")
        for k in range(alg.dim):
            for l in range(alg.dim):
                if conn.curvature_residual(k, l).comps:
                    return failed(f"curvature mismatch at ({k}, {l})")
        if not conn.centrality_checks(random.Random(seed)):
            return failed("connection coefficients are not central")
        return passed()

    add(
        "linear-connection",
        "torsion 0; D^2 expansion equals (1/8) C C; coefficients central",
        ["linear_connection"],
        connection,
    )

    return checks


def _levels_out(out):
    return {
        fam: [[round(lv, 12), mult] for lv, mult in levels]
        for fam, levels in out["levels"].items()
    }


# -- deformation suite ------------------------------------------------------------------


def deformation_suite(kappa=None, seed=0):
    alg = KappaPoincare(kappa)
    rng = random.Random(seed)
    checks = []

    def add(check_id, identity, ops, fn):
        checks.append(Check(check_id, identity, tuple(ops), fn))

    def jacobi():
        fails = alg.jacobi_failures()
        if fails:
            triple, value = fails[0]
            return failed(f"{triple}: {value}", {"failures": len(fails)})
        return passed({"triples": 364})

    add(
        "jacobi",
        "Jacobi identity over all generator triples",
        ["build_kappa_algebra", "jacobi_check"],
        jacobi,
    )

    def uea_examples():
        pres = alg.uea()
        x0, x1 = pres.gen("x0"), pres.gen("x1")
        nf = pres.normal_order(x1 * x0)
        want = pres.normal_order(x0 * x1 + alg.bracket("x1", "x0"))
        if nf != want:
            return failed("x1 x0 does not rewrite to x0 x1 + [x1, x0]")
        word = _poly({("x0", "L1", "M23"): ONE})
        if pres.normal_order(word) != word:
            return failed("ordered words are not fixed points")
        l0 = pres.gen("L0")
        lhs = pres.normal_order(pres.normal_order(l0 * x0) * x0)
        rhs = pres.normal_order(l0 * pres.normal_order(x0 * x0))
        if lhs != rhs:
            return failed("association of reductions differs")
        return passed()

    add(
        "pbw-normal-order",
        "ba -> ab + [b, a]; idempotent; associative",
        ["uea_normal_order"],
        uea_examples,
    )

    def uea_confluence():
        pres = alg.uea()
        overlaps = pres.overlap_words()
        fails = pres.confluence_check()
        if fails:
            word, diff = fails[0]
            return failed(f"{''.join(word)}: {diff}")
        return passed({"overlaps": len(overlaps)})

    add(
        "pbw-confluence",
        "all length-3 critical pairs close",
        ["uea_normal_order"],
        uea_confluence,
    )

    add(
        "casimir-quadratic",
        "[C2, X] = 0 for all fourteen generators",
        ["casimir_centrality"],
        lambda: _zero_or_fail(alg.casimir_centrality_failures("C2")),
    )

    add(
        "casimir-quartic",
        "[C4, X] = 0 for all fourteen generators (completed element)",
        ["casimir_centrality"],
        lambda: _zero_or_fail(alg.casimir_centrality_failures("C4")),
    )

    def quartic_displayed():
        fails = alg.casimir_centrality_failures("C4-displayed")
        if not fails:
            return passed({"note": "bare contraction central (kappa = 0 case)"})
        # the defect must be exactly the commutator of the completion term
        p = alg.pseudoscalar()
        completion = alg.normal_order((p * p) * alg.kappa * GaussRat(Fraction(1, 16)))
        for g, residual in fails:
            want = -alg.commutator_normal(completion, _poly({(g,): ONE}))
            if residual != want:
                return failed(f"unexplained defect against {g}")
        gens = ", ".join(g for g, _ in fails)
        return warned(
            f"bare double-epsilon contraction is not central against {gens}; "
            "defect equals -(1/16)[kappa (eps M M)^2, .] exactly",
            {"defective-generators": len(fails)},
        )

    add(
        "casimir-quartic-bare-contraction",
        "defect of the uncompleted contraction, reported verbatim",
        ["casimir_centrality"],
        quartic_displayed,
    )

    add(
        "center-differences",
        "x^mu - L^mu commute with every generator",
        ["center_diff_check"],
        lambda: _zero_or_fail(alg.center_difference_failures()),
    )

    def no_go():
        dims = {
            name: invariant_antisym_solver(name)["kernel_dim"]
            for name in ("trivial", "rotations", "lorentz", "single_rotation")
        }
        if dims["trivial"] != 6:
            return failed(f"trivial group kernel {dims['trivial']} != 6")
        if dims["rotations"] != 0 or dims["lorentz"] != 0:
            return failed("invariant tensors survive the rotation/Lorentz set")
        if dims["single_rotation"] == 0:
            return failed("sanity direction: a single rotation must leave room")
        return passed({"kernel-dims": dims})

    add(
        "invariance-no-go",
        "no invariant constant antisymmetric tensor under rotations",
        ["invariant_antisym_solver", "solve_linear"],
        no_go,
    )

    def orbits():
        z = [[ZERO] * 4 for _ in range(4)]
        if orbit_invariants(z) != (ZERO, ZERO):
            return failed("zero tensor orbits")
        omega = [[ZERO] * 4 for _ in range(4)]
        omega[0][1], omega[1][0] = ONE, -ONE
        alpha, beta = orbit_invariants(omega)
        if alpha != GaussRat(-2) or beta != ZERO:
            return failed(f"single-block invariants ({alpha}, {beta})")
        omega[2][3], omega[3][2] = ONE, -ONE
        _, beta = orbit_invariants(omega)
        _, beta_p = orbit_invariants(parity_flip(omega))
        if beta.is_zero() or beta_p != -beta:
            return failed("parity does not flip the pseudoscalar label")
        return passed()

    add(
        "orbit-invariants",
        "alpha = g g Omega Omega; beta = eps Omega Omega flips under parity",
        ["orbit_invariants", "levi_civita"],
        orbits,
    )

    def cocycles():
        table = TableAlgebra.pauli()
        for name, cocycle in (
            ("product", BilinearCocycle.product(table)),
            ("zero", BilinearCocycle.zero(table)),
            ("half-i-commutator", BilinearCocycle.half_i_commutator(table)),
        ):
            if cocycle_first_order_failures(cocycle):
                return failed(f"first-order identity fails for {name}")
            if central_derivation_failures(cocycle):
                return failed(f"central derivation property fails for {name}")
        return passed()

    add(
        "cocycle-first-order",
        "i([h, c(f,g)] - c([h,f], g) - c(f, [h,g])) matches the bracket side",
        ["cocycle_first_order_check"],
        cocycles,
    )

    def reality():
        table = TableAlgebra.pauli()
        if reality_condition_failures(BilinearCocycle.product(table)):
            return failed("product cocycle fails reality")
        if reality_condition_failures(BilinearCocycle.zero(table)):
            return failed("zero cocycle fails reality")
        fails = reality_condition_failures(
            BilinearCocycle.half_i_commutator(table)
        )
        if not fails:
            return failed("expected the commutator cocycle to violate reality")
        return warned(
            "the half-i-commutator cocycle violates (c(f,g))* = c(g*, f*) on "
            f"{len(fails)} basis pairs (antisymmetric reality instead)",
        )

    add(
        "cocycle-reality",
        "(c(f,g))* = c(g*, f*) where the involution is supplied",
        ["cocycle_first_order_check"],
        reality,
    )

    def action():
        ident = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        pres = alg.uea()
        p = _poly({("x0",): ONE})
        if alg.poincare_action(p, ident) != p:
            return failed("identity element does not act trivially")
        moved = alg.poincare_action(p, ident, [Fraction(3), 0, 0, 0])
        want = NCPoly(
            alg.uea().params,
            {("x0",): ONE, (): Scalar.constant(GaussRat(-3), alg.uea().params)},
        )
        if moved != want:
            return failed("pure translation on x0")
        boost = rational_boost()
        x0, x1 = pres.gen("x0"), pres.gen("x1")
        if alg.poincare_action(
            alg.normal_order(x0 * x1 - x1 * x0), boost
        ) != alg.poincare_action(alg.bracket("x0", "x1"), boost):
            return failed("bracket transform inconsistent")
        for lorentz in (boost, spatial_rotation()):
            for _ in range(3):
                u = _poly({random_word(rng, 2): ONE})
                v = _poly({random_word(rng, 2): ONE})
                lhs = alg.poincare_action(alg.normal_order(u * v), lorentz, [1, 0, 0, 2])
                rhs = alg.normal_order(
                    alg.poincare_action(u, lorentz, [1, 0, 0, 2])
                    * alg.poincare_action(v, lorentz, [1, 0, 0, 2])
                )
                if lhs != rhs:
                    return failed("action is not multiplicative")
        return passed()

    add(
        "poincare-action",
        "alpha(uv) = alpha(u) alpha(v) after reduction; exact substitutions",
        ["poincare_action", "uea_normal_order"],
        action,
    )

    return checks


# -- quantum suite -----------------------------------------------------------------------


def quantum_suite(q_eval=None, p_eval=None, seed=0):
    checks = []
    rng = random.Random(seed)

    def add(check_id, identity, ops, fn):
        checks.append(Check(check_id, identity, tuple(ops), fn))

    def confluence():
        counts = {}
        for name, factory in quantum_plane.SHIPPED_PRESENTATIONS.items():
            pres = factory()
            fails = pres.confluence_check()
            if fails:
                word, diff = fails[0]
                return failed(f"{name}: {''.join(word)}: {diff}")
            counts[name] = len(pres.overlap_words())
        return passed({"overlaps": counts})

    add(
        "confluence",
        "all critical pairs close for every shipped presentation",
        ["confluence_check", "normal_order"],
        confluence,
    )

    def self_test():
        fails = quantum_plane.corrupted_glpq().confluence_check()
        witnesses = {"".join(w) for w, _ in fails}
        if "dba" not in witnesses:
            return failed(f"corrupted presentation closed anyway: {witnesses}")
        return passed({"witnesses": sorted(witnesses)})

    add(
        "confluence-self-test",
        "a deliberately corrupted rule set fails with witness dba",
        ["confluence_check"],
        self_test,
    )

    def nf_examples():
        m = quantum_plane.manin_plane()
        if m.normal_order(m.gen("y") * m.gen("x")).render() != "q^-1*xy":
            return failed("manin yx")
        g = quantum_plane.glpq()
        if (
            g.normal_order(g.gen("d") * g.gen("a")).render()
            != "ad + (q^-1 - p)*bc"
        ):
            return failed("glpq da")
        return passed()

    add(
        "normal-form-examples",
        "yx -> q^-1 xy; da -> ad + (q^-1 - p) bc",
        ["normal_order"],
        nf_examples,
    )

    def classical():
        for name, factory in quantum_plane.SHIPPED_PRESENTATIONS.items():
            fails = quantum_plane.classical_limit_failures(factory())
            if fails:
                return failed(f"{name}: {fails[0]}")
        return passed()

    add(
        "classical-limit",
        "q = p = 1 collapses every presentation to (graded) swaps",
        ["normal_order", "evaluate_at"],
        classical,
    )

    def covariance():
        if not quantum_plane.coacted_plane_relations().is_zero():
            return failed("x'y' != q y'x'")
        if not quantum_plane.counit_point_is_identity():
            return failed("counit point is not the identity map")
        for name, res in quantum_plane.coacted_differential_relations().items():
            if not res.is_zero():
                return failed(f"differential covariance: {name}: {res}")
        return passed()

    add(
        "coaction-preserves-relations",
        "x'y' = q y'x'; xi'eta' = D xi eta; nilpotency preserved",
        ["covariance_check"],
        covariance,
    )

    def qdet():
        group = quantum_plane.MatrixQuantumGroup()
        pres, p, q = group.pres, group.p, group.q
        d = group.qdet()
        if not pres.normal_order(d - group.qdet_alternative()).is_zero():
            return failed("the two determinant forms differ")
        if not pres.normal_order(
            d * group.gen("b") - group.gen("b") * d * (p() * q(-1))
        ).is_zero():
            return failed("Db != (p/q) bD")
        if not pres.normal_order(
            d * group.gen("c") - group.gen("c") * d * (q() * p(-1))
        ).is_zero():
            return failed("Dc != (q/p) cD")
        for g in ("a", "d"):
            if not pres.normal_order(d * group.gen(g) - group.gen(g) * d).is_zero():
                return failed(f"D does not commute with {g}")
        if group.counit(d) != Scalar.one(group.params):
            return failed("counit of D is not 1")
        return passed()

    add(
        "quantum-determinant",
        "ad - p bc = da - q^-1 bc; its commutations; counit 1",
        ["qdet_ops"],
        qdet,
    )

    def localisation():
        group = quantum_plane.MatrixQuantumGroup()
        one = group.localized(group.one())
        d = group.localized(group.qdet())
        dinv = group.dinv()
        if not (d.mul(dinv) == one and dinv.mul(d) == one):
            return failed("D D^-1 != 1")
        b = group.localized(group.gen("b"))
        if not (b.mul(dinv) == dinv.mul(b).scale(group.p() * group.q(-1))):
            return failed("b D^-1 != (p/q) D^-1 b")
        return passed()

    add(
        "localisation",
        "D^-1 D = 1 = D D^-1; b D^-1 = (p/q) D^-1 b",
        ["qdet_ops"],
        localisation,
    )

    def hopf():
        group = quantum_plane.MatrixQuantumGroup()
        for rel in group.defining_relations():
            if not group.coproduct(rel).is_zero():
                return failed("coproduct does not kill a defining relation")
            if not group.counit(rel).is_zero():
                return failed("counit does not kill a defining relation")
        dd = group.coproduct(group.qdet())
        want = quantum_plane.TensorElement.of(
            group.pres, group.pres, group.qdet(), group.qdet()
        )
        if not (dd == want):
            return failed("Delta(D) != D (x) D")
        sm_m, m_sm = group.antipode_matrix_products()
        one = group.localized(group.one())
        zero = group.localized(NCPoly.zero(group.params))
        for i in range(2):
            for j in range(2):
                target = one if i == j else zero
                if not (sm_m[i][j] == target and m_sm[i][j] == target):
                    return failed(f"antipode inverse property at ({i}, {j})")
        if not (group.antipode(group.qdet()) == group.dinv()):
            return failed("S(D) != D^-1")
        return passed()

    add(
        "hopf-structure",
        "Delta, epsilon algebra maps; S(M)M = M S(M) = 1; Delta(D) = D(x)D",
        ["hopf_ops"],
        hopf,
    )

    def antipode_inverse():
        group = quantum_plane.MatrixQuantumGroup()
        for gname in "abcd":
            derived = group.inverse_antipode_gen(gname)
            if not (
                group.antipode_localized(derived)
                == group.localized(group.gen(gname))
            ):
                return failed(f"derived inverse fails on {gname}")
        bad = []
        for gname in "abcd":
            cand = group.candidate_inverse_antipode_gen(gname)
            if not (
                group.antipode_localized(cand)
                == group.localized(group.gen(gname))
            ):
                bad.append(gname)
        if not bad:
            return failed("expected the printed candidate map to fail")
        return warned(
            "printed inverse-antipode candidate D(a, pq b; (pq)^-1 c, d) does "
            f"not invert S on generators {', '.join(bad)}; the derived inverse "
            "D^-1(d, -p b; -p^-1 c, a) does",
        )

    add(
        "antipode-inverse",
        "S composed with the inverse map is the identity on generators",
        ["hopf_ops"],
        antipode_inverse,
    )

    def rtt():
        for name, residual in quantum_plane.rtt_residuals().items():
            if not residual.is_zero():
                return failed(f"component {name}: {residual}")
        return passed({"components": 16})

    add(
        "rtt-components",
        "Rhat a a = a a Rhat in the single-parameter group, all entries",
        ["rtt_check"],
        rtt,
    )

    def families():
        for name, residual in quantum_plane.plane_relation_residuals().items():
            if not residual.is_zero():
                return failed(f"{name}: {residual}")
        return passed()

    add(
        "plane-relation-families",
        "the three R-matrix families reproduce the plane calculus",
        ["rtt_check"],
        families,
    )

    def coaction():
        for name, residual in quantum_plane.coaction_covariance_residuals().items():
            if not residual.is_zero():
                return failed(f"{name}: {residual}")
        return passed()

    add(
        "coaction-covariance",
        "coacted coordinates and differentials satisfy the same relations",
        ["covariance_check", "rtt_check"],
        coaction,
    )

    geom = PlaneGeometry(connection_params())

    def sigma_inverse():
        r1, r2 = geom.sigma_times_qrhat_residual()
        if not (r1.is_zero() and r2.is_zero()):
            return failed("sigma is not the inverse of q Rhat")
        return passed()

    add(
        "sigma-inverse-of-qrhat",
        "sigma (q Rhat) = (q Rhat) sigma = identity",
        ["sigma_ops"],
        sigma_inverse,
    )

    def sigma_eigen():
        for name, residual in geom.sigma_eigenvector_residuals().items():
            if any(not x.is_zero() for x in residual):
                return failed(f"eigenvector {name}")
        return passed()

    add(
        "sigma-eigenstructure",
        "eigenvalue q^-2 with multiplicity three; eigenvalue -1 on the area",
        ["sigma_ops"],
        sigma_eigen,
    )

    def sigma_theta():
        theta = geom.theta()
        xi, eta = geom.gen("xi"), geom.gen("eta")
        q = geom.q
        one = Scalar.one(geom.params)
        tf = geom.tensor
        held = {
            "xi-theta": geom.apply_sigma(tf(xi, theta))
            == tf(theta, xi).scale(q(-3)),
            "eta-theta": geom.apply_sigma(tf(eta, theta))
            == tf(theta, eta).scale(q(-3)),
            "theta-eta": geom.apply_sigma(tf(theta, eta))
            == tf(eta, theta).scale(q(1)).sub(tf(theta, eta).scale(one - q(-2))),
            "theta-theta": geom.apply_sigma(tf(theta, theta))
            == tf(theta, theta).scale(q(-2)),
        }
        for name, good in held.items():
            if not good:
                return failed(f"sigma relation {name}")
        stated = tf(xi, theta).scale(q(1)).sub(tf(theta, xi).scale(one - q(-1)))
        corrected = tf(xi, theta).scale(q(1)).sub(
            tf(theta, xi).scale(one - q(-2))
        )
        got = geom.apply_sigma(tf(theta, xi))
        if got == stated:
            return passed({"note": "printed theta-xi coefficient held"})
        if not (got == corrected):
            return failed("theta-xi relation fails both coefficient readings")
        return warned(
            "sigma(theta (x) xi): printed coefficient (1 - q^-1) fails; the "
            "expansion gives q xi (x) theta - (1 - q^-2) theta (x) xi "
            "(matching the eta analogue)",
        )

    add(
        "sigma-theta-block",
        "the theta relations of sigma, expanded and relinearised",
        ["sigma_ops"],
        sigma_theta,
    )

    def middle_linearity():
        xi, eta = geom.gen("xi"), geom.gen("eta")
        for _ in range(4):
            word = ("x",) * rng.randint(0, 2) + ("y",) * rng.randint(0, 2)
            f = NCPoly(geom.params, {word: ONE})
            lhs = geom.tensor(geom.normal(xi * f), eta)
            rhs = geom.tensor(xi, geom.normal(f * eta))
            if not (lhs == rhs and geom.apply_sigma(lhs) == geom.apply_sigma(rhs)):
                return failed(f"middle relinearisation at {word}")
        return passed()

    add(
        "sigma-middle-linearity",
        "sigma((xi f) (x) beta) = sigma(xi (x) (f beta))",
        ["sigma_ops"],
        middle_linearity,
    )

    def theta_squared():
        theta = geom.theta()
        if not geom.pres.normal_order(theta * theta).is_zero():
            return failed("theta^2 != 0")
        return passed()

    add(
        "theta-squared",
        "theta = x eta - q y xi squares to zero",
        ["quantum_connection"],
        theta_squared,
    )

    def theta_commutations():
        theta = geom.theta()
        q = geom.q
        for nm in ("x", "y"):
            res = geom.pres.normal_order(
                geom.gen(nm) * theta - theta * geom.gen(nm) * q(1)
            )
            if not res.is_zero():
                return failed(f"{nm} theta != q theta {nm}")
        for nm in ("xi", "eta"):
            res = geom.pres.normal_order(
                geom.gen(nm) * theta + theta * geom.gen(nm) * q(-3)
            )
            if not res.is_zero():
                return failed(f"{nm} theta != -q^-3 theta {nm}")
        stated = geom.pres.normal_order(
            geom.gen("xi") * theta + theta * geom.gen("xi") * q(3)
        )
        if stated.is_zero():
            return passed({"note": "printed exponent +3 held"})
        return warned(
            "differential-theta commutation: the calculus gives "
            "xi theta = -q^-3 theta xi (exponent -3, matching "
            "sigma(xi (x) theta) = q^-3 theta (x) xi); the printed exponent "
            f"+3 leaves residual {stated}",
        )

    add(
        "theta-commutations",
        "x theta = q theta x; xi theta = -q^-3 theta xi",
        ["quantum_connection"],
        theta_commutations,
    )

    def twisted_leibniz():
        lhs = geom.covariant_derivative_right("xi", geom.gen("x"))
        rhs = geom.covariant_derivative(
            NCPoly(geom.params, {("x", "xi"): geom.q(-2)})
        )
        if not (lhs == rhs):
            return failed("D(xi x) differs between the two rewritings")
        return passed()

    add(
        "twisted-leibniz",
        "D(xi f) = sigma(xi (x) df) + (D xi) f, consistent across rewriting",
        ["quantum_connection"],
        twisted_leibniz,
    )

    def prefactor():
        pf = geom.curvature_prefactor()
        strip = {"linv4": ONE}
        if not pf.evaluate({"q": I, **strip}).is_zero():
            return failed("prefactor at q = i")
        if not pf.evaluate({"q": -I, **strip}).is_zero():
            return failed("prefactor at q = -i")
        if pf.evaluate({"q": ONE, **strip}) != GaussRat(4):
            return failed("prefactor at q = 1 is not 4")
        rebased = pf.substitute_power("q", 2, "t")
        if not rebased.evaluate({"t": I, "linv4": ONE}).is_zero():
            return failed("prefactor at q^2 = i")
        if not rebased.evaluate({"t": -I, "linv4": ONE}).is_zero():
            return failed("prefactor at q^2 = -i")
        details = {}
        if q_eval is not None:
            value = pf.evaluate({"q": q_eval, **strip})
            details["prefactor-at-q-eval"] = str(value)
        return passed(details)

    add(
        "curvature-prefactor",
        "(1 + q^-2)(1 + q^-4) vanishes at q = +-i and q^2 = +-i; 4 at q = 1",
        ["quantum_connection", "evaluate_at"],
        prefactor,
    )

    def rederivation():
        for k, leg in ((0, "xi"), (1, "eta")):
            derived = geom.second_derivative_projected(leg)
            data = geom.curvature_data_tensor(k)
            for l3 in ("xi", "eta"):
                diff = derived.get(l3, NCPoly.zero(geom.params)) - data[l3]
                if not geom.pres.normal_order(diff).is_zero():
                    return warned(
                        f"sigma-twisted prolongation differs from the installed "
                        f"curvature at ({leg}, {l3}): {geom.pres.normal_order(diff)}"
                    )
        return passed({"note": "prolongation re-derivation agrees exactly"})

    add(
        "curvature-rederivation",
        "D^2 via the sigma-twisted prolongation matches the curvature matrix",
        ["quantum_connection", "sigma_ops"],
        rederivation,
    )

    add(
        "bianchi-trivial",
        "the Bianchi identity holds trivially at this level (no content)",
        ["quantum_connection"],
        lambda: passed({"note": "recorded as a no-op"}),
    )

    def root_of_unity():
        if q_eval is None:
            return passed({"note": "symbolic run"})
        power = GaussRat(1)
        for k in range(1, 25):
            power = power * q_eval
            if power == GaussRat(1):
                return warned(
                    f"q evaluates to a root of unity (order {k}); the "
                    "exterior-algebra hypothesis of the plane calculus fails "
                    "there"
                )
        return passed()

    add(
        "root-of-unity-hypothesis",
        "evaluated q should not be a root of unity",
        ["evaluate_at", "sigma_ops"],
        root_of_unity,
    )

    return checks


def build_suites(selection, options):
    """selection in {matrix, gauge, deformation, quantum, all} -> list of
    (suite_name, checks)."""
    wanted = SUITE_NAMES if selection == "all" else (selection,)
    out = []
    for name in wanted:
        if name == "matrix":
            out.append(
                (name, matrix_suite(n=options.get("n", 2), seed=options.get("seed", 0)))
            )
        elif name == "gauge":
            out.append(
                (
                    name,
                    gauge_suite(
                        n=options.get("n", 2),
                        vacuum=options.get("vacuum", "delta"),
                        metric=options.get("metric", "trace"),
                        seed=options.get("seed", 0),
                    ),
                )
            )
        elif name == "deformation":
            out.append(
                (
                    name,
                    deformation_suite(
                        kappa=options.get("kappa"), seed=options.get("seed", 0)
                    ),
                )
            )
        elif name == "quantum":
            out.append(
                (
                    name,
                    quantum_suite(
                        q_eval=options.get("q"),
                        p_eval=options.get("p"),
                        seed=options.get("seed", 0),
                    ),
                )
            )
    return out
