"""The one-parameter family of 14-generator algebras deforming the Poincare
algebra, its Casimir elements, and the invariance no-go linear algebra.

Generators: coordinates x0..x3, their partner vector L0..L3 and the
antisymmetric tensor M01..M23 (six independent components), with brackets

    [x^mu, x^nu] = i kappa M^{mu nu}
    [x^mu, L^nu] = i kappa M^{mu nu}
    [L^mu, L^nu] = i kappa M^{mu nu}
    [x^lam, M^{mu nu}] = [L^lam, M^{mu nu}]
        = i (g^{lam nu} L^mu - g^{lam mu} L^nu)
    [M^{lam rho}, M^{mu nu}] = i (g^{lam nu} M^{mu rho}
        - g^{rho nu} M^{mu lam} + g^{rho mu} M^{nu lam}
        - g^{lam mu} M^{nu rho})

with the Minkowski metric diag(-1, 1, 1, 1).  The deformation parameter
kappa stays symbolic (a Scalar in the parameter 'kappa'); particular values
are checked by exact evaluation.  For kappa > 0 the L, M sector closes on
the de Sitter algebra, for kappa < 0 on the anti-de Sitter one, and at
kappa = 0 on the Poincare algebra; the differences x^mu - L^mu are central
for every kappa.

The enveloping algebra is handled through the shared rewriting engine with
the PBW generator order x0 < .. < x3 < L0 < .. < L3 < M01 < .. < M23 and
rules ba -> ab + [b, a].

Two central elements are verified: the quadratic one
kappa g g M M + 2 g L L, and a quartic one built from the squared
Pauli-Lubanski contraction eps L M; for nonzero kappa the latter needs its
pure-M completion (1/16) kappa (eps M M)^2 to commute with the L and x
generators, and both the completed element and the defect of the bare
contraction are exposed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .linalg import ScalarMatrix, levi_civita, solve_linear
from .rewriting import NCPoly, Presentation
from .scalars import GaussRat, I, ONE, Scalar, ZERO

PARAMS = ("kappa",)
METRIC = (Fraction(-1), Fraction(1), Fraction(1), Fraction(1))

X_NAMES = tuple(f"x{mu}" for mu in range(4))
L_NAMES = tuple(f"L{mu}" for mu in range(4))
M_NAMES = tuple(f"M{a}{b}" for a, b in combinations(range(4), 2))
GENERATORS = X_NAMES + L_NAMES + M_NAMES


def _scalar(value):
    return Scalar.constant(value, PARAMS)


def _poly(terms):
    return NCPoly(PARAMS, terms)


def _zero():
    return NCPoly.zero(PARAMS)


class KappaPoincare:
    """Bracket table of the deformed algebra, with kappa symbolic or fixed."""

    def __init__(self, kappa=None):
        if kappa is None:
            self.kappa = Scalar.var("kappa", PARAMS)
        else:
            self.kappa = _scalar(GaussRat.of(kappa))
        self.generators = GENERATORS
        self._uea = None

    # -- generator helpers ----------------------------------------------------

    @staticmethod
    def m_poly(mu, nu, coeff):
        """coeff * M^{mu nu} with the antisymmetry convention folded in."""
        if mu == nu:
            return _zero()
        if mu < nu:
            return _poly({(f"M{mu}{nu}",): coeff})
        return _poly({(f"M{nu}{mu}",): -coeff})

    @staticmethod
    def l_poly(mu, coeff):
        return _poly({(f"L{mu}",): coeff})

    # -- the bracket table ------------------------------------------------------

    def bracket(self, a, b):
        """[a, b] for generator names, as a degree <= 1 NCPoly."""
        ta, ia = _parse(a)
        tb, ib = _parse(b)
        if (ta, tb) in (("x", "x"), ("x", "L"), ("L", "L")):
            return self.m_poly(ia, ib, self.kappa * I)
        if ta == "L" and tb == "x":
            return -self.bracket(b, a)
        if ta in ("x", "L") and tb == "M":
            lam = ia
            mu, nu = ib
            out = _zero()
            if METRIC[lam] != 0 and lam == nu:
                out = out + self.l_poly(mu, _scalar(I * GaussRat(METRIC[lam])))
            if METRIC[lam] != 0 and lam == mu:
                out = out - self.l_poly(nu, _scalar(I * GaussRat(METRIC[lam])))
            return out
        if ta == "M" and tb in ("x", "L"):
            return -self.bracket(b, a)
        if ta == "M" and tb == "M":
            lam, rho = ia
            mu, nu = ib
            out = _zero()
            # i (g^{lam nu} M^{mu rho} - g^{rho nu} M^{mu lam}
            #    + g^{rho mu} M^{nu lam} - g^{lam mu} M^{nu rho})
            if lam == nu:
                out = out + self.m_poly(mu, rho, _scalar(I * GaussRat(METRIC[lam])))
            if rho == nu:
                out = out - self.m_poly(mu, lam, _scalar(I * GaussRat(METRIC[rho])))
            if rho == mu:
                out = out + self.m_poly(nu, lam, _scalar(I * GaussRat(METRIC[rho])))
            if lam == mu:
                out = out - self.m_poly(nu, rho, _scalar(I * GaussRat(METRIC[lam])))
            return out
        raise ValueError(f"unknown generators {a}, {b}")

    def bracket_poly(self, p, q):
        """Bilinear extension of the bracket to degree <= 1 polynomials
        (constants are central)."""
        out = _zero()
        for w1, c1 in p.terms.items():
            for w2, c2 in q.terms.items():
                if len(w1) == 1 and len(w2) == 1:
                    out = out + self.bracket(w1[0], w2[0]) * (c1 * c2)
        return out

    # -- checks -------------------------------------------------------------------

    def jacobi_failures(self):
        """Exact Jacobi check over all generator triples; returns failures."""
        failures = []
        for a, b, c in combinations(self.generators, 3):
            pa, pb, pc = (_poly({(g,): ONE}) for g in (a, b, c))
            total = (
                self.bracket_poly(self.bracket_poly(pa, pb), pc)
                + self.bracket_poly(self.bracket_poly(pb, pc), pa)
                + self.bracket_poly(self.bracket_poly(pc, pa), pb)
            )
            if not total.is_zero():
                failures.append(((a, b, c), total))
        return failures

    def center_difference_failures(self):
        """[x^mu - L^mu, X] must vanish for every mu and every generator."""
        failures = []
        for mu in range(4):
            diff = _poly({(f"x{mu}",): ONE, (f"L{mu}",): -ONE})
            for g in self.generators:
                val = self.bracket_poly(diff, _poly({(g,): ONE}))
                if not val.is_zero():
                    failures.append(((mu, g), val))
        return failures

    # -- enveloping algebra ---------------------------------------------------------

    def uea(self):
        """PBW presentation: every inverted pair rewrites to the swap plus
        the bracket."""
        if self._uea is None:
            rules = {}
            order = {g: i for i, g in enumerate(self.generators)}
            for b in self.generators:
                for a in self.generators:
                    if order[b] > order[a]:
                        rules[(b, a)] = _poly({(a, b): ONE}) + self.bracket(b, a)
            self._uea = Presentation("uea-kappa", self.generators, PARAMS, rules)
        return self._uea

    def normal_order(self, poly):
        return self.uea().normal_order(poly)

    def commutator_normal(self, p, q):
        return self.normal_order(p * q - q * p)

    # -- Casimir elements -------------------------------------------------------------

    def casimir_quadratic(self):
        """kappa g g M M + 2 g L L."""
        out = _zero()
        for mu, rho in combinations(range(4), 2):
            coeff = self.kappa * GaussRat(2 * METRIC[mu] * METRIC[rho])
            word = (f"M{mu}{rho}", f"M{mu}{rho}")
            out = out + _poly({word: coeff})
        for mu in range(4):
            out = out + _poly({(f"L{mu}", f"L{mu}"): _scalar(2 * GaussRat(METRIC[mu]))})
        return out

    def pauli_lubanski(self, rho):
        """W_rho = eps_{rho lam mu nu} L^lam M^{mu nu} (all indices summed).

        The ordering of the two factors is immaterial: the contraction of
        the L-M bracket with the epsilon symbol vanishes identically.
        """
        out = _zero()
        for lam in range(4):
            for mu, nu in combinations(range(4), 2):
                sign = levi_civita((rho, lam, mu, nu))
                if sign == 0:
                    continue
                # both index orders of the antisymmetric pair contribute
                out = out + _poly({(f"L{lam}", f"M{mu}{nu}"): _scalar(GaussRat(2 * sign))})
        return out

    def pseudoscalar(self):
        """eps_{mu nu rho sigma} M^{mu nu} M^{rho sigma} (all indices)."""
        out = _zero()
        for mu, nu in combinations(range(4), 2):
            for rho, sig in combinations(range(4), 2):
                sign = levi_civita((mu, nu, rho, sig))
                if sign == 0:
                    continue
                # the four sign combinations of each antisymmetric pair
                out = out + _poly(
                    {(f"M{mu}{nu}", f"M{rho}{sig}"): _scalar(GaussRat(4 * sign))}
                )
        return out

    def casimir_quartic_displayed(self):
        """The bare double-epsilon contraction g^{rho rho'} W_rho W_rho'.

        Central at kappa = 0 (the usual squared Pauli-Lubanski vector) but
        NOT for symbolic kappa: its commutator with L^mu (hence x^mu) is
        -(1/16) [kappa P^2, L^mu] with P the pseudoscalar above.  Kept so
        the defect can be exhibited; see :meth:`casimir_quartic`.
        """
        out = _zero()
        for rho in range(4):
            w = self.pauli_lubanski(rho)
            out = out + (w * w) * GaussRat(METRIC[rho])
        return out

    def casimir_quartic(self):
        """The central quartic element:

            g^{rho rho'} W_rho W_rho' + (1/16) kappa P^2.

        The kappa-term is the pure-M completion the 5-index contraction
        produces when the deformed sector closes on SO(4,1)/SO(3,2); it
        vanishes at kappa = 0, where the element reduces to the squared
        Pauli-Lubanski vector.  Centrality against all 14 generators with
        kappa symbolic is machine-checked; the bare contraction alone
        fails it (see casimir_quartic_displayed).
        """
        p = self.pseudoscalar()
        return self.casimir_quartic_displayed() + (p * p) * self.kappa * GaussRat(
            Fraction(1, 16)
        )

    def casimir_centrality_failures(self, which="C2"):
        if which == "C2":
            cas = self.casimir_quadratic()
        elif which == "C4":
            cas = self.casimir_quartic()
        elif which == "C4-displayed":
            cas = self.casimir_quartic_displayed()
        else:
            raise ValueError("which must be C2, C4 or C4-displayed")
        cas = self.normal_order(cas)
        failures = []
        for g in self.generators:
            residual = self.commutator_normal(cas, _poly({(g,): ONE}))
            if not residual.is_zero():
                failures.append((g, residual))
        return failures

    # -- Poincare group action ----------------------------------------------------------

    def poincare_action(self, poly, lorentz, translation=None):
        """Substitution x -> Lam^-1 (x - a), L -> Lam^-1 L, M -> Lam^-1 Lam^-1 M,
        extended multiplicatively and normal ordered.

        ``lorentz`` is a rational matrix with Lam^T g Lam = g exactly;
        ``translation`` a rational 4-vector.
        """
        lam = [[Fraction(v) for v in row] for row in lorentz]
        _check_lorentz(lam)
        a = [Fraction(v) for v in (translation or [0, 0, 0, 0])]
        inv = _lorentz_inverse(lam)
        images = {}
        for mu in range(4):
            img = _zero()
            for nu in range(4):
                if inv[mu][nu] == 0:
                    continue
                img = img + _poly(
                    {
                        (f"x{nu}",): _scalar(GaussRat(inv[mu][nu])),
                        (): _scalar(GaussRat(-inv[mu][nu] * a[nu])),
                    }
                )
            images[f"x{mu}"] = img
            img_l = _zero()
            for nu in range(4):
                if inv[mu][nu] != 0:
                    img_l = img_l + self.l_poly(nu, _scalar(GaussRat(inv[mu][nu])))
            images[f"L{mu}"] = img_l
        for mu, nu in combinations(range(4), 2):
            img = _zero()
            for r in range(4):
                for s in range(4):
                    c = inv[mu][r] * inv[nu][s]
                    if c != 0:
                        img = img + self.m_poly(r, s, _scalar(GaussRat(c)))
            images[f"M{mu}{nu}"] = img
        out = _zero()
        for word, coeff in poly.terms.items():
            term = NCPoly.one(PARAMS)
            for g in word:
                term = term * images[g]
            out = out + term * coeff
        return self.normal_order(out)


def _parse(name):
    if name.startswith("x"):
        return "x", int(name[1])
    if name.startswith("L"):
        return "L", int(name[1])
    if name.startswith("M"):
        return "M", (int(name[1]), int(name[2]))
    raise ValueError(f"unknown generator {name}")


def _check_lorentz(lam):
    for mu in range(4):
        for nu in range(4):
            acc = Fraction(0)
            for r in range(4):
                acc += lam[r][mu] * METRIC[r] * lam[r][nu]
            want = METRIC[mu] if mu == nu else Fraction(0)
            if acc != want:
                raise ValueError("matrix is not g-orthogonal")


def _lorentz_inverse(lam):
    """Lam^-1 = g Lam^T g for an exact Lorentz matrix."""
    return [
        [METRIC[mu] * lam[nu][mu] * METRIC[nu] for nu in range(4)]
        for mu in range(4)
    ]


def rational_boost():
    """The (5/4, 3/4) boost in the x0 x1 plane; exactly Lorentz."""
    f = Fraction
    return [
        [f(5, 4), f(3, 4), 0, 0],
        [f(3, 4), f(5, 4), 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ]


def spatial_rotation():
    """Quarter turn in the x1 x2 plane (exact)."""
    return [
        [1, 0, 0, 0],
        [0, 0, -1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ]


# -- the invariance no-go --------------------------------------------------------------


def vector_generator(a, b):
    """(M^{ab})^mu_nu = g^{a mu} delta^b_nu - g^{b mu} delta^a_nu."""
    mat = [[Fraction(0)] * 4 for _ in range(4)]
    for mu in range(4):
        for nu in range(4):
            val = Fraction(0)
            if mu == a and nu == b:
                val += METRIC[a]
            if mu == b and nu == a:
                val -= METRIC[b]
            mat[mu][nu] = val
    return mat


GROUPS = {
    "trivial": [],
    "rotations": [(1, 2), (1, 3), (2, 3)],
    # two plane rotations still force the tensor to vanish (their closure
    # is not imposed, yet the linear conditions already suffice); a single
    # one leaves the plane's own component and the orthogonal E-component
    "rotations_minus_one": [(1, 2), (1, 3)],
    "single_rotation": [(1, 2)],
    "lorentz": [(1, 2), (1, 3), (2, 3), (0, 1), (0, 2), (0, 3)],
}


def invariant_antisym_solver(group):
    """Kernel of the invariance conditions m Omega + Omega m^T = 0 on
    constant antisymmetric tensors; returns (dimension, basis, shape)."""
    pairs = list(combinations(range(4), 2))
    pos = {p: i for i, p in enumerate(pairs)}

    def omega_coeff(mu, nu):
        # unknown index and sign for Omega^{mu nu}
        if mu == nu:
            return None, 0
        if mu < nu:
            return pos[(mu, nu)], 1
        return pos[(nu, mu)], -1

    rows = []
    for a, b in GROUPS[group]:
        m = vector_generator(a, b)
        for mu, nu in pairs:
            row = [Fraction(0)] * 6
            for rho in range(4):
                if m[mu][rho] != 0:
                    j, sign = omega_coeff(rho, nu)
                    if j is not None:
                        row[j] += sign * m[mu][rho]
                if m[nu][rho] != 0:
                    j, sign = omega_coeff(mu, rho)
                    if j is not None:
                        row[j] += sign * m[nu][rho]
            rows.append([GaussRat(v) for v in row])
    if not rows:
        rows = [[ZERO] * 6]
    res = solve_linear(ScalarMatrix(rows))
    return {
        "kernel_dim": res["kernel_dim"],
        "kernel": res["kernel"],
        "rows": len(rows),
        "unknowns": 6,
    }


def orbit_invariants(omega):
    """The two orbit labels of a constant antisymmetric tensor:
    alpha = g g Omega Omega (fully contracted), beta = eps Omega Omega."""
    for mu in range(4):
        for nu in range(4):
            if not (omega[mu][nu] + omega[nu][mu]).is_zero():
                raise ValueError("tensor is not antisymmetric")
    alpha = ZERO
    beta = ZERO
    for mu in range(4):
        for nu in range(4):
            for rho in range(4):
                for lam in range(4):
                    if mu == rho or nu == lam:
                        gg = GaussRat(METRIC[mu] * METRIC[nu]) if (mu == rho and nu == lam) else None
                        if gg is not None:
                            alpha = alpha + gg * omega[mu][nu] * omega[rho][lam]
                    sign = levi_civita((mu, nu, rho, lam))
                    if sign:
                        beta = beta + GaussRat(sign) * omega[mu][nu] * omega[rho][lam]
    return alpha, beta


def parity_flip(omega):
    """Conjugate by diag(1, -1, 1, 1) (the x1 reflection)."""
    p = [1, -1, 1, 1]
    return [
        [GaussRat(p[mu] * p[nu]) * omega[mu][nu] for nu in range(4)]
        for mu in range(4)
    ]


# -- first-order deformation identities on a table algebra ------------------------------


class TableAlgebra:
    """Finite-dimensional algebra given by exact structure constants."""

    def __init__(self, names, table, involution_real_basis=True):
        self.names = list(names)
        self.dim = len(self.names)
        self.table = table  # (i, j) -> list of GaussRat
        self.involution_real_basis = involution_real_basis

    @staticmethod
    def pauli():
        """M_2(C) on the basis {1, sigma1, sigma2, sigma3}."""
        from .matrix_geometry import MatrixAlgebra
        from .linalg import mmul

        alg = MatrixAlgebra(2)
        mats = [alg.ident] + list(alg.basis)
        table = {}
        for i in range(4):
            for j in range(4):
                beta, coeffs = alg.decompose(mmul(mats[i], mats[j]))
                table[(i, j)] = [beta] + list(coeffs)
        return TableAlgebra(["1", "s1", "s2", "s3"], table)

    def basis_element(self, i):
        return [ONE if j == i else ZERO for j in range(self.dim)]

    def mult(self, u, v):
        out = [ZERO] * self.dim
        for i, ci in enumerate(u):
            if ci.is_zero():
                continue
            for j, cj in enumerate(v):
                if cj.is_zero():
                    continue
                for k, s in enumerate(self.table[(i, j)]):
                    out[k] = out[k] + ci * cj * s
        return out

    def comm(self, u, v):
        ab = self.mult(u, v)
        ba = self.mult(v, u)
        return [x - y for x, y in zip(ab, ba)]

    def involution(self, u):
        """Hermitian-basis involution: conjugate the coefficients."""
        return [c.conjugate() for c in u]

    def is_central(self, u):
        return all(
            all(x.is_zero() for x in self.comm(u, self.basis_element(i)))
            for i in range(self.dim)
        )


class BilinearCocycle:
    """A bilinear map on a TableAlgebra, given on basis pairs."""

    def __init__(self, algebra, values):
        self.algebra = algebra
        self.values = values  # (i, j) -> element (list of GaussRat)

    @staticmethod
    def product(algebra):
        return BilinearCocycle(
            algebra,
            {
                (i, j): algebra.mult(
                    algebra.basis_element(i), algebra.basis_element(j)
                )
                for i in range(algebra.dim)
                for j in range(algebra.dim)
            },
        )

    @staticmethod
    def zero(algebra):
        z = [ZERO] * algebra.dim
        return BilinearCocycle(
            algebra,
            {(i, j): z for i in range(algebra.dim) for j in range(algebra.dim)},
        )

    @staticmethod
    def half_i_commutator(algebra):
        half_i = GaussRat(0, Fraction(1, 2))
        return BilinearCocycle(
            algebra,
            {
                (i, j): [
                    half_i * x
                    for x in algebra.comm(
                        algebra.basis_element(i), algebra.basis_element(j)
                    )
                ]
                for i in range(algebra.dim)
                for j in range(algebra.dim)
            },
        )

    def of(self, u, v):
        out = [ZERO] * self.algebra.dim
        for i, ci in enumerate(u):
            if ci.is_zero():
                continue
            for j, cj in enumerate(v):
                if cj.is_zero():
                    continue
                for k, s in enumerate(self.values[(i, j)]):
                    out[k] = out[k] + ci * cj * s
        return out

    def bracket(self, u, v):
        """{u, v} = i (c(u, v) - c(v, u))."""
        cuv = self.of(u, v)
        cvu = self.of(v, u)
        return [I * (a - b) for a, b in zip(cuv, cvu)]


def cocycle_first_order_failures(cocycle):
    """The first-order compatibility identity on all basis triples:
    i([h, c(f,g)] - c([h,f], g) - c(f, [h,g])) = f{h,g} - {h, fg} + {h,f}g."""
    alg = cocycle.algebra
    failures = []
    for hi in range(alg.dim):
        h = alg.basis_element(hi)
        for fi in range(alg.dim):
            f = alg.basis_element(fi)
            for gi in range(alg.dim):
                g = alg.basis_element(gi)
                lhs_core = [
                    a - b - c
                    for a, b, c in zip(
                        alg.comm(h, cocycle.of(f, g)),
                        cocycle.of(alg.comm(h, f), g),
                        cocycle.of(f, alg.comm(h, g)),
                    )
                ]
                lhs = [I * x for x in lhs_core]
                rhs = [
                    a - b + c
                    for a, b, c in zip(
                        alg.mult(f, cocycle.bracket(h, g)),
                        cocycle.bracket(h, alg.mult(f, g)),
                        alg.mult(cocycle.bracket(h, f), g),
                    )
                ]
                diff = [a - b for a, b in zip(lhs, rhs)]
                if any(not x.is_zero() for x in diff):
                    failures.append(((hi, fi, gi), diff))
    return failures


def central_derivation_failures(cocycle):
    """For central h, delta_h = {h, .} must be a derivation of the bracket:
    {h, {f, g}} = {{h, f}, g} + {f, {h, g}}."""
    alg = cocycle.algebra
    failures = []
    for hi in range(alg.dim):
        h = alg.basis_element(hi)
        if not alg.is_central(h):
            continue
        for fi in range(alg.dim):
            for gi in range(alg.dim):
                f, g = alg.basis_element(fi), alg.basis_element(gi)
                lhs = cocycle.bracket(h, cocycle.bracket(f, g))
                rhs = [
                    a + b
                    for a, b in zip(
                        cocycle.bracket(cocycle.bracket(h, f), g),
                        cocycle.bracket(f, cocycle.bracket(h, g)),
                    )
                ]
                diff = [a - b for a, b in zip(lhs, rhs)]
                if any(not x.is_zero() for x in diff):
                    failures.append(((hi, fi, gi), diff))
    return failures


def reality_condition_failures(cocycle):
    """(c(f,g))^* = c(g^*, f^*) on basis pairs (hermitian basis)."""
    alg = cocycle.algebra
    failures = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = alg.involution(
                cocycle.of(alg.basis_element(i), alg.basis_element(j))
            )
            rhs = cocycle.of(
                alg.involution(alg.basis_element(j)),
                alg.involution(alg.basis_element(i)),
            )
            diff = [a - b for a, b in zip(lhs, rhs)]
            if any(not x.is_zero() for x in diff):
                failures.append(((i, j), diff))
    return failures


def random_word(rng, max_len=3):
    k = rng.randint(0, max_len)
    return tuple(rng.choice(GENERATORS) for _ in range(k))
