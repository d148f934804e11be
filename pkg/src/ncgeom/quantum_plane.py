"""Quantum plane, its differential calculus, and the two-parameter quantum
group of 2x2 matrices, all as confluent rewriting presentations.

Generator orders (coefficients always collected on the left):

* plane: x < y with y x -> q^-1 x y,
* matrix quantum group: a < b < c < d with

      b a -> p^-1 a b        c a -> q^-1 a c      c b -> (p/q) b c
      d a -> a d + (q^-1 - p) b c
      d b -> q^-1 b d        d c -> p^-1 c d

  (each rule is the defining relation a c = q c a, b d = q d b,
  a d = d a + q c b - q^-1 b c, b c = (q/p) c b, a b = p b a,
  c d = p d c read as a reduction of the inverted pair),
* plane with differentials xi = dx, eta = dy: x < y < xi < eta with the
  twisted rules of the one-parameter calculus (x xi = q^2 xi x and
  friends) and the nilpotent squares.

The single-parameter matrix group is the specialisation p = q, for which
the quantum determinant D = ad - p bc is central and can be inverted; this
is the standard one-parameter deformation compatible with the displayed
R-matrix (in inverse-parameter labelling conventions the same
specialisation is written p = q^-1).  Localisation by D is represented as
pairs (polynomial, power of D^-1 pushed fully to the right); equality
clears to a common power.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import ScalarMatrix
from .rewriting import NCPoly, Presentation
from .scalars import GaussRat, I, ONE, Scalar, ZERO

QP = ("q", "p")
Q = ("q",)


def _q(params, power=1):
    return Scalar.var("q", params, power)


def _p(params, power=1):
    return Scalar.var("p", params, power)


# -- presentations ----------------------------------------------------------------


def manin_plane(params=QP):
    rules = {("y", "x"): NCPoly(params, {("x", "y"): _q(params, -1)})}
    return Presentation("manin", ["x", "y"], params, rules)


def _gl_rules(params, p_value=None):
    """The six matrix-group rules; with p_value = 'q' the p = q
    specialisation is substituted."""
    q1 = _q(params)
    qm1 = _q(params, -1)
    if p_value == "q":
        p1, pm1 = q1, qm1
    else:
        p1, pm1 = _p(params), _p(params, -1)

    def poly(terms):
        return NCPoly(params, terms)

    return {
        ("b", "a"): poly({("a", "b"): pm1}),
        ("c", "a"): poly({("a", "c"): qm1}),
        ("c", "b"): poly({("b", "c"): p1 * qm1}),
        ("d", "a"): poly({("a", "d"): ONE, ("b", "c"): qm1 - p1}),
        ("d", "b"): poly({("b", "d"): qm1}),
        ("d", "c"): poly({("c", "d"): pm1}),
    }


def glpq(params=QP):
    return Presentation("glpq", ["a", "b", "c", "d"], params, _gl_rules(params))


def sl_q(params=Q):
    return Presentation(
        "slq", ["a", "b", "c", "d"], params, _gl_rules(params, p_value="q")
    )


def _plane_form_rules(params):
    q1 = _q(params)
    qm1 = _q(params, -1)
    qm2 = _q(params, -2)

    def poly(terms):
        return NCPoly(params, terms)

    return {
        ("y", "x"): poly({("x", "y"): qm1}),
        ("xi", "x"): poly({("x", "xi"): qm2}),
        ("xi", "y"): poly({("y", "xi"): qm1}),
        ("eta", "x"): poly({("x", "eta"): qm1, ("y", "xi"): qm2 - ONE}),
        ("eta", "y"): poly({("y", "eta"): qm2}),
        ("eta", "xi"): poly({("xi", "eta"): -q1}),
        ("xi", "xi"): NCPoly.zero(params),
        ("eta", "eta"): NCPoly.zero(params),
    }


def plane_forms(params=Q):
    """Coordinates plus differentials with the one-parameter twisted rules."""
    return Presentation(
        "plane-forms", ["x", "y", "xi", "eta"], params, _plane_form_rules(params)
    )


def _commuting_rules(params, high, low):
    return {
        (h, l): NCPoly(params, {(l, h): Scalar.one(params)})
        for h in high
        for l in low
    }


def glpq_with_plane(params=QP):
    """Matrix-group coefficients commuting with the plane coordinates."""
    rules = _gl_rules(params)
    rules.update(_commuting_rules(params, ["x", "y"], ["a", "b", "c", "d"]))
    rules[("y", "x")] = NCPoly(params, {("x", "y"): _q(params, -1)})
    return Presentation(
        "glpq-plane", ["a", "b", "c", "d", "x", "y"], params, rules
    )


def glpq_with_differentials(params=QP):
    """Matrix-group coefficients commuting with the differentials, which
    satisfy the two-parameter rules xi^2 = eta^2 = 0 and
    eta xi = -p xi eta."""
    rules = _gl_rules(params)
    rules.update(_commuting_rules(params, ["xi", "eta"], ["a", "b", "c", "d"]))
    rules[("eta", "xi")] = NCPoly(params, {("xi", "eta"): -_p(params)})
    rules[("xi", "xi")] = NCPoly.zero(params)
    rules[("eta", "eta")] = NCPoly.zero(params)
    return Presentation(
        "glpq-forms", ["a", "b", "c", "d", "xi", "eta"], params, rules
    )


def slq_with_plane_forms(params=Q):
    """The p = q matrix group acting on the full plane calculus (used for
    the coaction covariance checks)."""
    rules = _gl_rules(params, p_value="q")
    rules.update(
        _commuting_rules(params, ["x", "y", "xi", "eta"], ["a", "b", "c", "d"])
    )
    rules.update(_plane_form_rules(params))
    return Presentation(
        "slq-plane-forms",
        ["a", "b", "c", "d", "x", "y", "xi", "eta"],
        params,
        rules,
    )


SHIPPED_PRESENTATIONS = {
    "manin": manin_plane,
    "glpq": glpq,
    "slq": sl_q,
    "plane": plane_forms,
    "glpq-plane": glpq_with_plane,
    "glpq-forms": glpq_with_differentials,
    "slq-plane-forms": slq_with_plane_forms,
}


def corrupted_glpq(params=QP):
    """Self-test presentation: the c b rule coefficient is replaced by 1.
    The critical pair on d b a then fails to close (the overlap runs
    through the tail of the d a rule), with that word as witness."""
    rules = _gl_rules(params)
    rules[("c", "b")] = NCPoly(params, {("b", "c"): Scalar.one(params)})
    return Presentation("glpq-corrupted", ["a", "b", "c", "d"], params, rules)


def classical_limit_failures(pres):
    """At q = p = 1 every rule must become the plain (graded) swap: the
    swapped word with coefficient +1, except -1 between two differential
    legs, and nilpotent squares stay zero."""
    odd = {"xi", "eta"}
    point = {name: ONE for name in pres.params}
    failures = []
    for (x, y), rhs in pres.rules.items():
        got = {
            w: c.evaluate(point) for w, c in rhs.terms.items()
        }
        got = {w: c for w, c in got.items() if not c.is_zero()}
        if x == y:
            want = {}
        else:
            sign = GaussRat(-1) if (x in odd and y in odd) else ONE
            want = {(y, x): sign}
        if got != want:
            failures.append(((x, y), got))
    return failures


# -- tensor square of an algebra -----------------------------------------------------


class TensorElement:
    """Element of A (x) B for two presentations: map (word, word) -> Scalar,
    multiplied componentwise and reduced factorwise."""

    def __init__(self, left, right, terms=None):
        self.left = left
        self.right = right
        self.params = left.params
        self.terms = {}
        for (w1, w2), c in (terms or {}).items():
            if not isinstance(c, Scalar):
                c = Scalar.constant(c, self.params)
            if not c.is_zero():
                self.terms[(tuple(w1), tuple(w2))] = c

    @staticmethod
    def of(left, right, poly_left, poly_right):
        out = {}
        for w1, c1 in poly_left.terms.items():
            for w2, c2 in poly_right.terms.items():
                out[(w1, w2)] = c1 * c2
        return TensorElement(left, right, out)

    def add(self, other):
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Scalar.zero(self.params)) + c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return TensorElement(self.left, self.right, terms)

    def scale(self, c):
        return TensorElement(
            self.left, self.right, {k: v * c for k, v in self.terms.items()}
        )

    def sub(self, other):
        return self.add(other.scale(GaussRat(-1)))

    def mul(self, other):
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, Scalar.zero(self.params)) + c1 * c2
                out[key] = s
        return TensorElement(self.left, self.right, out)

    def normal_order(self):
        out = {}
        for (w1, w2), c in self.terms.items():
            for v1, c1 in self.left.reduce_word(w1).items():
                for v2, c2 in self.right.reduce_word(w2).items():
                    key = (v1, v2)
                    s = out.get(key, Scalar.zero(self.params)) + c * c1 * c2
                    out[key] = s
        return TensorElement(self.left, self.right, out)

    def is_zero(self):
        return not self.normal_order().terms

    def __eq__(self, other):
        return self.sub(other).is_zero()

    __hash__ = None


# -- the quantum determinant and the Hopf maps ------------------------------------------


class Localized:
    """P * D^{-k} with the D^-1 power pushed fully to the right."""

    def __init__(self, group, poly, dpow=0):
        if dpow < 0:
            raise ValueError("D-power must be nonnegative")
        self.group = group
        self.poly = group.pres.normal_order(poly)
        self.dpow = dpow

    def mul(self, other):
        shifted = self.group.shift_past_dinv(other.poly, self.dpow)
        return Localized(
            self.group, self.poly * shifted, self.dpow + other.dpow
        )

    def add(self, other):
        m = max(self.dpow, other.dpow)
        return Localized(
            self.group,
            self.group.mul_dpower(self.poly, m - self.dpow)
            + self.group.mul_dpower(other.poly, m - other.dpow),
            m,
        )

    def scale(self, c):
        return Localized(self.group, self.poly * c, self.dpow)

    def sub(self, other):
        return self.add(other.scale(GaussRat(-1)))

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Localized):
            other = Localized(self.group, other, 0)
        return self.sub(other).is_zero()

    __hash__ = None

    def __str__(self):
        if self.dpow == 0:
            return str(self.poly)
        return f"({self.poly}) * D^-{self.dpow}"


class MatrixQuantumGroup:
    """GL_{p,q}(2) (or its p = q specialisation) with quantum determinant,
    localisation and the Hopf maps."""

    # factors for moving D^-1 left past a generator: D^-1 g = factor * g D^-1
    _SHIFT_EXP = {"a": 0, "b": 1, "c": -1, "d": 0}

    def __init__(self, single_parameter=False):
        self.single_parameter = single_parameter
        self.pres = sl_q() if single_parameter else glpq()
        self.params = self.pres.params

    # -- scalars ------------------------------------------------------------

    def q(self, power=1):
        return Scalar.var("q", self.params, power)

    def p(self, power=1):
        """The second parameter; equals q in the single-parameter group."""
        if self.single_parameter:
            return Scalar.var("q", self.params, power)
        return Scalar.var("p", self.params, power)

    def one(self):
        return NCPoly.one(self.params)

    def gen(self, name):
        return self.pres.gen(name)

    def qdet(self):
        """D = ad - p bc."""
        return NCPoly(
            self.params, {("a", "d"): Scalar.one(self.params), ("b", "c"): -self.p()}
        )

    def qdet_alternative(self):
        """The second closed form da - q^-1 bc."""
        return NCPoly(
            self.params,
            {("d", "a"): Scalar.one(self.params), ("b", "c"): -self.q(-1)},
        )

    # -- localisation ---------------------------------------------------------

    def shift_past_dinv(self, poly, k):
        """D^{-k} P = (shifted P) D^{-k}."""
        if k == 0:
            return poly
        ratio = self.q() * self.p(-1)  # D^-1 b = (q/p) b D^-1
        terms = {}
        for word, c in poly.terms.items():
            exp = sum(self._SHIFT_EXP[g] for g in word)
            terms[word] = c * ratio ** (k * exp)
        return NCPoly(self.params, terms)

    def mul_dpower(self, poly, k):
        out = poly
        for _ in range(k):
            out = self.pres.normal_order(out * self.qdet())
        return out

    def localized(self, poly, dpow=0):
        return Localized(self, poly, dpow)

    def dinv(self):
        return Localized(self, self.one(), 1)

    # -- Hopf maps ----------------------------------------------------------------

    _COPRODUCT = {
        "a": ((("a",), ("a",)), (("b",), ("c",))),
        "b": ((("a",), ("b",)), (("b",), ("d",))),
        "c": ((("c",), ("a",)), (("d",), ("c",))),
        "d": ((("c",), ("b",)), (("d",), ("d",))),
    }

    def coproduct(self, poly):
        """Delta extended multiplicatively; lands in A (x) A.  On the
        localised algebra Delta(D^-1) := D^-1 (x) D^-1 componentwise."""
        out = TensorElement(self.pres, self.pres)
        for word, c in poly.terms.items():
            term = TensorElement(
                self.pres, self.pres, {((), ()): Scalar.one(self.params)}
            )
            for g in word:
                gen_image = TensorElement(
                    self.pres,
                    self.pres,
                    {pair: Scalar.one(self.params) for pair in self._COPRODUCT[g]},
                )
                term = term.mul(gen_image)
            out = out.add(term.scale(c))
        return out.normal_order()

    _COUNIT = {"a": 1, "b": 0, "c": 0, "d": 1}

    def counit(self, poly):
        """The algebra map onto scalars with a, d -> 1 and b, c -> 0."""
        total = Scalar.zero(self.params)
        for word, c in poly.terms.items():
            if all(self._COUNIT[g] == 1 for g in word):
                total = total + c
        return total

    def counit_localized(self, loc):
        return self.counit(loc.poly)  # epsilon(D) = 1

    def antipode_gen(self, name):
        table = {
            "a": (self.gen("d"), 1),
            "b": (self.gen("b") * (-self.p(-1)), 1),
            "c": (self.gen("c") * (-self.p()), 1),
            "d": (self.gen("a"), 1),
        }
        poly, dpow = table[name]
        return Localized(self, poly, dpow)

    def antipode(self, poly):
        """The antihomomorphism S with S(M) = D^-1 (d, -q^-1 b; -q c, a)."""
        out = Localized(self, NCPoly.zero(self.params))
        for word, c in poly.terms.items():
            term = Localized(self, self.one())
            for g in reversed(word):
                term = term.mul(self.antipode_gen(g))
            out = out.add(term.scale(c))
        return out

    def antipode_localized(self, loc):
        # S(P D^-k) = D^k S(P)
        return Localized(self, self.mul_dpower(self.one(), loc.dpow)).mul(
            self.antipode(loc.poly)
        )

    def inverse_antipode_gen(self, name):
        """The derived inverse: S^-1(M) = D^-1 (d, -p b; -p^-1 c, a) with
        the power pushed right."""
        table = {
            "a": (self.gen("d"), 1),
            "b": (self.gen("b") * (-self.q()), 1),
            "c": (self.gen("c") * (-self.q(-1)), 1),
            "d": (self.gen("a"), 1),
        }
        poly, dpow = table[name]
        return Localized(self, poly, dpow)

    def candidate_inverse_antipode_gen(self, name):
        """The printed candidate D (a, pq b; (pq)^-1 c, d): kept verbatim so
        its failure to invert S can be exhibited."""
        pq = self.p() * self.q()
        table = {
            "a": self.gen("a"),
            "b": self.gen("b") * pq,
            "c": self.gen("c") * pq.inverse(),
            "d": self.gen("d"),
        }
        poly = self.pres.normal_order(self.qdet() * table[name])
        return Localized(self, poly, 0)

    def generator_matrix(self):
        return [[self.gen("a"), self.gen("b")], [self.gen("c"), self.gen("d")]]

    def antipode_matrix_products(self):
        """(S(M) M, M S(M)) as 2x2 matrices of localised elements."""
        gens = [["a", "b"], ["c", "d"]]
        sm_m = [[None, None], [None, None]]
        m_sm = [[None, None], [None, None]]
        for i in range(2):
            for j in range(2):
                acc1 = Localized(self, NCPoly.zero(self.params))
                acc2 = Localized(self, NCPoly.zero(self.params))
                for k in range(2):
                    acc1 = acc1.add(
                        self.antipode_gen(gens[i][k]).mul(
                            self.localized(self.gen(gens[k][j]))
                        )
                    )
                    acc2 = acc2.add(
                        self.localized(self.gen(gens[i][k])).mul(
                            self.antipode_gen(gens[k][j])
                        )
                    )
                sm_m[i][j] = acc1
                m_sm[i][j] = acc2
        return sm_m, m_sm

    def defining_relations(self):
        """The six relations as polynomials that reduce to zero."""
        pres = self.pres
        rels = []
        for (xg, yg), rhs in pres.rules.items():
            rels.append(NCPoly(self.params, {(xg, yg): Scalar.one(self.params)}) - rhs)
        return rels


# -- covariance of the coaction ------------------------------------------------------


def coacted_plane_relations():
    """x' = a x + b y, y' = c x + d y in the combined two-parameter algebra:
    returns the residuals of x'y' - q y'x' (must vanish)."""
    pres = glpq_with_plane()
    params = pres.params
    xp = pres.gen("a") * pres.gen("x") + pres.gen("b") * pres.gen("y")
    yp = pres.gen("c") * pres.gen("x") + pres.gen("d") * pres.gen("y")
    rel = xp * yp - yp * xp * Scalar.var("q", params)
    return pres.normal_order(rel)


def coacted_differential_relations():
    """xi' = a xi + b eta, eta' = c xi + d eta: residuals of the nilpotency
    and twisted anticommutation, plus xi'eta' - D xi eta."""
    pres = glpq_with_differentials()
    params = pres.params
    xip = pres.gen("a") * pres.gen("xi") + pres.gen("b") * pres.gen("eta")
    etap = pres.gen("c") * pres.gen("xi") + pres.gen("d") * pres.gen("eta")
    p1 = Scalar.var("p", params)
    residuals = {
        "xi-squared": pres.normal_order(xip * xip),
        "eta-squared": pres.normal_order(etap * etap),
        "anticommutation": pres.normal_order(
            xip * etap + etap * xip * p1.inverse()
        ),
    }
    det_terms = NCPoly(
        params,
        {
            ("a", "d", "xi", "eta"): Scalar.one(params),
            ("b", "c", "xi", "eta"): -p1,
        },
    )
    residuals["area-element"] = pres.normal_order(xip * etap - det_terms)
    return residuals


def counit_point_is_identity():
    """At a = d = 1, b = c = 0 the transformation is the identity."""
    pres = glpq_with_plane()
    xp = pres.gen("a") * pres.gen("x") + pres.gen("b") * pres.gen("y")
    # substitute the counit values by word filtering
    filtered = NCPoly(
        pres.params,
        {
            tuple(g for g in w if g not in ("a", "d")): c
            for w, c in xp.terms.items()
            if all(g not in ("b", "c") for g in w)
        },
    )
    return pres.normal_order(filtered) == pres.gen("x")


def coaction_covariance_residuals():
    """Coacted variables in the single-parameter combined algebra satisfy
    the same twisted relations, family by family (RTT covariance)."""
    pres = slq_with_plane_forms()
    params = pres.params
    coords = {1: pres.gen("x"), 2: pres.gen("y")}
    forms = {1: pres.gen("xi"), 2: pres.gen("eta")}
    amat = {
        (1, 1): pres.gen("a"),
        (1, 2): pres.gen("b"),
        (2, 1): pres.gen("c"),
        (2, 2): pres.gen("d"),
    }
    cx = {
        i: sum(
            (amat[(i, k)] * coords[k] for k in (1, 2)), NCPoly.zero(params)
        )
        for i in (1, 2)
    }
    cf = {
        i: sum(
            (amat[(i, k)] * forms[k] for k in (1, 2)), NCPoly.zero(params)
        )
        for i in (1, 2)
    }
    residuals = {}
    for (i, j), name in _rmatrix_component_names():
        residuals[f"xx-{name}"] = pres.normal_order(
            _rtt_family(pres, params, cx, cx, i, j, -1)
        )
        residuals[f"xxi-{name}"] = pres.normal_order(
            _rtt_family(pres, params, cx, cf, i, j, +1)
        )
        residuals[f"xixi-{name}"] = pres.normal_order(
            _rtt_family(pres, params, cf, cf, i, j, +1, plus=True)
        )
    return residuals


def _rmatrix_component_names():
    return [((i, j), f"{i}{j}") for i in (1, 2) for j in (1, 2)]


def rhat_matrix(params=Q):
    """The 4x4 matrix with rows/columns indexed (11, 12, 21, 22)."""
    q1 = Scalar.var("q", params)
    qm1 = Scalar.var("q", params, -1)
    zero = Scalar.zero(params)
    one = Scalar.one(params)
    return ScalarMatrix(
        [
            [q1, zero, zero, zero],
            [zero, q1 - qm1, one, zero],
            [zero, one, zero, zero],
            [zero, zero, zero, q1],
        ]
    )


def _pair_index(i, j):
    return 2 * (i - 1) + (j - 1)


def rhat_entry(params, i, j, k, l):
    return rhat_matrix(params).entries[_pair_index(i, j)][_pair_index(k, l)]


def _rtt_family(pres, params, left, right, i, j, q_power, plus=False):
    """left^i right^j -+ q^{q_power} Rhat^{ij}_{kl} right^k left^l."""
    qs = Scalar.var("q", params, q_power)
    out = pres.normal_order(left[i] * right[j])
    sign = GaussRat(1) if plus else GaussRat(-1)
    for k in (1, 2):
        for l in (1, 2):
            coeff = rhat_entry(params, i, j, k, l)
            if coeff.is_zero():
                continue
            out = out + (right[k] * left[l]) * (coeff * qs * sign)
    return out


def plane_relation_residuals():
    """The three R-matrix relation families on the plane presentation:
    all must reduce to zero (they are exactly the rewrite rules)."""
    pres = plane_forms()
    params = pres.params
    coords = {1: pres.gen("x"), 2: pres.gen("y")}
    forms = {1: pres.gen("xi"), 2: pres.gen("eta")}
    out = {}
    for (i, j), name in _rmatrix_component_names():
        out[f"xx-{name}"] = pres.normal_order(
            _rtt_family(pres, params, coords, coords, i, j, -1)
        )
        out[f"xxi-{name}"] = pres.normal_order(
            _rtt_family(pres, params, coords, forms, i, j, +1)
        )
        out[f"xixi-{name}"] = pres.normal_order(
            _rtt_family(pres, params, forms, forms, i, j, +1, plus=True)
        )
    return out


def rtt_residuals():
    """All 16 components of Rhat a a = a a Rhat in the single-parameter
    group."""
    group = MatrixQuantumGroup(single_parameter=True)
    pres = group.pres
    params = group.params
    amat = {
        (1, 1): pres.gen("a"),
        (1, 2): pres.gen("b"),
        (2, 1): pres.gen("c"),
        (2, 2): pres.gen("d"),
    }
    out = {}
    for i in (1, 2):
        for j in (1, 2):
            for m in (1, 2):
                for n in (1, 2):
                    acc = NCPoly.zero(params)
                    for k in (1, 2):
                        for l in (1, 2):
                            r1 = rhat_entry(params, i, j, k, l)
                            if not r1.is_zero():
                                acc = acc + (amat[(k, m)] * amat[(l, n)]) * r1
                            r2 = rhat_entry(params, k, l, m, n)
                            if not r2.is_zero():
                                acc = acc - (amat[(i, k)] * amat[(j, l)]) * r2
                    out[f"{i}{j}{m}{n}"] = pres.normal_order(acc)
    return out
