"""The permutation operator sigma on 1-form tensors over the quantum plane,
and the covariant derivative with its curvature.

Elements of Omega^1 (x)_A Omega^1 are stored as left-coefficient normal
forms: sums f(x, y) * leg1 (x) leg2 with legs in {xi, eta}.  Moving an
algebra element across the tensor sign ("middle relinearisation") is the
reduction of the plane presentation applied inside the left factor; theta
expressions are expanded the same way.  sigma acts on the leg basis by

    sigma(xi  (x) xi)  = q^-2 xi (x) xi
    sigma(xi  (x) eta) = q^-1 eta (x) xi
    sigma(eta (x) xi)  = q^-1 xi (x) eta - (1 - q^-2) eta (x) xi
    sigma(eta (x) eta) = q^-2 eta (x) eta

and equals the inverse of q Rhat as a 4x4 matrix.

The covariant derivative takes D xi = w x theta (x) theta and
D eta = w y theta (x) theta with the formal coupling w (the inverse fourth
power of the length scale), extends to coefficients by
D(f alpha) = df (x) alpha + f D alpha and to right coefficients by the
twisted rule D(alpha f) = sigma(alpha (x) df) + (D alpha) f.  The curvature
matrix is installed from its closed form

    Omega^i_j = w (1+q^-2)(1+q^-4) (q^2 xy, -q x^2; q^2 y^2, -xy) xi eta

and an independent re-derivation of D^2 via the sigma-twisted prolongation
D(alpha (x) beta) = D alpha (x) beta + (sigma (x) id)(alpha (x) D beta) is
compared against it, projecting the first two legs to the exterior square
(the quotient by the three q^-2 eigenvectors).
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import ScalarMatrix
from .quantum_plane import plane_forms, rhat_matrix
from .rewriting import NCPoly
from .scalars import GaussRat, ONE, Scalar, ZERO

LEGS = ("xi", "eta")
QW = ("q", "linv4")


def connection_params():
    return QW


class PlaneGeometry:
    """The quantum plane calculus with theta, sigma and the connection."""

    def __init__(self, params=("q",)):
        self.params = tuple(params)
        self.pres = plane_forms(self.params)

    # -- scalars and elements ----------------------------------------------

    def q(self, power=1):
        return Scalar.var("q", self.params, power)

    def coupling(self):
        return Scalar.var("linv4", self.params)

    def gen(self, name):
        return self.pres.gen(name)

    def theta(self):
        """theta = x eta - q y xi."""
        return NCPoly(
            self.params,
            {("x", "eta"): Scalar.one(self.params), ("y", "xi"): -self.q()},
        )

    def normal(self, poly):
        return self.pres.normal_order(poly)

    # -- differential on coordinate polynomials ------------------------------

    def d_poly(self, poly):
        """d on polynomials in x, y (words must be free of legs)."""
        out = NCPoly.zero(self.params)
        images = {"x": ("xi",), "y": ("eta",)}
        for word, c in poly.terms.items():
            for i, g in enumerate(word):
                if g not in images:
                    raise ValueError("d_poly expects coordinate words only")
                new_word = word[:i] + images[g] + word[i + 1:]
                out = out + NCPoly(self.params, {new_word: c})
        return self.normal(out)

    # -- tensors ---------------------------------------------------------------

    def tensor(self, left_poly, right_poly):
        """left (x) right with both factors 1-forms; coefficients are moved
        fully to the left through the tensor sign."""
        left_poly = self.normal(left_poly)
        right_poly = self.normal(right_poly)
        out = {}
        for w1, c1 in left_poly.terms.items():
            coeff1, leg1 = self._split_form_word(w1)
            for w2, c2 in right_poly.terms.items():
                coeff2, leg2 = self._split_form_word(w2)
                # move coeff2 across: leg1 * coeff2 reduces to coordinate
                # words followed by a single leg
                moved = self.normal(
                    NCPoly(self.params, {(leg1,) + coeff2: ONE})
                )
                for w3, c3 in moved.terms.items():
                    coeff3, leg3 = self._split_form_word(w3)
                    key = (leg3, leg2)
                    # the concatenated coefficient word may need reordering
                    poly = out.get(key, NCPoly.zero(self.params))
                    out[key] = poly + NCPoly(
                        self.params, {coeff1 + coeff3: c1 * c2 * c3}
                    )
        return TensorForm(
            self,
            {key: self.normal(poly) for key, poly in out.items()},
        )

    def _split_form_word(self, word):
        legs = [g for g in word if g in LEGS]
        if len(legs) != 1:
            raise ValueError(f"word {word} is not a 1-form monomial")
        return tuple(g for g in word if g not in LEGS), legs[0]

    # -- sigma -------------------------------------------------------------------

    def sigma_matrix(self):
        """Columns indexed by source pairs in the order
        (xi xi, xi eta, eta xi, eta eta)."""
        q2i = self.q(-2)
        q1i = self.q(-1)
        zero = Scalar.zero(self.params)
        return ScalarMatrix(
            [
                [q2i, zero, zero, zero],
                [zero, zero, q1i, zero],
                [zero, q1i, q2i - ONE, zero],
                [zero, zero, zero, q2i],
            ]
        )

    def sigma_pair(self, leg1, leg2):
        """sigma(leg1 (x) leg2) as {(leg, leg) -> Scalar}."""
        pairs = [(a, b) for a in LEGS for b in LEGS]
        col = pairs.index((leg1, leg2))
        mat = self.sigma_matrix()
        out = {}
        for row, pair in enumerate(pairs):
            entry = mat.entries[row][col]
            if not entry.is_zero():
                out[pair] = entry
        return out

    def apply_sigma(self, tform):
        out = {}
        for (l1, l2), coeff in tform.terms.items():
            for pair, entry in self.sigma_pair(l1, l2).items():
                acc = out.setdefault(pair, NCPoly.zero(self.params))
                out[pair] = acc + coeff * entry
        return TensorForm(self, out)

    def sigma_times_qrhat_residual(self):
        """sigma (q Rhat) and (q Rhat) sigma minus the identity."""
        qr = rhat_matrix(self.params)
        qmat = ScalarMatrix(
            [[e * self.q() for e in row] for row in qr.entries]
        )
        sig = self.sigma_matrix()
        ident = [
            [
                Scalar.one(self.params) if i == j else Scalar.zero(self.params)
                for j in range(4)
            ]
            for i in range(4)
        ]
        r1 = qmat.mul(sig).sub(ScalarMatrix(ident))
        r2 = sig.mul(qmat).sub(ScalarMatrix(ident))
        return r1, r2

    def sigma_eigenvector_residuals(self):
        """The stated eigenstructure: eigenvalue q^-2 on xi(x)xi, eta(x)eta
        and eta(x)xi + q xi(x)eta; eigenvalue -1 on xi(x)eta - q eta(x)xi."""
        sig = self.sigma_matrix().entries
        pairs = [(a, b) for a in LEGS for b in LEGS]

        def apply(vec):
            return [
                sum((sig[i][j] * vec[j] for j in range(4)), Scalar.zero(self.params))
                for i in range(4)
            ]

        zero = Scalar.zero(self.params)
        one = Scalar.one(self.params)
        cases = {
            "xi-xi": ([one, zero, zero, zero], self.q(-2)),
            "eta-eta": ([zero, zero, zero, one], self.q(-2)),
            "symmetric-mix": ([zero, self.q(), one, zero], self.q(-2)),
            "area": ([zero, one, -self.q(), zero], -one),
        }
        out = {}
        for name, (vec, eig) in cases.items():
            image = apply(vec)
            out[name] = [a - eig * b for a, b in zip(image, vec)]
        return out

    # -- covariant derivative --------------------------------------------------------

    def d_leg(self, leg):
        """D xi = w x theta (x) theta, D eta = w y theta (x) theta."""
        coord = {"xi": "x", "eta": "y"}[leg]
        base = self.tensor(self.theta(), self.theta())
        return base.left_mul(
            NCPoly(self.params, {(coord,): self.coupling()})
        )

    def covariant_derivative(self, poly):
        """D on a 1-form by the left Leibniz rule
        D(f alpha) = df (x) alpha + f D alpha."""
        poly = self.normal(poly)
        out = TensorForm(self, {})
        for word, c in poly.terms.items():
            coeff, leg = self._split_form_word(word)
            coeff_poly = NCPoly(self.params, {coeff: c})
            leg_poly = NCPoly(self.params, {(leg,): ONE})
            if coeff:
                out = out.add(self.tensor(self.d_poly(coeff_poly), leg_poly))
                out = out.add(self.d_leg(leg).left_mul(coeff_poly))
            else:
                out = out.add(self.d_leg(leg).left_mul(coeff_poly))
        return out

    def covariant_derivative_right(self, leg, f):
        """D(alpha f) by the twisted rule sigma(alpha (x) df) + (D alpha) f."""
        leg_poly = NCPoly(self.params, {(leg,): ONE})
        twisted = self.apply_sigma(self.tensor(leg_poly, self.d_poly(f)))
        return twisted.add(self.d_leg(leg).right_mul(f))

    # -- curvature --------------------------------------------------------------------

    def curvature_prefactor(self):
        """(1 + q^-2)(1 + q^-4)."""
        one = Scalar.one(self.params)
        return (one + self.q(-2)) * (one + self.q(-4))

    def curvature_matrix(self):
        """Omega^i_j: coefficients of the 2-form class xi eta."""
        pf = self.curvature_prefactor() * self.coupling()
        q2 = self.q(2)
        entries = {
            (0, 0): NCPoly(self.params, {("x", "y"): pf * q2}),
            (0, 1): NCPoly(self.params, {("x", "x"): -pf * self.q()}),
            (1, 0): NCPoly(self.params, {("y", "y"): pf * q2}),
            (1, 1): NCPoly(self.params, {("x", "y"): -pf}),
        }
        return entries

    def curvature_data_tensor(self, k):
        """-Omega^k_j (x) xi^j as a projected 3-tensor {leg -> NCPoly of the
        xi-eta class coefficient}."""
        mat = self.curvature_matrix()
        return {
            "xi": mat[(k, 0)] * GaussRat(-1),
            "eta": mat[(k, 1)] * GaussRat(-1),
        }

    def second_derivative_projected(self, leg):
        """D^2 on a basis leg via the sigma-twisted prolongation, with the
        first two legs projected to the exterior square."""
        t3 = self._prolonged_derivative(self.d_leg(leg))
        return t3.project_first_pair()

    def _prolonged_derivative(self, tform):
        """D(alpha (x) beta) = D alpha (x) beta
        + (sigma (x) id)(alpha (x) D beta), including d on coefficients."""
        out = TensorForm3(self, {})
        for (l1, l2), coeff in tform.terms.items():
            l1p = NCPoly(self.params, {(l1,): ONE})
            l2p = NCPoly(self.params, {(l2,): ONE})
            # d(coefficient) (x) l1 (x) l2
            for word, c in coeff.terms.items():
                if word:
                    dc = self.d_poly(NCPoly(self.params, {word: c}))
                    out = out.add(TensorForm3.from_form_pair(self, dc, l1, l2))
                # coefficient * D(l1) (x) l2
                head = NCPoly(self.params, {word: c})
                out = out.add(
                    TensorForm3.from_tensor_leg(
                        self, self.d_leg(l1).left_mul(head), l2
                    )
                )
                # coefficient * (sigma (x) id)(l1 (x) D(l2))
                out = out.add(
                    TensorForm3.from_leg_tensor(
                        self, head, l1, self.d_leg(l2)
                    ).sigma_first_pair()
                )
        return out


class TensorForm:
    """Sum of f(x,y) * leg1 (x) leg2 in left-coefficient normal form."""

    def __init__(self, geom, terms):
        self.geom = geom
        self.terms = {
            key: poly for key, poly in terms.items() if not poly.is_zero()
        }

    def add(self, other):
        terms = dict(self.terms)
        for key, poly in other.terms.items():
            acc = terms.get(key, NCPoly.zero(self.geom.params)) + poly
            if acc.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = acc
        return TensorForm(self.geom, terms)

    def scale(self, c):
        return TensorForm(
            self.geom, {k: p * c for k, p in self.terms.items()}
        )

    def sub(self, other):
        return self.add(other.scale(GaussRat(-1)))

    def left_mul(self, poly):
        return TensorForm(
            self.geom,
            {
                key: self.geom.normal(poly * p)
                for key, p in self.terms.items()
            },
        )

    def right_mul(self, f):
        """(coeff l1 (x) l2) f: move f into the second leg and relinearise."""
        geom = self.geom
        out = TensorForm(geom, {})
        for (l1, l2), coeff in self.terms.items():
            moved = geom.normal(NCPoly(geom.params, {(l2,): ONE}) * f)
            for w2, c2 in moved.terms.items():
                c2w, leg2 = geom._split_form_word(w2)
                inner = geom.normal(
                    NCPoly(geom.params, {(l1,) + c2w: c2})
                )
                for w3, c3 in inner.terms.items():
                    c3w, leg1 = geom._split_form_word(w3)
                    poly = NCPoly(geom.params, {c3w: c3})
                    out = out.add(
                        TensorForm(
                            geom,
                            {(leg1, leg2): geom.normal(coeff * poly)},
                        )
                    )
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.sub(other).is_zero()

    __hash__ = None

    def render(self):
        parts = []
        for (l1, l2), poly in sorted(self.terms.items()):
            parts.append(f"({poly}) {l1}(x){l2}")
        return " + ".join(parts) if parts else "0"


class TensorForm3:
    """Sum of f(x,y) * leg1 (x) leg2 (x) leg3."""

    def __init__(self, geom, terms):
        self.geom = geom
        self.terms = {
            key: poly for key, poly in terms.items() if not poly.is_zero()
        }

    @staticmethod
    def from_form_pair(geom, form_poly, l1, l2):
        """(1-form) (x) l1 (x) l2."""
        out = {}
        for word, c in form_poly.terms.items():
            coeff, leg0 = geom._split_form_word(word)
            key = (leg0, l1, l2)
            acc = out.get(key, NCPoly.zero(geom.params))
            out[key] = acc + NCPoly(geom.params, {coeff: c})
        return TensorForm3(geom, out)

    @staticmethod
    def from_tensor_leg(geom, tform, l3):
        return TensorForm3(
            geom,
            {(l1, l2, l3): poly for (l1, l2), poly in tform.terms.items()},
        )

    @staticmethod
    def from_leg_tensor(geom, head, l1, tform):
        """head * l1 (x) (tensor): coefficients of the tensor cross l1."""
        out = {}
        for (m1, m2), coeff in tform.terms.items():
            for word, c in coeff.terms.items():
                moved = geom.normal(
                    NCPoly(geom.params, {(l1,) + word: c})
                )
                for w2, c2 in moved.terms.items():
                    cw, leg1 = geom._split_form_word(w2)
                    key = (leg1, m1, m2)
                    acc = out.get(key, NCPoly.zero(geom.params))
                    out[key] = acc + geom.normal(
                        head * NCPoly(geom.params, {cw: c2})
                    )
        return TensorForm3(geom, out)

    def add(self, other):
        terms = dict(self.terms)
        for key, poly in other.terms.items():
            acc = terms.get(key, NCPoly.zero(self.geom.params)) + poly
            if acc.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = acc
        return TensorForm3(self.geom, terms)

    def sigma_first_pair(self):
        geom = self.geom
        out = {}
        for (l1, l2, l3), coeff in self.terms.items():
            for (p1, p2), entry in geom.sigma_pair(l1, l2).items():
                key = (p1, p2, l3)
                acc = out.get(key, NCPoly.zero(geom.params))
                out[key] = acc + coeff * entry
        return TensorForm3(geom, out)

    def project_first_pair(self):
        """Quotient the first two legs by the three q^-2 eigenvectors: the
        classes are [xi (x) eta] =: xi-eta and [eta (x) xi] = -q [xi (x) eta];
        [xi (x) xi] = [eta (x) eta] = 0.  Returns {leg3 -> coefficient}."""
        geom = self.geom
        out = {}
        for (l1, l2, l3), coeff in self.terms.items():
            if l1 == l2:
                continue
            factor = ONE if (l1, l2) == ("xi", "eta") else -geom.q()
            acc = out.get(l3, NCPoly.zero(geom.params))
            acc = acc + coeff * factor
            if acc.is_zero():
                out.pop(l3, None)
            else:
                out[l3] = acc
        return out
