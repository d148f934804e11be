"""Derivation-based differential calculus over the matrix algebra M_n(C).

Conventions, fixed once for the whole package:

* basis: n^2 - 1 hermitian traceless matrices E_k (default: unnormalised
  generalised Gell-Mann set; symmetric pairs, then antisymmetric pairs with
  entries +-i, then diagonals diag(1,-1,0,..), diag(1,1,-2,0,..), ...),
* derivations: the inner derivations del_k f = i[E_k, f],
* structure constants: i[E_k, E_m] = C_km^l E_l, real, antisymmetric and
  trace-free in the lower pair; with them [del_k, del_m] = C_km^l del_l,
* products E_k E_m = (t_km/n) 1 + S_km^j E_j - (i/2) C_km^j E_j, where
  t_km = Tr(E_k E_m) is the trace Gram matrix and the Killing matrix is
  g_km = C_kl^p C_pm^l (equal to 2n * t_km for the default basis; the
  proportionality factor is computed and recorded, never assumed),
* p-forms: antisymmetric multilinear maps on derivations with matrix values,
  stored on strictly increasing index tuples; the stored component IS the
  evaluation on the corresponding basis derivations (determinant convention,
  no 1/p! factors), and coefficients act from the left,
* d: the Koszul formula, so df(X) = Xf on matrices and
  d theta^k = -(1/2) C_ml^k theta^m theta^l exactly.

With these choices the Maurer-Cartan identity d theta + theta wedge theta = 0
holds for theta = -i Sum E_k theta^k (equivalently - Sum lambda_k theta^k in
the antihermitian basis lambda_k = i E_k), returned by
:func:`canonical_theta`.  The i-free combination Sum E_k theta^k, returned by
:func:`hermitian_theta`, is the one whose differential gives the symplectic
structure with Poisson bracket {f, g} = i[f, g]; a single scalar multiple
cannot satisfy both normalisations at once, so the two canonical objects are
kept side by side.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .linalg import (
    ScalarMatrix,
    levi_civita,
    m_is_zero,
    madd,
    mcomm,
    mdagger,
    meq,
    merge_sign,
    mident,
    mmul,
    mscale,
    msub,
    mtrace,
    mzero,
    solve_linear,
    sort_with_sign,
)
from .scalars import GaussRat, I, ONE, ZERO


def default_basis(n):
    """Unnormalised generalised Gell-Mann basis; Pauli matrices for n = 2."""
    basis = []
    pairs = list(combinations(range(n), 2))
    for a, b in pairs:  # symmetric off-diagonal
        m = [[ZERO] * n for _ in range(n)]
        m[a][b] = ONE
        m[b][a] = ONE
        basis.append(tuple(tuple(r) for r in m))
    for a, b in pairs:  # antisymmetric off-diagonal, entries +-i
        m = [[ZERO] * n for _ in range(n)]
        m[a][b] = -I
        m[b][a] = I
        basis.append(tuple(tuple(r) for r in m))
    for l in range(1, n):  # diagonal: l ones followed by -l
        m = [[ZERO] * n for _ in range(n)]
        for j in range(l):
            m[j][j] = ONE
        m[l][l] = GaussRat(-l)
        basis.append(tuple(tuple(r) for r in m))
    return basis


class MatrixAlgebra:
    """M_n(C) with a hermitian traceless basis and its derived structure data."""

    def __init__(self, n, basis=None):
        if n < 2:
            raise ValueError("matrix geometry needs n >= 2")
        self.n = n
        self.dim = n * n - 1
        self.basis = list(basis) if basis is not None else default_basis(n)
        if len(self.basis) != self.dim:
            raise ValueError(f"basis must have {self.dim} elements")
        self.ident = mident(n)
        self.zero = mzero(n)
        self._verify_basis()
        self.t = [
            [self._trace_rat(mmul(self.basis[k], self.basis[m])) for m in range(self.dim)]
            for k in range(self.dim)
        ]
        self.t_diagonal = all(
            self.t[k][m] == 0
            for k in range(self.dim)
            for m in range(self.dim)
            if k != m
        )
        self._decompose_products()
        self.g = [
            [
                sum(
                    (
                        self.C.get((k, l), {}).get(p, Fraction(0))
                        * self.C.get((p, m), {}).get(l, Fraction(0))
                        for l in range(self.dim)
                        for p in range(self.dim)
                    ),
                    Fraction(0),
                )
                for m in range(self.dim)
            ]
            for k in range(self.dim)
        ]
        self.t_g_ratio = self._proportionality(self.g, self.t)

    # -- construction internals ---------------------------------------------

    def _trace_rat(self, m):
        tr = mtrace(m)
        if tr.im != 0:
            raise ValueError("trace pairing of a hermitian basis must be real")
        return tr.re

    def _verify_basis(self):
        flat = []
        for e in self.basis:
            if len(e) != self.n or any(len(r) != self.n for r in e):
                raise ValueError("basis matrices must be n x n")
            if not meq(mdagger(e), e):
                raise ValueError("basis matrices must be hermitian")
            if not mtrace(e).is_zero():
                raise ValueError("basis matrices must be traceless")
            flat.append([e[i][j] for i in range(self.n) for j in range(self.n)])
        # linear independence over the Gaussian rationals
        mat = ScalarMatrix([[flat[b][e] for b in range(self.dim)] for e in range(self.n * self.n)])
        if len(mat.kernel_basis()) != 0:
            raise ValueError("basis matrices are linearly dependent")
        self._decomp_matrix = ScalarMatrix(
            [
                [self.ident[i][j]] + [self.basis[b][i][j] for b in range(self.dim)]
                for i in range(self.n)
                for j in range(self.n)
            ]
        )

    def decompose(self, mat):
        """Exact coefficients (beta, [f^1 .. f^N]) with mat = beta 1 + f^a E_a."""
        rhs = [mat[i][j] for i in range(self.n) for j in range(self.n)]
        sol = self._decomp_matrix.solve(rhs)
        if sol is None:
            raise ValueError("matrix is not in the span of 1 and the basis")
        return sol[0], sol[1:]

    def _decompose_products(self):
        self.C = {}
        self.S = {}
        for k in range(self.dim):
            for m in range(self.dim):
                beta, coeffs = self.decompose(mmul(self.basis[k], self.basis[m]))
                expected = Fraction(self.t[k][m], self.n)
                if beta != GaussRat(expected):
                    raise ValueError("identity component disagrees with trace Gram")
                crow = {}
                srow = {}
                for j, c in enumerate(coeffs):
                    # coefficient = S_km^j - (i/2) C_km^j with both real
                    if c.re != 0:
                        srow[j] = c.re
                    if c.im != 0:
                        crow[j] = -2 * c.im
                if crow:
                    self.C[(k, m)] = crow
                if srow:
                    self.S[(k, m)] = srow
        # structural invariants of the decomposition
        for k in range(self.dim):
            for m in range(self.dim):
                crow = self.C.get((k, m), {})
                crow_t = self.C.get((m, k), {})
                if {j: -v for j, v in crow.items()} != crow_t:
                    raise ValueError("C is not antisymmetric")
                srow = self.S.get((k, m), {})
                if srow != self.S.get((m, k), {}):
                    raise ValueError("S is not symmetric")
        # trace conditions (contractions over the repeated index)
        for m in range(self.dim):
            c_tr = sum(
                (self.C.get((k, m), {}).get(k, Fraction(0)) for k in range(self.dim)),
                Fraction(0),
            )
            s_tr = sum(
                (self.S.get((k, m), {}).get(k, Fraction(0)) for k in range(self.dim)),
                Fraction(0),
            )
            if c_tr != 0:
                raise ValueError("contraction C_km^k must vanish")
            if s_tr != 0:
                raise ValueError("contraction S_km^k must vanish")

    @staticmethod
    def _proportionality(a, b):
        """Exact ratio r with a == r * b, or None."""
        ratio = None
        for ra, rb in zip(a, b):
            for x, y in zip(ra, rb):
                if y == 0:
                    if x != 0:
                        return None
                    continue
                r = Fraction(x, 1) / y
                if ratio is None:
                    ratio = r
                elif ratio != r:
                    return None
        return ratio

    # -- structure data accessors -------------------------------------------

    def structure_constant(self, k, m, l):
        return self.C.get((k, m), {}).get(l, Fraction(0))

    def s_coefficient(self, k, m, j):
        return self.S.get((k, m), {}).get(j, Fraction(0))

    def c_row(self, k, m):
        return self.C.get((k, m), {})

    # -- derivations ---------------------------------------------------------

    def del_k(self, k, mat):
        """del_k mat = i [E_k, mat]."""
        return mscale(I, mcomm(self.basis[k], mat))

    def basis_derivation(self, k):
        comps = [self.zero] * self.dim
        comps[k] = self.ident
        return Derivation(self, comps)

    def commutator_oracle(self, k, m):
        """i[E_k, E_m] by direct matrix arithmetic (structure-free path)."""
        return mscale(I, mcomm(self.basis[k], self.basis[m]))

    # -- serialisation --------------------------------------------------------

    @staticmethod
    def from_json(path_or_dict):
        """Load {"n": int, "basis": [[[re, im], ...], ...]} with "p/q" strings."""
        if isinstance(path_or_dict, (str,)):
            with open(path_or_dict) as fh:
                data = json.load(fh)
        else:
            data = path_or_dict

        def num(v):
            return Fraction(v) if isinstance(v, str) else Fraction(v)

        basis = []
        for mat in data["basis"]:
            basis.append(
                tuple(
                    tuple(GaussRat(num(e[0]), num(e[1])) for e in row)
                    for row in mat
                )
            )
        return MatrixAlgebra(int(data["n"]), basis)


class Derivation:
    """Vector field Sum f^k del_k with matrix coefficients f^k (acting from
    the left).  Coefficients make this a module element, not a derivation;
    the Leibniz defect of such elements is exhibited by tests."""

    def __init__(self, alg, components):
        self.alg = alg
        self.components = list(components)

    def act(self, mat):
        out = self.alg.zero
        for k, f in enumerate(self.components):
            if m_is_zero(f):
                continue
            out = madd(out, mmul(f, self.alg.del_k(k, mat)))
        return out

    def bracket(self, other):
        """Lie bracket of scalar-coefficient (constant) derivations."""
        alg = self.alg
        comps = [alg.zero] * alg.dim
        for k, f in enumerate(self.components):
            for m, g in enumerate(other.components):
                if m_is_zero(f) or m_is_zero(g):
                    continue
                fg = mmul(f, g)
                for l, c in alg.c_row(k, m).items():
                    comps[l] = madd(comps[l], mscale(GaussRat(c), fg))
        return Derivation(alg, comps)


class MatForm:
    """Differential p-form with n x n matrix coefficients over GaussRat."""

    def __init__(self, alg, degree, comps=None):
        self.alg = alg
        self.degree = degree
        self.comps = {}
        for idx, mat in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"component index {idx} not strictly increasing")
            if not m_is_zero(mat):
                self.comps[idx] = mat

    # -- basics ---------------------------------------------------------------

    @staticmethod
    def zero_form(alg, degree):
        return MatForm(alg, degree)

    @staticmethod
    def from_matrix(alg, mat):
        return MatForm(alg, 0, {(): mat})

    @staticmethod
    def theta(alg, k):
        return MatForm(alg, 1, {(k,): alg.ident})

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return (
            isinstance(other, MatForm)
            and self.degree == other.degree
            and self.sub(other).is_zero()
        )

    __hash__ = None

    def add(self, other):
        if other.degree != self.degree:
            raise ValueError("degree mismatch in form addition")
        comps = dict(self.comps)
        for idx, mat in other.comps.items():
            comps[idx] = madd(comps.get(idx, self.alg.zero), mat)
        return MatForm(self.alg, self.degree, comps)

    def sub(self, other):
        return self.add(other.scale(GaussRat(-1)))

    def scale(self, c):
        """Scalar multiple (GaussRat) of the form."""
        return MatForm(
            self.alg,
            self.degree,
            {idx: mscale(GaussRat.of(c), m) for idx, m in self.comps.items()},
        )

    def left_mul(self, mat):
        """Left module action f * omega."""
        return MatForm(
            self.alg,
            self.degree,
            {idx: mmul(mat, m) for idx, m in self.comps.items()},
        )

    def right_mul(self, mat):
        return MatForm(
            self.alg,
            self.degree,
            {idx: mmul(m, mat) for idx, m in self.comps.items()},
        )

    def evaluate(self, indices):
        """Evaluation on basis derivations del_{i1}, ..., del_{ip}."""
        if all(indices[i] < indices[i + 1] for i in range(len(indices) - 1)):
            return self.comps.get(tuple(indices), self.alg.zero)
        key, sign = sort_with_sign(indices)
        if sign == 0:
            return self.alg.zero
        mat = self.comps.get(key)
        if mat is None:
            return self.alg.zero
        return mat if sign == 1 else mscale(GaussRat(-1), mat)

    # -- operations -------------------------------------------------------------

    def wedge(self, other):
        alg = self.alg
        degree = self.degree + other.degree
        if degree > alg.dim:
            return MatForm(alg, min(degree, alg.dim))
        comps = {}
        for i1, m1 in self.comps.items():
            for i2, m2 in other.comps.items():
                merged, sign = merge_sign(i1, i2)
                if sign == 0:
                    continue
                term = mmul(m1, m2)
                if sign == -1:
                    term = mscale(GaussRat(-1), term)
                comps[merged] = madd(comps.get(merged, alg.zero), term)
        return MatForm(alg, degree, comps)

    def d(self):
        """Exterior differential (Koszul formula)."""
        alg = self.alg
        p = self.degree
        if p >= alg.dim:
            raise ValueError("cannot apply d to a top-degree form")
        if p == 0:
            mat = self.comps.get((), alg.zero)
            comps = {}
            for a in range(alg.dim):
                da = alg.del_k(a, mat)
                if not m_is_zero(da):
                    comps[(a,)] = da
            return MatForm(alg, 1, comps)

        candidates = set()
        for key in self.comps:
            for a in range(alg.dim):
                if a not in key:
                    candidates.add(tuple(sorted(key + (a,))))
            for l in key:
                rest = tuple(x for x in key if x != l)
                for (a, b), row in alg.C.items():
                    if a < b and l in row and a not in rest and b not in rest:
                        candidates.add(tuple(sorted(rest + (a, b))))
        comps = {}
        for target in candidates:
            acc = alg.zero
            for t, jt in enumerate(target):
                rest = target[:t] + target[t + 1:]
                val = alg.del_k(jt, self.evaluate(rest))
                if t % 2 == 1:
                    val = mscale(GaussRat(-1), val)
                acc = madd(acc, val)
            for s in range(len(target)):
                for t in range(s + 1, len(target)):
                    row = alg.c_row(target[s], target[t])
                    if not row:
                        continue
                    rest = tuple(
                        x for r, x in enumerate(target) if r != s and r != t
                    )
                    sign = (-1) ** (s + t)
                    for l, c in row.items():
                        val = self.evaluate((l,) + rest)
                        if m_is_zero(val):
                            continue
                        acc = madd(acc, mscale(GaussRat(sign * c), val))
            if not m_is_zero(acc):
                comps[target] = acc
        return MatForm(alg, p + 1, comps)

    def interior(self, X):
        """i_X omega for a Derivation X (degree must be >= 1)."""
        if self.degree == 0:
            raise ValueError("interior product of a 0-form")
        alg = self.alg
        comps = {}
        for idx in {key[1:] for key in self.comps} | {
            tuple(x for i, x in enumerate(key) if i != pos)
            for key in self.comps
            for pos in range(len(key))
        }:
            acc = alg.zero
            for k, f in enumerate(X.components):
                if m_is_zero(f):
                    continue
                val = self.evaluate((k,) + idx)
                if m_is_zero(val):
                    continue
                acc = madd(acc, mmul(f, val))
            if not m_is_zero(acc):
                comps[idx] = acc
        return MatForm(alg, self.degree - 1, comps)

    def lie(self, X, dform=None):
        """Cartan formula L_X = i_X d + d i_X.

        ``dform`` may carry a precomputed differential of self so that
        sweeps over many vector fields share it.
        """
        terms = []
        if self.degree < self.alg.dim:
            if dform is None:
                dform = self.d()
            terms.append(dform.interior(X))
        if self.degree > 0:
            terms.append(self.interior(X).d())
        out = terms[0]
        for t in terms[1:]:
            out = out.add(t)
        return out

    def lie_along_basis(self):
        """[L_{del_k} self for all k], sharing one differential computation."""
        dform = self.d() if self.degree < self.alg.dim else None
        return [
            self.lie(self.alg.basis_derivation(k), dform=dform)
            for k in range(self.alg.dim)
        ]

    def hermitian(self):
        return all(meq(mdagger(m), m) for m in self.comps.values())


# -- canonical objects ---------------------------------------------------------


def canonical_theta(alg):
    """The canonical 1-form normalised so that d theta + theta^2 = 0 exactly:
    components -i E_k (equivalently -lambda_k in the antihermitian basis)."""
    return MatForm(
        alg,
        1,
        {(k,): mscale(-I, alg.basis[k]) for k in range(alg.dim)},
    )


def hermitian_theta(alg):
    """The hermitian combination Sum E_k theta^k; its differential is the
    symplectic 2-form whose Poisson bracket returns i[f, g]."""
    return MatForm(alg, 1, {(k,): alg.basis[k] for k in range(alg.dim)})


def maurer_cartan_residual(alg, theta=None):
    theta = theta if theta is not None else canonical_theta(alg)
    return theta.d().add(theta.wedge(theta))


def theta_structure_residuals(alg):
    """Residuals of d theta^k + (1/2) C_ml^k theta^m theta^l for every k."""
    out = []
    for k in range(alg.dim):
        form = MatForm.theta(alg, k).d()
        corr = {}
        for (m, l), row in alg.C.items():
            if m < l and k in row:
                # full-sum convention: coefficient on the increasing pair
                corr[(m, l)] = mscale(GaussRat(row[k]), alg.ident)
        form = form.add(MatForm(alg, 2, corr))
        out.append(form)
    return out


class SymplecticStructure:
    """Omega = d(hermitian theta), Hamiltonian fields and the Poisson bracket.

    Nondegeneracy is checked exactly: the stacked system x^k C_km^l = 0 must
    have kernel 0 (equivalently det g != 0); a degenerate pairing raises.
    """

    def __init__(self, alg):
        self.alg = alg
        self.omega = hermitian_theta(alg).d()
        rows = []
        for m in range(alg.dim):
            for l in range(alg.dim):
                rows.append(
                    [
                        GaussRat(alg.structure_constant(k, m, l))
                        for k in range(alg.dim)
                    ]
                )
        res = solve_linear(ScalarMatrix(rows))
        self.nondegenerate = res["kernel_dim"] == 0
        if not self.nondegenerate:
            raise ValueError(
                "symplectic pairing is degenerate for this basis; "
                f"kernel dimension {res['kernel_dim']}"
            )

    def hamiltonian(self, mat):
        """Ham_f with Omega(Ham_f, X) = Xf; components are scalar multiples
        of the identity."""
        alg = self.alg
        _, coeffs = alg.decompose(mat)
        comps = [
            mscale(-coeffs[k], alg.ident) for k in range(alg.dim)
        ]
        return Derivation(alg, comps)

    def evaluate(self, X, Y):
        """Omega(X, Y) with left-multiplied coefficients."""
        alg = self.alg
        out = alg.zero
        for k, f in enumerate(X.components):
            if m_is_zero(f):
                continue
            for m, g in enumerate(Y.components):
                if m_is_zero(g):
                    continue
                val = self.omega.evaluate((k, m))
                if m_is_zero(val):
                    continue
                out = madd(out, mmul(mmul(f, g), val))
        return out

    def poisson(self, f, g):
        """{f, g} = Omega(Ham_f, Ham_g), evaluated through the form."""
        return self.evaluate(self.hamiltonian(f), self.hamiltonian(g))


class HodgeStructure:
    """Hodge star, integration and the induced scalar product.

    The metric on theta-indices is the trace Gram t (must be diagonal for
    this path; a non-diagonal user metric is reported as an error).  The
    volume form eta has coefficient 1, so star star = +- (prod_k 1/t_kk) id;
    the factor is recorded, not normalised away.
    """

    def __init__(self, alg):
        self.alg = alg
        if not alg.t_diagonal:
            raise ValueError(
                "Hodge star with the default path needs a diagonal trace Gram; "
                "user bases with non-diagonal t are not supported here"
            )
        self.inv_t = [Fraction(1) / alg.t[k][k] for k in range(alg.dim)]

    def volume_form(self):
        return MatForm(
            self.alg, self.alg.dim, {tuple(range(self.alg.dim)): self.alg.ident}
        )

    def star(self, form):
        alg = self.alg
        comps = {}
        for idx, mat in form.comps.items():
            comp = tuple(sorted(set(range(alg.dim)) - set(idx)))
            sign = levi_civita(idx + comp)
            coeff = GaussRat(sign)
            for k in idx:
                coeff = coeff * GaussRat(self.inv_t[k])
            target = comps.get(comp, alg.zero)
            comps[comp] = madd(target, mscale(coeff, mat))
        return MatForm(alg, alg.dim - form.degree, comps)

    def integrate(self, form):
        """Integral of a top form: the trace of its eta-coefficient."""
        if form.degree != self.alg.dim:
            raise ValueError("only top-degree forms are integrated")
        top = form.comps.get(tuple(range(self.alg.dim)))
        return mtrace(top) if top is not None else ZERO

    def inner(self, alpha, beta):
        """(alpha, beta) = integral of alpha wedge star beta."""
        if alpha.degree != beta.degree:
            raise ValueError("scalar product needs equal degrees")
        return self.integrate(alpha.wedge(self.star(beta)))

    def star_square_factor(self, p):
        """star star on p-forms = sign * (prod_k 1/t_kk) * id; returns the
        exact factor."""
        sign = (-1) ** (p * (self.alg.dim - p))
        factor = Fraction(sign)
        for k in range(self.alg.dim):
            factor *= self.inv_t[k]
        return factor


def leibniz_defect(X, f, g):
    """X(fg) - X(f) g - f X(g) for a module-coefficient vector field X."""
    fg = mmul(f, g)
    return msub(
        X.act(fg),
        madd(mmul(X.act(f), g), mmul(f, X.act(g))),
    )
