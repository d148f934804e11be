"""Small exact linear algebra over Gaussian rationals, plus numeric eigenvalues.

Two layers:

* plain matrix helpers (``mmul``, ``mcomm``, ...) on tuples of tuples whose
  entries are any ring elements sharing +, -, * (GaussRat or Scalar); these
  back the differential-form coefficients,
* :class:`ScalarMatrix` with exact row reduction, kernel computation and a
  numeric symmetric-eigenvalue path (the only place floats appear).
"""

from __future__ import annotations

import numpy as np

from .scalars import GaussRat, ONE, ZERO


def levi_civita(indices):
    """Sign of the permutation ``indices`` (0 on a repeated index)."""
    idx = list(indices)
    n = len(idx)
    if len(set(idx)) != n:
        return 0
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def merge_sign(left, right):
    """Sorted merge of two strictly increasing index tuples with the sign of
    the interleaving permutation; returns (None, 0) on a common index."""
    if set(left) & set(right):
        return None, 0
    merged = tuple(sorted(left + right))
    perm = left + right
    sign = 1
    items = list(perm)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return merged, sign


def sort_with_sign(indices):
    """(sorted tuple, permutation sign), sign 0 when an index repeats."""
    sign = levi_civita(indices)
    if sign == 0:
        return None, 0
    return tuple(sorted(indices)), sign


# -- plain matrix helpers ----------------------------------------------------


def mzero(n, zero=ZERO):
    return tuple(tuple(zero for _ in range(n)) for _ in range(n))


def mident(n, one=ONE, zero=ZERO):
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def madd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def msub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mscale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mmul(a, b):
    bt = tuple(zip(*b))
    zero = None
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    if zero is None:
                        zero = x * y
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            if acc is None:
                if zero is None:
                    zero = row[0] * col[0]
                acc = zero
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mcomm(a, b):
    return msub(mmul(a, b), mmul(b, a))


def mtrace(a):
    acc = None
    for i, row in enumerate(a):
        acc = row[i] if acc is None else acc + row[i]
    return acc


def mdagger(a):
    """Conjugate transpose for GaussRat entries."""
    return tuple(
        tuple(a[j][i].conjugate() for j in range(len(a)))
        for i in range(len(a[0]))
    )


def m_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def meq(a, b):
    return m_is_zero(msub(a, b))


# -- exact matrices ----------------------------------------------------------


class ScalarMatrix:
    """Rectangular matrix; exact methods require GaussRat entries."""

    def __init__(self, entries):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        if any(len(r) != self.cols for r in self.entries):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n):
        return ScalarMatrix(
            [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(rows, cols):
        return ScalarMatrix([[ZERO] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def mul(self, other):
        return ScalarMatrix(mmul(self.entries, other.entries))

    def sub(self, other):
        return ScalarMatrix(msub(self.entries, other.entries))

    def is_zero(self):
        return all(x.is_zero() for row in self.entries for x in row)

    def rref(self):
        """(reduced echelon form, pivot columns); exact division."""
        m = [row[:] for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = next(
                (i for i in range(r, self.rows) if not m[i][c].is_zero()), None
            )
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            inv = ONE / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return ScalarMatrix(m), pivots

    def kernel_basis(self):
        """Exact basis of the right null space."""
        red, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            vec = [ZERO] * self.cols
            vec[fc] = ONE
            for r, pc in enumerate(pivots):
                vec[pc] = -red.entries[r][fc]
            basis.append(vec)
        return basis

    def solve(self, rhs):
        """One exact solution of self @ x = rhs (a column vector) or None."""
        aug = ScalarMatrix(
            [row + [b] for row, b in zip(self.entries, rhs)]
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            return None
        x = [ZERO] * self.cols
        for r, pc in enumerate(pivots):
            x[pc] = red.entries[r][self.cols]
        return x

    def det(self):
        """Exact determinant of a square matrix (fraction-free elimination
        would be overkill at these sizes; straightforward elimination)."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [row[:] for row in self.entries]
        det = ONE
        for c in range(self.cols):
            pivot = next(
                (i for i in range(c, self.rows) if not m[i][c].is_zero()), None
            )
            if pivot is None:
                return ZERO
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det = det * m[c][c]
            inv = ONE / m[c][c]
            for i in range(c + 1, self.rows):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det


def solve_linear(matrix, rhs=None):
    """Exact solve of matrix @ x = rhs.

    Returns a dict with 'solution' (one particular solution or None),
    'kernel' (list of basis vectors) and 'kernel_dim'.  With rhs omitted the
    homogeneous system is solved.
    """
    if not isinstance(matrix, ScalarMatrix):
        matrix = ScalarMatrix(matrix)
    kernel = matrix.kernel_basis()
    solution = None
    if rhs is not None:
        solution = matrix.solve([GaussRat.of(b) for b in rhs])
    else:
        solution = [ZERO] * matrix.cols
    return {"solution": solution, "kernel": kernel, "kernel_dim": len(kernel)}


def eigen_numeric(matrix, symmetry_tol=1e-12):
    """Sorted eigenvalues of a real symmetric matrix given exactly.

    Entries may be GaussRat (must be real) or floats.  Raises ValueError when
    the evaluated matrix is not symmetric within ``symmetry_tol``.
    """
    if isinstance(matrix, ScalarMatrix):
        matrix = matrix.entries
    rows = []
    for row in matrix:
        vals = []
        for x in row:
            if isinstance(x, GaussRat):
                if x.im != 0:
                    raise ValueError("eigen_numeric expects a real matrix")
                vals.append(float(x.re))
            else:
                vals.append(float(x))
        rows.append(vals)
    a = np.array(rows, dtype=float)
    scale = max(1.0, float(np.max(np.abs(a))))
    if a.shape[0] != a.shape[1] or np.max(np.abs(a - a.T)) > symmetry_tol * scale:
        raise ValueError("eigen_numeric expects a symmetric matrix")
    return sorted(np.linalg.eigvalsh(a).tolist())


def cluster_levels(values, rel_tol=1e-9):
    """Group sorted floats into levels: returns list of (level, multiplicity).

    Two values land in one level when they agree within ``rel_tol`` relative
    to the overall scale.
    """
    if not values:
        return []
    scale = max(1.0, max(abs(v) for v in values))
    levels = []
    for v in sorted(values):
        if levels and abs(v - levels[-1][0]) <= rel_tol * scale:
            lv, mult = levels[-1]
            levels[-1] = ((lv * mult + v) / (mult + 1), mult + 1)
        else:
            levels.append((v, 1))
    return levels
