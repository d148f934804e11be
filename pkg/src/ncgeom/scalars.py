"""Exact coefficient arithmetic: Gaussian rationals and Laurent polynomials.

All identity checks in this package run over the field Q(i) extended by
formal parameters (q, p, kappa, ...).  A ``Scalar`` is a Laurent polynomial
in a fixed, ordered tuple of parameter names with ``GaussRat`` coefficients.
Exponents may be negative; zero coefficients are never stored, so structural
equality of the term dictionaries is exact equality of values.

Everything here is immutable after construction and safe to share.
"""

from __future__ import annotations

import re as _re
from fractions import Fraction

# Exponents are bounded so that a runaway computation fails loudly instead
# of silently producing astronomically large monomials.
MAX_EXPONENT = 2**31


class GaussRat:
    """A Gaussian rational re + i*im with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussRat is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def of(value):
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussRat(value)
        raise TypeError(f"cannot coerce {value!r} to GaussRat")

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def is_real(self):
        return self.im == 0

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.of(other))

    def __rsub__(self, other):
        return GaussRat.of(other) + (-self)

    def __mul__(self, other):
        other = GaussRat.of(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat.of(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return self * GaussRat(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return GaussRat.of(other) / self

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussRat(other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- text --------------------------------------------------------------

    _PARSE_RE = _re.compile(
        r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*"
        r"(?P<im>(?:[+-]\s*)?(?:\d+(?:/\d+)?)?\s*i)?\s*$"
    )

    @staticmethod
    def parse(text):
        """Parse 'i', '-i', '2', '-3/4', '2i', '1+i', '1/2-3i' exactly."""
        m = GaussRat._PARSE_RE.match(text)
        if not m or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"cannot parse Gaussian rational {text!r}")
        re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_part = Fraction(0)
        if m.group("im"):
            body = m.group("im").replace(" ", "")[:-1]  # strip the trailing i
            if body in ("", "+"):
                im_part = Fraction(1)
            elif body == "-":
                im_part = Fraction(-1)
            else:
                im_part = Fraction(body)
        return GaussRat(re_part, im_part)

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            if self.im == 1:
                return "i"
            if self.im == -1:
                return "-i"
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        istr = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{istr}"

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"

    def to_complex(self):
        return complex(self.re) + 1j * complex(self.im)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


class Scalar:
    """Laurent polynomial over named parameters with GaussRat coefficients.

    ``params`` is the ordered tuple of parameter names; ``terms`` maps
    integer exponent tuples (one slot per parameter, negative allowed) to
    nonzero GaussRat coefficients.  Operands must share the identical
    parameter tuple; mixing raises ValueError.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params, terms):
        object.__setattr__(self, "params", tuple(params))
        clean = {}
        for exp, coeff in terms.items():
            coeff = GaussRat.of(coeff)
            if coeff.is_zero():
                continue
            if len(exp) != len(self.params):
                raise ValueError("exponent tuple does not match parameter list")
            if any(abs(e) > MAX_EXPONENT for e in exp):
                raise OverflowError("exponent exceeds MAX_EXPONENT")
            clean[tuple(exp)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(value, params=()):
        params = tuple(params)
        z = (0,) * len(params)
        return Scalar(params, {z: GaussRat.of(value)})

    @staticmethod
    def var(name, params, power=1):
        params = tuple(params)
        if name not in params:
            raise ValueError(f"unknown parameter {name!r}")
        exp = tuple(power if p == name else 0 for p in params)
        return Scalar(params, {exp: ONE})

    @staticmethod
    def zero(params=()):
        return Scalar(params, {})

    @staticmethod
    def one(params=()):
        return Scalar.constant(1, params)

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.params != self.params:
                raise ValueError(
                    f"parameter list mismatch: {self.params} vs {other.params}"
                )
            return other
        return Scalar.constant(other, self.params)

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self):
        z = (0,) * len(self.params)
        extra = [e for e in self.terms if e != z]
        if extra:
            raise ValueError(f"scalar is not constant: {self}")
        return self.terms.get(z, ZERO)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, ZERO) + c
            if s.is_zero():
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Scalar(self.params, terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.params, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            return Scalar(self.params, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, ZERO) + c1 * c2
                if s.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = s
        return Scalar(self.params, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("Scalar powers must be integers")
        if n < 0:
            return self.inverse() ** (-n)
        out = Scalar.one(self.params)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        """Inverse of a single-term (monomial) scalar; error otherwise."""
        if len(self.terms) != 1:
            raise ValueError(f"only monomial scalars are invertible: {self}")
        (exp, coeff), = self.terms.items()
        return Scalar(self.params, {tuple(-e for e in exp): ONE / coeff})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            other = Scalar.constant(other, self.params)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    __hash__ = None

    # -- calculus ----------------------------------------------------------

    def diff(self, name):
        """Formal derivative with respect to one parameter."""
        k = self.params.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[k] == 0:
                continue
            e = list(exp)
            factor = e[k]
            e[k] -= 1
            terms[tuple(e)] = terms.get(tuple(e), ZERO) + c * factor
        return Scalar(self.params, terms)

    def evaluate(self, point):
        """Exact evaluation at GaussRat parameter values.

        Raises KeyError for a missing parameter and ZeroDivisionError when a
        parameter with a negative exponent is sent to zero.
        """
        values = []
        for name in self.params:
            if name not in point:
                raise KeyError(f"missing parameter value for {name!r}")
            values.append(GaussRat.of(point[name]))
        total = ZERO
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(values, exp):
                if e == 0:
                    continue
                if v.is_zero() and e < 0:
                    raise ZeroDivisionError(
                        "zero parameter value with negative exponent"
                    )
                if e > 0:
                    for _ in range(e):
                        term = term * v
                else:
                    for _ in range(-e):
                        term = term / v
            total = total + term
        return total

    def substitute_power(self, name, k, new_name):
        """Rewrite a scalar whose exponents in ``name`` are multiples of k
        as a scalar in ``new_name`` with exponents divided by k.

        Used to evaluate at points given for a power of a parameter, e.g. at
        q^2 = i evaluate the rebased polynomial at t = i.
        """
        idx = self.params.index(name)
        new_params = tuple(new_name if p == name else p for p in self.params)
        terms = {}
        for exp, c in self.terms.items():
            if exp[idx] % k != 0:
                raise ValueError(
                    f"exponent {exp[idx]} of {name} not divisible by {k}"
                )
            e = list(exp)
            e[idx] //= k
            terms[tuple(e)] = c
        return Scalar(new_params, terms)

    def with_params(self, params):
        """Reinterpret over a larger parameter tuple (superset, any order)."""
        params = tuple(params)
        try:
            pos = [params.index(p) for p in self.params]
        except ValueError:
            raise ValueError(f"{params} does not contain all of {self.params}")
        terms = {}
        for exp, c in self.terms.items():
            e = [0] * len(params)
            for p, x in zip(pos, exp):
                e[p] = x
            terms[tuple(e)] = c
        return Scalar(params, terms)

    # -- text --------------------------------------------------------------

    def _term_str(self, exp, coeff):
        mono = "".join(
            (f"{p}^{e}" if e != 1 else p)
            for p, e in zip(self.params, exp)
            if e != 0
        )
        if not mono:
            return str(coeff)
        if coeff == ONE:
            return mono
        if coeff == GaussRat(-1):
            return f"-{mono}"
        cs = str(coeff)
        if ("+" in cs[1:]) or ("-" in cs[1:]):
            cs = f"({cs})"
        return f"{cs}*{mono}"

    @staticmethod
    def _term_key(exp):
        first = next((i for i, e in enumerate(exp) if e != 0), len(exp))
        return (first, tuple(-e for e in exp))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [
            self._term_str(exp, c)
            for exp, c in sorted(
                self.terms.items(), key=lambda kv: self._term_key(kv[0])
            )
        ]
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Scalar({self})"

    def to_complex(self, point=None):
        if point:
            return self.evaluate(point).to_complex()
        return self.constant_value().to_complex()
