"""Free-algebra words, noncommutative polynomials and rewriting presentations.

A :class:`Presentation` carries an ordered generator list and one rewrite
rule per inverted adjacent pair (and optionally per repeated pair, e.g. for
nilpotent differentials).  Every rule must strictly decrease the
degree-lexicographic word order, which makes reduction terminate; reduction
to the unique normal form is sound exactly when the critical pairs close,
which :func:`Presentation.confluence_check` verifies on all length-3
overlaps.

The same machinery serves the quantum-group presentations and the
Poincare-Birkhoff-Witt ordering of enveloping algebras (rules of the shape
``ba -> ab + [b, a]``).
"""

from __future__ import annotations

from .scalars import GaussRat, Scalar, ONE


class NCPoly:
    """Formal linear combination of words with Scalar coefficients."""

    __slots__ = ("params", "terms")

    def __init__(self, params, terms):
        object.__setattr__(self, "params", tuple(params))
        clean = {}
        for word, coeff in terms.items():
            if not isinstance(coeff, Scalar):
                coeff = Scalar.constant(coeff, self.params)
            if coeff.params != self.params:
                raise ValueError("coefficient parameter mismatch")
            if coeff.is_zero():
                continue
            clean[tuple(word)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("NCPoly is immutable")

    @staticmethod
    def zero(params=()):
        return NCPoly(params, {})

    @staticmethod
    def one(params=()):
        return NCPoly(params, {(): Scalar.one(params)})

    @staticmethod
    def gen(name, params=()):
        return NCPoly(params, {(name,): Scalar.one(params)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly(self.params, {(): Scalar.constant(other, self.params)})
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, Scalar.zero(self.params)) + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        return NCPoly(self.params, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.params, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly(self.params, {(): Scalar.constant(other, self.params)})
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, GaussRat, Scalar)):
            c = other if isinstance(other, Scalar) else Scalar.constant(other, self.params)
            return NCPoly(self.params, {w: x * c for w, x in self.terms.items()})
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = terms.get(w, Scalar.zero(self.params)) + c1 * c2
                if s.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = s
        return NCPoly(self.params, terms)

    def __rmul__(self, other):
        # scalar coefficients commute with words, so premultiplication by a
        # Scalar/number is the same as postmultiplication
        if isinstance(other, (int, GaussRat, Scalar)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    __hash__ = None

    def map_coeffs(self, f):
        return NCPoly(self.params, {w: f(c) for w, c in self.terms.items()})

    def words(self):
        return list(self.terms)

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def render(self, sep=None):
        """Stable text form: constant first, then words in ascending
        degree-lexicographic order."""
        if not self.terms:
            return "0"
        items = sorted(
            self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])
        )
        parts = []
        for word, coeff in items:
            if sep is None:
                joined = (
                    "".join(word)
                    if all(len(g) == 1 for g in word)
                    else "*".join(word)
                )
            else:
                joined = sep.join(word)
            cs = str(coeff)
            if not word:
                parts.append(cs)
            elif cs == "1":
                parts.append(joined)
            elif cs == "-1":
                parts.append(f"-{joined}")
            else:
                if " " in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{joined}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"NCPoly({self})"


class Presentation:
    """Ordered generators plus degree-decreasing rewrite rules.

    ``rules`` maps a two-letter left-hand side (x, y) with x >= y in the
    generator order to its replacement NCPoly.  A pair with x > y and no rule
    is taken to commute only if a rule says so; reduction simply leaves pairs
    without rules in place, so shipped presentations declare a rule for every
    inverted pair.
    """

    def __init__(self, name, generators, params, rules):
        self.name = name
        self.generators = list(generators)
        self.params = tuple(params)
        self.order = {g: i for i, g in enumerate(self.generators)}
        self.rules = {}
        self._cache = {}
        for (x, y), rhs in rules.items():
            if x not in self.order or y not in self.order:
                raise ValueError(f"rule on unknown generators {(x, y)}")
            if self.order[x] < self.order[y]:
                raise ValueError(
                    f"rule LHS {x}{y} is not an inverted or repeated pair"
                )
            if not isinstance(rhs, NCPoly):
                raise TypeError("rule RHS must be an NCPoly")
            lhs_key = (2, (self.order[x], self.order[y]))
            for w in rhs.terms:
                wkey = (len(w), tuple(self.order[g] for g in w))
                if wkey >= lhs_key:
                    raise ValueError(
                        f"rule {x}{y} -> {rhs} does not decrease the word order"
                    )
            self.rules[(x, y)] = rhs

    # -- construction helpers ----------------------------------------------

    def poly(self, terms):
        return NCPoly(self.params, terms)

    def gen(self, name):
        if name not in self.order:
            raise ValueError(f"unknown generator {name!r}")
        return NCPoly(self.params, {(name,): Scalar.one(self.params)})

    def scalar(self, value):
        return Scalar.constant(value, self.params)

    def var(self, name, power=1):
        return Scalar.var(name, self.params, power)

    def parse_word(self, text):
        """Greedy longest-match tokenisation of a word like 'da' or 'x0*L1'."""
        names = sorted(self.generators, key=len, reverse=True)
        word = []
        i = 0
        text = text.strip()
        while i < len(text):
            if text[i] in " *.":
                i += 1
                continue
            for name in names:
                if text.startswith(name, i):
                    word.append(name)
                    i += len(name)
                    break
            else:
                raise ValueError(f"unknown generator at {text[i:]!r}")
        return tuple(word)

    # -- reduction -----------------------------------------------------------

    def _first_redex(self, word):
        for i in range(len(word) - 1):
            if (word[i], word[i + 1]) in self.rules:
                return i
        return None

    def reduce_word(self, word):
        """Normal form of a single word as {word: Scalar}; memoised."""
        word = tuple(word)
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        i = self._first_redex(word)
        if i is None:
            result = {word: Scalar.one(self.params)}
        else:
            rhs = self.rules[(word[i], word[i + 1])]
            acc = {}
            prefix, suffix = word[:i], word[i + 2:]
            for w, c in rhs.terms.items():
                for w2, c2 in self.reduce_word(prefix + w + suffix).items():
                    s = acc.get(w2, Scalar.zero(self.params)) + c * c2
                    if s.is_zero():
                        acc.pop(w2, None)
                    else:
                        acc[w2] = s
            result = acc
        self._cache[word] = result
        return result

    def normal_order(self, poly):
        """Unique normal form of an NCPoly; linear and idempotent."""
        if poly.params != self.params:
            raise ValueError("polynomial parameter mismatch")
        terms = {}
        for word, coeff in poly.terms.items():
            for w, c in self.reduce_word(word).items():
                s = terms.get(w, Scalar.zero(self.params)) + coeff * c
                if s.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = s
        return NCPoly(self.params, terms)

    def is_normal(self, poly):
        return all(self._first_redex(w) is None for w in poly.terms)

    def reduces_to_zero(self, poly):
        return self.normal_order(poly).is_zero()

    # -- confluence ----------------------------------------------------------

    def overlap_words(self):
        """All length-3 words z y x where both adjacent pairs carry rules."""
        out = []
        for (z, y) in self.rules:
            for (y2, x) in self.rules:
                if y2 == y:
                    out.append((z, y, x))
        return sorted(out, key=lambda w: tuple(self.order[g] for g in w))

    def confluence_check(self):
        """Reduce each critical pair both ways; returns a list of failures
        as (witness word, normal form difference)."""
        failures = []
        for word in self.overlap_words():
            z, y, x = word
            # route 1: rewrite the left pair first
            left = self.normal_order(
                self.rules[(z, y)] * NCPoly(self.params, {(x,): ONE})
            )
            # route 2: rewrite the right pair first
            right = self.normal_order(
                NCPoly(self.params, {(z,): ONE}) * self.rules[(y, x)]
            )
            diff = left - right
            if not diff.is_zero():
                failures.append((word, diff))
        return failures
