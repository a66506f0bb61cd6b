"""Sparse commutative polynomials with exact rational coefficients.

A monomial is a sorted tuple of variables, repeated according to
multiplicity.  Variables are any mutually comparable hashables: ``(i, r)``
pairs for mu_i[r] or lambda_i^(r), plain ints for z_i or mu_i.
"""
from __future__ import annotations

from collections import Counter
from heapq import merge

from gmpy2 import mpq

ZERO = mpq(0)
ONE = mpq(1)


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(merge(a, b))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[m] = mpq(c)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, v, c=1) -> "Poly":
        return cls({(v,): c})

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    # -- arithmetic -------------------------------------------------------
    def copy(self) -> "Poly":
        return Poly._raw(dict(self.terms))

    def iadd(self, other: "Poly", scale=ONE) -> "Poly":
        t = self.terms
        for m, c in other.terms.items():
            v = t.get(m, ZERO) + c * scale
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return self

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.copy().iadd(other)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.copy().iadd(other, -ONE)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = mpq(other)
            if c == 0:
                return Poly()
            return Poly._raw({m: v * c for m, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, ZERO) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- calculus ---------------------------------------------------------
    def diff(self, v) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            k = m.count(v)
            if k:
                i = m.index(v)
                nm = m[:i] + m[i + 1:]
                out[nm] = out.get(nm, ZERO) + c * k
        return Poly({m: c for m, c in out.items() if c})

    def derivation(self, rule) -> "Poly":
        """Apply the derivation sending each variable v to ``rule(v)`` (a Poly)."""
        out = Poly()
        for m, c in self.terms.items():
            for idx, v in enumerate(m):
                if idx and m[idx - 1] == v:
                    continue
                k = m.count(v)
                img = rule(v)
                if img.is_zero():
                    continue
                rest = m[:idx] + m[idx + 1:]
                out.iadd(Poly._raw({rest: c * k}) * img)
        return out

    def substitute(self, mapping) -> "Poly":
        """Replace each variable v by ``mapping(v)`` (a Poly or scalar)."""
        cache = {}
        out = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, k in Counter(m).items():
                if v not in cache:
                    img = mapping(v)
                    cache[v] = img if isinstance(img, Poly) else Poly.const(img)
                term = term * cache[v] ** k
            out.iadd(term)
        return out

    def evaluate(self, values) -> mpq:
        total = ZERO
        for m, c in self.terms.items():
            t = c
            for v in m:
                t *= values[v]
            total += t
        return total

    def variables(self) -> set:
        return {v for m in self.terms for v in m}

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if len(m) == d})

    def __repr__(self):
        return f"Poly({self.terms!r})"
