"""PBW normal ordering in U(t^-1 g[t^-1]) x| C tau, U(g[t]) and U(g).

A generator is a tuple ``(cls, i, j, r)`` standing for F_ij[r] (E_ij[r] in
type A), or ``TAU = (3, 0, 0, 0)``.  The class field makes plain tuple
comparison realize the PBW order:

* ``chi`` order: raising (0) < Cartan (1) < lowering (2) < tau (3)
* ``top`` order: lowering (0) < Cartan (1) < raising (2) < tau (3)

so the Harish-Chandra projections become a filter on the first or last
triangular class.  Straightening is recursive insertion with bracket
corrections, memoized per algebra on (monomial, generator).
"""
from __future__ import annotations

import re

from gmpy2 import mpq

from .liealg import AlgebraSpec, AlphabetError, FamilyError
from .poly import Poly

ZERO = mpq(0)
ONE = mpq(1)
TAU = (3, 0, 0, 0)
ORDERS = ("chi", "top")


class NotInvariantError(ValueError):
    """Element has a monomial of nonzero h-weight."""


class DepthError(ValueError):
    """Loop depth outside the range an operation accepts."""


def mu(i: int, r: int = -1):
    """Variable key for mu_i[r] in Poly."""
    return (i, r)


class UAlgebra:
    """Enveloping algebra of g[t, t^-1] x| C tau for one spec and one PBW order."""

    _instances: dict = {}

    def __new__(cls, spec: AlgebraSpec, order: str = "chi"):
        key = (spec.family, spec.n, order)
        inst = cls._instances.get(key)
        if inst is None:
            if order not in ORDERS:
                raise ValueError(f"unknown order {order!r}")
            inst = super().__new__(cls)
            inst.spec = spec
            inst.order = order
            inst._memo = {}
            inst._mono_memo = {}
            inst._br = {}
            cls._instances[key] = inst
        return inst

    # -- generators -------------------------------------------------------
    def cls_of(self, i: int, j: int) -> int:
        c = self.spec.pair_class(i, j)
        if c == 0:
            return 1
        if self.order == "chi":
            return 0 if c > 0 else 2
        return 2 if c > 0 else 0

    def gen_key(self, i: int, j: int, r: int):
        return (self.cls_of(i, j), i, j, r)

    def gen(self, i: int, j: int, r: int = -1) -> "UElement":
        """F_ij[r] as an element, reduced to its canonical representative."""
        c, pair = self.spec.canonical(i, j)
        if c == 0:
            return self.zero()
        return UElement(self, {(self.gen_key(*pair, r),): mpq(c)})

    def tau(self) -> "UElement":
        return UElement(self, {(TAU,): ONE})

    def one(self) -> "UElement":
        return UElement(self, {(): ONE})

    def zero(self) -> "UElement":
        return UElement(self, {})

    def scalar(self, c) -> "UElement":
        return UElement(self, {(): mpq(c)} if c else {})

    # -- brackets ---------------------------------------------------------
    def bracket_gens(self, a, b) -> dict:
        """[a, b] for generator keys, as {generator key: coefficient}."""
        key = (a, b)
        out = self._br.get(key)
        if out is not None:
            return out
        if a == TAU and b == TAU:
            out = {}
        elif a == TAU:
            _, i, j, r = b
            out = {self.gen_key(i, j, r - 1): mpq(-r)} if r else {}
        elif b == TAU:
            _, i, j, r = a
            out = {self.gen_key(i, j, r - 1): mpq(r)} if r else {}
        else:
            tab = self.spec.brackets[(a[1], a[2]), (b[1], b[2])]
            s = a[3] + b[3]
            out = {self.gen_key(p, q, s): c for (p, q), c in tab.items()}
        self._br[key] = out
        return out

    # -- straightening ----------------------------------------------------
    def mul_gen(self, A: tuple, g) -> dict:
        """Normal-ordered expansion of the monomial A times generator g."""
        if not A or A[-1] <= g:
            return {A + (g,): ONE}
        key = (A, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        last, rest = A[-1], A[:-1]
        out = {}
        # A g = (rest g) last + rest [last, g]
        for M, c in self.mul_gen(rest, g).items():
            for M2, c2 in self.mul_gen(M, last).items():
                v = out.get(M2, ZERO) + c * c2
                if v:
                    out[M2] = v
                else:
                    del out[M2]
        for h, c in self.bracket_gens(last, g).items():
            for M2, c2 in self.mul_gen(rest, h).items():
                v = out.get(M2, ZERO) + c * c2
                if v:
                    out[M2] = v
                else:
                    del out[M2]
        self._memo[key] = out
        return out

    def mul_mono(self, A: tuple, B: tuple) -> dict:
        if not B:
            return {A: ONE}
        if not A:
            return {B: ONE}
        key = (A, B)
        hit = self._mono_memo.get(key)
        if hit is not None:
            return hit
        cur = {A: ONE}
        for g in B:
            nxt = {}
            for M, c in cur.items():
                for M2, c2 in self.mul_gen(M, g).items():
                    v = nxt.get(M2, ZERO) + c * c2
                    if v:
                        nxt[M2] = v
                    else:
                        del nxt[M2]
            cur = nxt
        self._mono_memo[key] = cur
        return cur

    def clear_cache(self) -> None:
        self._memo.clear()
        self._mono_memo.clear()

    # -- weights ----------------------------------------------------------
    def weight(self, mono: tuple) -> tuple:
        w = [0] * self.spec.cartan_rank
        for g in mono:
            if g == TAU:
                continue
            for k, x in enumerate(self.spec.weight(g[1], g[2])):
                w[k] += x
        return tuple(w)

    def from_word(self, word, coeff=ONE) -> "UElement":
        """Product of generators given as (i, j, r) triples or the string 'tau'."""
        out = self.scalar(coeff)
        for g in word:
            out = out * (self.tau() if g == "tau" else self.gen(*g))
        return out


def weight_of(spec: AlgebraSpec, monomial) -> tuple:
    """h-weight of a sequence of (i, j, r) triples or 'tau'."""
    w = [0] * spec.cartan_rank
    for g in monomial:
        if g == "tau" or g == TAU:
            continue
        i, j = (g[1], g[2]) if len(g) == 4 else (g[0], g[1])
        for k, x in enumerate(spec.weight(i, j)):
            w[k] += x
    return tuple(w)


class UElement:
    """Exact linear combination of PBW monomials of one UAlgebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: UAlgebra, terms: dict):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    @property
    def spec(self) -> AlgebraSpec:
        return self.alg.spec

    def _coerce(self, other) -> "UElement":
        if isinstance(other, UElement):
            if other.alg is self.alg:
                return other
            if other.spec != self.spec:
                raise AlphabetError("elements of different algebras")
            return other.reorder(self.alg.order)
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, ZERO) + c
        return UElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return UElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UElement):
            c = mpq(other)
            return UElement(self.alg, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        out = {}
        mul = self.alg.mul_mono
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for M, c in mul(m1, m2).items():
                    out[M] = out.get(M, ZERO) + c * c1 * c2
        return UElement(self.alg, out)

    def __rmul__(self, other):
        c = mpq(other)
        return UElement(self.alg, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, UElement):
            return (self - other).is_zero()
        return (self - self.alg.scalar(other)).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def reorder(self, order: str) -> "UElement":
        """Re-express in the PBW basis of another triangular order."""
        target = UAlgebra(self.spec, order)
        if target is self.alg:
            return self
        out = target.zero()
        for m, c in self.terms.items():
            term = target.scalar(c)
            for g in m:
                term = term * (target.tau() if g == TAU else
                               UElement(target, {(target.gen_key(g[1], g[2], g[3]),): ONE}))
            out = out + term
        return out

    def generators(self) -> set:
        return {g for m in self.terms for g in m}

    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def check_invariant(self) -> None:
        for m in self.terms:
            if any(self.alg.weight(m)):
                raise NotInvariantError(f"monomial {format_monomial(self.spec, m)} has nonzero weight")

    def tau_split(self) -> dict:
        """{k: coefficient of tau^k} with tau collected on the right."""
        out = {}
        for m, c in self.terms.items():
            k = 0
            while k < len(m) and m[len(m) - 1 - k] == TAU:
                k += 1
            body = m[:len(m) - k]
            if TAU in body:
                raise ValueError("tau is not rightmost in this monomial")
            out.setdefault(k, {})[body] = c
        return {k: UElement(self.alg, t) for k, t in out.items()}

    def commutator(self, other) -> "UElement":
        return self * other - self._coerce(other) * self

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [{"coeff": str(c), "monomial": [_gen_json(self.spec, g) for g in m]}
                          for m, c in sorted(self.terms.items())]}

    def __str__(self):
        return format_terms(self.spec, self.terms)

    __repr__ = __str__


# -- projections -----------------------------------------------------------

def _project(elem: UElement, order: str, tau_ok: bool = True):
    """Filter a normal-ordered element to its Cartan/tau part as {k: Poly}."""
    from .walg import Pi0TauElement

    x = elem.reorder(order)
    x.check_invariant()
    out = {}
    for m, c in x.terms.items():
        vars_, k = [], 0
        ok = True
        for g in m:
            if g == TAU:
                if not tau_ok:
                    raise DepthError("tau in an element of U(g)")
                k += 1
            elif g[0] == 1:
                vars_.append((g[1], g[3]))
            else:
                ok = False
                break
        if ok:
            out.setdefault(k, Poly()).iadd(Poly({tuple(sorted(vars_)): c}))
    return Pi0TauElement({k: p for k, p in out.items() if p})


def hc_chi(spec: AlgebraSpec, elem: UElement):
    """Projection modulo the left ideal of lowering generators (i > j)."""
    _check_spec(spec, elem)
    return _project(elem, "chi")


def hc_top(spec: AlgebraSpec, elem: UElement):
    """Projection modulo the left ideal of raising generators (i < j)."""
    _check_spec(spec, elem)
    return _project(elem, "top")


def hc_classical(spec: AlgebraSpec, elem: UElement) -> Poly:
    """Harish-Chandra image of an h-invariant element of U(g), in mu_1..mu_n."""
    _check_spec(spec, elem)
    for g in elem.generators():
        if g == TAU or g[3] != 0:
            raise DepthError("hc_classical needs depth-0 generators only")
    img = _project(elem, "top", tau_ok=False)
    p = img.coeff(0)
    return p.substitute(lambda v: Poly.var(v[0]))


def _check_spec(spec, elem):
    if elem.spec != spec:
        raise AlphabetError("element belongs to a different algebra")


def evaluate(elem: UElement) -> UElement:
    """Evaluation g[t] -> g: keep depth 0, kill positive depth."""
    out = {}
    for m, c in elem.terms.items():
        if any(g == TAU or g[3] < 0 for g in m):
            raise DepthError("evaluation needs an element of U(g[t])")
        if all(g[3] == 0 for g in m):
            out[m] = c
    return UElement(elem.alg, out)


def apply_involution(spec: AlgebraSpec, elem: UElement, which: str) -> UElement:
    """sigma: F_ij[r] -> -F_ji[r];  tilde (type D): swap indices n and n+1."""
    if which == "tilde" and spec.family != "D":
        raise FamilyError("tilde is only defined in type D")
    if which not in ("sigma", "tilde"):
        raise ValueError(f"unknown involution {which!r}")
    alg = elem.alg
    n = spec.n
    swap = {n: n + 1, n + 1: n}
    images = {}
    out = alg.zero()
    for m, c in elem.terms.items():
        term = alg.scalar(c)
        for g in m:
            if g == TAU:
                term = term * alg.tau()
                continue
            img = images.get(g)
            if img is None:
                _, i, j, r = g
                if which == "sigma":
                    img = -alg.gen(j, i, r)
                else:
                    img = alg.gen(swap.get(i, i), swap.get(j, j), r)
                images[g] = img
            term = term * img
        out = out + term
    return out


# -- text and JSON grammar -------------------------------------------------

def _gen_json(spec, g):
    if g == TAU:
        return ["tau"]
    return [spec.symbol, g[1], g[2], g[3]]


def format_gen(spec, g) -> str:
    if g == TAU:
        return "tau"
    return f"{spec.symbol}[{g[1]},{g[2]};{g[3]}]"


def format_monomial(spec, m) -> str:
    return "*".join(format_gen(spec, g) for g in m) or "1"


def format_terms(spec, terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for m, c in sorted(terms.items()):
        parts.append(f"{c}" if not m else f"{c}*{format_monomial(spec, m)}")
    return " + ".join(parts)


_FACTOR = re.compile(r"\s*(?:([FE])\[(-?\d+),(-?\d+);(-?\d+)\]|(tau))\s*")


def parse_element(alg: UAlgebra, text: str) -> UElement:
    """Parse 'c*F[i,j;r]*tau + ...' (the format produced by str())."""
    out = alg.zero()
    text = text.strip()
    if text == "0":
        return out
    for chunk in re.split(r"\s\+\s", text):
        pieces = chunk.strip().split("*")
        coeff = mpq(pieces[0])
        term = alg.scalar(coeff)
        for p in pieces[1:]:
            mt = _FACTOR.fullmatch(p)
            if mt is None:
                raise ValueError(f"cannot parse factor {p!r}")
            if mt.group(5):
                term = term * alg.tau()
            else:
                term = term * alg.gen(int(mt.group(2)), int(mt.group(3)), int(mt.group(4)))
        out = out + term
    return out


def element_from_json(alg: UAlgebra, data: dict) -> UElement:
    out = alg.zero()
    for t in data["terms"]:
        term = alg.scalar(mpq(t["coeff"]))
        for f in t["monomial"]:
            term = term * (alg.tau() if f[0] == "tau" else alg.gen(f[1], f[2], f[3]))
        out = out + term
    return out
