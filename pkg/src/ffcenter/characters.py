"""Character sums for the symmetrizer traces over the Yangian, in the
variables lambda_i(u) = 1 + sum_r lambda_i^(r) u^-r.

* index-word sums (weakly increasing with the B/D restrictions, admissible
  subsets for C) and their counts
* the kappa-variable form of the type-C sum, checked on random exact points
* the vanishing series in sigma_i(u) = lambda_i(u) e^{d_u} - 1, checked
  component by component in a graded, truncated operator ring
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

from gmpy2 import mpq

from .foundations import gen_binomial
from .liealg import AlgebraSpec, FamilyError, make_spec
from .poly import Poly, mono_mul
from .sugawara import _d_past_u
from .tensor import RangeError

ZERO = mpq(0)
ONE = mpq(1)

LambdaPolynomial = Poly


class DegenerateAssignmentError(ZeroDivisionError):
    """A derived kappa or lambda value needs division by zero."""


# -- index words -----------------------------------------------------------

def admissible(n: int, subset) -> bool:
    """i at position r and i' at position s > r force s - r <= n - i."""
    s = sorted(subset)
    pos = {v: k for k, v in enumerate(s)}
    for i in s:
        if i <= n:
            j = 2 * n - i + 1
            if j in pos and pos[j] - pos[i] > n - i:
                return False
    return True


def admissible_subsets(n: int, m: int) -> list:
    if m > 2 * n:
        raise RangeError("m <= 2n required")
    return [c for c in combinations(range(1, 2 * n + 1), m) if admissible(n, c)]


def char_words(spec: AlgebraSpec, m: int, kind: str = "H") -> list:
    """Index words i_1..i_m of the character sum."""
    N, n = spec.N, spec.n
    if spec.family == "A":
        if kind == "A":
            return list(combinations(range(1, N + 1), m))
        return list(combinations_with_replacement(range(1, N + 1), m))
    if spec.family == "B":
        return [w for w in combinations_with_replacement(range(1, N + 1), m) if w.count(n + 1) <= 1]
    if spec.family == "D":
        return [w for w in combinations_with_replacement(range(1, N + 1), m)
                if not (n in w and n + 1 in w)]
    if m > n:
        raise RangeError("type C character sum needs m <= n")
    return admissible_subsets(n, m)


def char_sum(spec: AlgebraSpec, m: int, kind: str = "H") -> dict:
    words = char_words(spec, m, kind)
    return {"terms": [list(w) for w in words], "count": len(words)}


# -- kappa variables -------------------------------------------------------

class LambdaPoint:
    """Random exact values lambda_i(u + offset) obeying the lambda relations.

    Offsets are rationals relative to an abstract point u; lambda_1..lambda_n
    are drawn lazily, the primed ones are derived top-down."""

    def __init__(self, spec: AlgebraSpec, rng: random.Random):
        self.spec = spec
        self.rng = rng
        self.free = {}
        self.kappa_const = spec.kappa

    def draw(self) -> mpq:
        return mpq(self.rng.randint(1, 97), self.rng.randint(1, 97))

    def lam(self, i: int, v) -> mpq:
        v = mpq(v)
        spec, n, k = self.spec, self.spec.n, self.kappa_const
        if i <= n:
            key = (i, v)
            if key not in self.free:
                self.free[key] = self.draw()
            return self.free[key]
        j = spec.prime(i)  # lambda_{j'} with j <= n
        if j == 1:
            den = self.lam(1, v + k)
            if den == 0:
                raise DegenerateAssignmentError
            return 1 / den
        a = j - 1
        den = self.lam(j, v + k - a)
        if den == 0:
            raise DegenerateAssignmentError
        return self.lam(a, v + k - a) * self.lam(spec.prime(a), v) / den


def kappa_values(n: int, lp: LambdaPoint, offsets) -> dict:
    """kappa_i(u + v) for i = 1..2n+2 at the given integer offsets v."""
    offsets = sorted(offsets)
    lo = offsets[0]
    chain = {lo: lp.draw()}
    for v in range(lo + 1, offsets[-1] + 1):
        prev = chain[v - 1]
        if prev == 0:
            raise DegenerateAssignmentError
        chain[v] = lp.lam(n, v) * lp.lam(n + 1, v - 1) / prev
    out = {}
    for v in offsets:
        for i in range(1, n + 1):
            out[i, v] = lp.lam(i, v)
            out[2 * n - i + 3, v] = lp.lam(2 * n - i + 1, v)
        out[n + 1, v] = chain[v]
        out[n + 2, v] = -chain[v]
    return out


def kappa_sum(n: int, m: int, kap: dict) -> mpq:
    total = ZERO
    for w in combinations(range(1, 2 * n + 3), m):
        t = ONE
        for r, i in enumerate(w):
            t *= kap[i, -r]
        total += t
    return total


def lambda_sum_C(n: int, m: int, lp: LambdaPoint) -> mpq:
    total = ZERO
    for w in admissible_subsets(n, m):
        t = ONE
        for r, i in enumerate(w):
            t *= lp.lam(i, -r)
        total += t
    return total


def kappa_vanishing_check(n: int, trials: int = 20, seed: int = 0) -> dict:
    """m = n+1 kappa-sum vanishes; m <= n kappa-sum equals the admissible lambda-sum."""
    rng = random.Random(seed)
    spec = make_spec("C", n)
    vanish, agree, redraws = True, True, 0
    done = 0
    while done < trials:
        lp = LambdaPoint(spec, rng)
        try:
            kap = kappa_values(n, lp, range(-n, 1))
            if kappa_sum(n, n + 1, kap) != 0:
                vanish = False
            for m in range(1, n + 1):
                if kappa_sum(n, m, kap) != lambda_sum_C(n, m, lp):
                    agree = False
        except DegenerateAssignmentError:
            redraws += 1
            continue
        done += 1
    return {"ok": vanish and agree, "vanishing": vanish, "agrees_with_lambda_sum": agree,
            "trials": trials, "redraws": redraws, "seed": seed}


# -- graded series ---------------------------------------------------------

def _mono_degree(mono) -> int:
    return sum(r - 1 for _, r in mono)


@dataclass
class Truncation:
    """Keep u^-p d^a terms with p <= P and total degree >= -D."""

    P: int
    D: int

    def keep(self, mono, p: int, a: int) -> bool:
        return p <= self.P and _mono_degree(mono) - p - a >= -self.D


class ShiftSeries:
    """sum_{p,a} c_{p,a} u^-p d_u^a with commuting LambdaPolynomial coefficients.

    e^{d_u} is carried through its expansion sum_s d_u^s / s!, so the shift
    operator sits to the right of every coefficient."""

    __slots__ = ("terms", "tr")

    def __init__(self, terms: dict, tr: Truncation):
        self.tr = tr
        self.terms = {}
        for (p, a), poly in terms.items():
            kept = {mo: c for mo, c in poly.terms.items() if c and tr.keep(mo, p, a)}
            if kept:
                self.terms[p, a] = Poly._raw(kept)

    @classmethod
    def const(cls, c, tr):
        return cls({(0, 0): Poly.const(c)}, tr)

    def __add__(self, other):
        t = {k: v.copy() for k, v in self.terms.items()}
        for k, v in other.terms.items():
            t[k] = t[k].iadd(v) if k in t else v.copy()
        return ShiftSeries(t, self.tr)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, other):
        if not isinstance(other, ShiftSeries):
            c = mpq(other)
            return ShiftSeries({k: v * c for k, v in self.terms.items()}, self.tr)
        out = {}
        P = self.tr.P
        for (p, a), c1 in self.terms.items():
            for (q, b), c2 in other.terms.items():
                if p + q > P:
                    continue
                prod = c1 * c2
                for j, s in _d_past_u(a, q):
                    if p + q + j > P:
                        break
                    key = (p + q + j, a - j + b)
                    term = prod * s
                    out[key] = out[key].iadd(term) if key in out else term
        return ShiftSeries(out, self.tr)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def components(self) -> dict:
        """{d: {(p, a): Poly}} for the homogeneous pieces of degree -d."""
        out = {}
        for (p, a), poly in self.terms.items():
            for mo, c in poly.terms.items():
                d = p + a - _mono_degree(mo)
                out.setdefault(d, {}).setdefault((p, a), Poly()).iadd(Poly({mo: c}))
        return out


class USeries:
    """Commutative series 1 + sum_p c_p u^-p, same truncation as ShiftSeries."""

    __slots__ = ("c", "tr")

    def __init__(self, c: dict, tr: Truncation):
        self.tr = tr
        self.c = {}
        for p, poly in c.items():
            kept = {mo: v for mo, v in poly.terms.items() if v and tr.keep(mo, p, 0)}
            if kept:
                self.c[p] = Poly._raw(kept)

    @classmethod
    def free(cls, i: int, tr: Truncation):
        c = {0: Poly.const(1)}
        for r in range(1, tr.P + 1):
            c[r] = Poly.var((i, r))
        return cls(c, tr)

    def __mul__(self, other):
        out = {}
        for p, a in self.c.items():
            for q, b in other.c.items():
                if p + q <= self.tr.P:
                    t = a * b
                    out[p + q] = out[p + q].iadd(t) if p + q in out else t
        return USeries(out, self.tr)

    def __add__(self, other):
        out = {p: v.copy() for p, v in self.c.items()}
        for p, v in other.c.items():
            out[p] = out[p].iadd(v) if p in out else v.copy()
        return USeries(out, self.tr)

    def scale(self, s):
        return USeries({p: v * s for p, v in self.c.items()}, self.tr)

    def inverse(self):
        if self.c.get(0) != Poly.const(1):
            raise ValueError("series must start with 1")
        x = USeries({p: v for p, v in self.c.items() if p}, self.tr)
        out = USeries({0: Poly.const(1)}, self.tr)
        power = USeries({0: Poly.const(1)}, self.tr)
        for k in range(1, self.tr.P + 1):
            power = power * x
            if not power.c:
                break
            out = out + power.scale(-1 if k % 2 else 1)
        return out

    def shift(self, s):
        """f(u + s) re-expanded in u^-1."""
        s = mpq(s)
        out = {}
        for r, poly in self.c.items():
            if r == 0:
                out[0] = out[0].iadd(poly) if 0 in out else poly.copy()
                continue
            for k in range(0, self.tr.P - r + 1):
                coef = gen_binomial(-r, k) * s ** k
                if coef == 0:
                    continue
                t = poly * coef
                out[r + k] = out[r + k].iadd(t) if r + k in out else t
        return USeries(out, self.tr)

    def times_shift_op(self) -> ShiftSeries:
        """lambda(u) e^{d_u} - 1."""
        terms = {}
        from math import factorial
        for p, poly in self.c.items():
            for s in range(0, self.tr.D + 1):
                if (p, s) == (0, 0):
                    continue
                terms[p, s] = poly * mpq(1, factorial(s))
        return ShiftSeries(terms, self.tr)


def lambda_series(spec: AlgebraSpec, tr: Truncation) -> dict:
    """lambda_i(u) for i = 1..N: free for i <= n, the rest solved from the relations."""
    n, N, k = spec.n, spec.N, spec.kappa
    lam = {i: USeries.free(i, tr) for i in range(1, n + 1)}
    lam[spec.prime(1)] = lam[1].shift(k).inverse()
    for i in range(1, n):
        num = lam[i].shift(k - i) * lam[spec.prime(i)]
        lam[spec.prime(i + 1)] = num * lam[i + 1].shift(k - i).inverse()
    if spec.family == "B":
        # lambda_{n+1}(u - 1/2) lambda_{n+1}(u) = lambda_n(u - 1/2) lambda_{n'}(u)
        rhs = lam[n].shift(k - n) * lam[spec.prime(n)]
        cur = USeries({0: Poly.const(1)}, tr)
        for p in range(1, tr.P + 1):
            have = (cur.shift(k - n) * cur).c.get(p, Poly())
            cp = (rhs.c.get(p, Poly()) - have) * mpq(1, 2)
            cur = cur + USeries({p: cp}, tr)
        lam[n + 1] = cur
    return lam


def _h_words(sigmas: list, r: int, tr: Truncation) -> ShiftSeries:
    """h_r of ordered noncommuting sigmas."""
    p = len(sigmas)
    memo = {}

    def tail(k, b):
        if k == 0:
            return ShiftSeries.const(1, tr)
        if (k, b) not in memo:
            acc = ShiftSeries({}, tr)
            for i in range(b, p):
                acc = acc + sigmas[i] * tail(k - 1, i)
            memo[k, b] = acc
        return memo[k, b]
    return tail(r, 0)


def vanishing_series(family: str, n: int, D: int, P: int = None) -> ShiftSeries:
    """The sigma-series of the corollaries, truncated to degree >= -D, u^-p with p <= P."""
    if family not in ("B", "D"):
        raise FamilyError("vanishing series exist for types B and D")
    spec = make_spec(family, n)
    tr = Truncation(P if P is not None else D + 1, D)
    lam = lambda_series(spec, tr)
    sig = {i: s.times_shift_op() for i, s in lam.items()}
    N = spec.N
    if family == "B":
        alpha = mpq(N, 2) - 2
        left = [sig[i] for i in range(1, n + 1)]
        right = [sig[spec.prime(i)] for i in range(n, 0, -1)]
        total = ShiftSeries({}, tr)
        mid = sig[n + 1] + ShiftSeries.const(2, tr)
        hl = [_h_words(left, j, tr) for j in range(D + 1)]
        hr = [_h_words(right, j, tr) for j in range(D + 1)]
        for r in range(0, D + 1):
            total = total + _h_words(left + right, r, tr) * gen_binomial(alpha, N + r - 3)
        for r in range(1, D + 2):
            acc = ShiftSeries({}, tr)
            for j in range(r):
                acc = acc + hl[j] * mid * hr[r - 1 - j]
            total = total + acc * gen_binomial(alpha, N + r - 3)
        return total
    order = list(range(1, N + 1))
    nn, nprime = n, n + 1

    def h_without(excl, r):
        return _h_words([sig[i] for i in order if i not in excl], r, tr)

    total = ShiftSeries({}, tr)
    for r in range(1, D + 1):
        c = mpq(1 if r % 2 else -1) / gen_binomial(2 * n + r - 2, n - 1)
        none = h_without({nn, nprime}, r)
        one = h_without({nprime}, r) + h_without({nn}, r) - none * 2
        total = total + none * (-r * c / (n + r - 1)) + one * ((n - 1) * c / (n + r - 1))
    return total


def vanishing_series_check(family: str, n: int, D: int, P: int = None) -> dict:
    """Every homogeneous component of degree -d, 0 <= d <= D, is zero."""
    s = vanishing_series(family, n, D, P)
    comps = s.components()
    bad = sorted(d for d in comps if d <= D)
    return {"ok": not bad, "family": family, "n": n, "degree_bound": D,
            "nonzero_degrees": [-d for d in bad]}
