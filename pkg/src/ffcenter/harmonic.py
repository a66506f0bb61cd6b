"""Explicit bases of harmonic tensors.

Symmetric tensors are identified with polynomials in z_1..z_N
(H(e_I) -> z_I) and skew-symmetric ones with exterior polynomials in
zeta_1..zeta_2n (A(e_I) -> zeta_I).  Orthogonal bases come from closed
formulas indexed by exponent tuples; the symplectic basis is built from
admissible subsets with x_a = zeta_a ^ zeta_a'.
"""
from __future__ import annotations

from itertools import product
from math import factorial

from gmpy2 import mpq

from .characters import admissible, admissible_subsets
from .liealg import AlgebraSpec
from .poly import Poly
from .tensor import RangeError, TensorOperator, rank_formula, symmetrizer

ZERO = mpq(0)
ONE = mpq(1)

CommPolynomial = Poly


class ExteriorElement:
    """Combination of strictly increasing wedge words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: mpq(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def word(cls, idx, c=1) -> "ExteriorElement":
        sgn, w = _sort_sign(idx)
        return cls({w: c * sgn} if w is not None else {})

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return ExteriorElement(t)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, c):
        return ExteriorElement({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other) -> "ExteriorElement":
        out = ExteriorElement()
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                out = out + ExteriorElement.word(a + b, c * d)
        return out

    def left_derivative(self, i: int) -> "ExteriorElement":
        out = {}
        for w, c in self.terms.items():
            if i in w:
                p = w.index(i)
                nw = w[:p] + w[p + 1:]
                out[nw] = out.get(nw, ZERO) + (c if p % 2 == 0 else -c)
        return ExteriorElement(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (self - other).is_zero()

    def __repr__(self):
        return " + ".join(f"{c}*" + "^".join(f"zeta[{i}]" for i in w) for w, c in sorted(self.terms.items())) or "0"


def _sort_sign(idx):
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, None
    sgn = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sgn = -sgn
    return sgn, tuple(idx)


# -- tuples ---------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def basis_tuples(spec: AlgebraSpec, m: int) -> list:
    """Exponent tuples over z_1..z_N (B: middle entry 0 or 1; D: k_n l_n = 0)."""
    n, N = spec.n, spec.N
    out = []
    for t in _compositions(m, N):
        if spec.family == "B" and t[n] > 1:
            continue
        if spec.family == "D" and t[n - 1] and t[n]:
            continue
        out.append(t)
    return sorted(out, key=lambda t: tuple(reversed(t)))


def _z_monomial(exps) -> tuple:
    return tuple(i for i, e in enumerate(exps, start=1) for _ in range(e))


def basis_vector_B(n: int, t: tuple) -> Poly:
    N = 2 * n + 1
    k = t[:n]
    delta = t[n]
    l = [t[N - 1 - i] for i in range(n)]  # l_i is the exponent of z_{i'}
    out = {}
    for a in product(*[range(min(k[i], l[i]) + 1) for i in range(n)]):
        s = sum(a)
        c = mpq((-2) ** s * factorial(s), factorial(2 * s + delta))
        exps = [0] * N
        for i in range(n):
            c /= factorial(a[i]) * factorial(k[i] - a[i]) * factorial(l[i] - a[i])
            exps[i] = k[i] - a[i]
            exps[N - 1 - i] = l[i] - a[i]
        exps[n] = 2 * s + delta
        mono = _z_monomial(exps)
        out[mono] = out.get(mono, ZERO) + c
    return Poly(out)


def basis_vector_D(n: int, t: tuple) -> Poly:
    N = 2 * n
    k = t[:n]
    l = [t[N - 1 - i] for i in range(n)]
    out = {}
    for a in product(*[range(min(k[i], l[i]) + 1) for i in range(n - 1)]):
        s = sum(a)
        c = mpq((-1) ** s * factorial(s), factorial(s + k[n - 1]) * factorial(s + l[n - 1]))
        exps = [0] * N
        for i in range(n - 1):
            c /= factorial(a[i]) * factorial(k[i] - a[i]) * factorial(l[i] - a[i])
            exps[i] = k[i] - a[i]
            exps[N - 1 - i] = l[i] - a[i]
        exps[n - 1] = s + k[n - 1]
        exps[n] = s + l[n - 1]
        mono = _z_monomial(exps)
        out[mono] = out.get(mono, ZERO) + c
    return Poly(out)


# -- symplectic -----------------------------------------------------------

def _split_subset(n: int, subset):
    """(a-tuple, b-tuple): paired entries a <= n with a' present, and the rest."""
    s = set(subset)
    a = tuple(sorted(i for i in s if i <= n and 2 * n - i + 1 in s))
    paired = set(a) | {2 * n - i + 1 for i in a}
    b = tuple(sorted(s - paired))
    return a, b


def c_family(n: int, subset) -> tuple:
    """c_k > ... > c_1 chosen greedily (largest first) with a_i < c_i < c_{i+1}
    and neither c_i nor c_i' in the subset."""
    a, _ = _split_subset(n, subset)
    s = set(subset)
    cs = [0] * len(a)
    upper = n + 1
    for i in range(len(a) - 1, -1, -1):
        cand = [c for c in range(a[i] + 1, upper)
                if c not in s and 2 * n - c + 1 not in s]
        if not cand:
            raise ValueError(f"subset {subset} admits no c-family")
        cs[i] = max(cand)
        upper = cs[i]
    return tuple(cs)


def _x(n: int, a: int) -> ExteriorElement:
    return ExteriorElement.word((a, 2 * n - a + 1))


def basis_vector_C(n: int, subset) -> ExteriorElement:
    """prod_i (x_{a_i} - x_{c_i}) ^ y for an admissible subset."""
    a, b = _split_subset(n, subset)
    cs = c_family(n, subset)
    v = ExteriorElement.word(())
    for ai, ci in zip(a, cs):
        v = v.wedge(_x(n, ai) - _x(n, ci))
    return v.wedge(ExteriorElement.word(b))


def refined_basis_C(n: int, m: int) -> dict:
    """Eliminate extra admissible monomials, from the lex-largest subset down."""
    subs = admissible_subsets(n, m)
    raw = {s: basis_vector_C(n, s) for s in subs}
    key = {s: _split_subset(n, s) for s in subs}
    done = {}
    for s in sorted(subs, key=lambda s: (key[s][1], key[s][0]), reverse=True):
        v = raw[s]
        changed = True
        while changed:
            changed = False
            for w, c in sorted(v.terms.items()):
                if w != s and admissible(n, w):
                    if w not in done:
                        raise RuntimeError(f"elimination order broken at {w}")
                    lead = done[w].terms[w]
                    v = v - done[w] * (c / lead)
                    changed = True
                    break
        done[s] = v
    return {s: done[s] for s in subs}


# -- public API ------------------------------------------------------------

def basis(spec: AlgebraSpec, m: int, refined: bool = False):
    """Basis of harmonic tensors of degree m: [(label, vector)]."""
    if m < 1:
        raise RangeError("m must be positive")
    if spec.family == "B":
        return [(t, basis_vector_B(spec.n, t)) for t in basis_tuples(spec, m)]
    if spec.family == "D":
        return [(t, basis_vector_D(spec.n, t)) for t in basis_tuples(spec, m)]
    if spec.family == "C":
        if m > spec.n:
            return []  # no skew harmonic tensors beyond degree n
        if refined:
            return list(refined_basis_C(spec.n, m).items())
        return [(s, basis_vector_C(spec.n, s)) for s in admissible_subsets(spec.n, m)]
    raise RangeError("harmonic bases exist for types B, C, D")


def laplacian(spec: AlgebraSpec, v):
    """B: sum d_i d_i' + (1/2) d_{n+1}^2;  D: sum d_i d_i';  C: sum d_i d_i' (left derivatives)."""
    n = spec.n
    if isinstance(v, ExteriorElement):
        out = ExteriorElement()
        for i in range(1, n + 1):
            out = out + v.left_derivative(spec.prime(i)).left_derivative(i)
        return out
    out = Poly()
    for i in range(1, n + 1):
        out = out + v.diff(i).diff(spec.prime(i))
    if spec.family == "B":
        out = out + v.diff(n + 1).diff(n + 1) * mpq(1, 2)
    return out


def _support(v):
    return v.terms.keys()


def _independent(vectors) -> bool:
    rows = {k: dict(v.terms) for k, v in enumerate(vectors)}
    op = TensorOperator(1, 1, {(k,): {(mono,): c for mono, c in r.items()} for k, r in rows.items()})
    return op.rank() == len(vectors)


def _leading_ok(spec: AlgebraSpec, label, v) -> bool:
    n = spec.n
    if spec.family == "B":
        lead = [mo for mo in _support(v) if mo.count(n + 1) <= 1]
        return lead == [_z_monomial(label)]
    if spec.family == "D":
        lead = [mo for mo in _support(v) if min(mo.count(n), mo.count(n + 1)) == 0]
        return lead == [_z_monomial(label)]
    lead = [w for w in _support(v) if admissible(n, w)]
    return lead == [tuple(label)]


def tensor_lift(spec: AlgebraSpec, m: int, v) -> dict:
    """Vector in (C^N)^{(x) m} representing a polynomial / exterior element."""
    from itertools import permutations
    out = {}
    skew = isinstance(v, ExteriorElement)
    for mono, c in v.terms.items():
        perms = set(permutations(mono)) if not skew else list(permutations(mono))
        weight = c / len(perms) if not skew else c / factorial(m)
        for p in perms:
            sgn = _sort_sign(p)[0] if skew else 1
            out[p] = out.get(p, ZERO) + weight * sgn
    return {k: x for k, x in out.items() if x}


def verify_basis(spec: AlgebraSpec, m: int, image_check: bool = True) -> dict:
    """Harmonicity, count, independence, leading monomials and S^(m)-image consistency."""
    vecs = basis(spec, m, refined=spec.family == "C")
    harmonic = all(laplacian(spec, v).is_zero() for _, v in vecs)
    expected = rank_formula(spec, m)
    count_ok = len(vecs) == expected
    indep = _independent([v for _, v in vecs])
    leading = all(_leading_ok(spec, lab, v) for lab, v in vecs)
    report = {"spec": spec.to_json(), "m": m, "count": len(vecs), "expected": expected,
              "harmonic": harmonic, "count_ok": count_ok, "independent": indep,
              "leading_monomials": leading}
    if image_check and not (spec.symplectic and m > spec.n + 1):
        S = symmetrizer(spec, m)
        report["image_fixed"] = all(S.apply(tensor_lift(spec, m, v)) == tensor_lift(spec, m, v)
                                    for _, v in vecs)
    if spec.family == "C":
        raw = basis(spec, m)
        report["raw_harmonic"] = all(laplacian(spec, v).is_zero() for _, v in raw)
        report["raw_minimal_monomial"] = all(min(v.terms) == tuple(s) for s, v in raw)
    report["ok"] = all(v for k, v in report.items() if isinstance(v, bool))
    return report
