"""Segal-Sugawara vectors from symmetrizer traces and their Harish-Chandra images.

phi_{ma} are the coefficients of
    gamma_m(omega) tr S^(m) (tau + F[-1]_1) ... (tau + F[-1]_m)
written with tau on the right.  The images under hc_chi are compared with
noncommutative complete / elementary symmetric functions of the atoms
tau +- mu_i[-1].  The u-series form works in U(g[t]) with the ring of
differential operators in u, truncated in powers of u^-1.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial

from gmpy2 import mpq

from .envu import TAU, UAlgebra, UElement, hc_chi, hc_top
from .foundations import PoleError, gamma_factor
from .liealg import AlgebraSpec, FamilyError, make_spec
from .poly import Poly
from .tensor import (RangeError, local_factor, sym_antisym, symmetrizer,
                     trace_product)
from .walg import Pi0TauElement, format_pi0, miura_atoms, nc_sym, tau_atoms

ZERO = mpq(0)
ONE = mpq(1)

__all__ = ["TauPolynomial", "phi_coefficients", "nc_sym", "pfaffian_ssv",
           "pfaffian_rhs", "main_theorem_rhs", "verify_main_theorem",
           "verify_glN_images", "current_algebra_verify", "DiffSeries"]


@dataclass
class TauPolynomial:
    """c_0 tau^m + c_1 tau^(m-1) + ... + c_m with UElement coefficients."""

    m: int
    coeffs: list
    alg: UAlgebra = field(repr=False)

    @classmethod
    def from_element(cls, x: UElement, m: int) -> "TauPolynomial":
        split = x.tau_split()
        if any(k > m for k in split):
            raise ValueError("tau degree exceeds m")
        return cls(m, [split.get(m - a, x.alg.zero()) for a in range(m + 1)], x.alg)

    def element(self) -> UElement:
        out = self.alg.zero()
        for a, c in enumerate(self.coeffs):
            k = self.m - a
            out = out + UElement(self.alg, {mono + (TAU,) * k: v for mono, v in c.terms.items()})
        return out

    def __getitem__(self, a: int) -> UElement:
        return self.coeffs[a]

    def to_json(self) -> dict:
        return {"m": self.m, "coefficients": [c.to_json() for c in self.coeffs]}

    def __str__(self):
        return "\n".join(f"phi[{self.m},{a}] = {c}" for a, c in enumerate(self.coeffs))


def _check_range(spec: AlgebraSpec, m: int):
    if m < 1:
        raise RangeError("m must be positive")
    if spec.symplectic and m > spec.n + 1:
        raise RangeError(f"symplectic traces need m <= n+1 (values up to 2n+1 need a "
                         f"continuation in n that is not implemented)")


def phi_coefficients(spec: AlgebraSpec, m: int, kind: str = "H", order: str = "chi") -> TauPolynomial:
    """gamma_m(omega) tr S^(m) prod_a (tau + F[-1]_a), split by tau power.

    For gl_N the trace uses H^(m) (kind 'H') or A^(m) (kind 'A') and no
    gamma factor."""
    _check_range(spec, m)
    alg = UAlgebra(spec, order)
    if spec.family == "A":
        if kind == "A" and m > spec.N:
            raise RangeError("anti-symmetrizer vanishes for m > N")
        S = sym_antisym(spec.N, m, kind)
        scale = ONE
    else:
        S = symmetrizer(spec, m)
        try:
            scale = gamma_factor(spec.omega, m)
        except PoleError:
            if not S.is_zero():
                raise
            return TauPolynomial(m, [alg.zero() for _ in range(m + 1)], alg)
    factors = [local_factor(spec, m, a, r=-1, tau=1, alg=alg) for a in range(1, m + 1)]
    x = trace_product(spec, m, factors, S=S, alg=alg) * scale
    return TauPolynomial.from_element(x, m)


def phi_element(spec: AlgebraSpec, m: int, kind: str = "H", order: str = "chi") -> UElement:
    return phi_coefficients(spec, m, kind, order).element()


# -- right-hand sides -----------------------------------------------------

def main_theorem_rhs(spec: AlgebraSpec, m: int) -> Pi0TauElement:
    """h_m / e_m expressions in the atoms tau +- mu_i[-1] for types B, D, C."""
    _check_range(spec, m)
    n = spec.n
    if spec.family == "B":
        return nc_sym("h", tau_atoms(miura_atoms("C", n)), m)
    if spec.family == "C":
        if m == n + 1:
            return Pi0TauElement()
        return nc_sym("e", tau_atoms(miura_atoms("B", n)), m)
    if spec.family == "D":
        a = nc_sym("h", tau_atoms(miura_atoms("D", n, "drop_plus")), m)
        b = nc_sym("h", tau_atoms(miura_atoms("D", n, "drop_minus")), m)
        return (a + b) * mpq(1, 2)
    raise FamilyError("use verify_glN_images for type A")


def pfaffian_ssv(n: int, alg: UAlgebra = None) -> UElement:
    """Noncommutative Pfaffian of the matrix tilde F[-1]_{ij} = F_{ij'}[-1] in o_2n."""
    spec = make_spec("D", n)
    alg = alg or UAlgebra(spec, "chi")
    N = 2 * n
    gens = {(i, j): alg.gen(i, spec.prime(j), -1) for i in range(1, N + 1) for j in range(1, N + 1)}
    out = alg.zero()
    for s in permutations(range(1, N + 1)):
        sgn = _sign(s)
        term = alg.scalar(sgn)
        for k in range(n):
            g = gens[s[2 * k], s[2 * k + 1]]
            if g.is_zero():
                term = None
                break
            term = term * g
        if term is not None:
            out = out + term
    return out * mpq(1, 2 ** n * factorial(n))


def _sign(s) -> int:
    sgn = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sgn = -sgn
    return sgn


def pfaffian_rhs(n: int) -> Pi0TauElement:
    """(mu_1[-1] - tau) ... (mu_n[-1] - tau) 1."""
    out = Pi0TauElement({0: 1})
    for i in range(1, n + 1):
        out = out * Pi0TauElement({0: Poly.var((i, -1)), 1: Poly.const(-1)})
    return Pi0TauElement({0: out.apply_to_one()})


# -- verification ----------------------------------------------------------

def _report(lhs: Pi0TauElement, rhs: Pi0TauElement, t0: float, **extra) -> dict:
    diff = lhs - rhs
    return {"match": diff.is_zero(), "lhs": lhs.to_json(), "rhs": rhs.to_json(),
            "diff": diff.to_json(), "timings": {"seconds": round(time.perf_counter() - t0, 3)},
            **extra}


def verify_main_theorem(spec: AlgebraSpec, m: int) -> dict:
    """hc_chi of gamma_m tr S^(m)(tau + F[-1]_1)..(tau + F[-1]_m) against main_theorem_rhs."""
    t0 = time.perf_counter()
    x = phi_element(spec, m)
    lhs = hc_chi(spec, x)
    rhs = main_theorem_rhs(spec, m)
    return _report(lhs, rhs, t0, spec=spec.to_json(), m=m)


def verify_pfaffian(n: int) -> dict:
    t0 = time.perf_counter()
    spec = make_spec("D", n)
    lhs = hc_chi(spec, pfaffian_ssv(n))
    return _report(lhs, pfaffian_rhs(n), t0, spec=spec.to_json())


def verify_glN_images(N: int, m: int, kind: str = "H") -> dict:
    """hc_chi of tr A^(m) / H^(m) (tau + E[-1]_1)... against e_m / h_m(tau + mu_i[-1])."""
    if kind not in ("A", "H"):
        raise ValueError("kind must be 'A' or 'H'")
    if kind == "A" and m > N:
        raise RangeError("m <= N required for the anti-symmetrizer")
    t0 = time.perf_counter()
    spec = make_spec("A", N)
    lhs = hc_chi(spec, phi_element(spec, m, kind))
    rhs = nc_sym("e" if kind == "A" else "h", tau_atoms(miura_atoms("A", N)), m)
    return _report(lhs, rhs, t0, N=N, m=m, kind=kind)


def phi_commutator(spec: AlgebraSpec, m1: int, m2: int) -> dict:
    """Commutators [phi_{m1 a}, phi_{m2 b}] for all a, b; all should vanish."""
    p = phi_coefficients(spec, m1)
    q = phi_coefficients(spec, m2)
    nonzero = []
    for a, x in enumerate(p.coeffs):
        for b, y in enumerate(q.coeffs):
            if not x.commutator(y).is_zero():
                nonzero.append([a, b])
    return {"commute": not nonzero, "nonzero": nonzero}


# -- u-series form ---------------------------------------------------------

class DiffSeries:
    """sum c_{p,a} u^-p d_u^a with coefficients commuting with u and d_u,
    truncated to p <= P."""

    __slots__ = ("terms", "P")

    def __init__(self, terms, P: int):
        self.P = P
        self.terms = {k: v for k, v in terms.items() if k[0] <= P and not _zero(v)}

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return DiffSeries(t, min(self.P, other.P))

    def __mul__(self, other):
        if not isinstance(other, DiffSeries):
            return DiffSeries({k: v * other for k, v in self.terms.items()}, self.P)
        P = min(self.P, other.P)
        out = {}
        for (p, a), c1 in self.terms.items():
            for (q, b), c2 in other.terms.items():
                for j, s in _d_past_u(a, q):
                    pp = p + q + j
                    if pp > P:
                        break
                    v = c1 * c2 * s
                    key = (pp, a - j + b)
                    out[key] = out[key] + v if key in out else v
        return DiffSeries(out, P)

    def map(self, f):
        return DiffSeries({k: f(v) for k, v in self.terms.items()}, self.P)


def _zero(v) -> bool:
    return v.is_zero() if hasattr(v, "is_zero") else v == 0


def _d_past_u(a: int, q: int):
    """d^a u^-q = sum_j binom(a, j) (-1)^j q(q+1)..(q+j-1) u^(-q-j) d^(a-j)."""
    from math import comb
    out = []
    rising = 1
    for j in range(a + 1):
        if j > 0:
            rising *= q + j - 1
            if rising == 0:
                break
        out.append((j, mpq(comb(a, j) * rising * (-1) ** j)))
    return out


def _scalar_op(word, P: int) -> DiffSeries:
    """Product of u^-p d^a factors given as a word of (p, a)."""
    out = DiffSeries({(0, 0): ONE}, P)
    for p, a in word:
        out = out * DiffSeries({(p, a): ONE}, P)
    return out


def current_algebra_lhs(spec: AlgebraSpec, m: int, d: int, sign: int = None) -> DiffSeries:
    """gamma_m tr S^(m) (d_u + s F_1(u)) ... (d_u + s F_m(u)) with F(u) truncated
    at depth d, coefficients normal-ordered in the top order, u^-p kept for p <= d."""
    if spec.family == "A":
        raise FamilyError("current-algebra form implemented for B, C, D")
    if spec.symplectic and m > spec.n:
        raise RangeError("symplectic current-algebra form needs m <= n")
    if sign is None:
        sign = -1 if spec.symplectic else 1
    alg = UAlgebra(spec, "top")
    S = symmetrizer(spec, m)
    scale = gamma_factor(spec.omega, m)
    N = spec.N
    # entry x_{ji}: list of (generator-word, (p, a), coefficient)
    entries = {}
    for j in range(1, N + 1):
        for i in range(1, N + 1):
            terms = []
            if i == j:
                terms.append(((), (0, 1), ONE))
            for r in range(d):
                g = alg.gen(j, i, r)
                for mono, c in g.terms.items():
                    terms.append((mono, (r + 1, 0), c * sign))
            entries[j, i] = terms
    words = {}
    for I, cols in S.rows.items():
        for J, s in cols.items():
            partial = {((), ()): s}
            for a in range(m):
                nxt = {}
                for (gw, ow), c in partial.items():
                    for mono, op, e in entries[J[a], I[a]]:
                        if sum(p for p, _ in ow) + op[0] > d:
                            continue
                        key = (gw + mono, ow + (op,))
                        nxt[key] = nxt.get(key, ZERO) + c * e
                partial = nxt
            for k, c in partial.items():
                words[k] = words.get(k, ZERO) + c
    from .tensor import _normal_order_words
    by_op = {}
    for (gw, ow), c in words.items():
        if c:
            by_op.setdefault(ow, {})[gw] = c
    out = DiffSeries({}, d)
    for ow, gws in by_op.items():
        coeff = _normal_order_words(alg, gws) * scale
        op = _scalar_op(ow, d)
        out = out + op.map(lambda s, coeff=coeff: coeff * s)
    return out


def current_algebra_rhs(spec: AlgebraSpec, m: int, d: int) -> DiffSeries:
    """h_m / e_m of d_u + mu_i(u) (mu_i'(u) = -mu_i(u)), truncated like the lhs."""
    n = spec.n

    def atom(s, i):
        t = {(0, 1): Poly.const(1)}
        if s:
            for r in range(d):
                t[r + 1, 0] = Poly.var((i, r)) * s
        return DiffSeries(t, d)

    def sym(kind, atoms):
        p = len(atoms)
        memo = {}

        def tail(k, b):
            if k == 0:
                return DiffSeries({(0, 0): Poly.const(1)}, d)
            if (k, b) not in memo:
                acc = DiffSeries({}, d)
                for i in (range(b, p) if kind == "h" else range(0, b)):
                    acc = acc + atoms[i] * tail(k - 1, i)
                memo[k, b] = acc
            return memo[k, b]
        return tail(m, 0 if kind == "h" else p)

    if spec.family == "B":
        return sym("h", [atom(s, i) for s, i in miura_atoms("C", n)])
    if spec.family == "C":
        return sym("e", [atom(s, i) for s, i in miura_atoms("B", n)])
    a = sym("h", [atom(s, i) for s, i in miura_atoms("D", n, "drop_plus")])
    b = sym("h", [atom(s, i) for s, i in miura_atoms("D", n, "drop_minus")])
    return (a + b) * mpq(1, 2)


def current_algebra_verify(spec: AlgebraSpec, m: int, d: int) -> dict:
    """Compare hc_top of the u-series trace with the h_m / e_m form on all
    coefficients u^-p d^a with p <= d (the ones unaffected by truncating F(u))."""
    if d < m:
        raise RangeError("depth must be at least m")
    t0 = time.perf_counter()
    lhs_u = current_algebra_lhs(spec, m, d)
    lhs = {k: hc_top(spec, v).coeff(0) for k, v in lhs_u.terms.items()}
    rhs = current_algebra_rhs(spec, m, d).terms
    keys = sorted(set(lhs) | set(rhs))
    mism = []
    for k in keys:
        a = lhs.get(k, Poly())
        b = rhs.get(k, Poly())
        if a != b:
            mism.append({"u_power": -k[0], "d_power": k[1], "lhs": format_pi0(a), "rhs": format_pi0(b)})
    return {"match": not mism, "spec": spec.to_json(), "m": m, "depth": d,
            "checked_coefficients": len(keys), "window": f"u^-p with p <= {d}",
            "diff": mism, "timings": {"seconds": round(time.perf_counter() - t0, 3)}}
