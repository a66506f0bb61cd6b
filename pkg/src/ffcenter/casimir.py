"""Casimir elements of U(g_N) from symmetrizer traces and their Harish-Chandra images.

The element gamma_{2k}(omega) tr S^(2k) (F_1 + s_1) ... (F_2k + s_2k) is built
with depth-0 generators, with shifts s_a = a - k - 1 (orthogonal) or
s_a = k - a + 1 (symplectic).  Its image is compared with a multiset (or
subset) sum and with a factorial symmetric function in l_1^2..l_n^2.
"""
from __future__ import annotations

import time
from itertools import combinations, combinations_with_replacement, product

from gmpy2 import mpq

from .envu import UAlgebra, UElement, hc_classical
from .foundations import gamma_factor
from .liealg import AlgebraSpec
from .poly import Poly
from .tensor import RangeError, local_factor, symmetrizer, trace_product

MuPolynomial = Poly


def _shifts(spec: AlgebraSpec, k: int) -> list:
    m = 2 * k
    if spec.symplectic:
        return [k - a + 1 for a in range(1, m + 1)]
    return [a - k - 1 for a in range(1, m + 1)]


def _check(spec: AlgebraSpec, k: int):
    if spec.family not in "BCD":
        raise RangeError("Casimir images are defined for types B, C, D")
    if k < 1:
        raise RangeError("k must be positive")
    if spec.symplectic and 2 * k > spec.n + 1:
        raise RangeError("symplectic symmetrizer needs 2k <= n + 1")


def casimir_element(spec: AlgebraSpec, k: int) -> UElement:
    _check(spec, k)
    m = 2 * k
    alg = UAlgebra(spec, "top")
    S = symmetrizer(spec, m)
    if S.is_zero():
        # gamma has a pole exactly when the projector vanishes (sp_2, k = 1)
        return alg.zero()
    factors = [local_factor(spec, m, a, r=0, tau=0, shift=s, alg=alg)
               for a, s in enumerate(_shifts(spec, k), start=1)]
    return trace_product(spec, m, factors, S, alg) * gamma_factor(spec.omega, m)


def _mu_of(spec: AlgebraSpec, i: int) -> Poly:
    """mu_i in terms of mu_1..mu_n; the middle index and the symplectic 0 give zero."""
    if i == 0 or i == spec.prime(i):
        return Poly()
    if i <= spec.n:
        return Poly.var(i)
    return -Poly.var(spec.prime(i))


def _chain_sum(spec, k, entries, chains) -> Poly:
    shifts = _shifts(spec, k)
    out = Poly()
    for chain in chains:
        term = Poly.const(1)
        for s, idx in zip(shifts, chain):
            term = term * (_mu_of(spec, entries[idx]) + s)
        out.iadd(term)
    return out


def multiset_image(spec: AlgebraSpec, k: int) -> MuPolynomial:
    """Sum over ordered multisets (B, half-sum of two for D) or subsets (C)."""
    _check(spec, k)
    m, n = 2 * k, spec.n
    if spec.family == "B":
        entries = [i for i in range(1, spec.N + 1) if i != n + 1]
        return _chain_sum(spec, k, entries, combinations_with_replacement(range(len(entries)), m))
    if spec.family == "D":
        out = Poly()
        for skip in (n, n + 1):
            entries = [i for i in range(1, spec.N + 1) if i != skip]
            out.iadd(_chain_sum(spec, k, entries,
                                combinations_with_replacement(range(len(entries)), m)))
        return out * mpq(1, 2)
    entries = list(range(1, n + 1)) + [0] + list(range(n + 1, spec.N + 1))
    return _chain_sum(spec, k, entries, combinations(range(len(entries)), m))


def l_offsets(spec: AlgebraSpec) -> dict:
    """l_i = mu_i + offset_i."""
    n = spec.n
    base = {"B": mpq(1, 2), "D": mpq(0), "C": mpq(1)}[spec.family]
    return {i: n - i + base for i in range(1, n + 1)}


def _l_squared(spec: AlgebraSpec, i: int) -> Poly:
    l = Poly.var(i) + l_offsets(spec)[i]
    return l * l


def factorial_sym(spec: AlgebraSpec, k: int) -> MuPolynomial:
    """Factorial complete (orthogonal) or elementary (symplectic) function in l_i^2."""
    _check(spec, k)
    n = spec.n
    out = Poly()
    if spec.symplectic:
        for js in combinations(range(1, n + 1), k):
            term = Poly.const(1)
            for s, j in enumerate(js):
                term = term * (_l_squared(spec, j) - mpq(j - s) ** 2)
            out.iadd(term)
        return out * (-1) ** k
    base = mpq(1, 2) if spec.family == "B" else mpq(1)
    for js in combinations_with_replacement(range(1, n + 1), k):
        term = Poly.const(1)
        for s, j in enumerate(js):
            term = term * (_l_squared(spec, j) - (j + s - base) ** 2)
        out.iadd(term)
    return out


def partitions_below(n: int, k: int):
    """Weakly decreasing nonnegative n-tuples with sum < k."""
    for t in product(range(k), repeat=n):
        if sum(t) < k and all(t[i] >= t[i + 1] for i in range(n - 1)):
            yield t


def _top_degree_expected(spec: AlgebraSpec, k: int) -> Poly:
    n = spec.n
    sq = {i: Poly.var(i) * Poly.var(i) for i in range(1, n + 1)}
    out = Poly()
    if spec.symplectic:
        for js in combinations(range(1, n + 1), k):
            t = Poly.const(1)
            for j in js:
                t = t * sq[j]
            out.iadd(t)
        return out * (-1) ** k
    for js in combinations_with_replacement(range(1, n + 1), k):
        t = Poly.const(1)
        for j in js:
            t = t * sq[j]
        out.iadd(t)
    return out


def weyl_symmetric(spec: AlgebraSpec, p: Poly) -> bool:
    """Invariance of p, written in l_1..l_n, under permutations and sign flips of the l_i."""
    off = l_offsets(spec)
    in_l = p.substitute(lambda v: Poly.var(v) - off[v])
    n = spec.n
    for i in range(1, n + 1):
        flip = in_l.substitute(lambda v, i=i: -Poly.var(v) if v == i else Poly.var(v))
        if flip != in_l:
            return False
    for i in range(1, n):
        sw = in_l.substitute(lambda v, i=i: Poly.var({i: i + 1, i + 1: i}.get(v, v)))
        if sw != in_l:
            return False
    return True


def verify_casimir(spec: AlgebraSpec, k: int, trace: bool = True) -> dict:
    """Trace image = multiset sum = factorial function, plus vanishing below k."""
    t0 = time.perf_counter()
    ms = multiset_image(spec, k)
    fs = factorial_sym(spec, k)
    report = {"spec": spec.to_json(), "k": k, "multiset": ms, "factorial": fs,
              "multiset_eq_factorial": ms == fs}
    timings = {"sums": time.perf_counter() - t0}
    if trace:
        t1 = time.perf_counter()
        elem = casimir_element(spec, k)
        if elem.is_zero() and symmetrizer(spec, 2 * k).is_zero():
            report["trace_applicable"] = False
        else:
            img = hc_classical(spec, elem)
            report["trace_image"] = img
            report["trace_eq_multiset"] = img == ms
        timings["trace"] = time.perf_counter() - t1
    zeros = [mu for mu in partitions_below(spec.n, k)
             if ms.evaluate({i + 1: mpq(x) for i, x in enumerate(mu)}) != 0
             or fs.evaluate({i + 1: mpq(x) for i, x in enumerate(mu)}) != 0]
    report["vanishing"] = not zeros
    report["top_degree"] = ms.homogeneous_part(2 * k) == _top_degree_expected(spec, k)
    report["weyl_symmetric"] = weyl_symmetric(spec, ms)
    report["timings"] = timings
    checks = [report[c] for c in ("multiset_eq_factorial", "vanishing", "top_degree", "weyl_symmetric")]
    if "trace_eq_multiset" in report:
        checks.append(report["trace_eq_multiset"])
    report["match"] = all(checks)
    return report
