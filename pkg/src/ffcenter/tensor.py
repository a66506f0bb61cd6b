"""Sparse operators on (C^N)^{(x) m}.

Rows and columns are multi-indices (tuples in 1..N).  Entries are stored
row-major as ``{row: {col: coeff}}``; coefficients are rationals, or
UElements for generator matrices.  Operators built from P, Q and the
generator matrices preserve h-weight, so the nonzero pattern is
block-diagonal and the sparse products stay cheap.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial

from gmpy2 import mpq

from .foundations import gen_binomial
from .liealg import AlgebraSpec, FamilyError

ZERO = mpq(0)
ONE = mpq(1)


class RangeError(ValueError):
    """Parameter outside the range where the construction is defined."""


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0


class TensorOperator:
    """Sparse operator on (C^N)^{(x) m}.

    ``local`` optionally records that the operator is 1 (x) X (x) 1 with X in
    slot a; trace_product uses the N x N matrix directly in that case.
    """

    __slots__ = ("m", "N", "rows", "local")

    def __init__(self, m: int, N: int, rows=None, local=None):
        self.m = m
        self.N = N
        self.rows = {}
        self.local = local
        for r, cols in (rows or {}).items():
            kept = {c: v for c, v in cols.items() if not _is_zero(v)}
            if kept:
                self.rows[r] = kept

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, N: int, m: int) -> "TensorOperator":
        return cls(m, N, {I: {I: ONE} for I in product(range(1, N + 1), repeat=m)})

    @classmethod
    def zero(cls, N: int, m: int) -> "TensorOperator":
        return cls(m, N, {})

    @classmethod
    def from_local(cls, N: int, m: int, a: int, mat: dict) -> "TensorOperator":
        """1 (x) ... (x) X (x) ... (x) 1 with X = {(i, j): entry} in slot a (1-based)."""
        if not 1 <= a <= m:
            raise IndexError(f"slot {a} outside 1..{m}")
        rows = {}
        for rest in product(range(1, N + 1), repeat=m - 1):
            for (i, j), v in mat.items():
                row = rest[:a - 1] + (i,) + rest[a - 1:]
                col = rest[:a - 1] + (j,) + rest[a - 1:]
                rows.setdefault(row, {})[col] = v
        return cls(m, N, rows, local=(a, dict(mat)))

    # -- algebra ----------------------------------------------------------
    def _check(self, other):
        if (self.m, self.N) != (other.m, other.N):
            raise ValueError("operators act on different spaces")

    def __add__(self, other):
        self._check(other)
        rows = {r: dict(c) for r, c in self.rows.items()}
        for r, cols in other.rows.items():
            tgt = rows.setdefault(r, {})
            for c, v in cols.items():
                tgt[c] = tgt[c] + v if c in tgt else v
        return TensorOperator(self.m, self.N, rows)

    def __neg__(self):
        return self * mpq(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, TensorOperator):
            return self @ c
        return TensorOperator(self.m, self.N,
                              {r: {k: v * c for k, v in cols.items()} for r, cols in self.rows.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        self._check(other)
        out = {}
        orows = other.rows
        for r, cols in self.rows.items():
            acc = {}
            for k, a in cols.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    v = a * b
                    acc[c] = acc[c] + v if c in acc else v
            if acc:
                out[r] = acc
        return TensorOperator(self.m, self.N, out)

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not self.rows

    def entry(self, row: tuple, col: tuple):
        return self.rows.get(tuple(row), {}).get(tuple(col), ZERO)

    def nnz(self) -> int:
        return sum(len(c) for c in self.rows.values())

    def apply(self, vec: dict) -> dict:
        """Action on a vector {multi-index: coefficient}."""
        out = {}
        for r, cols in self.rows.items():
            acc = ZERO
            for c, v in cols.items():
                x = vec.get(c)
                if x:
                    acc += v * x
            if acc:
                out[r] = acc
        return out

    def trace(self):
        total = ZERO
        for r, cols in self.rows.items():
            if r in cols:
                total = total + cols[r]
        return total

    def rank(self) -> int:
        """Exact rank by sparse Gaussian elimination over Q."""
        pivots = {}
        rank = 0
        for cols in self.rows.values():
            row = {c: mpq(v) for c, v in cols.items() if v}
            while row:
                lead = min(row)
                piv = pivots.get(lead)
                if piv is None:
                    inv = 1 / row[lead]
                    pivots[lead] = {c: v * inv for c, v in row.items()}
                    rank += 1
                    break
                f = row[lead]
                for c, v in piv.items():
                    nv = row.get(c, ZERO) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        return rank

    def transpose_slots(self) -> "TensorOperator":
        out = {}
        for r, cols in self.rows.items():
            for c, v in cols.items():
                out.setdefault(c, {})[r] = v
        return TensorOperator(self.m, self.N, out)

    def to_json(self) -> dict:
        entries = []
        for r in sorted(self.rows):
            for c in sorted(self.rows[r]):
                v = self.rows[r][c]
                entries.append([list(r), list(c), v.to_json() if hasattr(v, "to_json") else str(v)])
        return {"m": self.m, "N": self.N, "entries": entries}

    def __repr__(self):
        return f"TensorOperator(m={self.m}, N={self.N}, nnz={self.nnz()})"


# -- elementary operators --------------------------------------------------

def _slots(m, a, b):
    if not 1 <= a < b <= m:
        raise IndexError(f"need 1 <= a < b <= m, got a={a}, b={b}, m={m}")


def transposition(N: int, m: int, a: int, b: int) -> TensorOperator:
    _slots(m, a, b)
    rows = {}
    for I in product(range(1, N + 1), repeat=m):
        J = list(I)
        J[a - 1], J[b - 1] = J[b - 1], J[a - 1]
        rows[tuple(J)] = {I: ONE}
    return TensorOperator(m, N, rows)


def contraction(spec: AlgebraSpec, m: int, a: int, b: int) -> TensorOperator:
    """Q_ab = sum_ij e_ij (x) e_i'j' (with eps_i eps_j in the symplectic case)."""
    _slots(m, a, b)
    if spec.family == "A":
        raise FamilyError("contraction needs an orthogonal or symplectic spec")
    N = spec.N
    rows = {}
    for I in product(range(1, N + 1), repeat=m):
        j = I[a - 1]
        if I[b - 1] != spec.prime(j):
            continue
        for i in range(1, N + 1):
            R = list(I)
            R[a - 1], R[b - 1] = i, spec.prime(i)
            rows.setdefault(tuple(R), {})[I] = mpq(spec.theta(i, j))
    return TensorOperator(m, N, rows)


def elementary_operators(spec: AlgebraSpec, m: int, a: int, b: int):
    return transposition(spec.N, m, a, b), contraction(spec, m, a, b)


def permutation_operator(N: int, m: int, s) -> TensorOperator:
    """P_s: e_{i_1} (x) ... (x) e_{i_m} -> tensor with i_k placed in slot s(k)."""
    rows = {}
    for I in product(range(1, N + 1), repeat=m):
        J = [0] * m
        for k in range(m):
            J[s[k]] = I[k]
        rows[tuple(J)] = {I: ONE}
    return TensorOperator(m, N, rows)


def _perm_sign(s) -> int:
    sgn = 1
    s = list(s)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sgn = -sgn
    return sgn


@lru_cache(maxsize=None)
def sym_antisym(N: int, m: int, kind: str) -> TensorOperator:
    """H^(m) (kind 'H') or A^(m) (kind 'A')."""
    acc = TensorOperator.zero(N, m)
    for s in permutations(range(m)):
        c = mpq(_perm_sign(s)) if kind == "A" else ONE
        acc = acc + permutation_operator(N, m, s) * c
    return acc * mpq(1, factorial(m))


def _disjoint_pair_sets(m: int, r: int):
    pairs = list(combinations(range(1, m + 1), 2))

    def rec(start, used, k):
        if k == 0:
            yield ()
            return
        for idx in range(start, len(pairs)):
            a, b = pairs[idx]
            if a in used or b in used:
                continue
            for rest in rec(idx + 1, used | {a, b}, k - 1):
                yield ((a, b),) + rest
    return rec(0, frozenset(), r)


def _check_constructible(spec: AlgebraSpec, m: int):
    if m < 1:
        raise RangeError("m must be positive")
    if spec.symplectic and m > spec.n + 1:
        raise RangeError(f"symplectic symmetrizer needs m <= n+1 = {spec.n + 1}")


def _product_form(spec: AlgebraSpec, m: int) -> TensorOperator:
    N = spec.N
    S = TensorOperator.identity(N, m)
    half = mpq(N, 2)
    for a, b in combinations(range(1, m + 1), 2):
        P, Q = elementary_operators(spec, m, a, b)
        if spec.orthogonal:
            f = TensorOperator.identity(N, m) + P * mpq(1, b - a) - Q * (1 / (half + b - a - 1))
        else:
            f = TensorOperator.identity(N, m) - P * mpq(1, b - a) - Q * mpq(1, spec.n - b + a + 1)
        S = S @ f
    return S * mpq(1, factorial(m))


def _expansion_form(spec: AlgebraSpec, m: int) -> TensorOperator:
    N = spec.N
    acc = TensorOperator.zero(N, m)
    for r in range(m // 2 + 1):
        if spec.orthogonal:
            c = mpq((-1) ** r, 2 ** r * factorial(r)) / gen_binomial(mpq(N, 2) + m - 2, r)
        else:
            c = mpq(1, 2 ** r * factorial(r)) / gen_binomial(-spec.n + m - 2, r)
        block = TensorOperator.zero(N, m)
        for pairs in _disjoint_pair_sets(m, r):
            term = TensorOperator.identity(N, m)
            for a, b in pairs:
                term = term @ contraction(spec, m, a, b)
            block = block + term
        acc = acc + block * c
    base = sym_antisym(N, m, "H" if spec.orthogonal else "A")
    return base @ acc


@lru_cache(maxsize=None)
def _symmetrizer_cached(family: str, n: int, m: int, method: str) -> TensorOperator:
    spec = AlgebraSpec(family, n)
    if family == "A":
        raise FamilyError("use sym_antisym for gl_N")
    if m == 1:
        return TensorOperator.identity(spec.N, 1)
    return _product_form(spec, m) if method == "product" else _expansion_form(spec, m)


def symmetrizer(spec: AlgebraSpec, m: int, method: str = "product", kind: str = "H") -> TensorOperator:
    """S^(m) for B/C/D by the R-matrix product or the contraction expansion;
    for type A the symmetrizer H^(m) or anti-symmetrizer A^(m) (``kind``)."""
    if method not in ("product", "expansion"):
        raise ValueError(f"unknown method {method!r}")
    if spec.family == "A":
        return sym_antisym(spec.N, m, kind)
    _check_constructible(spec, m)
    return _symmetrizer_cached(spec.family, spec.n, m, method)


def partial_trace(op: TensorOperator, positions) -> TensorOperator:
    """Trace over the 1-based slots in ``positions``; the rest keep their order."""
    pos = sorted(set(positions))
    if any(not 1 <= p <= op.m for p in pos):
        raise IndexError("trace positions outside 1..m")
    keep = [k for k in range(op.m) if k + 1 not in pos]
    tr = [p - 1 for p in pos]
    out = {}
    for r, cols in op.rows.items():
        rt = tuple(r[k] for k in tr)
        rk = tuple(r[k] for k in keep)
        for c, v in cols.items():
            if tuple(c[k] for k in tr) != rt:
                continue
            ck = tuple(c[k] for k in keep)
            row = out.setdefault(rk, {})
            row[ck] = row[ck] + v if ck in row else v
    return TensorOperator(len(keep), op.N, out)


def partial_trace_scalar(op: TensorOperator):
    """Full trace as a scalar (the m = 0 operator collapses to one entry)."""
    return op.trace()


def rank_formula(spec: AlgebraSpec, m: int) -> int:
    """Dimension of the image of S^(m) from the closed formulas."""
    from math import comb
    N = spec.N
    if spec.orthogonal:
        if N + m - 2 == 0:
            return 1
        return int(mpq(N + 2 * m - 2, N + m - 2) * comb(N + m - 2, m))
    n = spec.n
    if m > n:
        return 0
    return comb(2 * n, m) - (comb(2 * n, m - 2) if m >= 2 else 0)


def partial_trace_coefficient(spec: AlgebraSpec, m: int, k: int) -> mpq:
    """c with tr_{k+1..m} S^(m) = c S^(k)."""
    from .foundations import gamma_factor
    N = spec.N
    if spec.orthogonal:
        if k == 0:
            return mpq(rank_formula(spec, m))
        return (gamma_factor(N, k) / gamma_factor(N, m)) * gen_binomial(N + m - 2, m - k) \
            / gen_binomial(m, k)
    n = spec.n
    if k == 0:
        return mpq(rank_formula(spec, m))
    if m == n + 1:
        return ZERO
    return (gamma_factor(-N, k) / gamma_factor(-N, m)) * gen_binomial(2 * n - k + 1, m - k) \
        / gen_binomial(m, k)


# -- generator matrices and traces ----------------------------------------

def generator_matrix(spec: AlgebraSpec, m: int, a: int, r: int, alg=None) -> TensorOperator:
    """F[r]_a = sum_ij 1 (x) .. e_ij (slot a) .. (x) 1 (x) F_ij[r]."""
    from .envu import UAlgebra
    alg = alg or UAlgebra(spec, "chi")
    mat = {}
    for i in range(1, spec.N + 1):
        for j in range(1, spec.N + 1):
            g = alg.gen(i, j, r)
            if not g.is_zero():
                mat[i, j] = g
    return TensorOperator.from_local(spec.N, m, a, mat)


def local_factor(spec: AlgebraSpec, m: int, a: int, r: int = -1, tau=1, shift=0,
                 sign: int = 1, alg=None) -> TensorOperator:
    """tau*1 + shift*1 + sign*F[r]_a, kept in local form (slot a)."""
    from .envu import UAlgebra
    alg = alg or UAlgebra(spec, "chi")
    mat = {}
    for i in range(1, spec.N + 1):
        for j in range(1, spec.N + 1):
            x = alg.gen(i, j, r) * sign
            if i == j:
                x = x + alg.tau() * tau + alg.scalar(shift)
            if not x.is_zero():
                mat[i, j] = x
    op = TensorOperator(m, spec.N, {}, local=(a, mat))
    return op


def trace_product(spec: AlgebraSpec, m: int, factors, S: TensorOperator = None, alg=None):
    """tr S X_1 ... X_m for local factors X_a (slot a), normal-ordered in ``alg``.

    The U-valued entries multiply in operator order:
    tr S X_1..X_m = sum_{I,J} S[I,J] x^(1)_{j1 i1} ... x^(m)_{jm im}.
    """
    from .envu import UAlgebra, UElement
    alg = alg or UAlgebra(spec, "chi")
    if S is None:
        S = symmetrizer(spec, m)
    if len(factors) != m:
        raise ValueError("need one factor per tensor slot")
    mats = []
    for a, f in enumerate(factors, start=1):
        if f.local is None or f.local[0] != a:
            raise ValueError("trace_product needs local factors, factor a in slot a")
        mats.append({k: (v.reorder(alg.order).terms if isinstance(v, UElement) else {(): mpq(v)})
                     for k, v in f.local[1].items()})
    # free words: concatenated monomials with accumulated coefficients
    words = {}
    for I, cols in S.rows.items():
        for J, s in cols.items():
            partial = {(): s}
            for a in range(m):
                x = mats[a].get((J[a], I[a]))
                if not x:
                    partial = None
                    break
                nxt = {}
                for w, c in partial.items():
                    for mono, d in x.items():
                        key = w + mono
                        nxt[key] = nxt.get(key, ZERO) + c * d
                partial = nxt
            if partial:
                for w, c in partial.items():
                    words[w] = words.get(w, ZERO) + c
    return _normal_order_words(alg, words)


def _normal_order_words(alg, words: dict):
    from .envu import UElement
    memo = {(): {(): ONE}}

    def no(word):
        hit = memo.get(word)
        if hit is not None:
            return hit
        prev = no(word[:-1])
        out = {}
        g = word[-1]
        for M, c in prev.items():
            for M2, c2 in alg.mul_gen(M, g).items():
                v = out.get(M2, ZERO) + c * c2
                if v:
                    out[M2] = v
                else:
                    del out[M2]
        memo[word] = out
        return out

    total = {}
    for w, c in words.items():
        if not c:
            continue
        for M, d in no(w).items():
            total[M] = total.get(M, ZERO) + c * d
    return UElement(alg, total)


def operator_to_json(op: TensorOperator) -> dict:
    return op.to_json()


def verify_symmetrizer(spec: AlgebraSpec, m: int) -> dict:
    """Both constructions agree, S^2 = S, S Q = Q S = 0, S P = P S = +-S,
    rank matches the dimension formula, and partial traces are multiples of S^(k)."""
    import time
    t0 = time.perf_counter()
    S = symmetrizer(spec, m)
    E = symmetrizer(spec, m, method="expansion")
    sgn = 1 if spec.orthogonal else -1
    pq_ok = True
    for a, b in combinations(range(1, m + 1), 2):
        P, Q = elementary_operators(spec, m, a, b)
        if not ((S @ Q).is_zero() and (Q @ S).is_zero()
                and S @ P == S * sgn and P @ S == S * sgn):
            pq_ok = False
            break
    traces = {}
    for k in range(m):
        c = partial_trace_coefficient(spec, m, k)
        if k == 0:
            traces[k] = S.trace() == c
        else:
            traces[k] = partial_trace(S, range(k + 1, m + 1)) == symmetrizer(spec, k) * c
    rank = S.rank()
    report = {"spec": spec.to_json(), "m": m,
              "methods_agree": S == E,
              "idempotent": S @ S == S,
              "pq_relations": pq_ok,
              "rank": rank, "expected_rank": rank_formula(spec, m),
              "partial_traces": all(traces.values()),
              "nnz": S.nnz()}
    report["rank_ok"] = rank == report["expected_rank"]
    report["ok"] = all(report[k] for k in ("methods_agree", "idempotent", "pq_relations",
                                           "partial_traces", "rank_ok"))
    report["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return report
