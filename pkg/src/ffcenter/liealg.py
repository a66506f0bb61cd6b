"""Structure data for gl_N, o_N and sp_N in the F_ij presentation.

The orthogonal and symplectic algebras are spanned by
F_ij = E_ij - theta_ij E_{j'i'} inside gl_N, with i' = N - i + 1 and
theta_ij = 1 (orthogonal) or eps_i eps_j (symplectic).  Each pair
{F_ij, F_{j'i'}} is represented by the member with i + j <= N, plus the
self-paired F_{ii'} in the symplectic case.  Brackets are obtained by
multiplying the defining N x N matrices, so no structure constant is typed
in by hand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from gmpy2 import mpq

FAMILIES = ("A", "B", "C", "D")


class AlphabetError(ValueError):
    """Generator indices outside the algebra's index range."""


class FamilyError(ValueError):
    """Operation not defined for this family."""


@dataclass(frozen=True)
class AlgebraSpec:
    """Family A/B/C/D and rank n.  For type A the rank is N itself (gl_N)."""

    family: str
    n: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("rank must be positive")

    # -- basic numerology -------------------------------------------------
    @property
    def N(self) -> int:
        if self.family == "B":
            return 2 * self.n + 1
        if self.family == "A":
            return self.n
        return 2 * self.n

    @property
    def orthogonal(self) -> bool:
        return self.family in ("B", "D")

    @property
    def symplectic(self) -> bool:
        return self.family == "C"

    @property
    def kappa(self) -> mpq:
        if self.family == "A":
            raise FamilyError("kappa is not defined for gl_N")
        return mpq(self.N, 2) - 1 if self.orthogonal else mpq(self.N, 2) + 1

    @property
    def omega(self) -> int:
        """Brauer parameter: N (orthogonal) or -N (symplectic)."""
        return -self.N if self.symplectic else self.N

    def prime(self, i: int) -> int:
        return self.N - i + 1

    def eps(self, i: int) -> int:
        if self.symplectic and i > self.n:
            return -1
        return 1

    def theta(self, i: int, j: int) -> int:
        return self.eps(i) * self.eps(j) if self.symplectic else 1

    @property
    def cartan_rank(self) -> int:
        """Number of mu variables: N for gl_N, n otherwise."""
        return self.N if self.family == "A" else self.n

    @property
    def symbol(self) -> str:
        return "E" if self.family == "A" else "F"

    def label(self) -> str:
        return {"A": "gl", "B": "o", "C": "sp", "D": "o"}[self.family] + f"_{self.N}"

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n}

    # -- generators -------------------------------------------------------
    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.N:
            raise AlphabetError(f"index {i} outside 1..{self.N} for {self.label()}")

    @cached_property
    def canonical_pairs(self) -> tuple:
        N = self.N
        if self.family == "A":
            return tuple(product(range(1, N + 1), repeat=2))
        pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i + j <= N]
        if self.symplectic:
            pairs += [(i, self.prime(i)) for i in range(1, N + 1)]
        return tuple(sorted(pairs))

    def canonical(self, i: int, j: int):
        """Express F_ij as (coefficient, canonical pair); coefficient 0 for F_{ii'} = 0."""
        self.check_index(i)
        self.check_index(j)
        if self.family == "A" or i + j <= self.N:
            return 1, (i, j)
        if i + j == self.N + 1:
            return (1, (i, j)) if self.symplectic else (0, None)
        return -self.theta(i, j), (self.prime(j), self.prime(i))

    def matrix(self, i: int, j: int) -> dict:
        """Sparse N x N matrix of F_ij (or E_ij) in the defining representation."""
        mat = {(i, j): mpq(1)}
        if self.family != "A":
            key = (self.prime(j), self.prime(i))
            mat[key] = mat.get(key, 0) - self.theta(i, j)
            if mat[key] == 0:
                del mat[key]
        return mat

    def decompose(self, mat: dict) -> dict:
        """Coordinates of a matrix of the algebra in the canonical basis."""
        out = {}
        for (i, j) in self.canonical_pairs:
            c = mat.get((i, j), 0)
            if c == 0:
                continue
            if self.symplectic and i + j == self.N + 1:
                c = c / 2  # F_{ii'} = 2 e_{ii'}
            out[(i, j)] = mpq(c)
        return out

    def pair_class(self, i: int, j: int) -> int:
        """-1 lowering (i > j), 0 Cartan, +1 raising (i < j)."""
        return (i < j) - (i > j)

    def weight(self, i: int, j: int) -> tuple:
        return tuple(a - b for a, b in zip(self._basis_weight(i), self._basis_weight(j)))

    def _basis_weight(self, k: int) -> tuple:
        r = self.cartan_rank
        w = [0] * r
        if self.family == "A":
            w[k - 1] = 1
        elif k <= self.n:
            w[k - 1] = 1
        elif self.prime(k) <= self.n:
            w[self.prime(k) - 1] = -1
        return tuple(w)

    @property
    def brackets(self) -> dict:
        """[(p,q), (r,s)] -> {canonical pair: coefficient}, computed once."""
        tab = self._cache.get("brackets")
        if tab is None:
            tab = {}
            mats = {p: self.matrix(*p) for p in self.canonical_pairs}
            for a, b in product(self.canonical_pairs, repeat=2):
                tab[a, b] = self.decompose(_commutator(mats[a], mats[b]))
            self._cache["brackets"] = tab
        return tab


def _matmul(x: dict, y: dict) -> dict:
    out = {}
    for (i, k), a in x.items():
        for (k2, j), b in y.items():
            if k == k2:
                out[i, j] = out.get((i, j), 0) + a * b
    return out


def _commutator(x: dict, y: dict) -> dict:
    out = _matmul(x, y)
    for key, v in _matmul(y, x).items():
        out[key] = out.get(key, 0) - v
    return {k: v for k, v in out.items() if v != 0}


def canonical_index_set(spec: AlgebraSpec) -> list:
    return list(spec.canonical_pairs)


def make_spec(family: str, n: int) -> AlgebraSpec:
    return AlgebraSpec(family.upper(), int(n))
