"""Classical W-algebras inside pi_0 = C[mu_i[r] : r < 0].

pi_0 elements are ``Poly`` objects in variables ``(i, r)``.  The extended
algebra pi_0 (x) C[tau] has tau normal-ordered to the right with
tau P = P tau + T(P), T mu_i[r] = -r mu_i[r-1].  Negative tau powers are
allowed in ``PseudoDiffOperator`` with a recorded truncation floor.
"""
from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq

from .foundations import gen_binomial
from .liealg import FamilyError
from .poly import Poly

Pi0Element = Poly
ONE = mpq(1)


def mu_var(i: int, r: int = -1) -> Poly:
    return Poly.var((i, r))


def translation_T(P: Poly) -> Poly:
    """The derivation T mu_i[r] = -r mu_i[r-1]."""
    return P.derivation(lambda v: Poly.var((v[0], v[1] - 1), -v[1]))


def T_power(P: Poly, j: int) -> Poly:
    for _ in range(j):
        if P.is_zero():
            break
        P = translation_T(P)
    return P


class Pi0TauElement:
    """sum_k P_k tau^k with P_k in pi_0.  ``floor``: exponents below it were
    discarded (None means exact)."""

    __slots__ = ("coeffs", "floor")

    def __init__(self, coeffs=None, floor=None):
        self.coeffs = {}
        self.floor = floor
        for k, p in (coeffs or {}).items():
            if not isinstance(p, Poly):
                p = Poly.const(p)
            if p and (floor is None or k >= floor):
                self.coeffs[k] = p

    @classmethod
    def tau(cls, k: int = 1):
        return cls({k: Poly.const(1)})

    @classmethod
    def atom(cls, s: int, i: int):
        """tau + s mu_i[-1]; s = 0 gives the bare tau."""
        c = {1: Poly.const(1)}
        if s:
            c[0] = mu_var(i) * s
        return cls(c)

    def coeff(self, k: int) -> Poly:
        return self.coeffs.get(k, Poly())

    def top(self) -> int:
        return max(self.coeffs, default=None)

    def apply_to_one(self) -> Poly:
        """Action on 1 in pi_0 (tau 1 = 0)."""
        if any(k < 0 for k in self.coeffs):
            raise ValueError("negative tau powers do not act on pi_0")
        return self.coeff(0)

    def _floor_with(self, other):
        fs = [f for f in (self.floor, other.floor) if f is not None]
        return min(fs) if fs else None

    def __add__(self, other):
        if not isinstance(other, Pi0TauElement):
            other = Pi0TauElement({0: other})
        fl = self._floor_with(other)
        out = {k: p.copy() for k, p in self.coeffs.items()}
        for k, p in other.coeffs.items():
            out[k] = out[k].iadd(p) if k in out else p.copy()
        return type(self)(out, fl)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -p for k, p in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        if not isinstance(other, Pi0TauElement):
            other = Pi0TauElement({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Pi0TauElement):
            return self.mul(other)
        if isinstance(other, Poly):
            return self.mul(Pi0TauElement({0: other}))
        return type(self)({k: p * other for k, p in self.coeffs.items()}, self.floor)

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return Pi0TauElement({0: other}).mul(self)
        return type(self)({k: p * other for k, p in self.coeffs.items()}, self.floor)

    def mul(self, other: "Pi0TauElement", floor=None):
        """Product with tau^a Q = sum_j binom(a, j) T^j(Q) tau^(a-j); exponents
        below ``floor`` are dropped and the result's exactness window recorded."""
        bounds = [floor] if floor is not None else []
        if other.floor is not None and self.coeffs:
            bounds.append(self.top() + other.floor)
        if self.floor is not None and other.coeffs:
            bounds.append(self.floor + other.top())
        fl = max(bounds) if bounds else None
        if fl is None and any(a < 0 for a in self.coeffs) and other.coeffs:
            raise ValueError("product needs a truncation floor")
        out = {}
        for b, Q in other.coeffs.items():
            derivs = [Q]
            for a, P in self.coeffs.items():
                j = 0
                while True:
                    e = a - j + b
                    if fl is not None and e < fl:
                        break
                    if a >= 0 and j > a:
                        break
                    c = gen_binomial(a, j)
                    while len(derivs) <= j:
                        derivs.append(translation_T(derivs[-1]))
                    D = derivs[j]
                    if D.is_zero():
                        break
                    term = P * D * c
                    if term:
                        out[e] = out[e].iadd(term) if e in out else term
                    j += 1
        cls = PseudoDiffOperator if fl is not None else Pi0TauElement
        return cls(out, fl)

    def map_coeffs(self, f):
        return type(self)({k: f(p) for k, p in self.coeffs.items()}, self.floor)

    def __eq__(self, other):
        if not isinstance(other, Pi0TauElement):
            other = Pi0TauElement({0: other})
        d = self - other
        return not d.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_json(self) -> dict:
        return {str(k): format_pi0(p) for k, p in sorted(self.coeffs.items(), reverse=True)}

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, p in sorted(self.coeffs.items(), reverse=True):
            body = format_pi0(p)
            parts.append(f"({body})" + (f"*tau^{k}" if k else ""))
        return " + ".join(parts)

    __repr__ = __str__


class PseudoDiffOperator(Pi0TauElement):
    """Pi0TauElement allowing negative tau exponents, truncated below ``floor``."""

    __slots__ = ()


def format_pi0(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m, c in sorted(p.terms.items()):
        factors = [f"mu[{i};{r}]" if isinstance(i, int) and isinstance(r, int) else str((i, r))
                   for i, r in m]
        parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


# -- noncommutative symmetric functions ----------------------------------

def nc_sym(kind: str, args: list, m: int) -> Pi0TauElement:
    """h_m (weakly increasing words) or e_m (strictly decreasing words) of the
    ordered atoms, multiplied in pi_0 (x) C[tau]."""
    if kind not in ("h", "e"):
        raise ValueError("kind must be 'h' or 'e'")
    p = len(args)
    if m == 0:
        return Pi0TauElement({0: 1})
    memo = {}

    # tail(m, b): sum of words x_{i1}..x_{im} with i1 >= b (h) or i1 < b (e)
    def tail(k, b):
        if k == 0:
            return Pi0TauElement({0: 1})
        key = (k, b)
        if key not in memo:
            acc = Pi0TauElement()
            rng = range(b, p) if kind == "h" else range(0, b)
            for i in rng:
                nb = i if kind == "h" else i
                acc = acc + args[i] * tail(k - 1, nb)
            memo[key] = acc
        return memo[key]

    return tail(m, 0 if kind == "h" else p)


def apply_operator_word(word, P: Poly) -> Poly:
    """Apply x_1 x_2 ... x_k (rightmost first) with x = (c, s, i) meaning
    c T + s mu_i[-1] acting on pi_0."""
    for c, s, i in reversed(word):
        out = translation_T(P) * c if c else Poly()
        if s:
            out = out + mu_var(i) * P * s
        P = out
    return P


def nc_sym_operator(kind: str, atoms: list, m: int) -> Poly:
    """h_m / e_m of operators c T + s mu_i[-1] applied to 1 (a direct oracle
    that never forms tau products)."""
    p = len(atoms)
    memo = {}

    def tail(k, b):
        if k == 0:
            return Poly.const(1)
        key = (k, b)
        if key not in memo:
            acc = Poly()
            rng = range(b, p) if kind == "h" else range(0, b)
            for i in rng:
                acc = acc + apply_operator_word([atoms[i]], tail(k - 1, i))
            memo[key] = acc
        return memo[key]

    return tail(m, 0 if kind == "h" else p)


# -- atom lists ------------------------------------------------------------

def miura_atoms(family: str, n: int, variant: str = "") -> list:
    """(s, i) atoms tau + s mu_i[-1], ordered as the arguments of e_m/h_m.

    variant 'minus' / 'plus' selects the two type-D lists (without -mu_n /
    without +mu_n)."""
    if family == "A":
        return [(1, i) for i in range(1, n + 1)]
    plus = [(1, i) for i in range(1, n + 1)]
    minus = [(-1, i) for i in range(n, 0, -1)]
    if family == "B":
        return plus + [(0, 0)] + minus
    if family == "C":
        return plus + minus
    if family == "D":
        if variant == "drop_plus":
            return plus[:-1] + minus
        if variant == "drop_minus":
            return plus + minus[1:]
        raise ValueError("type D atoms need variant 'drop_plus' or 'drop_minus'")
    raise FamilyError(family)


def tau_atoms(atoms) -> list:
    return [Pi0TauElement.atom(s, i) for s, i in atoms]


def op_atoms(atoms) -> list:
    return [(1, s, i) for s, i in atoms]


# -- screening operators ---------------------------------------------------

def _check_node(family: str, n: int, i: int):
    top = n - 1 if family == "A" else n
    if not 1 <= i <= top:
        raise IndexError(f"screening node {i} outside 1..{top}")
    if family == "D" and n < 2:
        raise FamilyError("type D screening needs n >= 2")


def _node_data(family: str, n: int, i: int):
    """(a_m as a function of m, list of (index, sign) for the derivative)."""
    if family != "A" and i == n:
        if family == "B":
            return (lambda m: mu_var(n, -m)), [(n, 1)]
        if family == "C":
            return (lambda m: mu_var(n, -m) * 2), [(n, 1)]
        return (lambda m: mu_var(n - 1, -m) + mu_var(n, -m)), [(n - 1, 1), (n, 1)]
    return (lambda m: mu_var(i, -m) - mu_var(i + 1, -m)), [(i, 1), (i + 1, -1)]


@lru_cache(maxsize=None)
def screening_coefficient(family: str, n: int, i: int, r: int) -> Poly:
    """Coefficient of z^r in exp(sum_m a_m z^m / m)."""
    _check_node(family, n, i)
    if r < 0:
        raise IndexError("r must be nonnegative")
    if r == 0:
        return Poly.const(1)
    a, _ = _node_data(family, n, i)
    acc = Poly()
    for m in range(1, r + 1):
        acc = acc + a(m) * screening_coefficient(family, n, i, r - m)
    return acc * mpq(1, r)


def screening_apply(family: str, n: int, i: int, P: Poly) -> Poly:
    """V_i P = sum_r V_i[r] (d/dmu_i[-r-1] -/+ ...) P, summed to the deepest variable."""
    _check_node(family, n, i)
    _, ders = _node_data(family, n, i)
    depth = max((-r for (_, r) in P.variables()), default=0)
    out = Poly()
    for r in range(depth):
        d = Poly()
        for j, s in ders:
            d = d + P.diff((j, -r - 1)) * s
        if d:
            out = out + screening_coefficient(family, n, i, r) * d
    return out


def screening_apply_tau(family: str, n: int, i: int, X: Pi0TauElement) -> Pi0TauElement:
    return X.map_coeffs(lambda p: screening_apply(family, n, i, p))


def screening_nodes(family: str, n: int) -> range:
    return range(1, n) if family == "A" else range(1, n + 1)


# -- Miura generators ------------------------------------------------------

def miura_length(family: str, n: int) -> int:
    if family not in ("A", "B", "C"):
        raise FamilyError("type D uses pseudo_diff_miura_D")
    return {"A": n, "B": 2 * n + 1, "C": 2 * n}[family]


def miura_product(family: str, n: int) -> Pi0TauElement:
    """The ordered product of first-order factors (A, B, C)."""
    if family == "D":
        raise FamilyError("type D uses pseudo_diff_miura_D")
    atoms = tau_atoms(miura_atoms(family, n))
    out = Pi0TauElement({0: 1})
    for x in reversed(atoms):
        out = out * x
    return out


def miura_generators(family: str, n: int, m_max: int) -> dict:
    """{m: E_m} read off from the tau-expansion of the Miura product."""
    L = miura_length(family, n)
    if m_max > L:
        raise RangeError(f"m_max {m_max} exceeds expansion length {L}")
    prod = miura_product(family, n)
    start = 1 if family == "A" else 2
    return {m: prod.coeff(L - m) for m in range(start, m_max + 1)}


def miura_closed_form(family: str, n: int, m: int) -> Poly:
    """e_m(T + ...) applied to 1, computed with operators on pi_0."""
    return nc_sym_operator("e", op_atoms(miura_atoms(family, n)), m)


class RangeError(ValueError):
    """Parameter outside the supported range."""


def pseudo_diff_miura_D(n: int, k_max: int) -> dict:
    """{k: E_k} for 2 <= k <= k_max from the type-D pseudo-differential product,
    multiplied left to right with tau^-1 moved rightward."""
    floor = 2 * n - 1 - k_max
    left = [Pi0TauElement.atom(-1, i) for i in range(1, n + 1)]
    right = [Pi0TauElement.atom(1, i) for i in range(n, 0, -1)]
    factors = left + [Pi0TauElement.tau(-1)] + right
    # remaining top degree after factor k
    tops = [f.top() for f in factors]
    acc = Pi0TauElement({0: 1})
    for k, f in enumerate(factors):
        rest = sum(tops[k + 1:])
        acc = acc.mul(f, floor=floor - rest)
    return {k: acc.coeff(2 * n - 1 - k) for k in range(2, k_max + 1)}


def pseudo_diff_oracle_D(n: int, k_max: int) -> dict:
    """Same coefficients via Y = tau^-1 X solved from tau Y = X (y_(k-1) = X_k - T y_k)."""
    X = Pi0TauElement({0: 1})
    for i in range(n, 0, -1):
        X = X * Pi0TauElement.atom(1, i)
    floor = 2 * n - 1 - k_max - n
    y = {}
    cur = Poly()
    for k in range(n, floor, -1):
        cur = X.coeff(k) - translation_T(cur)
        y[k - 1] = cur
    Y = PseudoDiffOperator(y, floor)
    L = Pi0TauElement({0: 1})
    for i in range(1, n + 1):
        L = L * Pi0TauElement.atom(-1, i)
    out = L.mul(Y)
    return {k: out.coeff(2 * n - 1 - k) for k in range(2, k_max + 1)}


def pfaffian_generator(n: int) -> Poly:
    """(mu_1[-1] - T) ... (mu_n[-1] - T) applied to 1."""
    return apply_operator_word([(-1, 1, i) for i in range(1, n + 1)], Poly.const(1))


def w_generators_hfamily(family: str, n: int, m: int) -> Poly:
    """h_m(T + ...) applied to 1; in type D the half-sum F_m."""
    if family == "D":
        a = nc_sym_operator("h", op_atoms(miura_atoms("D", n, "drop_plus")), m)
        b = nc_sym_operator("h", op_atoms(miura_atoms("D", n, "drop_minus")), m)
        return (a + b) * mpq(1, 2)
    return nc_sym_operator("h", op_atoms(miura_atoms(family, n)), m)


def newton_relation(family: str, n: int, m: int) -> Poly:
    """sum_k (-1)^k E_k h_(m-k) over the Miura atoms, as operators applied to 1."""
    atoms = tau_atoms(miura_atoms(family, n))
    total = Pi0TauElement()
    for k in range(m + 1):
        term = nc_sym("e", atoms, k) * nc_sym("h", atoms, m - k)
        total = total + (term if k % 2 == 0 else -term)
    return total.apply_to_one()


def verify_annihilation(family: str, n: int, elements) -> dict:
    """Apply every screening operator to every element; list the nonzero results."""
    failures = []
    for idx, P in enumerate(elements):
        for i in screening_nodes(family, n):
            r = screening_apply(family, n, i, P)
            if r:
                failures.append({"element": idx, "node": i, "result": format_pi0(r)})
    return {"ok": not failures, "checked": len(elements), "failures": failures}
