"""The verification matrix, grouped by suite and acceptance criterion.

Each item is a zero-argument callable returning a report dict with a boolean
``ok``.  The CLI ``verify`` command and the acceptance tests both consume it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from .casimir import factorial_sym, multiset_image, verify_casimir
from .characters import admissible_subsets, char_sum, kappa_vanishing_check, vanishing_series_check
from .foundations import verify_resummation_identity
from .harmonic import verify_basis
from .liealg import make_spec
from .poly import Poly
from .sugawara import (current_algebra_verify, phi_commutator, verify_glN_images,
                       verify_main_theorem, verify_pfaffian)
from .tensor import rank_formula, symmetrizer, verify_symmetrizer
from .walg import (miura_closed_form, miura_generators, miura_length, newton_relation,
                   pfaffian_generator, pseudo_diff_miura_D, pseudo_diff_oracle_D,
                   verify_annihilation, w_generators_hfamily)

SUITES = ("main-theorem", "pfaffian", "gln", "current-algebra", "symmetrizer", "walg",
          "characters", "harmonic", "casimir", "commutativity", "resummation")


@dataclass(frozen=True)
class Item:
    criterion: int
    suite: str
    label: str
    run: Callable[[], dict] = field(compare=False)


def _flag(report: dict, key: str) -> dict:
    report.setdefault("ok", bool(report[key]))
    return report


# -- per-suite runners -----------------------------------------------------

def main_theorem(family, n, m):
    return _flag(verify_main_theorem(make_spec(family, n), m), "match")


def pfaffian(n):
    return _flag(verify_pfaffian(n), "match")


def gln(N, m, kind):
    return _flag(verify_glN_images(N, m, kind), "match")


def current_algebra(family, n, m, depth=4):
    return _flag(current_algebra_verify(make_spec(family, n), m, depth), "match")


def symmetrizer_check(family, n, m):
    return verify_symmetrizer(make_spec(family, n), m)


def zero_symmetrizer(family, n, m):
    S = symmetrizer(make_spec(family, n), m)
    return {"ok": S.is_zero(), "nnz": S.nnz()}


def miura_annihilation(family, n, m_max=6):
    m_max = min(m_max, miura_length(family, n))
    gens = miura_generators(family, n, m_max)
    closed = all(gens[m] == miura_closed_form(family, n, m) for m in gens)
    rep = verify_annihilation(family, n, list(gens.values()))
    rep["closed_form_agrees"] = closed
    rep["ok"] = rep["ok"] and closed
    return rep


def pseudo_diff_annihilation(n, k_max):
    gens = pseudo_diff_miura_D(n, k_max)
    oracle = pseudo_diff_oracle_D(n, k_max)
    rep = verify_annihilation("D", n, list(gens.values()))
    rep["oracle_agrees"] = gens == oracle
    rep["ok"] = rep["ok"] and rep["oracle_agrees"]
    return rep


def pfaffian_annihilation(n):
    return verify_annihilation("D", n, [pfaffian_generator(n)])


def hfamily_annihilation(family, n, m_max):
    return verify_annihilation(family, n, [w_generators_hfamily(family, n, m)
                                           for m in range(1, m_max + 1)])


def newton(family, n, m_max=6):
    bad = [m for m in range(1, m_max + 1) if newton_relation(family, n, m)]
    return {"ok": not bad, "nonzero_degrees": bad}


def char_count(family, n, m):
    spec = make_spec(family, n)
    c = char_sum(spec, m)["count"]
    return {"ok": c == rank_formula(spec, m), "count": c, "rank": rank_formula(spec, m)}


def admissible_count(n, m):
    c = len(admissible_subsets(n, m))
    expected = rank_formula(make_spec("C", n), m)
    return {"ok": c == expected, "count": c, "expected": expected}


def kappa(n, trials=20, seed=0):
    return kappa_vanishing_check(n, trials=trials, seed=seed)


def series(family, n, D=4):
    return vanishing_series_check(family, n, D)


def harmonic(family, n, m):
    return verify_basis(make_spec(family, n), m)


def casimir(family, n, k):
    rep = verify_casimir(make_spec(family, n), k)
    rep["ok"] = rep["match"]
    return rep


def casimir_anchor_o3():
    img = multiset_image(make_spec("B", 1), 1)
    expected = Poly.var(1) * Poly.var(1) + Poly.var(1)
    return {"ok": img == expected, "image": str(img)}


def casimir_anchor_sp4():
    spec = make_spec("C", 2)
    rep = verify_casimir(spec, 1)
    return {"ok": rep["match"] and factorial_sym(spec, 1) == rep["trace_image"]}


def commutativity(family, n, m1, m2):
    rep = phi_commutator(make_spec(family, n), m1, m2)
    rep["ok"] = rep["commute"]
    return rep


def resummation(family, N, m_max=6):
    bad = [(m, k) for m in range(1, m_max + 1) for k in range(m + 1)
           if not verify_resummation_identity(family, N, m, k)]
    return {"ok": not bad, "failures": bad}


# -- the matrix ------------------------------------------------------------

def acceptance_items(seed: int = 0) -> list:
    it = []

    def add(c, suite, label, fn, *args):
        it.append(Item(c, suite, label, lambda: fn(*args)))

    for m in range(1, 5):
        add(1, "main-theorem", f"B n=1 m={m}", main_theorem, "B", 1, m)
    for m in range(1, 4):
        add(1, "main-theorem", f"B n=2 m={m}", main_theorem, "B", 2, m)
    for m in range(1, 4):
        add(2, "main-theorem", f"D n=2 m={m}", main_theorem, "D", 2, m)
    for n in (2, 3):
        add(2, "pfaffian", f"Pfaffian n={n}", pfaffian, n)
    add(3, "main-theorem", "C n=1 m=1", main_theorem, "C", 1, 1)
    for m in (1, 2):
        add(3, "main-theorem", f"C n=2 m={m}", main_theorem, "C", 2, m)
    add(3, "symmetrizer", "sp2 S^(2) = 0", zero_symmetrizer, "C", 1, 2)
    add(3, "symmetrizer", "sp4 S^(3) = 0", zero_symmetrizer, "C", 2, 3)
    for N in (2, 3):
        for m in range(1, 4):
            add(4, "gln", f"gl{N} H m={m}", gln, N, m, "H")
            if m <= N:
                add(4, "gln", f"gl{N} A m={m}", gln, N, m, "A")
    for fam, n, ms in (("B", 1, (1, 2)), ("C", 1, (1,)), ("D", 2, (1, 2))):
        for m in ms:
            add(5, "current-algebra", f"{fam} n={n} m={m} depth 4", current_algebra, fam, n, m, 4)
    for fam, n in (("D", 1), ("B", 1), ("C", 1), ("C", 2), ("D", 2), ("B", 2)):
        for m in range(1, 5):
            if fam == "C" and m > n + 1:
                continue
            add(6, "symmetrizer", f"{fam} n={n} m={m}", symmetrizer_check, fam, n, m)
    for n in (1, 2, 3):
        add(7, "walg", f"Miura A n={n}", miura_annihilation, "A", n)
    for fam in ("B", "C"):
        for n in (1, 2):
            add(7, "walg", f"Miura {fam} n={n}", miura_annihilation, fam, n)
    add(7, "walg", "pseudo-differential D n=2 k<=4", pseudo_diff_annihilation, 2, 4)
    for n in (2, 3):
        add(7, "walg", f"Pfaffian generator D n={n}", pfaffian_annihilation, n)
    add(7, "walg", "F_m family D n=2 m<=6", hfamily_annihilation, "D", 2, 6)
    for fam, n in (("A", 3), ("B", 1), ("B", 2), ("C", 1), ("C", 2)):
        add(7, "walg", f"h-family {fam} n={n} m<=6", hfamily_annihilation, fam, n, 6)
    for fam, n in (("A", 3), ("B", 2), ("C", 2)):
        add(7, "walg", f"Newton relation {fam} n={n} m<=6", newton, fam, n, 6)
    for fam, n, mmax in (("B", 1, 4), ("B", 2, 4), ("C", 1, 1), ("C", 2, 2), ("C", 3, 3),
                         ("D", 1, 4), ("D", 2, 4)):
        for m in range(1, mmax + 1):
            add(8, "characters", f"char count {fam} n={n} m={m}", char_count, fam, n, m)
    for n in range(1, 5):
        for m in range(1, n + 1):
            add(8, "characters", f"admissible count n={n} m={m}", admissible_count, n, m)
    for n in (1, 2, 3):
        add(8, "characters", f"kappa check n={n}", kappa, n, 20, seed)
    for fam, n in (("B", 1), ("B", 2), ("D", 2)):
        add(8, "characters", f"vanishing series {fam} n={n} degree 4", series, fam, n, 4)
    for fam, n, ms in (("B", 1, 3), ("B", 2, 3), ("D", 2, 3), ("C", 1, 3), ("C", 2, 3), ("C", 3, 3)):
        for m in range(1, ms + 1):
            add(9, "harmonic", f"{fam} n={n} m={m}", harmonic, fam, n, m)
    for fam, n, k in (("B", 1, 1), ("B", 1, 2), ("D", 2, 1), ("B", 2, 1), ("C", 2, 1)):
        add(10, "casimir", f"{fam} n={n} k={k}", casimir, fam, n, k)
    add(10, "casimir", "o3 k=1 anchor", casimir_anchor_o3)
    add(10, "casimir", "sp4 k=1 factorial elementary form", casimir_anchor_sp4)
    for m1, m2 in ((1, 1), (1, 2), (1, 3), (2, 2)):
        add(11, "commutativity", f"B n=1 m={m1},{m2}", commutativity, "B", 1, m1, m2)
    for m1, m2 in ((1, 1), (1, 2), (2, 2)):
        add(11, "commutativity", f"C n=2 m={m1},{m2}", commutativity, "C", 2, m1, m2)
    for fam, Ns in (("B", (3, 5, 7)), ("C", (2, 4, 6)), ("D", (4, 6))):
        for N in Ns:
            add(0, "resummation", f"{fam} N={N}", resummation, fam, N)
    return it


def run_items(items) -> list:
    out = []
    for item in items:
        t0 = time.perf_counter()
        try:
            rep = item.run()
            ok = bool(rep.get("ok"))
            err = None
        except Exception as exc:  # reported, not swallowed: ok=False with the message
            ok, err = False, f"{type(exc).__name__}: {exc}"
        out.append({"criterion": item.criterion, "suite": item.suite, "label": item.label,
                    "ok": ok, "error": err, "seconds": round(time.perf_counter() - t0, 3)})
    return sorted(out, key=lambda r: (r["criterion"], r["suite"], r["label"]))
