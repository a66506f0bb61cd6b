"""Command-line driver: ffcenter <subcommand> [flags].

Output is JSON (with a top-level "schema": "1") or plain text.  Exit codes:
0 success or match, 1 verification mismatch, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from gmpy2 import mpq

from . import suites
from .casimir import casimir_element, factorial_sym, multiset_image, verify_casimir
from .characters import admissible_subsets, char_sum, kappa_vanishing_check, vanishing_series_check
from .envu import UElement, hc_chi, hc_top
from .foundations import qstr
from .harmonic import basis, verify_basis
from .liealg import AlgebraSpec, make_spec
from .poly import Poly
from .sugawara import (TauPolynomial, main_theorem_rhs, phi_coefficients, phi_commutator,
                       phi_element, verify_pfaffian)
from .tensor import rank_formula, symmetrizer
from .walg import (Pi0TauElement, miura_generators, pfaffian_generator, pseudo_diff_miura_D,
                   screening_apply, screening_nodes, verify_annihilation)

SCHEMA = "1"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Validated flags shared by all subcommands."""

    family: Optional[str] = None
    n: Optional[int] = None
    m: Optional[int] = None
    m2: Optional[int] = None
    k: Optional[int] = None
    depth: int = 4
    method: str = "product"
    kind: str = "H"
    order: str = "chi"
    trials: int = 20
    seed: int = 0
    format: str = "json"

    def spec(self) -> AlgebraSpec:
        if self.family is None or self.n is None:
            raise UsageError("--family and --n are required")
        return make_spec(self.family, self.n)

    def need(self, *names):
        for name in names:
            if getattr(self, name) is None:
                raise UsageError(f"--{name} is required")


# -- serialization ----------------------------------------------------------

def _var_str(v) -> str:
    if isinstance(v, tuple) and len(v) == 2:
        return f"mu[{v[0]};{v[1]}]"
    if isinstance(v, int):
        return f"mu[{v}]"
    return str(v)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in sorted(p.terms.items(), key=lambda t: (len(t[0]), t[0])):
        parts.append("*".join([qstr(c)] + [_var_str(v) for v in mono]))
    return " + ".join(parts)


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return round(x, 6)
    if type(x).__name__ == "mpq":
        return qstr(x)
    if isinstance(x, Poly):
        return format_poly(x)
    if isinstance(x, (Pi0TauElement, UElement, TauPolynomial)):
        return x.to_json()
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else str(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


def _text(x, indent=0) -> str:
    pad = "  " * indent
    if isinstance(x, dict):
        lines = []
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(x, list):
        return "\n".join(_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in x)
    return f"{pad}{x}"


def emit(cfg: RunConfig, payload: dict, text: Optional[str] = None, out=None):
    out = out or sys.stdout
    if cfg.format == "text":
        print(text if text is not None else _text(jsonable(payload)), file=out)
    else:
        print(json.dumps({"schema": SCHEMA, **jsonable(payload)}, sort_keys=True), file=out)


# -- subcommands ------------------------------------------------------------

def cmd_symmetrizer(cfg: RunConfig, args):
    cfg.need("m")
    spec = cfg.spec()
    S = symmetrizer(spec, cfg.m, method=cfg.method, kind=cfg.kind)
    emit(cfg, {"spec": spec.to_json(), "m": cfg.m, "method": cfg.method, "nnz": S.nnz(),
               "trace": S.trace(), "rank": S.rank(),
               "expected_rank": rank_formula(spec, cfg.m) if spec.family != "A" else None})
    return 0


def cmd_sugawara(cfg: RunConfig, args):
    cfg.need("m")
    spec = cfg.spec()
    if args.action == "phi":
        tp = phi_coefficients(spec, cfg.m, cfg.kind, cfg.order)
        emit(cfg, {"spec": spec.to_json(), "phi": tp}, text=str(tp))
        return 0
    cfg.need("m2")
    rep = phi_commutator(spec, cfg.m, cfg.m2)
    emit(cfg, rep)
    return 0 if rep["commute"] else 1


def cmd_hc(cfg: RunConfig, args):
    cfg.need("m")
    spec = cfg.spec()
    x = phi_element(spec, cfg.m, cfg.kind)
    img = hc_chi(spec, x) if cfg.order == "chi" else hc_top(spec, x)
    payload = {"spec": spec.to_json(), "m": cfg.m, "projection": cfg.order, "image": img}
    emit(cfg, payload, text=str(img))
    return 0


def cmd_pfaffian(cfg: RunConfig, args):
    cfg.need("n")
    rep = verify_pfaffian(cfg.n)
    rep["generator"] = pfaffian_generator(cfg.n)
    emit(cfg, rep)
    return 0 if rep["match"] else 1


def _walg_elements(cfg: RunConfig) -> dict:
    if cfg.family == "D":
        return pseudo_diff_miura_D(cfg.n, cfg.m)
    return miura_generators(cfg.family, cfg.n, cfg.m)


def cmd_walg_screen(cfg: RunConfig, args):
    cfg.need("family", "n", "m")
    gens = _walg_elements(cfg)
    rows = []
    for m, P in gens.items():
        for i in screening_nodes(cfg.family, cfg.n):
            rows.append({"m": m, "node": i, "result": screening_apply(cfg.family, cfg.n, i, P)})
    ok = all(r["result"].is_zero() for r in rows)
    emit(cfg, {"family": cfg.family, "n": cfg.n, "annihilated": ok, "results": rows})
    return 0 if ok else 1


def cmd_miura(cfg: RunConfig, args):
    cfg.need("family", "n", "m")
    gens = _walg_elements(cfg)
    emit(cfg, {"family": cfg.family, "n": cfg.n, "generators": {str(m): P for m, P in gens.items()}})
    return 0


def cmd_characters(cfg: RunConfig, args):
    if args.action == "count":
        cfg.need("m")
        spec = cfg.spec()
        if spec.family == "C":
            rep = {"count": len(admissible_subsets(spec.n, cfg.m))}
        else:
            rep = {"count": char_sum(spec, cfg.m)["count"]}
        emit(cfg, rep)
        return 0
    if args.action == "kappa":
        cfg.need("n")
        rep = kappa_vanishing_check(cfg.n, trials=cfg.trials, seed=cfg.seed)
    else:
        cfg.need("family", "n")
        rep = vanishing_series_check(cfg.family, cfg.n, cfg.depth)
    emit(cfg, rep)
    return 0 if rep["ok"] else 1


def cmd_harmonic(cfg: RunConfig, args):
    cfg.need("m")
    spec = cfg.spec()
    rep = verify_basis(spec, cfg.m)
    if args.list:
        rep["basis"] = [{"label": list(lab), "vector": repr(v) if not isinstance(v, Poly) else
                         format_poly(v).replace("mu[", "z[")}
                        for lab, v in basis(spec, cfg.m, refined=spec.family == "C")]
    emit(cfg, rep)
    return 0 if rep["ok"] else 1


def cmd_casimir(cfg: RunConfig, args):
    cfg.need("k")
    spec = cfg.spec()
    rep = verify_casimir(spec, cfg.k)
    emit(cfg, rep)
    return 0 if rep["match"] else 1


def _single_item(cfg: RunConfig, suite: str):
    """A one-off verification built from the spec flags."""
    f, n, m = cfg.family, cfg.n, cfg.m
    table = {
        "main-theorem": lambda: suites.main_theorem(f, n, m),
        "pfaffian": lambda: suites.pfaffian(n),
        "gln": lambda: suites.gln(n, m, cfg.kind),
        "current-algebra": lambda: suites.current_algebra(f, n, m, cfg.depth),
        "symmetrizer": lambda: suites.symmetrizer_check(f, n, m),
        "walg": lambda: suites.miura_annihilation(f, n, m),
        "characters": lambda: suites.char_count(f, n, m),
        "harmonic": lambda: suites.harmonic(f, n, m),
        "casimir": lambda: suites.casimir(f, n, cfg.k),
        "commutativity": lambda: suites.commutativity(f, n, m, cfg.m2 or m),
        "resummation": lambda: suites.resummation(f, n, m or 6),
    }
    return table[suite]()


def cmd_verify(cfg: RunConfig, args):
    target = args.suite
    if target != "all" and target not in suites.SUITES:
        raise UsageError(f"unknown suite {target!r}; choose from all, {', '.join(suites.SUITES)}")
    if target != "all" and (cfg.n is not None or cfg.family is not None):
        rep = _single_item(cfg, target)
        emit(cfg, rep)
        return 0 if rep.get("ok") else 1
    items = suites.acceptance_items(seed=cfg.seed)
    if target != "all":
        items = [it for it in items if it.suite == target]
    results = suites.run_items(items)
    ok = all(r["ok"] for r in results)
    if cfg.format == "text":
        lines = [f"[{'PASS' if r['ok'] else 'FAIL'}] criterion {r['criterion']:>2} "
                 f"{r['suite']}: {r['label']} ({r['seconds']}s)"
                 + (f" {r['error']}" if r["error"] else "") for r in results]
        lines.append(f"{sum(r['ok'] for r in results)}/{len(results)} passed")
        emit(cfg, {}, text="\n".join(lines))
    else:
        emit(cfg, {"suite": target, "ok": ok, "results": results})
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=list("ABCD"), type=str.upper)
    p.add_argument("--n", type=int, help="rank n (for family A this is N of gl_N)")
    p.add_argument("--m", type=int)
    p.add_argument("--m2", type=int, help="second degree for commutators")
    p.add_argument("--k", type=int)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--method", choices=["product", "expansion"], default="product")
    p.add_argument("--kind", choices=["H", "A"], default="H")
    p.add_argument("--order", choices=["chi", "top"], default="chi")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ffcenter",
                                     description="Segal-Sugawara vectors, W-algebras and their checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "symmetrizer": (cmd_symmetrizer, None),
        "sugawara": (cmd_sugawara, ("action", ["phi", "commutator"])),
        "hc": (cmd_hc, None),
        "pfaffian": (cmd_pfaffian, None),
        "walg-screen": (cmd_walg_screen, None),
        "miura": (cmd_miura, None),
        "characters": (cmd_characters, ("action", ["count", "kappa", "series"])),
        "harmonic": (cmd_harmonic, None),
        "casimir": (cmd_casimir, None),
        "verify": (cmd_verify, ("suite", None)),
    }
    for name, (fn, pos) in specs.items():
        p = sub.add_parser(name)
        if pos:
            p.add_argument(pos[0], choices=pos[1]) if pos[1] else p.add_argument(pos[0])
        if name == "harmonic":
            p.add_argument("--list", action="store_true", help="include the basis vectors")
        _common(p)
        p.set_defaults(func=fn)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    try:
        return args.func(cfg, args)
    except UsageError as exc:
        print(f"ffcenter: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError, KeyError) as exc:
        print(f"ffcenter: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    sys.exit(run())
