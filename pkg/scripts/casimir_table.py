"""Harish-Chandra images of the symmetrizer-trace Casimir elements at small rank."""
from ffcenter.casimir import verify_casimir
from ffcenter.cli import format_poly
from ffcenter.liealg import make_spec
from ffcenter.tensor import RangeError

CASES = [("B", 1, 1), ("B", 1, 2), ("B", 2, 1), ("B", 2, 2), ("D", 2, 1), ("D", 2, 2),
         ("C", 1, 1), ("C", 2, 1), ("C", 3, 1)]

for fam, n, k in CASES:
    spec = make_spec(fam, n)
    try:
        rep = verify_casimir(spec, k)
    except RangeError as exc:
        print(f"{spec.label():>6} k={k}: skipped ({exc})")
        continue
    via = "trace" if "trace_image" in rep else "sums only (zero projector)"
    print(f"{spec.label():>6} k={k}: match={rep['match']} [{via}]")
    print(f"         {format_poly(rep['multiset'])}")
