"""Print harmonic bases and the type-C refined basis with its leading monomials."""
import sys

from ffcenter.cli import format_poly
from ffcenter.harmonic import basis, verify_basis
from ffcenter.liealg import make_spec
from ffcenter.poly import Poly

family, n, m = sys.argv[1], int(sys.argv[2]), int(sys.argv[3])
spec = make_spec(family, n)
for label, v in basis(spec, m, refined=family == "C"):
    text = format_poly(v).replace("mu[", "z[") if isinstance(v, Poly) else repr(v)
    print(f"{tuple(label)}: {text}")
rep = verify_basis(spec, m)
print({k: v for k, v in rep.items() if isinstance(v, (bool, int))})
