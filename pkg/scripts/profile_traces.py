"""Wall-clock profile of the symmetrizer and trace pipeline as the degree grows."""
import time

from ffcenter.liealg import make_spec
from ffcenter.sugawara import verify_main_theorem
from ffcenter.tensor import symmetrizer

for fam, n, ms in (("B", 1, range(1, 6)), ("B", 2, range(1, 5)), ("D", 2, range(1, 5)), ("C", 2, range(1, 3))):
    spec = make_spec(fam, n)
    for m in ms:
        t0 = time.perf_counter()
        S = symmetrizer(spec, m)
        t1 = time.perf_counter()
        rep = verify_main_theorem(spec, m)
        t2 = time.perf_counter()
        print(f"{spec.label():>6} m={m}: nnz(S)={S.nnz():>7}  S {t1 - t0:6.2f}s  "
              f"trace+image {t2 - t1:6.2f}s  match={rep['match']}")
