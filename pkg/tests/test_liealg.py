import hypothesis.strategies as st
import pytest
from hypothesis import given

from ffcenter.envu import UAlgebra, weight_of
from ffcenter.liealg import AlphabetError, FamilyError, make_spec

SPECS = [make_spec(f, n) for f, n in (("A", 2), ("A", 3), ("B", 1), ("B", 2), ("C", 1), ("C", 2), ("D", 2))]


def test_numerology():
    b2 = make_spec("B", 2)
    assert (b2.N, b2.kappa, b2.omega) == (5, 1.5, 5)
    c2 = make_spec("C", 2)
    assert (c2.N, c2.kappa, c2.omega) == (4, 3, -4)
    assert make_spec("A", 3).N == 3
    with pytest.raises(FamilyError):
        make_spec("A", 3).kappa
    with pytest.raises(FamilyError):
        make_spec("E", 6)


@pytest.mark.parametrize("family,n,dim", [("B", 1, 3), ("C", 1, 3), ("D", 2, 6), ("B", 2, 10), ("C", 2, 10)])
def test_basis_size(family, n, dim):
    assert len(make_spec(family, n).canonical_pairs) == dim


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
def test_generator_relation(spec):
    # F_ij + theta_ij F_j'i' = 0 as elements
    if spec.family == "A":
        return
    alg = UAlgebra(spec)
    for i in range(1, spec.N + 1):
        for j in range(1, spec.N + 1):
            lhs = alg.gen(i, j, -1) + alg.gen(spec.prime(j), spec.prime(i), -1) * spec.theta(i, j)
            assert lhs.is_zero(), (i, j)


@pytest.mark.parametrize("spec", SPECS, ids=lambda s: s.label())
def test_brackets_antisymmetric_and_jacobi(spec):
    tab = spec.brackets
    pairs = spec.canonical_pairs

    def br(x, y):
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, cc in tab[a, b].items():
                    out[c] = out.get(c, 0) + ca * cb * cc
        return {k: v for k, v in out.items() if v}

    for a in pairs:
        for b in pairs:
            s = br({a: 1}, {b: 1})
            t = br({b: 1}, {a: 1})
            assert all(s.get(k, 0) == -t.get(k, 0) for k in set(s) | set(t))
    for a in pairs[:4]:
        for b in pairs:
            for c in pairs:
                tot = {}
                for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                    for k, v in br({x: 1}, br({y: 1}, {z: 1})).items():
                        tot[k] = tot.get(k, 0) + v
                assert not any(tot.values())


def test_bracket_examples():
    gl2 = UAlgebra(make_spec("A", 2))
    e12, e21 = gl2.gen(1, 2, 0), gl2.gen(2, 1, 0)
    assert e12.commutator(e21) == gl2.gen(1, 1, 0) - gl2.gen(2, 2, 0)
    o3 = UAlgebra(make_spec("B", 1))
    assert o3.gen(1, 1, 0).commutator(o3.gen(1, 2, -1)) == o3.gen(1, 2, -1)
    assert o3.tau().commutator(o3.gen(1, 1, -2)) == o3.gen(1, 1, -3) * 2


def test_weights():
    assert weight_of(make_spec("B", 2), ((0, 1, 2, -1),)) == (1, -1)
    assert weight_of(make_spec("B", 2), ((1, 1, 1, -3),)) == (0, 0)
    assert weight_of(make_spec("C", 2), ((0, 1, 4, -1),)) == (2, 0)


@given(st.integers(1, 5))
def test_index_check(i):
    spec = make_spec("B", 1)
    if i > 3:
        with pytest.raises(AlphabetError):
            spec.check_index(i)
    else:
        spec.check_index(i)
