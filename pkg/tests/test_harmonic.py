import hypothesis.strategies as st
import pytest
from gmpy2 import mpq
from hypothesis import given

from ffcenter.harmonic import (ExteriorElement, basis, c_family, laplacian, refined_basis_C, tensor_lift,
                               verify_basis)
from ffcenter.liealg import make_spec
from ffcenter.poly import Poly
from ffcenter.tensor import symmetrizer

z = Poly.var


def test_degree_one():
    spec = make_spec("B", 1)
    vecs = basis(spec, 1)
    assert [lab for lab, _ in vecs] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert [v for _, v in vecs] == [z(1), z(2), z(3)]


def test_b1_degree_two():
    spec = make_spec("B", 1)
    vecs = dict(basis(spec, 2))
    assert len(vecs) == 5
    # (1,0,1): z1 z3 - z2^2
    assert vecs[(1, 0, 1)] == z(1) * z(3) - z(2) * z(2)
    assert laplacian(spec, vecs[(1, 0, 1)]).is_zero()


def test_laplacian_examples():
    assert laplacian(make_spec("B", 1), z(2) * z(2)) == Poly.const(1)
    assert laplacian(make_spec("D", 2), z(1) * z(4)) == Poly.const(1)
    # left derivatives give d_1 d_4 (zeta_1 ^ zeta_4) = -1
    x = ExteriorElement.word((1, 4)) + ExteriorElement.word((2, 3))
    assert laplacian(make_spec("C", 2), x) == ExteriorElement.word(()) * -2


def test_exterior_algebra_signs():
    a = ExteriorElement.word((2, 1))
    assert a == ExteriorElement.word((1, 2)) * -1
    assert ExteriorElement.word((1, 1)).is_zero()
    assert a.wedge(a).is_zero()


def test_c_family_and_refinement():
    assert c_family(2, (1, 4)) == (2,)
    vecs = refined_basis_C(2, 2)
    assert vecs[(1, 4)] == ExteriorElement.word((1, 4)) - ExteriorElement.word((2, 3))


@pytest.mark.parametrize("family,n,m", [("B", 1, 2), ("B", 2, 3), ("D", 2, 2), ("D", 2, 3),
                                        ("C", 2, 2), ("C", 3, 2), ("C", 3, 3), ("C", 1, 2)])
def test_verify_basis(family, n, m):
    rep = verify_basis(make_spec(family, n), m)
    assert rep["ok"], rep


@given(st.data())
def test_combinations_are_fixed_by_symmetrizer(data):
    family, n, m = data.draw(st.sampled_from([("B", 1, 2), ("D", 2, 2), ("C", 2, 2), ("B", 1, 3)]))
    spec = make_spec(family, n)
    vecs = [v for _, v in basis(spec, m, refined=True)]
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(vecs), max_size=len(vecs)))
    v = vecs[0] * 0
    for c, w in zip(coeffs, vecs):
        v = v + w * c
    lift = tensor_lift(spec, m, v)
    assert symmetrizer(spec, m).apply(lift) == lift


def test_non_harmonic_vector_is_moved():
    spec = make_spec("B", 1)
    v = z(2) * z(2)
    lift = tensor_lift(spec, 2, v)
    assert symmetrizer(spec, 2).apply(lift) != lift
