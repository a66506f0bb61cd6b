import hypothesis.strategies as st
import pytest
from gmpy2 import mpq
from hypothesis import given

from ffcenter.envu import UAlgebra
from ffcenter.liealg import make_spec
from ffcenter.tensor import (RangeError, TensorOperator, contraction, elementary_operators, local_factor,
                             partial_trace, partial_trace_coefficient, rank_formula, sym_antisym,
                             symmetrizer, trace_product, transposition, verify_symmetrizer)

O3 = make_spec("B", 1)


def test_transposition_action():
    P = transposition(2, 2, 1, 2)
    assert P.apply({(1, 2): 1}) == {(2, 1): 1}


def test_symplectic_contraction_signs():
    Q = contraction(make_spec("C", 1), 2, 1, 2)
    assert Q.apply({(1, 2): 1}) == {(1, 2): 1, (2, 1): -1}


@pytest.mark.parametrize("family,n", [("B", 1), ("C", 1), ("D", 2), ("C", 2)])
def test_pq_relations(family, n):
    spec = make_spec(family, n)
    P, Q = elementary_operators(spec, 2, 1, 2)
    one = TensorOperator.identity(spec.N, 2)
    sgn = 1 if spec.orthogonal else -1
    assert P @ P == one
    assert Q @ Q == Q * spec.N
    assert P @ Q == Q * sgn and Q @ P == Q * sgn


def test_symmetrizer_examples():
    assert symmetrizer(make_spec("C", 1), 2).is_zero()
    S = symmetrizer(O3, 2)
    assert S.rank() == 5 and S @ S == S
    a2 = make_spec("A", 2)
    assert symmetrizer(a2, 2, kind="H").rank() == 3
    assert symmetrizer(a2, 2, kind="A").rank() == 1
    with pytest.raises(RangeError):
        symmetrizer(make_spec("C", 1), 3)


def test_partial_traces_o3():
    S = symmetrizer(O3, 2)
    assert partial_trace(S, [2]) == TensorOperator.identity(3, 1) * mpq(5, 3)
    assert S.trace() == 5
    assert partial_trace(transposition(3, 2, 1, 2), [2]) == TensorOperator.identity(3, 1)
    assert partial_trace_coefficient(O3, 2, 1) == mpq(5, 3)


@pytest.mark.parametrize("family,n,m,rank", [("B", 1, 2, 5), ("B", 2, 2, 14), ("C", 2, 2, 5),
                                             ("C", 1, 2, 0), ("C", 2, 3, 0), ("D", 2, 3, 16)])
def test_rank_formula_values(family, n, m, rank):
    assert rank_formula(make_spec(family, n), m) == rank


@pytest.mark.parametrize("family,n,m", [("B", 1, 3), ("C", 2, 2), ("D", 2, 3), ("D", 1, 2)])
def test_verify_symmetrizer(family, n, m):
    rep = verify_symmetrizer(make_spec(family, n), m)
    assert rep["ok"], rep


def test_broken_symmetrizer_is_detected():
    # perturb the product form: one wrong sign in a Q coefficient is not idempotent
    spec = make_spec("B", 1)
    S = symmetrizer(spec, 2)
    P, Q = elementary_operators(spec, 2, 1, 2)
    bad = (TensorOperator.identity(3, 2) + P - Q * mpq(1, 2)) * mpq(1, 2)
    assert bad != S
    assert bad @ bad != bad


@given(st.integers(1, 3), st.integers(1, 3))
def test_sym_antisym_idempotent(N, m):
    H = sym_antisym(N, m, "H")
    A = sym_antisym(N, m, "A")
    assert H @ H == H and A @ A == A
    if m >= 2:
        assert (H @ A).is_zero()


def test_trace_product_small():
    alg = UAlgebra(O3)
    f = local_factor(O3, 1, 1, r=-1, tau=1, alg=alg)
    assert trace_product(O3, 1, [f], TensorOperator.identity(3, 1), alg) == alg.tau() * 3
    a2 = make_spec("A", 2)
    alg2 = UAlgebra(a2)
    one = [local_factor(a2, 2, a, r=-1, tau=0, sign=0, shift=1, alg=alg2) for a in (1, 2)]
    assert trace_product(a2, 2, one, sym_antisym(2, 2, "H"), alg2) == alg2.scalar(3)


def test_transpose_and_json():
    P = transposition(2, 2, 1, 2)
    assert P.transpose_slots() == P
    assert P.to_json()["N"] == 2
