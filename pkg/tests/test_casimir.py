import hypothesis.strategies as st
import pytest
from gmpy2 import mpq
from hypothesis import given

from ffcenter.casimir import (casimir_element, factorial_sym, multiset_image, partitions_below,
                              verify_casimir, weyl_symmetric)
from ffcenter.envu import hc_classical
from ffcenter.liealg import make_spec
from ffcenter.poly import Poly
from ffcenter.tensor import RangeError

mu = Poly.var


def test_o3_anchor():
    spec = make_spec("B", 1)
    expected = mu(1) * mu(1) + mu(1)
    assert multiset_image(spec, 1) == expected
    assert factorial_sym(spec, 1) == expected
    assert hc_classical(spec, casimir_element(spec, 1)) == expected


def test_sp2_values():
    spec = make_spec("C", 1)
    expected = -mu(1) * mu(1) - mu(1) * 2
    assert multiset_image(spec, 1) == expected
    assert factorial_sym(spec, 1) == expected
    assert casimir_element(spec, 1).is_zero()
    rep = verify_casimir(spec, 1)
    assert rep["trace_applicable"] is False and rep["match"]


def test_o4_factorial_form():
    spec = make_spec("D", 2)
    l1, l2 = mu(1) + 1, mu(2)
    assert factorial_sym(spec, 1) == l1 * l1 + l2 * l2 - 1


@pytest.mark.parametrize("family,n,k", [("B", 1, 1), ("B", 1, 2), ("D", 2, 1), ("B", 2, 1), ("C", 2, 1),
                                        ("D", 2, 2)])
def test_three_way(family, n, k):
    rep = verify_casimir(make_spec(family, n), k)
    assert rep["match"] and rep.get("trace_eq_multiset", True), rep


def test_symplectic_range():
    with pytest.raises(RangeError):
        casimir_element(make_spec("C", 2), 2)


def test_partitions_below():
    assert list(partitions_below(2, 2)) == [(0, 0), (1, 0)]


@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from("BCD"))
def test_sums_agree_with_factorial_functions(n, k, family):
    if family == "D" and n < 2:
        n = 2
    spec = make_spec(family, n)
    if family == "C" and 2 * k > n + 1:
        return
    assert multiset_image(spec, k) == factorial_sym(spec, k)


def test_wrong_shifts_are_detected():
    spec = make_spec("B", 1)
    p = multiset_image(spec, 1) + mu(1)
    assert not weyl_symmetric(spec, p)
    assert p != factorial_sym(spec, 1)
