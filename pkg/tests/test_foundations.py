from math import comb

import hypothesis.strategies as st
import pytest
from gmpy2 import mpq
from hypothesis import given

from ffcenter.foundations import PoleError, gamma_factor, gen_binomial, verify_resummation_identity


def test_gen_binomial_values():
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(mpq(5, 2), 3) == mpq(5, 16)
    assert gen_binomial(mpq(-7, 3), 0) == 1


@given(st.integers(0, 30), st.integers(0, 30))
def test_gen_binomial_integer_top(a, k):
    assert gen_binomial(a, k) == comb(a, k)


@given(st.fractions(max_denominator=12).filter(lambda x: abs(x) < 50), st.integers(1, 12))
def test_pascal_rule(alpha, k):
    a = mpq(alpha.numerator, alpha.denominator)
    assert gen_binomial(a + 1, k) == gen_binomial(a, k) + gen_binomial(a, k - 1)


def test_gamma_factor():
    assert gamma_factor(3, 2) == mpq(3, 5)
    for w in (2, 3, 5, -4):
        assert gamma_factor(w, 1) == mpq(w - 1, w)
    with pytest.raises(PoleError):
        gamma_factor(-4, 3)


@pytest.mark.parametrize("family,N,m,k", [("B", 3, 2, 0), ("B", 5, 3, 1), ("C", 4, 2, 2)])
def test_resummation_examples(family, N, m, k):
    assert verify_resummation_identity(family, N, m, k)


@pytest.mark.parametrize("family,Ns", [("B", (3, 5, 7, 9)), ("C", (2, 4, 6, 8)), ("D", (4, 6, 8))])
def test_resummation_range(family, Ns):
    for N in Ns:
        for m in range(1, 7):
            for k in range(m + 1):
                assert verify_resummation_identity(family, N, m, k), (N, m, k)


def test_resummation_rejects_bad_parity():
    with pytest.raises(ValueError):
        verify_resummation_identity("B", 4, 2, 1)
    with pytest.raises(ValueError):
        verify_resummation_identity("C", 3, 2, 1)
