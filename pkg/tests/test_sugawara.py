import hypothesis.strategies as st
import pytest
from hypothesis import given

from ffcenter.envu import UAlgebra, hc_chi
from ffcenter.liealg import make_spec
from ffcenter.sugawara import (current_algebra_lhs, current_algebra_verify, main_theorem_rhs, nc_sym,
                               phi_coefficients, phi_commutator, phi_element, verify_glN_images,
                               verify_main_theorem, verify_pfaffian)
from ffcenter.tensor import RangeError
from ffcenter.walg import Pi0TauElement, apply_operator_word, mu_var, nc_sym_operator, tau_atoms

O3 = make_spec("B", 1)
TAU = Pi0TauElement.tau


def test_phi_o3_degree_one():
    alg = UAlgebra(O3)
    assert phi_element(O3, 1) == alg.tau() * 2
    assert str(phi_coefficients(O3, 1)).startswith("phi[1,0] = 2")


def test_nc_sym_examples():
    x1, x2 = tau_atoms([(1, 1), (-1, 1)])
    assert nc_sym("h", [x1, x2], 1) == TAU() * 2
    mu = mu_var(1)
    expected = Pi0TauElement({2: 3, 0: mu * mu - mu_var(1, -2)})
    assert nc_sym("h", [x1, x2], 2) == expected
    assert nc_sym("e", [x1, x2], 2) == x2 * x1


atom_lists = st.lists(st.tuples(st.sampled_from([1, -1, 0]), st.integers(1, 3)), min_size=1, max_size=4)


@given(atom_lists, st.integers(0, 4), st.sampled_from(["h", "e"]))
def test_tau_products_match_operator_oracle(atoms, m, kind):
    ops = [(1, s, i) for s, i in atoms]
    assert nc_sym(kind, tau_atoms(atoms), m).apply_to_one() == nc_sym_operator(kind, ops, m)


@given(atom_lists, st.integers(1, 5))
def test_newton_identity_for_any_atoms(atoms, m):
    xs = tau_atoms(atoms)
    total = Pi0TauElement()
    for k in range(m + 1):
        term = nc_sym("e", xs, k) * nc_sym("h", xs, m - k)
        total = total + (term if k % 2 == 0 else -term)
    assert total.is_zero()


def test_main_theorem_rhs_examples():
    assert main_theorem_rhs(O3, 1) == TAU() * 2
    assert main_theorem_rhs(make_spec("C", 1), 1) == TAU() * 3


@pytest.mark.parametrize("family,n,m", [("B", 1, 2), ("D", 2, 1), ("C", 2, 2), ("C", 1, 1), ("B", 2, 2)])
def test_main_theorem(family, n, m):
    rep = verify_main_theorem(make_spec(family, n), m)
    assert rep["match"], rep["diff"]


def test_main_theorem_b1_m2_values():
    rep = verify_main_theorem(O3, 2)
    assert rep["lhs"] == {"2": "3", "0": "-1*mu[1;-2] + 1*mu[1;-1]*mu[1;-1]"}


def test_comparison_is_discriminating():
    lhs = hc_chi(O3, phi_element(O3, 2))
    assert lhs != main_theorem_rhs(make_spec("C", 1), 2 - 1) * TAU()
    # keeping the middle tau among the atoms changes the answer
    wrong = nc_sym("h", tau_atoms([(1, 1), (0, 0), (-1, 1)]), 2)
    assert lhs != wrong


def test_type_c_beyond_range():
    with pytest.raises(RangeError):
        verify_main_theorem(make_spec("C", 1), 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pfaffian(n):
    assert verify_pfaffian(n)["match"]


@pytest.mark.parametrize("N,m,kind", [(2, 1, "A"), (2, 1, "H"), (2, 2, "A"), (3, 2, "H"), (3, 3, "A")])
def test_glN(N, m, kind):
    assert verify_glN_images(N, m, kind)["match"]


def test_gl2_degree_one_value():
    rep = verify_glN_images(2, 1, "H")
    assert rep["lhs"] == {"1": "2", "0": "1*mu[1;-1] + 1*mu[2;-1]"}


@pytest.mark.parametrize("family,n,m,d", [("B", 1, 1, 3), ("C", 1, 1, 3), ("B", 1, 2, 4), ("D", 2, 2, 4)])
def test_current_algebra(family, n, m, d):
    rep = current_algebra_verify(make_spec(family, n), m, d)
    assert rep["match"], rep["diff"]
    assert rep["checked_coefficients"] > 0


def test_current_algebra_sign_of_F_in_type_c():
    spec = make_spec("C", 2)
    a = current_algebra_lhs(spec, 2, 4, sign=-1)
    b = current_algebra_lhs(spec, 2, 4, sign=1)
    assert a.terms.keys() == b.terms.keys()


@pytest.mark.parametrize("family,n,m1,m2", [("B", 1, 1, 2), ("B", 1, 2, 2), ("C", 2, 1, 2)])
def test_phi_commute(family, n, m1, m2):
    assert phi_commutator(make_spec(family, n), m1, m2)["commute"]


def test_commutator_detects_noncommuting_elements():
    alg = UAlgebra(O3)
    assert not alg.gen(1, 2, -1).commutator(alg.gen(2, 1, -1)).is_zero()
