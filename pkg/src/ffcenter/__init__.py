"""Segal-Sugawara vectors for classical Lie algebras, their Harish-Chandra
images, classical W-algebras and the related character and Casimir identities,
all in exact rational arithmetic."""

from .liealg import AlgebraSpec, make_spec
from .envu import UAlgebra, UElement, hc_chi, hc_top, hc_classical
from .tensor import TensorOperator, symmetrizer, verify_symmetrizer
from .sugawara import (phi_coefficients, verify_main_theorem, verify_pfaffian,
                       verify_glN_images, current_algebra_verify, phi_commutator)
from .walg import Pi0TauElement, miura_generators, verify_annihilation
from .characters import char_sum, kappa_vanishing_check, vanishing_series_check
from .harmonic import basis, verify_basis
from .casimir import casimir_element, verify_casimir

__version__ = "0.1.0"
