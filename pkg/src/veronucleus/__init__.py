"""Nuclei and invariant subspaces of Veronese varieties over finite fields.

Exact arithmetic throughout: closed-form digit formulas in base p sit
next to brute-force intersections of osculating subspaces, so every
formula can be checked against geometry.
"""

from .base_p import (Digits, ZeroClass, binom_mod_p, count_vanishing_multinomials,
                     multinom_mod_p, phi, render_triangle, sigma, to_digits, top_line,
                     zero_class)
from .gf import GF, FieldElement, FieldMismatchError, all_elements, make_field, smallest_field
from .indexset import IndexSet
from .invariant_lattice import (IntervalFamily, Lattice, build_lattice, closure_bruteforce,
                                enumerate_irreducibles, invariance_oracle,
                                is_chain_criterion, lambda_set, omega, psi_closure,
                                symmetric_power_matrix, t_variants, v_modified, v_truncate)
from .linalg import Matrix, Subspace, contains, intersect, kernel, rref, span, subspace_leq
from .nrc import (INFINITY, CurvePoint, NrcSpec, OutOfHypothesisWarning, arc_check,
                  count_nuclei, curve_points, derivative_matrix, hasse_derivative,
                  nucleus_basis_formula, nucleus_bruteforce, nucleus_dim_formula,
                  osculating_subspace, point_nucleus_predicate)
from .veronese import (VeroneseSpec, hyperplane_nucleus_basis, hyperplane_nucleus_bruteforce,
                       hyperplane_nucleus_dim, osculating_dim_formula, osculating_hyperplane,
                       veronese_point)

__version__ = "0.1.0"
