import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from veronucleus import nrc
from veronucleus.base_p import to_digits
from veronucleus.gf import make_field, smallest_field
from veronucleus.linalg import Subspace, subspace_leq
from veronucleus.nrc import (INFINITY, NrcSpec, OutOfHypothesisWarning, arc_check, count_nuclei,
                             curve_points, derivative_matrix, hasse_derivative,
                             nucleus_basis_formula, nucleus_bruteforce, nucleus_dim_formula,
                             osculating_subspace, point_nucleus_predicate)


def spec(n, p, e=None):
    return NrcSpec(n, make_field(p, e) if e else smallest_field(p, n + 2))


def test_spec_flags():
    s = NrcSpec(5, make_field(2, 2))
    assert s.q == 4 and s.p == 2
    assert not s.is_arc_regime and not s.count_applies
    assert s.formula_applies(3) and not s.formula_applies(4)
    with pytest.raises(ValueError):
        NrcSpec(1, make_field(2, 2))


def test_curve_points_gf2():
    pts = curve_points(spec(2, 2, 1))
    assert [pt.vector for pt in pts] == [[1, 0, 0], [1, 1, 1], [0, 0, 1]]
    assert pts[-1].parameter is INFINITY


@pytest.mark.parametrize("n,p,e", [(2, 2, 2), (4, 3, 2), (6, 2, 3)])
def test_curve_points_distinct(n, p, e):
    s = spec(n, p, e)
    pts = curve_points(s)
    assert len(pts) == s.q + 1
    assert pts[-1].vector == [0] * n + [1]
    lines = {Subspace(s.field, n + 1, [pt.vector]) for pt in pts}
    assert len(lines) == s.q + 1


def test_hasse_derivative():
    f2, f3, f7 = make_field(2, 1), make_field(3, 1), make_field(7, 1)
    assert [c.value for c in hasse_derivative(1, [0, 0, 1], f2)] == [0, 0]
    assert [c.value for c in hasse_derivative(0, [3, 1, 4], f7)] == [3, 1, 4]
    assert [c.value for c in hasse_derivative(2, [0, 0, 0, 1], f7)] == [0, 3]
    assert [c.value for c in hasse_derivative(2, [0, 0, 0, 1], f3)] == [0, 0]


def test_derivative_matrix_examples():
    s = spec(2, 2, 1)
    assert derivative_matrix(s, s.field.zero).tolist() == np.eye(3, dtype=int).tolist()
    assert derivative_matrix(s, s.field.one).tolist() == [[1, 0, 0], [1, 1, 0], [1, 0, 1]]
    assert derivative_matrix(s, INFINITY).tolist() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_derivative_columns_are_hasse_derivatives():
    # column k at u is D^(k) of (1, X, ..., X^n) evaluated at u
    s = spec(5, 3, 2)
    f = s.field
    for u in f.elements():
        m = derivative_matrix(s, u)
        for k in range(s.n + 1):
            for r in range(s.n + 1):
                coeffs = [0] * (s.n + 1)
                coeffs[r] = 1
                d = hasse_derivative(k, coeffs, f)
                val = f.zero
                for deg, c in enumerate(d):
                    val = val + c * u ** deg
                assert m[r, k] == val


def test_osculating_subspace_examples():
    s = spec(2, 2, 2)
    pts = curve_points(s)
    assert osculating_subspace(s, pts[3].parameter, -1).is_empty()
    assert osculating_subspace(s, pts[3].parameter, 0) == Subspace(s.field, 3, [pts[3].vector])
    tangents = {osculating_subspace(s, pt.parameter, 1) for pt in pts}
    assert len(tangents) == 5
    assert all(t.projective_dim == 1 for t in tangents)
    with pytest.raises(ValueError):
        osculating_subspace(s, INFINITY, 2)


@pytest.mark.parametrize("n,p", [(4, 2), (6, 3), (7, 5)])
def test_osculating_dimension_is_k(n, p):
    s = spec(n, p)
    for u in nrc.parameters(s):
        for k in range(-1, n):
            assert osculating_subspace(s, u, k).projective_dim == k


def test_conic_nucleus_gf4():
    s = spec(2, 2, 2)
    nuc = nucleus_bruteforce(s, 1)
    assert nuc == Subspace.coordinate(s.field, 3, [1])
    assert nucleus_bruteforce(s, -1).is_empty()


def test_top_nucleus_case_n4_gf8():
    s = spec(4, 2, 3)
    assert nucleus_bruteforce(s, 3).projective_dim == 2
    assert nucleus_dim_formula(s, 3) == 2


def test_basis_formula_examples():
    assert nucleus_basis_formula(spec(2, 2, 2), 1).members == (1,)
    s3 = spec(3, 2, 3)
    assert all(len(nucleus_basis_formula(s3, k)) == 0 for k in range(-1, 3))
    s50 = spec(50, 2, 7)
    assert len(nucleus_basis_formula(s50, 31)) == 13


def test_dim_formula_n50_table():
    s = spec(50, 2, 7)
    dims = {k: nucleus_dim_formula(s, k) for k in range(-1, 50)}
    assert all(dims[k] == -1 for k in range(-1, 31))
    assert all(dims[k] == 12 for k in range(31, 47))
    assert dims[47] == dims[48] == 38
    assert dims[49] == 42
    assert nucleus_dim_formula(spec(3, 2, 3), 2) == -1


@given(st.integers(2, 400), st.sampled_from([2, 3, 5, 7]))
def test_top_nucleus_at_top(n, p):
    prod = 1
    for d in to_digits(n, p).digits:
        prod *= d + 1
    assert nrc.nucleus_dim_from_digits(n, n - 1, p) == n - prod == nrc.top_nucleus_dim(n, p)


@given(st.integers(2, 300), st.sampled_from([2, 3, 5]), st.data())
def test_dimension_formula_counts_basis(n, p, data):
    # the digit-based dimension agrees with counting the basis indices
    k = data.draw(st.integers(-1, n - 1))
    assert nrc.nucleus_dim_from_digits(n, k, p) == len(nrc.nucleus_indices(n, k, p)) - 1
    br = nrc.nucleus_bracket(n, k, p)
    assert br.R >= 1 and br.digit_condition


def test_out_of_hypothesis_requires_force():
    s = NrcSpec(6, make_field(2, 2))
    with pytest.raises(ValueError):
        nucleus_dim_formula(s, 5)
    with pytest.raises(ValueError):
        nucleus_basis_formula(s, 4)
    with pytest.warns(OutOfHypothesisWarning):
        nucleus_dim_formula(s, 5, force=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        nucleus_dim_formula(s, 3)


def test_out_of_hypothesis_formula_is_lower_bound():
    # small fields: the brute-force nucleus contains the formula's base points
    for n, p, e in [(6, 2, 1), (6, 2, 2), (8, 3, 1), (5, 2, 1), (9, 2, 2), (7, 3, 1)]:
        s = NrcSpec(n, make_field(p, e))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutOfHypothesisWarning)
            for k in range(-1, n):
                basis = nucleus_basis_formula(s, k, force=True)
                brute = nucleus_bruteforce(s, k)
                assert subspace_leq(nrc.span_of_indices(s, basis.members), brute)


def test_count_nuclei_examples():
    assert count_nuclei(spec(50, 2, 7)) == 4
    assert count_nuclei(spec(2, 2, 2)) == 2
    for n in (2, 8, 26, 3, 7, 15):         # n + 1 a single non-zero digit
        p = 3 if n in (2, 8, 26) else 2
        assert nrc.count_nuclei_digits(n, p) == 1
    with pytest.warns(OutOfHypothesisWarning):
        count_nuclei(NrcSpec(9, make_field(2, 3)))


def test_point_nucleus_examples():
    assert point_nucleus_predicate(spec(2, 2, 2)) == 1
    assert point_nucleus_predicate(spec(6, 2, 4)) == 3
    assert point_nucleus_predicate(spec(5, 2)) is None
    # brute force over GF(16): the smallest non-empty nucleus is F c_3
    s = spec(6, 2, 4)
    nonempty = [nucleus_bruteforce(s, k) for k in range(-1, 6)]
    smallest = next(x for x in nonempty if not x.is_empty())
    assert smallest == Subspace.coordinate(s.field, 7, [3])


@given(st.integers(2, 250), st.sampled_from([2, 3, 5]))
def test_point_nucleus_predicate_matches_indices(n, p):
    # j lies in the k-nucleus iff C(r, j) = 0 mod p for every r in k+1..n,
    # i.e. iff the last row r <= n with C(r, j) != 0 is at most k
    last = [max(r for r in range(j, n + 1) if math.comb(r, j) % p) for j in range(n + 1)]
    k0 = min(last)
    smallest = [j for j in range(n + 1) if last[j] == k0] if k0 <= n - 1 else None
    j = nrc.point_nucleus_index(n, p)
    if j is None:
        assert smallest is None or len(smallest) != 1
    else:
        assert smallest == [j]


def test_arc_examples():
    assert arc_check(spec(2, 2, 2))
    assert arc_check(spec(3, 2, 2))
    assert arc_check(spec(2, 2, 1))


def test_is_arc_detects_dependence():
    f = make_field(3, 1)
    pts = np.array([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    assert not nrc.is_arc(f, pts, 3)
    assert nrc.is_arc(f, pts[[0, 1, 3]], 3)
    # sampling path with a fixed seed is deterministic
    s = spec(6, 2, 3)
    assert nrc.arc_check(s, exhaustive_limit=10, samples=50) is True


@pytest.mark.parametrize("n,p", [(3, 2), (5, 3), (6, 2), (8, 5)])
def test_nuclei_nested_and_counted(n, p):
    s = spec(n, p)
    subs = [nucleus_bruteforce(s, k) for k in range(-1, n)]
    assert all(subspace_leq(a, b) for a, b in zip(subs, subs[1:]))
    assert len(set(subs)) == count_nuclei(s)


def test_report_shape():
    rep = nrc.nucleus_report(spec(2, 2, 2))
    assert rep["schema_version"] == 1
    assert rep["nuclei"]["1"] == {"dim_formula": 0, "dim_bruteforce": 0,
                                  "basis_indices": [1], "in_hypothesis": True}
    assert list(rep["nuclei"]) == ["-1", "0", "1"]
    small = nrc.nucleus_report(NrcSpec(6, make_field(2, 2)), bruteforce=False)
    assert small["nuclei"]["5"]["in_hypothesis"] is False
    assert small["nuclei"]["5"]["dim_bruteforce"] is None


def test_conic_plus_nucleus_is_hyperoval():
    for e in (2, 3):
        s = spec(2, 2, e)
        pts = nrc.point_set_with_nucleus(s)
        assert pts.shape[0] == s.q + 2
        assert nrc.is_arc(s.field, pts, 3)
    with pytest.raises(ValueError):
        nrc.point_set_with_nucleus(spec(3, 2, 3))
