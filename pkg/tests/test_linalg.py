import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from veronucleus.gf import make_field
from veronucleus.linalg import (DimensionMismatchError, Matrix, Subspace, contains, intersect,
                                intersect_all, join, kernel, rank, rref, span, subspace_leq)
from veronucleus.nrc import NrcSpec, derivative_matrix, parameters

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3)]


def vectors_of(s: Subspace) -> set[tuple[int, ...]]:
    """Every vector of a subspace, by running over all coefficient tuples."""
    f = s.field
    out = set()
    for coeffs in itertools.product(range(f.q), repeat=s.rank):
        v = np.zeros(s.ambient_dim, dtype=np.int64)
        for c, row in zip(coeffs, s.basis):
            v = f.add(v, f.mul(c, row))
        out.add(tuple(int(x) for x in v))
    return out


@st.composite
def subspaces(draw, f, N, max_rows=None):
    k = draw(st.integers(0, max_rows if max_rows is not None else N))
    rows = draw(st.lists(st.lists(st.integers(0, f.q - 1), min_size=N, max_size=N),
                         min_size=k, max_size=k))
    return span(rows, f, N) if rows else Subspace.empty(f, N)


@st.composite
def field_and_pair(draw, max_n=12):
    p, e = draw(st.sampled_from(SMALL))
    f = make_field(p, e)
    N = draw(st.integers(1, max_n))
    return f, N, draw(subspaces(f, N)), draw(subspaces(f, N))


# --- examples ---

def test_rref_identity_and_zero():
    f = make_field(3, 1)
    I = Matrix.identity(f, 4)
    red, r = rref(I)
    assert red == I and r == 4
    red, r = rref(Matrix.zeros(f, 3, 5))
    assert r == 0 and red.rows == 0


def test_rref_is_reduced():
    f = make_field(5, 1)
    m = Matrix(f, [[0, 2, 4, 2], [0, 1, 2, 3], [3, 0, 0, 1]])
    red, r = rref(m)
    d = red.data
    assert r == 3
    pivots = [int(np.flatnonzero(row)[0]) for row in d]
    assert pivots == sorted(pivots)
    for row, c in zip(range(r), pivots):
        assert d[row, c] == 1
        assert np.count_nonzero(d[:, c]) == 1


@pytest.mark.parametrize("p,e,n", [(2, 2, 2), (2, 3, 5), (3, 2, 7), (5, 1, 4)])
def test_derivative_matrices_are_regular(p, e, n):
    f = make_field(p, e)
    s = NrcSpec(n, f)
    for u in parameters(s):
        assert rank(derivative_matrix(s, u)) == n + 1


def test_span_examples():
    f = make_field(2, 1)
    assert span([], f, 3).projective_dim == -1
    assert span(np.eye(4, dtype=int), f) == Subspace.full(f, 4)
    assert span([[1, 1], [1, 1]], f).rank == 1
    with pytest.raises(DimensionMismatchError):
        span([[1, 0]], f, 3)


def test_intersect_examples():
    f = make_field(3, 1)
    a = span([[1, 2, 0], [0, 0, 1]], f)
    assert intersect(a, Subspace.full(f, 3)) == a
    assert intersect(a, Subspace.empty(f, 3)).is_empty()
    l1, l2 = span([[1, 1]], f), span([[1, 2]], f)
    assert intersect(l1, l2).is_empty()
    with pytest.raises(DimensionMismatchError):
        intersect(a, Subspace.full(f, 4))


def test_distinct_lines_in_plane_gf3_exhaustive():
    f = make_field(3, 1)
    lines = {span([v], f) for v in itertools.product(range(3), repeat=2) if any(v)}
    assert len(lines) == 4
    for a, b in itertools.combinations(lines, 2):
        assert intersect(a, b).is_empty()


def test_kernel_examples():
    f = make_field(2, 2)
    assert kernel(Matrix.identity(f, 3)).is_empty()
    assert kernel(Matrix.zeros(f, 2, 3)) == Subspace.full(f, 3)


def test_contains_and_leq_examples():
    f = make_field(3, 1)
    full, empty = Subspace.full(f, 3), Subspace.empty(f, 3)
    assert contains(full, [1, 2, 0])
    assert not contains(empty, [0, 1, 0])
    assert contains(empty, [0, 0, 0])
    a = span([[1, 2, 1]], f)
    assert subspace_leq(a, a) and a <= full and empty <= a
    assert not full <= a


def test_coordinate_subspace():
    f = make_field(2, 2)
    s = Subspace.coordinate(f, 5, [3, 1])
    assert s.coordinate_support() == [1, 3]
    assert span([[0, 1, 0, 1, 0]], f).coordinate_support() is None


def test_intersect_all_early_exit_and_empty_family():
    f = make_field(2, 1)
    calls = []

    def gen():
        for s in (span([[1, 0, 0]], f), span([[0, 1, 0]], f)):
            calls.append(s)
            yield s
        raise AssertionError("fold should have stopped")

    # after two disjoint lines the accumulator is zero and nothing more is pulled
    assert intersect_all(gen()).is_empty()
    assert len(calls) == 2
    with pytest.raises(ValueError):
        intersect_all([])


def test_json_shape():
    f = make_field(3, 2)
    js = span([[1, 4, 0]], f).to_json()
    assert js == {"ambient_dim": 3, "field": "GF(3^2)",
                  "basis": [[[1, 0], [1, 1], [0, 0]]], "projective_dim": 0}


def test_matrix_rejects_mixed_fields():
    a = Matrix(make_field(2, 2), [[1, 0], [0, 1]])
    b = Matrix(make_field(2, 3), [[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        a @ b


# --- properties ---

@given(field_and_pair(max_n=4))
def test_intersection_is_set_intersection(data):
    f, N, a, b = data
    if f.q ** N > 2000:
        return
    assert vectors_of(intersect(a, b)) == vectors_of(a) & vectors_of(b)
    assert vectors_of(a) | vectors_of(b) <= vectors_of(join(a, b))


@given(field_and_pair())
def test_dimension_formula(data):
    f, N, a, b = data
    assert intersect(a, b).dim + join(a, b).dim == a.dim + b.dim


@given(field_and_pair())
def test_intersection_laws(data):
    f, N, a, b = data
    ab = intersect(a, b)
    assert ab == intersect(b, a)
    assert intersect(a, a) == a
    assert ab <= a and ab <= b
    assert subspace_leq(a, b) == (ab == a)


@given(st.sampled_from(SMALL), st.integers(1, 8), st.data())
def test_intersection_associative(pe, N, data):
    f = make_field(*pe)
    a, b, c = (data.draw(subspaces(f, N)) for _ in range(3))
    assert intersect(intersect(a, b), c) == intersect(a, intersect(b, c))
    assert intersect_all([a, b, c]) == intersect(a, intersect(b, c))


@given(st.sampled_from(SMALL), st.integers(1, 10), st.integers(1, 10), st.data())
def test_rank_nullity(pe, r, c, data):
    f = make_field(*pe)
    rows = data.draw(st.lists(st.lists(st.integers(0, f.q - 1), min_size=c, max_size=c),
                              min_size=r, max_size=r))
    m = Matrix(f, rows)
    k = kernel(m)
    assert rank(m) + k.dim == c
    # every kernel vector is annihilated
    for v in k.basis:
        assert not np.any(f.asarray((m @ Matrix(f, v.reshape(-1, 1))).data))


@given(st.sampled_from(SMALL), st.integers(1, 8), st.data())
def test_canonical_form_is_basis_independent(pe, N, data):
    f = make_field(*pe)
    a = data.draw(subspaces(f, N))
    if a.is_empty():
        return
    # random invertible recombination of the basis rows
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    while True:
        g = Matrix(f, rng.integers(0, f.q, size=(a.rank, a.rank)))
        if rank(g) == a.rank:
            break
    other = Subspace(f, N, (g @ Matrix(f, a.basis)).data)
    assert other == a and hash(other) == hash(a)
