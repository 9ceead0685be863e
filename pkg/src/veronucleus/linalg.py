"""Dense exact linear algebra over a finite field.

Matrices hold encoded field elements (see ``gf``) in int64 numpy arrays.
Row reduction eliminates a whole pivot column with one vectorized
table lookup, which keeps ambient dimensions of a few hundred cheap.

Subspaces are stored by their reduced row echelon basis, so equality and
hashing are structural.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import GF, FieldElement


class DimensionMismatchError(ValueError):
    """Operands live in different ambient spaces."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Matrix:
    """An immutable ``rows x cols`` matrix over one field."""

    __slots__ = ("field", "data")

    def __init__(self, field: GF, data):
        arr = field.asarray(data)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        self.field = field
        self.data = _readonly(arr)

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.field.element(int(self.data[i, j]))

    def column(self, j: int) -> np.ndarray:
        return self.data[:, j].copy()

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.data.T.copy())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field is not self.field:
            raise DimensionMismatchError("matrices over different fields")
        return Matrix(self.field, matmul(self.field, self.data, other.data))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field is other.field and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.field.name, self.shape, self.data.tobytes()))

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __repr__(self):
        return f"Matrix({self.field.name}, {self.tolist()})"


def matmul(f: GF, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = f.add(out, f.mul(a[:, k][:, None], b[k][None, :]))
    return out


def _rref_array(f: GF, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """RREF of ``a`` with zero rows dropped, plus the pivot columns."""
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = f.mul(int(f.inv(lead)), a[r])
        col = a[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            a[idx] = f.sub(a[idx], f.mul(col[idx][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form (zero rows removed) and rank.

    Pivots are taken leftmost column first, topmost candidate row first.
    """
    red, piv = _rref_array(m.field, m.data)
    if red.shape[0] == 0:
        red = np.zeros((0, m.cols), dtype=np.int64)
    return Matrix(m.field, red), len(piv)


def rank(m: Matrix) -> int:
    return len(_rref_array(m.field, m.data)[1])


def _kernel_array(f: GF, a: np.ndarray, cols: int) -> np.ndarray:
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    red, piv = _rref_array(f, a)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        if piv:
            basis[i, piv] = f.neg(red[:, fc])
    return basis


class Subspace:
    """A linear subspace of ``F^N``, held as its RREF basis.

    ``rank`` is the vector-space dimension and ``projective_dim`` is
    ``rank - 1``; the zero subspace is the empty projective subspace.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, field: GF, ambient_dim: int, rows=None, *, _canonical=None):
        self.field = field
        self.ambient_dim = ambient_dim
        if _canonical is not None:
            red, piv = _canonical
        else:
            arr = np.zeros((0, ambient_dim), dtype=np.int64) if rows is None else field.asarray(rows)
            if arr.ndim == 1:
                arr = arr.reshape(-1, ambient_dim) if arr.size else np.zeros((0, ambient_dim), np.int64)
            if arr.shape[1] != ambient_dim:
                raise DimensionMismatchError(
                    f"vectors of length {arr.shape[1]} in ambient dimension {ambient_dim}")
            red, piv = _rref_array(field, arr)
        self.basis = _readonly(red)
        self.pivots = tuple(piv)
        self._hash = None

    @classmethod
    def _from_rref(cls, field: GF, ambient_dim: int, red: np.ndarray, piv: list[int]) -> "Subspace":
        return cls(field, ambient_dim, _canonical=(red, piv))

    @classmethod
    def full(cls, field: GF, n: int) -> "Subspace":
        return cls._from_rref(field, n, np.eye(n, dtype=np.int64), list(range(n)))

    @classmethod
    def empty(cls, field: GF, n: int) -> "Subspace":
        return cls._from_rref(field, n, np.zeros((0, n), dtype=np.int64), [])

    @classmethod
    def coordinate(cls, field: GF, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given indices."""
        idx = sorted(set(indices))
        red = np.zeros((len(idx), n), dtype=np.int64)
        for r, i in enumerate(idx):
            red[r, i] = 1
        return cls._from_rref(field, n, red, idx)

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.rank

    @property
    def projective_dim(self) -> int:
        return self.rank - 1

    def is_empty(self) -> bool:
        return self.rank == 0

    def coordinate_support(self) -> list[int] | None:
        """Indices ``S`` if this is the span of standard basis vectors ``S``, else None."""
        b = self.basis
        if np.count_nonzero(b) != self.rank:
            return None
        return list(self.pivots)

    def _check(self, other: "Subspace") -> None:
        if other.field is not self.field or other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(
                f"{self.field.name}^{self.ambient_dim} vs {other.field.name}^{other.ambient_dim}")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field is other.field and self.ambient_dim == other.ambient_dim
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.name, self.ambient_dim, self.basis.tobytes()))
        return self._hash

    def __le__(self, other: "Subspace") -> bool:
        return subspace_leq(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __or__(self, other: "Subspace") -> "Subspace":
        return join(self, other)

    def annihilator(self) -> np.ndarray:
        """Basis (rows) of the dual vectors vanishing on this subspace."""
        return _kernel_array(self.field, self.basis, self.ambient_dim)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "field": self.field.name,
            "basis": [[self.field.element(int(v)).coeffs for v in row] for row in self.basis],
            "projective_dim": self.projective_dim,
        }

    def __repr__(self):
        return (f"Subspace({self.field.name}^{self.ambient_dim}, "
                f"pdim={self.projective_dim}, basis={self.basis.tolist()})")


def span(vectors: Sequence, field: GF, ambient_dim: int | None = None) -> Subspace:
    """Row space of ``vectors`` (FieldElements or encoded ints)."""
    arr = field.asarray(vectors) if len(vectors) else None
    if arr is None:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty vector list")
        return Subspace.empty(field, ambient_dim)
    if arr.ndim != 2:
        raise DimensionMismatchError("vectors of unequal length")
    if ambient_dim is not None and arr.shape[1] != ambient_dim:
        raise DimensionMismatchError(f"vectors of length {arr.shape[1]}, expected {ambient_dim}")
    return Subspace(field, arr.shape[1], arr)


def kernel(m: Matrix) -> Subspace:
    """Right null space ``{v : m v = 0}``."""
    basis = _kernel_array(m.field, m.data, m.cols)
    return Subspace(m.field, m.cols, basis)


def join(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace(a.field, a.ambient_dim, np.vstack([a.basis, b.basis]))


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection as the common kernel of both annihilators."""
    a._check(b)
    if a.is_empty() or b.is_empty():
        return Subspace.empty(a.field, a.ambient_dim)
    if a.rank == a.ambient_dim:
        return b
    if b.rank == b.ambient_dim:
        return a
    dual = np.vstack([a.annihilator(), b.annihilator()])
    basis = _kernel_array(a.field, dual, a.ambient_dim)
    return Subspace(a.field, a.ambient_dim, basis)


def intersect_all(subspaces: Iterable[Subspace]) -> Subspace:
    """Left fold of ``intersect``; stops as soon as the result is zero."""
    it = iter(subspaces)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("intersection of an empty family is undefined") from None
    if acc.is_empty():
        return acc
    for s in it:
        acc = intersect(acc, s)
        if acc.is_empty():
            break
    return acc


def _residual(a: Subspace, vecs: np.ndarray) -> np.ndarray:
    f = a.field
    vecs = np.array(vecs, dtype=np.int64, copy=True)
    for row, c in zip(a.basis, a.pivots):
        coef = vecs[:, c].copy()
        nz = np.flatnonzero(coef)
        if nz.size:
            vecs[nz] = f.sub(vecs[nz], f.mul(coef[nz][:, None], row[None, :]))
    return vecs


def contains(a: Subspace, v) -> bool:
    vec = a.field.asarray(v)
    if vec.shape != (a.ambient_dim,):
        raise DimensionMismatchError(f"vector of length {vec.shape} in ambient {a.ambient_dim}")
    return not np.any(_residual(a, vec[None, :]))


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    """Is ``a`` contained in ``b``?"""
    a._check(b)
    if a.rank > b.rank:
        return False
    return not np.any(_residual(b, a.basis))
