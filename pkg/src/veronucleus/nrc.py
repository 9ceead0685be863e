"""Normal rational curves and their k-nuclei.

The curve of degree ``n`` over GF(q) is ``{F(1, x, ..., x^n)}`` together
with the point ``F c_n`` at parameter infinity. Osculating subspaces are
spanned by Hasse-derivative points, and the k-nucleus is the
intersection of all k-osculating subspaces.

Two routes are offered and kept independent:

* ``nucleus_bruteforce`` intersects the q+1 osculating subspaces;
* ``nucleus_basis_formula`` / ``nucleus_dim_formula`` read the answer off
  the base-p digits of ``n`` and ``n + 1``.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from . import base_p
from .gf import GF, FieldElement
from .indexset import IndexSet
from .linalg import Matrix, Subspace, intersect_all, rank, span


class OutOfHypothesisWarning(UserWarning):
    """A closed formula was evaluated for a field smaller than it assumes;
    the value is then only a lower bound."""


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
Parameter = Union[FieldElement, _Infinity]


@dataclass(frozen=True)
class NrcSpec:
    n: int
    field: GF

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("the degree n must be at least 2")

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def is_arc_regime(self) -> bool:
        return self.q >= self.n + 2

    def formula_applies(self, k: int) -> bool:
        return self.q >= k + 1

    @property
    def count_applies(self) -> bool:
        return self.q >= self.n

    def check_k(self, k: int, lo: int = -1) -> None:
        if not lo <= k <= self.n - 1:
            raise ValueError(f"k={k} outside {{{lo}, ..., {self.n - 1}}}")


@dataclass(frozen=True)
class CurvePoint:
    parameter: Parameter
    coordinates: tuple[FieldElement, ...]

    @property
    def vector(self) -> list[int]:
        return [c.value for c in self.coordinates]


def curve_points(s: NrcSpec) -> list[CurvePoint]:
    """The q+1 points: one per field element in field order, then infinity."""
    f = s.field
    pts = []
    for x in f.elements():
        coords, c = [], f.one
        for _ in range(s.n + 1):
            coords.append(c)
            c = c * x
        pts.append(CurvePoint(x, tuple(coords)))
    inf = tuple([f.zero] * s.n + [f.one])
    pts.append(CurvePoint(INFINITY, inf))
    return pts


def hasse_derivative(k: int, poly: Sequence, field: GF) -> list[FieldElement]:
    """``D^(k)`` of ``sum poly[r] X^r``: ``X^r`` goes to ``C(r, k) X^(r-k)``."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    coeffs = [field(c) if isinstance(c, FieldElement) else field.element(field.encode(c))
              for c in poly]
    return [coeffs[r] * base_p.binom_mod_p(r, k, field.p) for r in range(k, len(coeffs))]


def derivative_matrix(s: NrcSpec, u: Parameter) -> Matrix:
    """Column ``k`` is the k-th derivative point at parameter ``u``.

    Entry ``(r, k)`` is ``C(r, k) u^(r-k)``; at infinity the columns are
    ``c_n, c_(n-1), ..., c_0``.
    """
    n, f = s.n, s.field
    if u is INFINITY:
        return Matrix(f, np.eye(n + 1, dtype=np.int64)[::-1].copy())
    uv = f.encode(u)
    pw = [f.power(uv, d) for d in range(n + 1)]
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    for r in range(n + 1):
        for k in range(r + 1):
            c = base_p.binom_mod_p(r, k, s.p)
            if c:
                m[r, k] = int(f.mul(f.from_int(c), pw[r - k]))
    return Matrix(f, m)


def osculating_subspace(s: NrcSpec, u: Parameter, k: int) -> Subspace:
    """Span of the first ``k + 1`` columns of ``derivative_matrix(s, u)``."""
    s.check_k(k)
    cols = derivative_matrix(s, u).data[:, : k + 1].T
    return Subspace(s.field, s.n + 1, cols)


def parameters(s: NrcSpec) -> list[Parameter]:
    return [*s.field.elements(), INFINITY]


def nucleus_bruteforce(s: NrcSpec, k: int) -> Subspace:
    """Intersection of all k-osculating subspaces of the curve."""
    s.check_k(k)
    if k == -1:
        return Subspace.empty(s.field, s.n + 1)
    return intersect_all(osculating_subspace(s, u, k) for u in parameters(s))


def nucleus_indices(n: int, k: int, p: int) -> list[int]:
    """Indices ``j`` with ``C(k+1, j) = ... = C(n, j) = 0 mod p``."""
    return [j for j in range(n + 1)
            if all(base_p.binom_mod_p(r, j, p) == 0 for r in range(k + 1, n + 1))]


def _hypothesis(s: NrcSpec, k: int, force: bool) -> None:
    if s.formula_applies(k):
        return
    msg = f"q={s.q} < k+1={k + 1}: the formula is only a lower bound here"
    if not force:
        raise ValueError(msg + " (pass force=True to evaluate anyway)")
    warnings.warn(msg, OutOfHypothesisWarning, stacklevel=3)


def nucleus_basis_formula(s: NrcSpec, k: int, force: bool = False):
    """Base points spanning the k-nucleus, as an ``IndexSet``.

    Requires ``q >= k + 1`` unless ``force`` is set, in which case an
    ``OutOfHypothesisWarning`` is emitted.
    """
    s.check_k(k)
    _hypothesis(s, k, force)
    return IndexSet(s.n, nucleus_indices(s.n, k, s.p))


class Bracket(NamedTuple):
    R: int
    Q: Optional[int]
    digit_condition: bool


def nucleus_bracket(n: int, k: int, p: int) -> Bracket:
    """Positions ``Q < R`` with ``T(R, b) <= k+1 < T(Q, b)``, ``b = n + 1``.

    ``R`` is the smallest position whose top line is at most ``k + 1``
    and ``Q = R - 1``. ``digit_condition`` reports whether at most one
    digit of ``b`` in positions ``Q..R-1`` is non-zero.
    """
    b = n + 1
    bd = base_p.to_digits(b, p)
    R = next(i for i in range(len(bd) + 1) if base_p.top_line(i, b, p) <= k + 1)
    if R == 0:
        return Bracket(0, None, True)
    Q = R - 1
    assert base_p.top_line(Q, b, p) > k + 1
    cond = sum(1 for s in range(Q, R) if bd[s]) <= 1
    return Bracket(R, Q, cond)


def nucleus_dim_from_digits(n: int, k: int, p: int) -> int:
    R = nucleus_bracket(n, k, p).R
    if R == 0:
        return n
    return base_p.sigma(R, n, p) - 1


def nucleus_dim_formula(s: NrcSpec, k: int, force: bool = False) -> int:
    """Projective dimension of the k-nucleus read off the digits of n."""
    s.check_k(k)
    _hypothesis(s, k, force)
    return nucleus_dim_from_digits(s.n, k, s.p)


def top_nucleus_dim(n: int, p: int) -> int:
    """Dimension of the (n-1)-nucleus: ``n - prod(n_s + 1)``."""
    prod = 1
    for d in base_p.to_digits(n, p).digits:
        prod *= d + 1
    return n - prod


def count_nuclei_digits(n: int, p: int) -> int:
    return len(base_p.to_digits(n + 1, p).nonzero_positions())


def count_nuclei(s: NrcSpec) -> int:
    """Number of distinct k-nuclei, the empty one included."""
    if not s.count_applies:
        warnings.warn(f"q={s.q} < n={s.n}: count not guaranteed", OutOfHypothesisWarning,
                      stacklevel=2)
    return count_nuclei_digits(s.n, s.p)


def point_nucleus_index(n: int, p: int) -> Optional[int]:
    """``p^i - 1`` when ``n = 2 p^i - 2 >= 2``, else None."""
    if n < 2 or (n + 2) % 2:
        return None
    half = (n + 2) // 2
    pw = 1
    while pw < half:
        pw *= p
    return pw - 1 if pw == half else None


def point_nucleus_predicate(s: NrcSpec) -> Optional[int]:
    """Index ``j`` such that the smallest non-empty nucleus is the point
    ``F c_j``, or None when that nucleus is not a point."""
    return point_nucleus_index(s.n, s.p)


def _independent(f: GF, vectors: np.ndarray) -> bool:
    return rank(Matrix(f, vectors)) == vectors.shape[0]


def is_arc(f: GF, vectors: np.ndarray, size: int, exhaustive_limit: int = 20000,
           samples: int = 2000, seed: int = 0) -> bool:
    """Are every ``size`` of the given points linearly independent?

    All subsets are checked when there are at most ``exhaustive_limit`` of
    them, otherwise ``samples`` subsets drawn with a fixed seed.
    """
    npts = vectors.shape[0]
    if math.comb(npts, size) <= exhaustive_limit:
        subsets = itertools.combinations(range(npts), size)
    else:
        rng = random.Random(seed)
        subsets = (sorted(rng.sample(range(npts), size)) for _ in range(samples))
    return all(_independent(f, vectors[list(sub)]) for sub in subsets)


def curve_matrix(s: NrcSpec) -> np.ndarray:
    return np.array([pt.vector for pt in curve_points(s)], dtype=np.int64)


def arc_check(s: NrcSpec, exhaustive_limit: int = 20000, samples: int = 2000,
              seed: int = 0) -> bool:
    """Is every set of ``min(n + 1, q + 1)`` curve points independent?"""
    pts = curve_matrix(s)
    return is_arc(s.field, pts, min(s.n + 1, pts.shape[0]), exhaustive_limit, samples, seed)


def nucleus_report(s: NrcSpec, ks: Sequence[int] | None = None, bruteforce: bool = True) -> dict:
    """Formula against brute force for each k, JSON-ready."""
    ks = list(range(-1, s.n)) if ks is None else list(ks)
    table = {}
    for k in ks:
        inside = s.formula_applies(k)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutOfHypothesisWarning)
            dim_f = nucleus_dim_formula(s, k, force=True)
            basis = nucleus_basis_formula(s, k, force=True)
        row = {
            "dim_formula": dim_f,
            "dim_bruteforce": None,
            "basis_indices": list(basis.members),
            "in_hypothesis": inside,
        }
        if bruteforce:
            row["dim_bruteforce"] = nucleus_bruteforce(s, k).projective_dim
        table[str(k)] = row
    return {
        "schema_version": 1,
        "n": s.n,
        "field": s.field.name,
        "p": s.p,
        "q": s.q,
        "count_nuclei": count_nuclei_digits(s.n, s.p),
        "point_nucleus": point_nucleus_index(s.n, s.p),
        "nuclei": table,
    }


def point_set_with_nucleus(s: NrcSpec, k: int | None = None) -> np.ndarray:
    """Curve points followed by a spanning vector of the (n-1)-nucleus
    (brute force), which must be a single point."""
    k = s.n - 1 if k is None else k
    nuc = nucleus_bruteforce(s, k)
    if nuc.rank != 1:
        raise ValueError(f"the {k}-nucleus is not a point (projective dim {nuc.projective_dim})")
    return np.vstack([curve_matrix(s), nuc.basis])


def span_of_indices(s: NrcSpec, indices) -> Subspace:
    return Subspace.coordinate(s.field, s.n + 1, indices)


def curve_span(s: NrcSpec) -> Subspace:
    return span(curve_matrix(s), s.field)
