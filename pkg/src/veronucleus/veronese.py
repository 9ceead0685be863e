"""Veronese varieties V(m, t) and the intersection of their osculating hyperplanes.

Coordinates of the ambient space are indexed by exponent tuples
``(e_0, ..., e_m)`` with ``sum = t``, listed in descending lexicographic
order, so for ``m = 1`` index ``j`` of the normal rational curve is the
tuple ``(t - j, j)``.

The osculating hyperplane attached to a parameter hyperplane
``a_0 x_0 + ... + a_m x_m = 0`` has dual coordinates
``multinomial(t; e) * prod(a_i^e_i)``. Intersecting all of them gives the
hyperplane nucleus, which is compared against the base points whose
multinomial coefficient vanishes mod p.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import base_p
from .gf import GF, FieldElement
from .linalg import Matrix, Subspace, kernel
from .nrc import OutOfHypothesisWarning


def exponent_tuples(m: int, t: int) -> list[tuple[int, ...]]:
    """All ``(e_0, ..., e_m)`` with non-negative entries summing to ``t``,
    in descending lexicographic order."""
    if m < 0 or t < 0:
        raise ValueError("m and t must be non-negative")
    if m == 0:
        return [(t,)]
    out = []
    for e0 in range(t, -1, -1):
        out.extend((e0, *rest) for rest in exponent_tuples(m - 1, t - e0))
    return out


@dataclass(frozen=True)
class VeroneseSpec:
    m: int
    t: int
    field: GF

    def __post_init__(self):
        if self.m < 1 or self.t < 2:
            raise ValueError("need m >= 1 and t >= 2")

    @property
    def N(self) -> int:
        return math.comb(self.m + self.t, self.t)

    @cached_property
    def exponents(self) -> list[tuple[int, ...]]:
        return exponent_tuples(self.m, self.t)

    @property
    def in_hypothesis(self) -> bool:
        """Whether the field is large enough for the nucleus to be spanned
        by base points (``q >= t``)."""
        return self.field.q >= self.t


def _encoded(f: GF, vec: Sequence) -> list[int]:
    v = [f.encode(x) for x in vec]
    if not any(v):
        raise ValueError("the zero vector does not represent a point")
    return v


def _monomials(f: GF, vals: Sequence[int], exps: list[tuple[int, ...]]) -> np.ndarray:
    t = sum(exps[0])
    powers = [[f.power(v, k) for k in range(t + 1)] for v in vals]
    out = np.empty(len(exps), dtype=np.int64)
    for idx, e in enumerate(exps):
        r = 1
        for i, k in enumerate(e):
            if k:
                r = int(f.mul(r, powers[i][k]))
        out[idx] = r
    return out


def veronese_point(s: VeroneseSpec, x: Sequence) -> list[FieldElement]:
    """Image of the parameter point ``x = (x_0, ..., x_m)``."""
    f = s.field
    vals = _encoded(f, x)
    if len(vals) != s.m + 1:
        raise ValueError(f"expected {s.m + 1} coordinates")
    return [f.element(int(v)) for v in _monomials(f, vals, s.exponents)]


def _multinomials(s: VeroneseSpec) -> np.ndarray:
    f = s.field
    return np.array([f.from_int(base_p.multinom_mod_p(s.t, e, s.field.p)) for e in s.exponents],
                    dtype=np.int64)


def _hyperplane_row(s: VeroneseSpec, vals: Sequence[int], coef: np.ndarray) -> np.ndarray:
    f = s.field
    row = f.mul(coef, _monomials(f, vals, s.exponents))
    assert np.any(row), "osculating hyperplane vector vanished"
    return row


def osculating_hyperplane(s: VeroneseSpec, a: Sequence) -> list[FieldElement]:
    """Dual coordinates of the osculating hyperplane belonging to the
    parameter hyperplane ``sum a_i x_i = 0``."""
    f = s.field
    vals = _encoded(f, a)
    if len(vals) != s.m + 1:
        raise ValueError(f"expected {s.m + 1} coordinates")
    row = _hyperplane_row(s, vals, _multinomials(s))
    return [f.element(int(v)) for v in row]


def projective_points(f: GF, m: int) -> list[tuple[int, ...]]:
    """One representative per point of PG(m, q), first non-zero entry 1."""
    out = []
    q = f.q
    for lead in range(m + 1):
        for tail in itertools.product(range(q), repeat=m - lead):
            out.append((0,) * lead + (1,) + tail)
    return out


def hyperplane_matrix(s: VeroneseSpec) -> Matrix:
    """Rows: osculating hyperplanes of all ``(q^(m+1) - 1)/(q - 1)``
    parameter hyperplanes."""
    f = s.field
    coef = _multinomials(s)
    rows = [_hyperplane_row(s, a, coef) for a in projective_points(f, s.m)]
    return Matrix(f, np.array(rows, dtype=np.int64))


def hyperplane_nucleus_bruteforce(s: VeroneseSpec, max_rows: int = 200_000) -> Subspace:
    """Common points of all osculating hyperplanes."""
    q = s.field.q
    count = (q ** (s.m + 1) - 1) // (q - 1)
    if count > max_rows:
        raise ValueError(f"{count} parameter hyperplanes exceed the limit {max_rows}")
    return kernel(hyperplane_matrix(s))


def hyperplane_nucleus_basis(s: VeroneseSpec) -> list[tuple[int, ...]]:
    """Exponent tuples whose multinomial coefficient vanishes mod p."""
    return [e for e in s.exponents if base_p.multinom_mod_p(s.t, e, s.field.p) == 0]


def knot_dim(m: int, t: int, p: int) -> int:
    """``C(m+t, t) - prod C(m + t_s, t_s) - 1`` over the base-p digits of t."""
    return base_p.count_vanishing_multinomials(m, t, p) - 1


def hyperplane_nucleus_dim(s: VeroneseSpec) -> int:
    """Projective dimension of the hyperplane nucleus by formula.

    Exact when ``q >= t``; otherwise an ``OutOfHypothesisWarning`` is
    issued and the value is only a lower bound.
    """
    if not s.in_hypothesis:
        warnings.warn(f"q={s.field.q} < t={s.t}: dimension formula is a lower bound here",
                      OutOfHypothesisWarning, stacklevel=2)
    return knot_dim(s.m, s.t, s.field.p)


def osculating_dim_formula(r: int, k: int, m: int, t: int) -> int:
    """Projective dimension of the ``(r, k)``-osculating subspaces of V(m, t)."""
    if not 0 <= r < m:
        raise ValueError("need 0 <= r < m")
    if not -1 <= k <= t - 1:
        raise ValueError("need -1 <= k <= t - 1")
    return sum(math.comb(r + i, i) * math.comb(m + t - r - i - 1, t - i)
               for i in range(t - k, t + 1)) - 1


def basis_subspace(s: VeroneseSpec, tuples: Sequence[tuple[int, ...]]) -> Subspace:
    pos = {e: i for i, e in enumerate(s.exponents)}
    return Subspace.coordinate(s.field, s.N, [pos[e] for e in tuples])


def veronese_report(s: VeroneseSpec, bruteforce: bool = True) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutOfHypothesisWarning)
        dim_f = hyperplane_nucleus_dim(s)
    nucleus = {
        "dim_formula": dim_f,
        "dim_bruteforce": None,
        "basis_tuples": [list(e) for e in hyperplane_nucleus_basis(s)],
        "in_hypothesis": s.in_hypothesis,
    }
    if bruteforce:
        sub = hyperplane_nucleus_bruteforce(s)
        nucleus["dim_bruteforce"] = sub.projective_dim
        nucleus["subspace"] = sub.to_json()
    return {"schema_version": 1, "m": s.m, "t": s.t, "field": s.field.name, "nucleus": nucleus}
