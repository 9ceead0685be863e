"""Invariant subspaces of a normal rational curve.

For a rich enough field the subspaces fixed by every automorphic
collineation of the curve are exactly the spans of base points
``F c_j`` whose index sets are closed under

* ``omega``: ``j -> {m <= n : C(m, j) != 0 mod p}``, and
* ``psi``: ``j -> {j, n - j}``.

The irreducible ones are produced from the digits of ``b = n + 1``:
truncate ``b`` below a cut position ``i``, bump digits at the top of
chosen intervals while clearing the interval itself, and collect the
``omega`` sets of every admissible variant (``lambda_set``). Every
invariant index set is a union of these.

Two oracles check the construction: ``closure_bruteforce`` scans all
``2^(n+1)`` subsets, and ``invariance_oracle`` applies generators of
GL(2, q) to coordinate subspaces through their symmetric-power matrices.

Index sets are handled internally as int bitmasks (bit ``j`` = index ``j``).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

from . import base_p
from .gf import GF, make_field
from .indexset import IndexSet
from .linalg import Matrix, Subspace, subspace_leq
from .nrc import nucleus_indices

Interval = tuple[int, int]  # half-open [h, H)


# --- closure operators ---

@lru_cache(maxsize=None)
def _omega_mask(j: int, n: int, p: int) -> int:
    m = 0
    for r in range(j, n + 1):
        if base_p.binom_mod_p(r, j, p):
            m |= 1 << r
    return m


def omega(j: int, n: int, p: int) -> IndexSet:
    """``{m : 0 <= m <= n, C(m, j) != 0 mod p}``; empty when ``j > n``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return IndexSet.from_mask(n, _omega_mask(j, n, p))


def _omega_closure_mask(mask: int, n: int, p: int) -> int:
    out = 0
    j = 0
    while mask >> j:
        if mask >> j & 1:
            out |= _omega_mask(j, n, p)
        j += 1
    return out


def omega_closure(J: IndexSet, p: int) -> IndexSet:
    """Union of ``omega(j)`` over ``j`` in ``J``."""
    return IndexSet.from_mask(J.n, _omega_closure_mask(J.mask, J.n, p))


def _reverse_mask(mask: int, n: int) -> int:
    out = 0
    for j in range(n + 1):
        if mask >> j & 1:
            out |= 1 << (n - j)
    return out


def psi_closure(J: IndexSet) -> IndexSet:
    """``J`` together with every reflected index ``n - j``."""
    return IndexSet(J.n, [*J.members, *(J.n - j for j in J.members)])


def is_closed_mask(mask: int, n: int, p: int) -> bool:
    return (_omega_closure_mask(mask, n, p) | _reverse_mask(mask, n)) & ~mask == 0


def is_closed(J: IndexSet, p: int) -> bool:
    return is_closed_mask(J.mask, J.n, p)


# --- digit surgery on b = n + 1 ---

def v_truncate(i: int, b: int, p: int) -> int:
    """Digits of ``b`` in positions ``0..i-1``."""
    if i < 0:
        raise ValueError("cut position must be non-negative")
    return b - base_p.top_line(i, b, p)


@dataclass(frozen=True)
class IntervalFamily:
    """Cut position ``i`` and intervals ``[h, H)`` below it (``None`` = empty).

    Non-empty intervals need ``H <= i - 1``, must be strictly separated
    (``h`` of a later interval exceeds ``H`` of an earlier one), and need
    ``b_H < p - 1`` and ``b_h > 0``.
    """

    i: int
    intervals: tuple[Optional[Interval], ...]
    b: int
    p: int

    def __post_init__(self):
        base_p.check_prime(self.p)
        if self.i < 0 or self.b < 1:
            raise ValueError("need i >= 0 and b >= 1")
        bd = base_p.to_digits(self.b, self.p)
        last_H = None
        for iv in self.intervals:
            if iv is None:
                continue
            h, H = iv
            if not (self.i - 1 >= H > h >= 0):
                raise ValueError(f"interval [{h}, {H}) does not fit below cut {self.i}")
            if last_H is not None and not h > last_H:
                raise ValueError(f"interval [{h}, {H}) not separated from the previous one")
            if not (bd[H] < self.p - 1 and bd[h] > 0):
                raise ValueError(f"digit condition fails for [{h}, {H}) in b={bd}")
            last_H = H

    @property
    def nonempty(self) -> list[Interval]:
        return [iv for iv in self.intervals if iv is not None]

    def describe(self) -> dict:
        return {"i": self.i,
                "intervals": [None if iv is None else list(range(*iv)) for iv in self.intervals]}


def _apply_runs(i: int, b: int, p: int, runs: Iterable[Interval]) -> int:
    digits = list(base_p.to_digits(v_truncate(i, b, p), p).digits) + [0] * (i + 1)
    for h, H in runs:
        digits[H] += 1
        for j in range(h, H):
            digits[j] = 0
    return base_p.from_digits(digits, p)


def v_modified(f: IntervalFamily) -> int:
    """``V(i, b)`` with, per interval ``[h, H)``, digit ``H`` raised by one
    and digits ``h..H-1`` cleared."""
    return _apply_runs(f.i, f.b, f.p, f.nonempty)


def _runs(members: Sequence[int]) -> list[Interval]:
    out = []
    for _, grp in itertools.groupby(enumerate(sorted(members)), key=lambda t: t[1] - t[0]):
        g = [m for _, m in grp]
        out.append((g[0], g[-1] + 1))
    return out


def _runs_admissible(runs: Sequence[Interval], b: int, p: int) -> bool:
    bd = base_p.to_digits(b, p)
    return all(bd[H] < p - 1 and bd[h] > 0 for h, H in runs)


def _interval_choices(iv: Optional[Interval], b: int, p: int) -> list[frozenset]:
    if iv is None:
        return [frozenset()]
    h, H = iv
    pool = range(h, H)
    out = [frozenset()]
    for size in range(1, H - h + 1):
        for sub in itertools.combinations(pool, size):
            if _runs_admissible(_runs(sub), b, p):
                out.append(frozenset(sub))
    return out


def t_variants(f: IntervalFamily) -> list[tuple[frozenset, ...]]:
    """Admissible sub-choices ``(T_1, ..., T_L)``, ``T_a`` a subset of ``I_a``.

    A non-empty ``T_a`` is admissible when each of its maximal runs of
    consecutive integers, read as an interval, passes the digit condition
    on ``b``; the empty choice is always admissible.
    """
    per = [_interval_choices(iv, f.b, f.p) for iv in f.intervals]
    return list(itertools.product(*per))


def _variant_value(f: IntervalFamily, variant: Sequence[frozenset]) -> int:
    runs = [r for T in variant for r in _runs(sorted(T))]
    return _apply_runs(f.i, f.b, f.p, runs)


def variant_values(f: IntervalFamily) -> list[int]:
    """Sorted distinct values ``V(T_1, ..., T_L; i, b)`` over ``t_variants``."""
    return sorted({_variant_value(f, v) for v in t_variants(f)})


def _lambda_mask(f: IntervalFamily) -> int:
    n = f.b - 1
    out = 0
    for v in variant_values(f):
        if v <= n:
            out |= _omega_mask(v, n, f.p)
    return out


def lambda_set(f: IntervalFamily) -> IndexSet:
    """Union of ``omega(V)`` over all admissible variants of ``f``."""
    n = f.b - 1
    mask = _lambda_mask(f)
    assert is_closed_mask(mask, n, f.p), f"lambda set of {f} is not closed"
    return IndexSet.from_mask(n, mask)


def interval_families(i: int, b: int, p: int) -> Iterator[IntervalFamily]:
    """Every valid family at cut ``i`` (intervals listed left to right),
    starting with the family without intervals."""
    bd = base_p.to_digits(b, p)
    cand = [(h, H) for H in range(i) for h in range(H)
            if bd[H] < p - 1 and bd[h] > 0]
    cand.sort()

    def rec(start_after: int, chosen: list[Interval]):
        yield IntervalFamily(i, tuple(chosen), b, p)
        for h, H in cand:
            if h > start_after:
                yield from rec(H, chosen + [(h, H)])

    yield from rec(-1, [])


def irreducible_descriptors(n: int, p: int) -> dict[int, list[dict]]:
    """Map from index-set mask to the ``(i, intervals)`` that produce it."""
    b = n + 1
    out: dict[int, list[dict]] = {}
    for i in range(len(base_p.to_digits(b, p)) + 1):
        for fam in interval_families(i, b, p):
            mask = lambda_set(fam).mask
            out.setdefault(mask, []).append(fam.describe())
    return out


def enumerate_irreducibles(n: int, p: int) -> set[IndexSet]:
    """Distinct lambda sets over every cut position and interval family."""
    return {IndexSet.from_mask(n, m) for m in irreducible_descriptors(n, p)}


# --- lattice ---

def _sort_key(s: IndexSet):
    return (len(s), s.members)


@dataclass
class Lattice:
    """Union-closed family of invariant index sets with its Hasse diagram.

    ``cover_edges`` are ``(lower, upper)`` positions into ``nodes``.
    """

    n: int
    p: int
    nodes: list[IndexSet]
    cover_edges: list[tuple[int, int]]
    irreducible: list[bool]
    nucleus: list[bool]
    descriptors: list[list[dict]] = dc_field(default_factory=list)

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, s: IndexSet) -> int:
        return self.nodes.index(s)

    @property
    def is_chain(self) -> bool:
        return all(a <= b for a, b in zip(self.nodes, self.nodes[1:]))

    def node_set(self) -> set[IndexSet]:
        return set(self.nodes)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "n": self.n,
            "p": self.p,
            "nodes": [
                {"indices": list(s.members), "irreducible": irr, "nucleus": nuc,
                 "descriptors": desc}
                for s, irr, nuc, desc in zip(self.nodes, self.irreducible, self.nucleus,
                                             self.descriptors or [[] for _ in self.nodes])
            ],
            "cover_edges": [list(e) for e in self.cover_edges],
            "is_chain": self.is_chain,
        }

    def to_dot(self) -> str:
        """Graphviz source; filled = irreducible, double circle = nucleus."""
        lines = [f'digraph "invariant_subspaces_n{self.n}_p{self.p}" {{',
                 "  rankdir=BT;",
                 '  node [shape=circle, label="", width=0.25, fixedsize=true];']
        for k, s in enumerate(self.nodes):
            attrs = ["shape=doublecircle" if self.nucleus[k] else "shape=circle"]
            if self.irreducible[k]:
                attrs += ["style=filled", "fillcolor=black"]
            tip = "{" + ",".join(map(str, s.members)) + "}"
            attrs.append(f'tooltip="{tip}"')
            attrs.append(f'xlabel="{_short_label(s, self.n)}"')
            lines.append(f"  v{k} [{', '.join(attrs)}];")
        for lo, hi in self.cover_edges:
            lines.append(f"  v{lo} -> v{hi} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _short_label(s: IndexSet, n: int) -> str:
    if not s.members:
        return "{}"
    if len(s) == n + 1:
        return f"0..{n}"
    return f"|{len(s)}|"


def _union_closure(masks: Iterable[int]) -> set[int]:
    gens = [m for m in set(masks) if m]
    nodes = {0, *gens}
    frontier = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x | g
                if y not in nodes:
                    nodes.add(y)
                    new.append(y)
        frontier = new
    return nodes


def build_lattice(irreducibles: Iterable[IndexSet] | Mapping, n: int, p: int) -> Lattice:
    """Close ``irreducibles`` under union (plus the empty set) and flag nodes.

    A node is irreducible when it is not the union of the nodes strictly
    below it; the empty set counts as irreducible. A node is a nucleus when
    it equals the index set of some k-nucleus.
    """
    descs: Mapping[int, list] = {}
    if isinstance(irreducibles, Mapping):
        descs = {(k.mask if isinstance(k, IndexSet) else k): v for k, v in irreducibles.items()}
        gens = list(descs)
    else:
        gens = [s.mask for s in irreducibles]
    masks = _union_closure(gens)
    for a in masks:
        for b in masks:
            if not is_closed_mask(a | b, n, p):
                raise AssertionError(f"join of two invariant sets is not closed (n={n}, p={p})")
    order = sorted(masks, key=lambda m: (bin(m).count("1"), IndexSet.from_mask(n, m).members))
    pos = {m: k for k, m in enumerate(order)}
    below = {m: [x for x in order if x != m and x & ~m == 0] for m in order}
    edges = []
    for m in order:
        lows = below[m]
        for x in lows:
            if not any(y != x and x & ~y == 0 for y in lows):
                edges.append((pos[x], pos[m]))
    edges.sort()
    irreducible = []
    for m in order:
        u = 0
        for x in below[m]:
            u |= x
        irreducible.append(m == 0 or u != m)
    nuclei = {IndexSet(n, nucleus_indices(n, k, p)).mask for k in range(-1, n)}
    nucleus = [m in nuclei for m in order]
    return Lattice(n, p, [IndexSet.from_mask(n, m) for m in order], edges, irreducible,
                   nucleus, [descs.get(m, []) for m in order])


def invariant_lattice(n: int, p: int) -> Lattice:
    """Lattice of invariant index sets built from the enumerated irreducibles."""
    return build_lattice(irreducible_descriptors(n, p), n, p)


def is_chain_criterion(n: int, p: int) -> bool:
    """Digit test on ``b = n + 1`` for the lattice to be totally ordered."""
    bd = base_p.to_digits(n + 1, p)
    N = bd.nonzero_positions()
    d = len(N)
    if d <= 2:
        return True
    return N[-1] - N[0] == d - 1 and all(bd[s] == p - 1 for s in N[1:-1])


def closure_bruteforce(n: int, p: int, cap: int = 16) -> set[IndexSet]:
    """All ``omega``- and ``psi``-closed subsets of ``{0, ..., n}`` by full scan."""
    if n > cap:
        raise ValueError(f"n={n} exceeds the brute-force cap {cap}")
    size = n + 1
    masks = np.arange(1 << size, dtype=np.int64)
    need = np.zeros_like(masks)
    for j in range(size):
        req = _omega_mask(j, n, p) | (1 << (n - j))
        need |= np.where((masks >> j) & 1 == 1, req, 0)
    closed = masks[(need & ~masks) == 0]
    return {IndexSet.from_mask(n, int(m)) for m in closed}


# --- geometric oracle ---

def symmetric_power_matrix(g: Matrix, n: int) -> Matrix:
    """Collineation induced by ``g = [[a, b], [c, d]]`` on the curve's space.

    Row ``j`` holds the coefficients of ``(a X0 + b X1)^(n-j) (c X0 + d X1)^j``
    in the monomial basis ``X0^(n-e) X1^e``, so the curve point of
    ``(x0, x1)`` is sent exactly onto the curve point of ``g (x0, x1)``.
    Building columns instead of rows gives the dual action, which in
    characteristic p differs on every index ``j`` with ``C(n, j) = 0``.
    """
    f = g.field
    if g.shape != (2, 2):
        raise ValueError("g must be 2x2")
    a, b, c, d = (int(v) for v in g.data.ravel())
    det = f.sub(f.mul(a, d), f.mul(b, c))
    if int(det) == 0:
        raise ValueError("g is singular")

    def pmul(u: np.ndarray, v: np.ndarray) -> np.ndarray:
        out = np.zeros(len(u) + len(v) - 1, dtype=np.int64)
        for i, x in enumerate(u):
            if x:
                out[i:i + len(v)] = f.add(out[i:i + len(v)], f.mul(int(x), v))
        return out

    # polynomials in y = X1/X0, constant term first
    first = np.array([a, b], dtype=np.int64)
    second = np.array([c, d], dtype=np.int64)
    pow1 = [np.array([1], dtype=np.int64)]
    pow2 = [np.array([1], dtype=np.int64)]
    for _ in range(n):
        pow1.append(pmul(pow1[-1], first))
        pow2.append(pmul(pow2[-1], second))
    m = np.zeros((n + 1, n + 1), dtype=np.int64)
    for j in range(n + 1):
        m[j, :] = pmul(pow1[n - j], pow2[j])
    return Matrix(f, m)


def pgl2_generators(f: GF) -> list[Matrix]:
    """``diag(1, gamma)``, the swap and ``[[1, 1], [0, 1]]``; together they
    generate GL(2, q)."""
    gamma = f.generator()
    return [Matrix(f, [[1, 0], [0, gamma]]),
            Matrix(f, [[0, 1], [1, 0]]),
            Matrix(f, [[1, 1], [0, 1]])]


class RichnessWarning(UserWarning):
    """The field is too small for the invariant-subspace classification."""


def _check_rich(n: int, q: int) -> None:
    if not (q >= n + 2 or n == 2):
        warnings.warn(f"q={q} < n+2={n + 2}: coordinate spans need not be the only "
                      "invariant subspaces", RichnessWarning, stacklevel=3)


def is_invariant_span(f: GF, n: int, candidate: Iterable[int],
                      generators: Sequence[Matrix] | None = None) -> bool:
    gens = pgl2_generators(f) if generators is None else generators
    cand = sorted(set(candidate))
    U = Subspace.coordinate(f, n + 1, cand)
    for g in gens:
        M = symmetric_power_matrix(g, n)
        image = Subspace(f, n + 1, M.data[:, cand].T) if cand else U
        if not subspace_leq(image, U):
            return False
    return True


def invariance_oracle(n: int, p: int, e: int, candidate: IndexSet | Iterable[int]) -> bool:
    """Is the span of ``F c_j`` (``j`` in ``candidate``) fixed by the
    collineations induced from GL(2, p^e)?"""
    f = make_field(p, e)
    _check_rich(n, f.q)
    members = candidate.members if isinstance(candidate, IndexSet) else candidate
    return is_invariant_span(f, n, members)


def invariant_coordinate_sets(f: GF, n: int) -> set[IndexSet]:
    """Every index set whose coordinate span passes the generator test."""
    gens = pgl2_generators(f)
    mats = [symmetric_power_matrix(g, n).data for g in gens]
    out = set()
    for mask in range(1 << (n + 1)):
        # the image of c_j is column j; it must vanish outside the set
        outside = [r for r in range(n + 1) if not mask >> r & 1]
        inside = [c for c in range(n + 1) if mask >> c & 1]
        if all(not np.any(M[np.ix_(outside, inside)]) for M in mats):
            out.add(IndexSet.from_mask(n, mask))
    return out
