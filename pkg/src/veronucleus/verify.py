"""Formula-against-oracle verification suites.

Each suite returns a list of ``Check`` records; ``run_verification``
bundles them into a JSON-ready report. Library functions are looked up
through their modules at call time so a patched formula is noticed.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Optional

from . import base_p, invariant_lattice as il, nrc, veronese
from .gf import make_field, smallest_field
from .linalg import subspace_leq

SUITES = ("base_p", "nrc", "lattice", "veronese")


@dataclass
class Caps:
    pascal_rows: int = 512
    n_max: int = 10
    primes: tuple[int, ...] = (2, 3, 5)
    lattice_n_max: int = 16
    lattice_primes: tuple[int, ...] = (2, 3)
    chain_n_max: int = 40
    invariance_n_max: int = 8
    multinomial_t_max: int = 30
    top_nucleus_t_max: int = 64


@dataclass
class Check:
    suite: str
    check: str
    instance: dict
    ok: bool
    detail: str = ""


@dataclass
class _Collector:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, check: str, instance: dict, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(self.suite, check, instance, bool(ok), detail))


def _pascal_rows(rows: int, p: int) -> Iterable[list[int]]:
    row = [1]
    for _ in range(rows):
        yield row
        row = [1] + [(a + b) % p for a, b in zip(row, row[1:])] + [1]


def suite_base_p(caps: Caps) -> list[Check]:
    c = _Collector("base_p")
    for p in caps.primes + ((7,) if 7 not in caps.primes else ()):
        bad = None
        for n, row in enumerate(_pascal_rows(caps.pascal_rows + 1, p)):
            for j, v in enumerate(row):
                if base_p.binom_mod_p(n, j, p) != v:
                    bad = (n, j)
                    break
            if bad:
                break
        c.add("binomial_vs_recurrence", {"p": p, "n_max": caps.pascal_rows}, bad is None,
              f"first mismatch at (n, j)={bad}" if bad else "")
    for p in caps.primes:
        fails = []
        for n, row in enumerate(_pascal_rows(caps.pascal_rows + 1, p)):
            zeros = [j for j, v in enumerate(row) if v == 0]
            per_class: dict[int, int] = {}
            for j in zeros:
                zc = base_p.zero_class(n, j, p)
                if zc is None:
                    fails.append(("unclassified", n, j))
                    continue
                per_class[zc.class_index] = per_class.get(zc.class_index, 0) + 1
                b = n + 1
                top = base_p.top_line(zc.class_index, b, p)
                chain = all(base_p.binom_mod_p(r, j, p) == 0 for r in range(top, n + 1))
                edge = top < 1 or base_p.binom_mod_p(top - 1, j, p) != 0
                if not (chain and edge):
                    fails.append(("top_line", n, j))
            length = len(base_p.to_digits(n, p)) + 1
            for i in range(1, length + 1):
                if base_p.phi(i, n, p) != per_class.get(i, 0):
                    fails.append(("phi", n, i))
                if base_p.sigma(i, n, p) != sum(base_p.phi(h, n, p) for h in range(i, length + 1)):
                    fails.append(("sigma", n, i))
            if base_p.sigma(1, n, p) != len(zeros):
                fails.append(("fine", n))
        c.add("zero_partition", {"p": p, "n_max": caps.pascal_rows}, not fails,
              f"{len(fails)} failures, first {fails[:3]}" if fails else "")
    for p in caps.primes:
        for m in range(1, 4):
            bad = []
            for t in range(caps.multinomial_t_max + 1):
                direct = sum(1 for e in veronese.exponent_tuples(m, t)
                             if _multinomial_int(t, e) % p == 0)
                if base_p.count_vanishing_multinomials(m, t, p) != direct:
                    bad.append(t)
            c.add("multinomial_count", {"p": p, "m": m, "t_max": caps.multinomial_t_max},
                  not bad, f"mismatch at t={bad[:5]}" if bad else "")
    return c.checks


def _multinomial_int(t: int, e) -> int:
    r = math.factorial(t)
    for x in e:
        r //= math.factorial(x)
    return r


def nrc_grid(caps: Caps) -> Iterable[nrc.NrcSpec]:
    for p in caps.primes:
        for n in range(2, caps.n_max + 1):
            yield nrc.NrcSpec(n, smallest_field(p, n + 2))


def suite_nrc(caps: Caps) -> list[Check]:
    c = _Collector("nrc")
    for s in nrc_grid(caps):
        inst = {"p": s.p, "e": s.field.e, "n": s.n}
        subs = []
        for k in range(-1, s.n):
            brute = nrc.nucleus_bruteforce(s, k)
            subs.append(brute)
            dim_f = nrc.nucleus_dim_formula(s, k)
            basis = nrc.nucleus_basis_formula(s, k)
            span_f = nrc.span_of_indices(s, basis.members)
            ok = brute.projective_dim == dim_f and brute == span_f
            c.add("nucleus_formula", {**inst, "k": k}, ok,
                  "" if ok else f"bruteforce dim {brute.projective_dim}, formula dim {dim_f}, "
                                f"basis {list(basis.members)}")
        nested = all(subspace_leq(a, b) for a, b in zip(subs, subs[1:]))
        c.add("nuclei_nested", inst, nested)
        distinct = len(set(subs))
        expected = nrc.count_nuclei(s)
        c.add("nuclei_count", inst, distinct == expected,
              f"{distinct} distinct, formula {expected}")
        c.add("arc", inst, nrc.arc_check(s))
    for e in (2, 3):
        s = nrc.NrcSpec(2, make_field(2, e))
        pts = nrc.point_set_with_nucleus(s)
        c.add("conic_plus_nucleus_arc", {"p": 2, "e": e, "n": 2},
              nrc.is_arc(s.field, pts, 3))
    return c.checks


def suite_lattice(caps: Caps) -> list[Check]:
    c = _Collector("lattice")
    for p in caps.lattice_primes:
        for n in range(1, caps.lattice_n_max + 1):
            lat = il.invariant_lattice(n, p)
            brute = il.closure_bruteforce(n, p, cap=caps.lattice_n_max)
            nodes = lat.node_set()
            c.add("closure_oracle", {"p": p, "n": n}, nodes == brute,
                  "" if nodes == brute else f"lattice {len(nodes)} nodes, brute force {len(brute)}")
    for p in caps.primes:
        bad = []
        for n in range(1, caps.chain_n_max + 1):
            if il.invariant_lattice(n, p).is_chain != il.is_chain_criterion(n, p):
                bad.append(n)
        c.add("chain_criterion", {"p": p, "n_max": caps.chain_n_max}, not bad,
              f"mismatch at n={bad}" if bad else "")
    for p in caps.lattice_primes:
        for n in range(2, caps.invariance_n_max + 1):
            f = smallest_field(p, n + 2)
            lat = il.invariant_lattice(n, p)
            nodes = lat.node_set()
            nodes_ok = all(il.is_invariant_span(f, n, s.members) for s in nodes)
            geometric = il.invariant_coordinate_sets(f, n)
            c.add("geometric_invariance", {"p": p, "e": f.e, "n": n},
                  nodes_ok and geometric == nodes,
                  "" if nodes_ok and geometric == nodes else
                  f"{len(geometric ^ nodes)} coordinate sets disagree")
    return c.checks


def suite_veronese(caps: Caps) -> list[Check]:
    c = _Collector("veronese")
    for p in caps.lattice_primes:
        for t in (2, 3, 4):
            f = smallest_field(p, t)
            s = veronese.VeroneseSpec(2, t, f)
            brute = veronese.hyperplane_nucleus_bruteforce(s)
            dim_f = veronese.hyperplane_nucleus_dim(s)
            span_f = veronese.basis_subspace(s, veronese.hyperplane_nucleus_basis(s))
            ok = brute.projective_dim == dim_f and brute == span_f
            c.add("hyperplane_nucleus", {"m": 2, "t": t, "p": p, "e": f.e}, ok,
                  "" if ok else f"bruteforce {brute.projective_dim}, formula {dim_f}")
    for p in caps.lattice_primes:
        for t in (2, 3, 4):
            f = make_field(p, 1)
            s = veronese.VeroneseSpec(2, t, f)
            brute = veronese.hyperplane_nucleus_bruteforce(s)
            span_f = veronese.basis_subspace(s, veronese.hyperplane_nucleus_basis(s))
            c.add("basis_contained", {"m": 2, "t": t, "p": p, "e": 1}, subspace_leq(span_f, brute))
    for p in caps.primes:
        bad = [t for t in range(2, caps.top_nucleus_t_max + 1)
               if veronese.knot_dim(1, t, p) != nrc.top_nucleus_dim(t, p)]
        c.add("top_nucleus_vs_knot_dim", {"p": p, "t_max": caps.top_nucleus_t_max}, not bad,
              f"mismatch at t={bad}" if bad else "")
    return c.checks


_RUNNERS: dict[str, Callable[[Caps], list[Check]]] = {
    "base_p": suite_base_p,
    "nrc": suite_nrc,
    "lattice": suite_lattice,
    "veronese": suite_veronese,
}


def run_verification(only: Optional[Iterable[str]] = None, caps: Optional[Caps] = None) -> dict:
    caps = caps or Caps()
    names = list(only) if only else list(SUITES)
    unknown = set(names) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites {sorted(unknown)}")
    checks: list[Check] = []
    for name in names:
        checks.extend(_RUNNERS[name](caps))
    failures = [asdict(ch) for ch in checks if not ch.ok]
    return {
        "schema_version": 1,
        "ok": not failures,
        "suites": names,
        "caps": asdict(caps),
        "checks": [asdict(ch) for ch in checks],
        "failures": failures,
    }
