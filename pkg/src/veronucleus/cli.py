"""Command line: ``veronucleus {pascal,nuclei,lattice,veronese,verify}``.

Output goes to stdout unless ``--output`` names a file. All orderings are
sorted, so identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Optional, Sequence

from . import base_p, invariant_lattice as il, nrc, veronese
from .gf import make_field, smallest_field
from .verify import SUITES, Caps, run_verification


SCHEMAS = ("pascal", "nuclei", "lattice", "veronese", "verify")


def load_schema(name: str) -> dict:
    """The shipped JSON schema for the ``name`` command's JSON output."""
    if name not in SCHEMAS:
        raise ValueError(f"no schema named {name!r}")
    text = resources.files("veronucleus").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    return "\n".join(" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip()
                     for r in rows) + "\n"


# --- pascal ---

def pascal_report(rows: int, p: int) -> dict:
    out = []
    for n in range(rows):
        entries = [base_p.binom_mod_p(n, j, p) for j in range(n + 1)]
        length = len(base_p.to_digits(n, p)) + 1
        phis = {str(i): base_p.phi(i, n, p) for i in range(1, length) if base_p.phi(i, n, p)}
        out.append({
            "n": n,
            "digits": base_p.to_digits(n, p).display(),
            "entries": entries,
            "zeros": entries.count(0),
            "phi": phis,
            "sigma1": base_p.sigma(1, n, p),
        })
    return {"schema_version": 1, "p": p, "rows": out}


def cmd_pascal(args) -> tuple[str, int]:
    if args.format == "ascii":
        return base_p.render_triangle(args.rows, args.p) + "\n", 0
    rep = pascal_report(args.rows, args.p)
    if args.format == "json":
        return _dump(rep), 0
    lines = [["n", "base p", "zeros", "per class (i: count)"]]
    for r in rep["rows"]:
        cls = ", ".join(f"{i}: {c}" for i, c in r["phi"].items())
        lines.append([str(r["n"]), r["digits"], str(r["zeros"]), cls])
    return _table(lines), 0


# --- nuclei ---

def _k_label(ks: list[int]) -> str:
    if len(ks) == 1:
        return str(ks[0])
    if len(ks) == 2:
        return f"{ks[0]},{ks[1]}"
    return f"{ks[0]}..{ks[-1]}"


def nuclei_table(rep: dict) -> str:
    groups: list[tuple[list[int], tuple]] = []
    for k, row in rep["nuclei"].items():
        key = (row["dim_formula"], row["dim_bruteforce"], row["in_hypothesis"])
        if groups and groups[-1][1] == key:
            groups[-1][0].append(int(k))
        else:
            groups.append(([int(k)], key))

    def fmt(v):
        return "-" if v is None else str(v)

    rows = [["k", *(_k_label(ks) for ks, _ in groups)],
            ["dim (formula)", *(fmt(key[0]) for _, key in groups)],
            ["dim (brute force)", *(fmt(key[1]) for _, key in groups)],
            ["q >= k+1", *("yes" if key[2] else "no" for _, key in groups)]]
    b = base_p.to_digits(rep["n"] + 1, rep["p"]).display()
    head = (f"n={rep['n']} over {rep['field']}, b=n+1={b}, "
            f"distinct nuclei: {rep['count_nuclei']}\n")
    return head + _table(rows)


def cmd_nuclei(args) -> tuple[str, int]:
    f = make_field(args.p, args.e) if args.e else smallest_field(args.p, args.n + 2)
    s = nrc.NrcSpec(args.n, f)
    rep = nrc.nucleus_report(s, bruteforce=not args.no_bruteforce)
    if args.format == "json":
        return _dump(rep), 0
    return nuclei_table(rep), 0


# --- lattice ---

def cmd_lattice(args) -> tuple[str, int]:
    lat = il.invariant_lattice(args.n, args.p)
    if args.format == "dot":
        return lat.to_dot(), 0
    if args.format == "json":
        return _dump(lat.to_json()), 0
    rows = [["node", "size", "irreducible", "nucleus", "covers", "indices"]]
    covers = {k: [lo for lo, hi in lat.cover_edges if hi == k] for k in range(len(lat))}
    for k, s in enumerate(lat.nodes):
        rows.append([str(k), str(len(s)), "yes" if lat.irreducible[k] else "",
                     "yes" if lat.nucleus[k] else "", ",".join(map(str, covers[k])),
                     " ".join(map(str, s.members))])
    head = f"n={args.n} p={args.p}: {len(lat)} nodes, chain={lat.is_chain}\n"
    return head + _table(rows), 0


# --- veronese ---

def cmd_veronese(args) -> tuple[str, int]:
    s = veronese.VeroneseSpec(args.m, args.t, make_field(args.p, args.e))
    rep = veronese.veronese_report(s)
    if args.format == "json":
        return _dump(rep), 0
    nuc = rep["nucleus"]
    rows = [["m", "t", "field", "dim (formula)", "dim (brute force)", "q >= t"],
            [str(s.m), str(s.t), rep["field"], str(nuc["dim_formula"]),
             str(nuc["dim_bruteforce"]), "yes" if nuc["in_hypothesis"] else "no (out of hypothesis)"]]
    tuples = " ".join("(" + ",".join(map(str, e)) + ")" for e in nuc["basis_tuples"])
    return _table(rows) + f"vanishing multinomials: {tuples or '-'}\n", 0


# --- verify ---

def cmd_verify(args) -> tuple[str, int]:
    caps = Caps()
    for name in ("n_max", "lattice_n_max", "chain_n_max", "invariance_n_max", "pascal_rows"):
        v = getattr(args, name)
        if v is not None:
            setattr(caps, name, v)
    rep = run_verification(args.only or None, caps)
    code = 0 if rep["ok"] else 1
    if args.format == "json":
        return _dump(rep), code
    lines = [f"{'PASS' if rep['ok'] else 'FAIL'}: {len(rep['checks'])} checks, "
             f"{len(rep['failures'])} failures"]
    for f in rep["failures"]:
        lines.append(f"  {f['suite']}/{f['check']} {f['instance']}: {f['detail']}")
    return "\n".join(lines) + "\n", code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="veronucleus",
                                 description="Nuclei and invariant subspaces of Veronese "
                                             "varieties over finite fields.")
    ap.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pascal", help="Pascal's triangle mod p")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--format", choices=["ascii", "json", "table"], default="ascii")
    p.set_defaults(func=cmd_pascal)

    p = sub.add_parser("nuclei", help="k-nuclei of a normal rational curve")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, help="extension degree (default: smallest with q >= n+2)")
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--no-bruteforce", action="store_true")
    p.set_defaults(func=cmd_nuclei)

    p = sub.add_parser("lattice", help="lattice of invariant subspaces")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--format", choices=["json", "dot", "table"], default="json")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("veronese", help="intersection of osculating hyperplanes")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_veronese)

    p = sub.add_parser("verify", help="run formula-vs-oracle suites")
    p.add_argument("--only", nargs="+", choices=SUITES)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--lattice-n-max", dest="lattice_n_max", type=int)
    p.add_argument("--chain-n-max", dest="chain_n_max", type=int)
    p.add_argument("--invariance-n-max", dest="invariance_n_max", type=int)
    p.add_argument("--pascal-rows", dest="pascal_rows", type=int)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, code = args.func(args)
    except ValueError as exc:
        print(f"veronucleus: error: {exc}", file=sys.stderr)
        return 2
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
