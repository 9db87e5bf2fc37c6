"""Command-line front end: group data, Witt arithmetic, bispan operations,
Teichmuller maps and the named verification suites.

Exit codes: 0 success, 1 failed verification, 2 usage or input errors.
Diagnostics go to stderr as one-line machine-parsable messages.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bispans as bs
from .errors import (DivisibilityError, EquivarianceError, GroupSpecError,
                     NonFreeError, ObjectMismatchError, SizeCapError,
                     WitnessError)
from .groups import make_group, subgroup_table
from .gsets import gset_from_json
from .polys import MultiPoly, poly_to_json
from .rings import IntModRing, ZZ, ring_from_spec, PolyRing
from .suites import SUITES, run_suite
from .teichmuller import rho, teichmuller_t
from .witt import (WittVector, ghost, universal_polys, witt_add, witt_mul,
                   witt_neg)

INPUT_ERRORS = (GroupSpecError, SizeCapError, EquivarianceError,
                ObjectMismatchError, DivisibilityError, NonFreeError,
                WitnessError, KeyError, ValueError, OSError,
                json.JSONDecodeError)


def _emit(args, payload: dict, text_fn=None):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True,
                                    separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(text_fn(payload) if text_fn else
                         json.dumps(payload, sort_keys=True, indent=1) + "\n")


def _fail(code: str, message: str) -> int:
    sys.stderr.write(f"error: {code}: {message}\n")
    return 2


def _load_input(args) -> dict:
    with open(args.input) as fh:
        return json.load(fh)


def _witt_var_fmt(table):
    def fmt(v):
        letter, i = v
        return f"{letter}[{table.subgroup_label(i)}]"
    return fmt


def cmd_marks(args) -> int:
    table = subgroup_table(make_group(args.group))
    payload = {"group": table.group.name,
               "classes": [table.class_label(i)
                           for i in range(table.num_classes)],
               "marks": table.marks}

    def text(p):
        width = max(len(c) for c in p["classes"]) + 1
        lines = [" " * width + " ".join(f"{c:>{width}}" for c in p["classes"])]
        for label, row in zip(p["classes"], p["marks"]):
            lines.append(f"{label:>{width}}" +
                         " ".join(f"{x:>{width}}" for x in row))
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 0


def cmd_subgroups(args) -> int:
    table = subgroup_table(make_group(args.group))
    payload = table.to_json()

    def text(p):
        lines = [f"group {args.group}: order {p['order']},"
                 f" {len(p['class_reps'])} subgroup classes"]
        for i, rep in enumerate(p["class_reps"]):
            lines.append(f"  {table.class_label(i)}: elements {rep},"
                         f" |N(U):U| = {p['normalizer_index'][i]}")
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 0


def cmd_witt_polys(args) -> int:
    table = subgroup_table(make_group(args.group))
    ps = universal_polys(table)
    fmt = _witt_var_fmt(table)
    payload = {
        "group": table.group.name,
        "classes": [table.class_label(i) for i in range(table.num_classes)],
        "sum": [poly_to_json(p, fmt) for p in ps.s],
        "product": [poly_to_json(p, fmt) for p in ps.p],
        "negation": [poly_to_json(p, fmt) for p in ps.m],
    }

    def text(p):
        lines = []
        for family, polys in (("s", ps.s), ("p", ps.p), ("m", ps.m)):
            for i, poly in enumerate(polys):
                lines.append(f"{family}[{table.class_label(i)}] = "
                             f"{poly.format(fmt)}")
        return "\n".join(lines) + "\n"

    _emit(args, payload, text)
    return 0


def _witt_ring(args):
    return IntModRing(args.mod) if args.mod else ZZ


def _witt_from_coords(table, ring, coords):
    return WittVector(table, ring, coords)


def cmd_witt(args) -> int:
    table = subgroup_table(make_group(args.group))
    ring = _witt_ring(args)
    data = _load_input(args)
    a = _witt_from_coords(table, ring, data["a"])
    if args.op in ("add", "mul"):
        b = _witt_from_coords(table, ring, data["b"])
        out = witt_add(a, b) if args.op == "add" else witt_mul(a, b)
        payload = out.to_json()
    elif args.op == "neg":
        payload = witt_neg(a).to_json()
    else:
        payload = {"group_spec": table.group.name, "ghost": list(ghost(a))}

    def text(p):
        key = "ghost" if "ghost" in p else "coords"
        pairs = [f"{table.class_label(i)}: {v}" for i, v in enumerate(p[key])]
        return f"{key}: " + ", ".join(pairs) + "\n"

    _emit(args, payload, text)
    return 0


def cmd_bispan(args) -> int:
    G = make_group(args.group)
    data = _load_input(args)
    if args.op == "canon":
        u = bs.canonicalize(bs.bispan_from_json(G, data["bispan"]))
        payload = bs.virtual_to_json(u)
    elif args.op in ("add", "mul", "compose"):
        a = bs.virtual_from_json(G, data["a"])
        b = bs.virtual_from_json(G, data["b"])
        op = {"add": bs.add, "mul": bs.mul, "compose": bs.compose}[args.op]
        payload = bs.virtual_to_json(op(a, b))
    else:  # eval
        u = bs.virtual_from_json(G, data["u"])
        ring = ring_from_spec(data.get("ring", "Z"))
        values = bs.evaluate(u, ring, data["phi"])
        payload = {"values": list(values)}
    _emit(args, payload)
    return 0


def _polys_from_json(coords_json):
    out = []
    for entry in coords_json:
        if isinstance(entry, int):
            out.append(MultiPoly.const(entry))
        else:
            terms = {}
            for mono_pairs, coeff in entry:
                mono = tuple(sorted((int(v), int(e)) for v, e in mono_pairs))
                terms[mono] = coeff
            out.append(MultiPoly(terms))
    return out


def _poly_coord_json(c: MultiPoly):
    return [[[[v, e] for v, e in mono], coeff] for mono, coeff in c.items()]


def cmd_teichmuller(args) -> int:
    G = make_group(args.group)
    table = subgroup_table(G)
    data = _load_input(args)
    X = gset_from_json(G, data["x_gset"])
    ring = PolyRing(gset=X)
    if args.op == "t":
        coords = _polys_from_json(data["coords"])
        x = WittVector(table, ring, coords)
        payload = bs.virtual_to_json(teichmuller_t(x))
    else:
        u = bs.virtual_from_json(G, data["u"])
        x = rho(u, table)
        payload = {"group_spec": G.name,
                   "coords": [_poly_coord_json(c) for c in x.coords]}
    _emit(args, payload)
    return 0


def cmd_verify(args) -> int:
    if args.suite not in SUITES and args.suite != "all":
        return _fail("USAGE", f"unknown suite {args.suite!r}; known: "
                     + ", ".join(sorted(SUITES) + ["all"]))
    checks = run_suite(args.suite, group_spec=args.group, seed=args.seed)
    failed = 0
    for name, ok, detail in checks:
        status = "PASS" if ok else "FAIL"
        if not ok:
            failed += 1
        suffix = f" ({detail})" if detail else ""
        sys.stdout.write(f"[{status}] {name}{suffix}\n")
    sys.stdout.write(f"{len(checks) - failed}/{len(checks)} checks passed\n")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwitt",
        description="Exact Witt vectors over finite groups and bispan calculus")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group=True, needs_input=False):
        if group:
            p.add_argument("--group", required=True,
                           help='group spec, e.g. "S3" or "C2 x C2"')
        if needs_input:
            p.add_argument("--input", required=True, help="input JSON path")
        p.add_argument("--format", choices=["text", "json"], default="text")

    common(sub.add_parser("marks", help="table of marks"))
    common(sub.add_parser("subgroups", help="subgroup classes and indices"))
    common(sub.add_parser("witt-polys",
                          help="universal sum/product/negation families"))

    pw = sub.add_parser("witt", help="Witt vector arithmetic")
    pw.add_argument("op", choices=["add", "mul", "neg", "ghost"])
    common(pw, needs_input=True)
    pw.add_argument("--mod", type=int, default=None,
                    help="work over Z/n instead of Z")

    pb = sub.add_parser("bispan", help="bispan calculus")
    pb.add_argument("op", choices=["compose", "add", "mul", "canon", "eval"])
    common(pb, needs_input=True)

    pt = sub.add_parser("teichmuller", help="Teichmuller map and its inverse")
    pt.add_argument("op", choices=["t", "rho"])
    common(pt, needs_input=True)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("suite")
    pv.add_argument("--group", default=None)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--format", choices=["text", "json"], default="text")
    return parser


HANDLERS = {
    "marks": cmd_marks,
    "subgroups": cmd_subgroups,
    "witt-polys": cmd_witt_polys,
    "witt": cmd_witt,
    "bispan": cmd_bispan,
    "teichmuller": cmd_teichmuller,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = HANDLERS[args.command]
    try:
        return handler(args)
    except INPUT_ERRORS as exc:
        return _fail("BADINPUT", f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
