"""Command-line entry point.

Exit status is 0 on success, 1 when a verification finds a failure, and 2
for usage problems (bad arguments, unreadable or malformed input).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .borderpoints import phi, reversing_with_chi
from .errors import PosetError
from .linfun import expand, linear_polynomial
from .poset import (
    Digraph,
    Poset,
    format_poset,
    irreducible_factorization,
    parse,
    zeta,
    zeta_digraph,
)

BASES = ("M", "F", "m", "p", "e", "h", "s")


class UsageError(Exception):
    pass


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        items = parse(text)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"{path}: {exc}") from None
    if not items:
        raise UsageError(f"{path}: no poset or digraph found")
    return items


def _posets(path):
    items = _load(path)
    for item in items:
        if not isinstance(item, Poset):
            raise UsageError(f"{path}: this command needs posets, found a digraph")
    return items


def _relations(P):
    return [[i + 1, j + 1] for i, j in P.pairs()]


def _cmd_expand(args):
    return [expand(P, args.basis).to_json() for P in _posets(args.file)]


def _cmd_poly(args):
    out = []
    for P in _posets(args.file):
        poly = linear_polynomial(P)
        out.append({"coeffs": poly.to_json(), "text": repr(poly)})
    return out


def _cmd_zeta(args):
    out = []
    for item in _load(args.file):
        if isinstance(item, Digraph):
            out.append({"kind": "digraph", "n": item.n, "zeta": zeta_digraph(item)})
        else:
            out.append({"kind": "poset", "n": item.n, "zeta": zeta(item)})
    return out


def _cmd_zeta1(args):
    return [{"n": P.n, "zeta1": sum(c for _, c in reversing_with_chi(P, args.jobs))}
            for P in _posets(args.file)]


def _cmd_rev(args):
    out = []
    for P in _posets(args.file):
        pairs = reversing_with_chi(P, args.jobs)
        out.append({"n": P.n,
                    "listings": [{"listing": [x + 1 for x in w], "chi": c} for w, c in pairs]})
    return out


def _cmd_phi(args):
    return [phi(P, args.jobs).to_json() for P in _posets(args.file)]


def _cmd_factor(args):
    return [[{"n": F.n, "relations": _relations(F)} for F in irreducible_factorization(P)]
            for P in _posets(args.file)]


def _emit_json(records, out):
    for record in records:
        out.write(json.dumps(record, sort_keys=True) + "\n")


def _open_out(args, append=False):
    if args.out is None:
        return sys.stdout
    try:
        return open(args.out, "a" if append else "w", encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc.strerror or exc}") from None


def _with_out(args, write, append=False):
    out = _open_out(args, append)
    try:
        write(out)
    finally:
        if out is not sys.stdout:
            out.close()


def _check_n(n, bound):
    if not 0 <= n <= bound:
        raise UsageError(f"--n must lie in 0..{bound}")


def build_parser():
    parser = argparse.ArgumentParser(prog="posetlin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def file_cmd(name, help_text, jobs=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--out")
        if jobs:
            p.add_argument("--jobs", type=int, default=1)
        return p

    p = file_cmd("expand", "L_P in a chosen basis")
    p.add_argument("--basis", choices=BASES, default="M")
    file_cmd("poly", "principal specialisation l_P(m)")
    file_cmd("zeta", "number of linear extensions (posets or digraphs)")
    file_cmd("zeta1", "chi-weighted count of reversing listings", jobs=True)
    file_cmd("rev", "reversing listings with their chi values", jobs=True)
    file_cmd("phi", "mountain decomposition as JSON", jobs=True)
    file_cmd("factor", "ordinal-sum factorization into irreducibles")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=harness.SUITES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--universe", choices=("auto", "labeled", "iso"), default="auto")
    p.add_argument("--out")

    p = sub.add_parser("conjecture", help="scan for counterexamples")
    p.add_argument("--id", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")

    p = sub.add_parser("enumerate", help="list posets in the text format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iso", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("scan", help="TSV of reversing-listing data per isomorphism class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    return parser


FILE_COMMANDS = {
    "expand": _cmd_expand,
    "poly": _cmd_poly,
    "zeta": _cmd_zeta,
    "zeta1": _cmd_zeta1,
    "rev": _cmd_rev,
    "phi": _cmd_phi,
    "factor": _cmd_factor,
}


def _run(args):
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be at least 1")
    if args.command in FILE_COMMANDS:
        records = FILE_COMMANDS[args.command](args)
        _with_out(args, lambda out: _emit_json(records, out))
        return 0
    if args.command == "verify":
        _check_n(args.n, harness.MAX_LABELED)
        report = harness.run_suite(args.suite, args.n, jobs=args.jobs, universe=args.universe)
        _with_out(args, lambda out: _emit_json([report.to_dict()], out), append=True)
        return 0 if report.passed else 1
    if args.command == "conjecture":
        _check_n(args.n, harness.MAX_CONJECTURE)
        search = harness.conjecture1_search if args.id == 1 else harness.conjecture2_search
        try:
            report = search(args.n, jobs=args.jobs)
        except AssertionError as exc:
            print(f"internal check failed: {exc}", file=sys.stderr)
            return 1
        _with_out(args, lambda out: _emit_json([report.to_dict()], out), append=True)
        return 0
    if args.command == "enumerate":
        _check_n(args.n, harness.MAX_ISO if args.iso else harness.MAX_LABELED)
        posets = harness.enumerate_posets(args.n, args.iso)
        _with_out(args, lambda out: out.writelines(format_poset(P) for P in posets))
        return 0
    if args.command == "scan":
        _check_n(args.n, harness.MAX_CONJECTURE)
        rows = harness.rev_scan(args.n)
        _with_out(args, lambda out: out.write(harness.format_tsv(rows)))
        return 0
    raise UsageError(f"unknown command {args.command}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (UsageError, PosetError) as exc:
        print(f"posetlin: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
