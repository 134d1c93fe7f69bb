"""Command-line surface.

Exit codes: 0 success, 1 verification or mismatch failure, 2 usage,
limit, parse, or I/O problems, 3 semantic input errors (well-formed
input outside the operation's domain).

Global flags on every subcommand: ``--threads N`` (default: hardware
parallelism) splits heavy counts over a process pool without changing
any printed value; ``--cache PATH`` (default ``./nsatoms-cache.txt``,
overridable with NSATOMS_CACHE) persists computed sequence prefixes
between invocations; ``--format csv|json``; ``--allow-long`` lifts the
desk-scale enumeration caps.

CSV output renders rationals with the published digit conventions; JSON
output carries exact ``p/q`` strings instead.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import admissible as adm
from . import cache as cachemod
from . import render
from . import sequences as seq
from . import structures as st
from . import verify as ver
from .errors import (
    CorruptCache,
    LimitExceeded,
    NsatomsError,
    ParseError,
    VersionMismatch,
)
from .sequences import SequenceTable, VerificationReport
from .sets import (
    anti_atom_set,
    as_monoid,
    classify_symmetry,
    format_set,
    omitted_atom_set,
    parse_set,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_SEMANTIC = 3

TABLE1_QUICK_MAX = 14     # A_15/A_16 take minutes; ask for them explicitly
TABLE2_QUICK_MAX = 32
TREE_QUICK_MAX = 7        # level k prints |G(2k+1)| lines
SIGMA_TREE_QUICK_MAX = 16


# ---------------------------------------------------------------------------
# cache plumbing

def _load_table(args) -> tuple[SequenceTable, dict[str, int]]:
    table = SequenceTable()
    if args.cache and os.path.exists(args.cache):
        table = cachemod.load_cache(args.cache)
    marks = {f: table.max_index(f) for f in adm.FAMILIES}
    return table, marks


def _save_table(args, table: SequenceTable, marks: dict[str, int]) -> None:
    if args.cache and any(table.max_index(f) > marks[f] for f in adm.FAMILIES):
        cachemod.save_cache(table, args.cache)


def _print_report(rep: VerificationReport, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(
            [{"name": n, "ok": ok, "detail": d} for n, ok, d in rep.items],
            indent=2,
        ))
        return
    for name, ok, detail in rep.items:
        line = f"{'PASS' if ok else 'FAIL'} {name}"
        if detail:
            line += f" ({detail})"
        print(line)


# ---------------------------------------------------------------------------
# report tables

def cmd_table1(args) -> int:
    if args.max_n < 1:
        raise ParseError(f"--max-n must be >= 1, got {args.max_n}")
    if args.max_n > TABLE1_QUICK_MAX and not args.allow_long:
        raise LimitExceeded(
            f"rows beyond n={TABLE1_QUICK_MAX} take minutes; pass --allow-long"
        )
    table, marks = _load_table(args)
    seq.ensure_A(table, args.max_n, allow_long=args.allow_long, threads=args.threads)
    seq.ensure_Aprime(table, args.max_n, allow_long=args.allow_long,
                      threads=args.threads)
    _save_table(args, table, marks)
    rep = seq.verify_recursions(table)
    if not rep.passed:
        _print_report(rep, args.format)
        return EXIT_VERIFY
    rows = [seq.table1_row(table, n) for n in range(1, args.max_n + 1)]
    if args.format == "json":
        print(json.dumps([
            {
                "n": r["n"],
                "Aprime": r["Aprime"],
                "A": r["A"],
                "beta": render.rational_str(r["beta"]),
                "beta_plus_bound": render.rational_str(r["beta_plus_bound"]),
                "ratio": None if r["ratio"] is None else render.rational_str(r["ratio"]),
            }
            for r in rows
        ], indent=2))
    else:
        print("n,Aprime,A,beta,beta_plus_bound,ratio")
        for r in rows:
            print(seq.format_table1_csv(r))
    return EXIT_OK


def cmd_table2(args) -> int:
    if args.max_n < 1:
        raise ParseError(f"--max-n must be >= 1, got {args.max_n}")
    if args.max_n > TABLE2_QUICK_MAX and not args.allow_long:
        raise LimitExceeded(
            f"rows beyond n={TABLE2_QUICK_MAX} take minutes; pass --allow-long"
        )
    table, marks = _load_table(args)
    seq.ensure_Asigma(table, args.max_n, allow_long=args.allow_long,
                      threads=args.threads)
    seq.ensure_Asigmaprime(table, 2 * args.max_n - 1, allow_long=args.allow_long,
                           threads=args.threads)
    _save_table(args, table, marks)
    rep = seq.verify_recursions(table)
    if not rep.passed:
        _print_report(rep, args.format)
        return EXIT_VERIFY
    rows = [seq.table2_row(table, n) for n in range(1, args.max_n + 1)]
    if args.format == "json":
        print(json.dumps([
            {
                "n": r["n"],
                "Asigmaprime": r["Asigmaprime"],
                "Asigma": r["Asigma"],
                "beta_sigma": render.rational_str(r["beta_sigma"]),
                "R": r["R"],
            }
            for r in rows
        ], indent=2))
    else:
        print("n,Asigmaprime,Asigma,beta_sigma,R")
        for r in rows:
            print(seq.format_table2_csv(r))
    return EXIT_OK


# ---------------------------------------------------------------------------
# sequences and densities

def cmd_seq(args) -> int:
    if args.max < 1:
        raise ParseError(f"--max must be >= 1, got {args.max}")
    table, marks = _load_table(args)
    seq.ENSURERS[args.family](table, args.max, allow_long=args.allow_long,
                              threads=args.threads)
    _save_table(args, table, marks)
    items = [(n, v, p) for n, v, p in table.items(args.family) if n <= args.max]
    if args.format == "json":
        print(json.dumps({
            "family": args.family,
            "values": [{"n": n, "value": v, "provenance": p} for n, v, p in items],
        }, indent=2))
    else:
        print("n,value,provenance")
        for n, v, p in items:
            print(f"{n},{v},{p}")
    return EXIT_OK


DENSITIES = {
    "beta": (seq.beta, "A", False),
    "gamma": (seq.gamma, "A", False),
    "beta-sigma": (seq.beta_sigma, "Asigma", True),
    "gamma-sigma": (seq.gamma_sigma, "Asigma", True),
}


def cmd_density(args) -> int:
    fn, family, sigma = DENSITIES[args.command]
    table, marks = _load_table(args)
    seq.ENSURERS[family](table, (args.g - 1) // 2, allow_long=args.allow_long,
                         threads=args.threads)
    value = fn(args.g, table)
    _save_table(args, table, marks)
    decimal = (render.minimal_or_fixed(value, 5) if sigma
               else render.fixed(value, 6))
    if args.format == "json":
        print(json.dumps({
            "quantity": args.command,
            "g": args.g,
            "exact": render.rational_str(value),
            "decimal": decimal,
        }, indent=2))
    else:
        print(render.rational_str(value) if args.exact else decimal)
    return EXIT_OK


def cmd_enclose(args) -> int:
    table, marks = _load_table(args)
    rows: list[dict[str, str]] = []
    if args.target == "beta-inf":
        seq.ensure_A(table, args.n, allow_long=args.allow_long,
                     threads=args.threads)
        enc = seq.enclose_beta_inf(args.n, table)
        mid = render.truncated(enc.midpoint, 6)
        half = render.fixed(enc.halfwidth, 6)
        # the complementary midpoint repeats the printed digits: 1 - .515549
        gamma_mid = render.fixed(1 - Fraction("0" + mid), 6)
        rows.append({
            "quantity": "beta_inf",
            "lo": render.rational_str(enc.lo),
            "hi": render.rational_str(enc.hi),
            "mid": mid,
            "halfwidth": half,
        })
        rows.append({
            "quantity": "gamma_inf",
            "lo": render.rational_str(1 - enc.hi),
            "hi": render.rational_str(1 - enc.lo),
            "mid": gamma_mid,
            "halfwidth": half,
        })
    else:
        seq.ensure_Asigma(table, max(args.n - 1, 1), allow_long=args.allow_long,
                          threads=args.threads)
        enc = seq.enclose_gamma_sigma_inf(args.n, table)
        rows.append({
            "quantity": "gamma_sigma_inf",
            "lo": render.rational_str(enc.lo),
            "hi": render.rational_str(enc.hi),
            "mid": render.truncated(enc.midpoint, 6),
            "halfwidth": render.fixed(enc.halfwidth, 5),
        })
    _save_table(args, table, marks)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        print("quantity,lo,hi,mid,halfwidth")
        for r in rows:
            print(",".join(r[c] for c in ("quantity", "lo", "hi", "mid", "halfwidth")))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suites

def cmd_verify(args) -> int:
    table, marks = _load_table(args)
    rep = VerificationReport()
    threads, allow = args.threads, args.allow_long

    if args.suite in ("oracle", "all"):
        sigma_g = args.sigma_g_max or 2 * args.g_max + 1
        rep.items += ver.oracle_suite(args.g_max, sigma_g, table=table).items

    if args.suite in ("recursions", "all"):
        k = args.k_max
        seq.ensure_A(table, k, allow_long=allow, threads=threads)
        seq.ensure_Aprime(table, 2 * k + 1, allow_long=allow, threads=threads)
        ks = min(2 * k, adm.SIGMA_LIMIT - 1)
        seq.ensure_Asigma(table, ks, allow_long=allow, threads=threads)
        seq.ensure_Asigmaprime(table, 2 * ks - 1, allow_long=allow, threads=threads)
        rep.items += seq.verify_recursions(table).items

    if args.suite in ("genfunc", "all"):
        seq.ensure_Aprime(table, args.n_max, allow_long=allow, threads=threads)
        seq.ensure_A(table, args.n_max // 2, allow_long=allow, threads=threads)
        seq.ensure_Asigmaprime(table, args.sigma_n_max, allow_long=allow,
                               threads=threads)
        seq.ensure_Asigma(table, args.sigma_n_max // 2, allow_long=allow,
                          threads=threads)
        rep.items += seq.verify_genfunc_coeffs(args.n_max, table).items
        rep.items += seq.verify_genfunc_coeffs(args.sigma_n_max, table,
                                               sigma=True).items

    if args.suite in ("bounds", "all"):
        rep.items += ver.bounds_suite(table, args.k_max, args.g_max).items

    if args.suite in ("bijections", "all"):
        sigma_g = args.sigma_g_max or 15
        rep.items += ver.bijection_suite(
            args.g_max, args.spawn_k_max, args.sigma_spawn_k_max, sigma_g
        ).items

    _save_table(args, table, marks)
    _print_report(rep, args.format)
    return EXIT_OK if rep.passed else EXIT_VERIFY


# ---------------------------------------------------------------------------
# anti-atom solver, b-files, trees

def cmd_antiatom(args) -> int:
    m = as_monoid(parse_set(args.spec))
    members = anti_atom_set(m)
    mtype = len(omitted_atom_set(m))
    cls = classify_symmetry(m).value
    if args.format == "json":
        print(json.dumps({
            "monoid": format_set(m),
            "count": len(members),
            "type": mtype,
            "symmetry": cls,
            "members": [format_set(s) for s in members] if len(members) <= 64 else None,
        }, indent=2))
        return EXIT_OK
    print("count,type,symmetry")
    print(f"{len(members)},{mtype},{cls}")
    if len(members) <= 64:
        for s in members:
            print(format_set(s))
    return EXIT_OK


def cmd_oeis(args) -> int:
    if args.sequence != "A008929":
        raise ParseError(f"unknown sequence {args.sequence!r} (only A008929)")
    if args.action == "export":
        if args.terms < 1:
            raise ParseError(f"--terms must be >= 1, got {args.terms}")
        table, marks = _load_table(args)
        seq.ensure_Asigmaprime(table, 2 * args.terms - 1,
                               allow_long=args.allow_long, threads=args.threads)
        values = [table.get("Asigmaprime", 2 * n - 1)
                  for n in range(1, args.terms + 1)]
        _save_table(args, table, marks)
        cachemod.write_bfile(values, args.path)
        print(f"wrote {args.terms} terms to {args.path}")
        return EXIT_OK
    pairs = cachemod.read_bfile(args.path)
    for n, v in pairs:
        want = st.additive_basis_count(
            n - 1, limit=None if args.allow_long else st.ADDITIVE_BASIS_LIMIT
        )
        if v != want:
            print(f"mismatch at n={n}: file has {v}, computed {want}")
            return EXIT_VERIFY
    print(f"checked {len(pairs)} terms: all match")
    return EXIT_OK


def cmd_tree(args) -> int:
    cap = SIGMA_TREE_QUICK_MAX if args.sigma else TREE_QUICK_MAX
    if args.levels > cap and not args.allow_long:
        raise LimitExceeded(
            f"{'sigma ' if args.sigma else ''}trees beyond {cap} levels print "
            f"large families; pass --allow-long"
        )
    payload = []
    for i, level in enumerate(st.tree_levels(args.levels, sigma=args.sigma), start=1):
        payload.append({
            "level": i,
            "count": len(level),
            "sets": [format_set(s) for s in level],
        })
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for entry in payload:
            print(f"level,{entry['level']},count,{entry['count']}")
            for text in entry["sets"]:
                print(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="process-pool width for heavy counts")
    common.add_argument(
        "--cache",
        default=os.environ.get("NSATOMS_CACHE", "./nsatoms-cache.txt"),
        help="sequence cache file ('' disables)",
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--allow-long", action="store_true",
                        help="lift desk-scale enumeration caps")

    p = argparse.ArgumentParser(
        prog="nsatoms",
        description="Exact enumeration of numerical sets without small atoms.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    t1 = sub.add_parser("table1", parents=[common],
                        help="admissible-pair counts and beta enclosure rows")
    t1.add_argument("--max-n", type=int, default=TABLE1_QUICK_MAX)
    t1.set_defaults(func=cmd_table1)

    t2 = sub.add_parser("table2", parents=[common],
                        help="sigma counts and beta^sigma rows")
    t2.add_argument("--max-n", type=int, default=TABLE2_QUICK_MAX)
    t2.set_defaults(func=cmd_table2)

    sq = sub.add_parser("seq", parents=[common], help="print one family prefix")
    sq.add_argument("family", choices=adm.FAMILIES)
    sq.add_argument("--max", type=int, required=True)
    sq.set_defaults(func=cmd_seq)

    for name in DENSITIES:
        d = sub.add_parser(name, parents=[common],
                           help=f"{name} density at Frobenius number g")
        d.add_argument("--g", type=int, required=True)
        d.add_argument("--exact", action="store_true",
                       help="print the exact rational p/q")
        d.set_defaults(func=cmd_density)

    en = sub.add_parser("enclose", parents=[common],
                        help="certified rational enclosure of a limit density")
    en.add_argument("target", choices=("beta-inf", "gamma-sigma-inf"))
    en.add_argument("--n", type=int, required=True,
                    help="partial-sum index (window 2n+1 or 2n-1)")
    en.set_defaults(func=cmd_enclose)

    vf = sub.add_parser("verify", parents=[common],
                        help="run a cross-checking invariant suite")
    vf.add_argument("suite", choices=("oracle", "recursions", "genfunc",
                                      "bounds", "bijections", "all"))
    vf.add_argument("--g-max", type=int, default=12,
                    help="exhaustive-scan horizon (oracle/bounds/bijections)")
    vf.add_argument("--sigma-g-max", type=int, default=0,
                    help="sigma scan horizon (0: derived from --g-max)")
    vf.add_argument("--k-max", type=int, default=16,
                    help="window horizon (recursions/bounds)")
    vf.add_argument("--n-max", type=int, default=33,
                    help="genfunc truncation order")
    vf.add_argument("--sigma-n-max", type=int, default=63,
                    help="sigma genfunc truncation order")
    vf.add_argument("--spawn-k-max", type=int, default=8)
    vf.add_argument("--sigma-spawn-k-max", type=int, default=12)
    vf.set_defaults(func=cmd_verify)

    aa = sub.add_parser("antiatom", parents=[common],
                        help="anti-atom family of a monoid given as g=..;in=..")
    aa.add_argument("spec")
    aa.set_defaults(func=cmd_antiatom)

    oe = sub.add_parser("oeis", parents=[common], help="b-file interchange")
    oe.add_argument("action", choices=("export", "check"))
    oe.add_argument("sequence")
    oe.add_argument("--terms", type=int, default=19)
    oe.add_argument("--path", default="b008929.txt")
    oe.set_defaults(func=cmd_oeis)

    tr = sub.add_parser("tree", parents=[common],
                        help="dump spawn-tree levels")
    tr.add_argument("action", choices=("dump",))
    tr.add_argument("--levels", type=int, required=True)
    tr.add_argument("--sigma", action="store_true")
    tr.set_defaults(func=cmd_tree)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, LimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorruptCache, VersionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NsatomsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    raise SystemExit(main())
