"""Command line entry point: ``nonret verify|table|witness|atoms|op|semigroup|claims``."""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import harness
from .atoms import atom_bound, atom_profile, count_atoms, max_atoms_binary_nonreturning
from .automata import format_dfa, load_dfa
from .ops import BooleanOp, Mode, boolean, product, reverse, star
from .transform import (
    BudgetExceeded,
    check_generates_full_nonreturning,
    check_generator_necessity,
    closure,
    parse_transformation,
)
from .witness import DialectSpec, WitnessId, build_witness, full_alphabet_transformations, state_labels


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B or A, got {text!r}") from None


def _states(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _config(args) -> harness.RunConfig:
    return harness.RunConfig.from_env(
        n_range=args.n, m_range=args.m, fmt=args.format, long=args.long, budget=args.budget,
        seed=args.seed,
    )


def cmd_verify(args) -> int:
    config = _config(args)
    if args.claim:
        reports = [harness.verify(c, config) for c in args.claim]
    else:
        reports = harness.verify_all(config)
    sys.stdout.write(harness.render(reports, args.format))
    return harness.exit_code(reports)


def cmd_table(args) -> int:
    sys.stdout.write(harness.table(args.claim, _config(args), args.format))
    return 0


def cmd_claims(args) -> int:
    for cid, claim in harness.CLAIMS.items():
        print(f"{cid:36s} {claim.title}")
    return 0


def cmd_witness(args) -> int:
    wid = WitnessId(args.n, DialectSpec.parse(args.dialect), args.primed, args.printed)
    d = build_witness(wid)
    comment = f"witness D_{args.n}({wid.dialect})"
    if args.primed:
        comment += "\nstates " + " ".join(state_labels(wid))
    sys.stdout.write(format_dfa(d, comment))
    return 0


def cmd_atoms(args) -> int:
    if args.exhaustive_binary:
        rep = max_atoms_binary_nonreturning(args.n or 4, canonical=not args.no_canonical)
        sys.stdout.write(harness.render([rep], args.format))
        return 0 if rep.ok else 1
    if not args.dfa:
        raise SystemExit("atoms: --dfa is required unless --exhaustive-binary is given")
    base = load_dfa(args.dfa)
    n = base.state_count
    if args.set is not None:
        subsets = [tuple(_states(args.set))]
    elif args.all or args.bounds:
        subsets = list(itertools.chain.from_iterable(
            itertools.combinations(range(n), k) for k in range(n + 1)))
    else:
        subsets = []
    records = []
    for S in subsets:
        prof = atom_profile(base, S)
        bound = atom_bound(n, len(S))
        records.append({
            "n": n,
            "S": list(S),
            "is_atom": prof["is_atom"],
            "complexity": prof["complexity"],
            "bound": bound,
            "tight": prof["complexity"] == bound,
        })
    if not subsets:
        records.append({"n": n, "atoms": count_atoms(base)})
    if args.format == "json":
        print(json.dumps({"schema": harness.SCHEMA, "atoms": records}, indent=2))
    else:
        for r in records:
            print(" ".join(f"{k}={v}" for k, v in r.items()))
    return 0


def cmd_op(args) -> int:
    mode = Mode.UNRESTRICTED if args.unrestricted else Mode.RESTRICTED
    if args.operation in ("reverse", "star"):
        if not args.dfa:
            raise SystemExit(f"op {args.operation}: --dfa is required")
        result = (reverse if args.operation == "reverse" else star)(load_dfa(args.dfa))
    else:
        if not (args.left and args.right):
            raise SystemExit(f"op {args.operation}: --left and --right are required")
        left, right = load_dfa(args.left), load_dfa(args.right)
        if args.operation == "product":
            result = product(left, right, mode)
        else:
            result = boolean(left, right, BooleanOp.parse(args.operation), mode)
    if args.emit == "count":
        print(result.complexity)
    elif args.emit == "json":
        print(json.dumps({"schema": harness.SCHEMA, "operation": args.operation,
                          "mode": mode.value, "alphabet": list(result.alphabet),
                          "complexity": result.complexity}))
    else:
        sys.stdout.write(format_dfa(result.dfa))
    return 0


def cmd_semigroup(args) -> int:
    if args.generators:
        with open(args.generators, encoding="utf-8") as fh:
            gens = [parse_transformation(line) for line in fh
                    if line.split("#", 1)[0].strip()]
        n = gens[0].degree
    else:
        n = args.n
        gens = full_alphabet_transformations(n, args.printed)
    s = closure(gens, args.budget)
    print(f"degree {n}, generators {len(gens)}, size {len(s)}, (n-1)^n = {(n - 1) ** n}")
    if args.check:
        reports = [check_generates_full_nonreturning(gens, n, args.budget)]
        if len(s) == (n - 1) ** n:
            reports.append(check_generator_necessity(gens, n, args.budget))
        sys.stdout.write(harness.render(reports))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nonret", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def run_opts(sp):
        sp.add_argument("--n", type=_range, help="range A..B for n")
        sp.add_argument("--m", type=_range, help="range A..B for m")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--long", action="store_true", help="allow the larger guarded ranges")
        sp.add_argument("--budget", type=int, default=harness.DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("verify", help="run registered claims")
    sp.add_argument("--claim", action="append", help="claim id (repeatable); default: all")
    run_opts(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table", help="tabulate one claim")
    sp.add_argument("--claim", required=True)
    run_opts(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("claims", help="list claim ids")
    sp.set_defaults(func=cmd_claims)

    sp = sub.add_parser("witness", help="emit a witness DFA in text format")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--dialect", default="a,b,c,d,G")
    sp.add_argument("--printed", action="store_true", help="use the pair-letter set as printed")
    sp.add_argument("--primed", action="store_true", help="label states 0', 1', ...")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("atoms", help="atoms of a DFA")
    sp.add_argument("--dfa")
    sp.add_argument("--set", help="comma separated subset S")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--bounds", action="store_true")
    sp.add_argument("--exhaustive-binary", action="store_true")
    sp.add_argument("--no-canonical", action="store_true")
    sp.add_argument("--n", type=int)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_atoms)

    sp = sub.add_parser("op", help="apply an operation")
    sp.add_argument("operation", choices=("reverse", "star", "product", "union", "intersection",
                                          "difference", "symdiff"))
    sp.add_argument("--dfa")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("--unrestricted", action="store_true")
    sp.add_argument("--emit", choices=("dfa", "count", "json"), default="dfa")
    sp.set_defaults(func=cmd_op)

    sp = sub.add_parser("semigroup", help="closure of the witness letters or of given generators")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--generators", help="file with one [i0,i1,...] transformation per line")
    sp.add_argument("--printed", action="store_true")
    sp.add_argument("--check", action="store_true", help="also run the generator analyses")
    sp.add_argument("--budget", type=int, default=harness.DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_semigroup)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, KeyError, ValueError) as exc:
        print(f"nonret: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
