"""Command-line front end.

Exit codes: 0 success, 2 precondition failure, 3 parse error, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from fdrm.code import FerrersCode
from fdrm.constructions import (
    auto_construct,
    base_field,
    combine_same_dimension,
    combine_same_distance,
    construct_es,
    construct_mds_diagonals,
    construct_square_delta3,
    construct_subcode,
    describe,
)
from fdrm.errors import BudgetExceededError, ParseError, PreconditionError
from fdrm.ferrers import FerrersDiagram
from fdrm.field import gf
from fdrm.gabidulin import lemma3_matrix, mrd_min_rank_distance_bruteforce
from fdrm.mds import GeneratorMatrix
from fdrm.search import DEFAULT_BUDGET
from fdrm.verify import check_code, sweep, sweep_csv

BUDGET_ENV = "FDRM_BUDGET"

EXIT_PRECONDITION = 2
EXIT_PARSE = 3
EXIT_BUDGET = 4

METHODS = {
    "es": lambda F, d, q: construct_es(F, d, q),
    "mds": lambda F, d, q: construct_mds_diagonals(F, d, q),
    "subcode": lambda F, d, q: construct_subcode(F, d, q),
    "square3": lambda F, d, q: _square3(F, d, q),
}


def _square3(F: FerrersDiagram, delta: int, q) -> FerrersCode:
    if delta != 3:
        raise PreconditionError("the square3 method is defined for delta = 3 only")
    return construct_square_delta3(F, q)


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    if value is None:
        return DEFAULT_BUDGET
    try:
        return int(value)
    except ValueError:
        raise PreconditionError(f"{BUDGET_ENV} must be an integer, got {value!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", None) from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _emit(obj: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
        return
    width = max(len(k) for k in obj)
    for key, value in obj.items():
        if isinstance(value, (list, tuple)):
            value = " ".join(map(str, value))
        sys.stdout.write(f"{key.ljust(width)}  {value}\n")


# -- commands ---------------------------------------------------------------------------


def cmd_bound(args: argparse.Namespace) -> int:
    F = FerrersDiagram.parse(_read(args.diagram))
    nu = F.nu(args.delta)
    value = min(nu)
    _emit(
        {
            "m": F.m,
            "n": F.n,
            "gamma": list(F.gamma),
            "delta": args.delta,
            "bound": value,
            "argmin": [i for i, v in enumerate(nu) if v == value],
            "nu": list(nu),
        },
        args.json,
    )
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    F = FerrersDiagram.parse(_read(args.diagram))
    field = base_field(args.q)
    budget = args.budget if args.budget is not None else default_budget()
    if args.method == "auto":
        code, report = auto_construct(F, args.delta, field, budget=budget)
        path = report.path
    else:
        code = METHODS[args.method](F, args.delta, field)
        path = describe(code.provenance)
    check = check_code(code, budget)
    if args.out:
        text = json.dumps(code.to_json(), sort_keys=True) + "\n" if args.out.endswith(".json") else code.to_text()
        _write(text, args.out)
    _emit(
        {
            "k": code.k,
            "bound": check.bound,
            "optimal": code.k == check.bound,
            "delta": code.delta,
            "verified_distance": check.verified_distance if check.verified_distance is not None else check.status,
            "path": path,
        },
        args.json,
    )
    return 0


def _load_code(path: str) -> FerrersCode:
    text = _read(path)
    if text.lstrip().startswith("{"):
        try:
            return FerrersCode.from_json(json.loads(text))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ParseError(f"bad code JSON: {exc}", None) from None
    return FerrersCode.from_text(text)


def cmd_verify(args: argparse.Namespace) -> int:
    code = _load_code(args.code)
    budget = args.budget if args.budget is not None else default_budget()
    report = check_code(code, budget, workers=args.parallel)
    if args.strict and report.status == "unverified":
        raise BudgetExceededError(code.search_size(), budget)
    if args.json:
        sys.stdout.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
    else:
        sys.stdout.write(report.to_table())
    return 0


def cmd_combine(args: argparse.Namespace) -> int:
    C1, C2 = _load_code(args.first), _load_code(args.second)
    if args.mode == "dimension":
        code = combine_same_dimension(C1, C2, tuple(args.filler) if args.filler else None)
    else:
        code = combine_same_distance(C1, C2, args.ell)
    _write(code.to_text(), args.out)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else default_budget()
    rows = sweep(args.m, args.n, args.delta, args.q, budget, depth=args.depth)
    sys.stdout.write(sweep_csv(rows))
    return 0


def cmd_lemma3(args: argparse.Namespace) -> int:
    E = gf(args.q, args.mu)
    M = lemma3_matrix(args.mu, args.eta, args.d, E)
    gen = GeneratorMatrix(M, "rank", args.d, args.mu)
    text = gen.to_text()
    if args.check:
        kappa = M.rows
        budget = args.budget if args.budget is not None else default_budget()
        first = mrd_min_rank_distance_bruteforce(M[:, : args.eta - 1], budget)
        if kappa > 1:
            inner = mrd_min_rank_distance_bruteforce(M[1:, 1 : args.eta - 1], budget)
            outer = mrd_min_rank_distance_bruteforce(M[1:, 1:], budget)
            text += f"# first {args.eta - 1} columns: distance {first}\n"
            text += f"# lower rows, columns 1..{args.eta - 2}: distance {inner}\n"
            text += f"# lower rows, columns 1..{args.eta - 1}: distance {outer}\n"
        else:
            text += f"# first {args.eta - 1} columns: distance {first}\n# lower blocks are empty\n"
    _write(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdrm",
        description="Ferrers diagram rank-metric codes: bounds, constructions, certification.",
        epilog=f"Default enumeration budget is {DEFAULT_BUDGET} codewords; override with ${BUDGET_ENV} or --budget.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="upper bound on the dimension for a diagram and distance")
    p.add_argument("diagram", help="diagram file (rows of X/. or 'gamma:' form)")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("construct", help="build a code for a diagram")
    p.add_argument("diagram")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", type=int, default=2, help="field size (prime power)")
    p.add_argument("--method", choices=["auto", *METHODS], default="auto")
    p.add_argument("--out", help="write the code here (.json for the JSON form)")
    p.add_argument("--budget", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a code file")
    p.add_argument("code")
    p.add_argument("--budget", type=int)
    p.add_argument("--parallel", type=int, default=1, metavar="W", help="worker processes")
    p.add_argument("--strict", action="store_true", help="exit 4 instead of reporting 'unverified'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("combine", help="combine two code files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--mode", choices=["dimension", "distance"], required=True)
    p.add_argument("--ell", type=int, default=1, help="shared full columns (distance mode)")
    p.add_argument("--filler", type=int, nargs=2, metavar=("ROWS", "COLS"), help="filler block (dimension mode)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("sweep", help="best construction for every diagram of a size, as CSV")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--depth", type=int, default=2, help="nesting depth for combined constructions")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lemma3", help="structured generator with three MRD blocks")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--eta", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--check", action="store_true", help="append brute-force block distances as comments")
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemma3)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
