"""Command-line front end.

Every subcommand emits flat records.  Integers are written as decimal
strings, reals with 12 significant digits, so JSON and CSV output parse
back to exactly the same records.

Exit codes: 0 success (or every table cell matches), 1 mismatch against the
published tables, 2 invalid input, 3 a computation exhausted its budget.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from typing import Any, Callable, Optional

from . import fixtures
from .arith import Effort
from .asymptotics import DEFAULT_CUTOFF, main_term_family, round_half_away
from .families import (
    BudgetExhausted,
    FamilySpec,
    LinearForm,
    count_family,
    density_constant_cF,
    local_obstruction_scan,
    search_B,
)
from .monogenic import Outcome, ReducibleError, is_monogenic
from .trinomial import (
    Status,
    Trinomial,
    d_value,
    discriminant_swan,
    galois_order_bound,
    irreducibility_certificate,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3
NON_CONFIG = {"workers", "format", "timing", "func"}

Record = dict[str, str]


class Unknown(Exception):
    """A computation ended without a definite answer."""


def fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (list, tuple)):
        return " ".join(fmt(v) for v in value)
    try:
        return "%.12g" % float(value)
    except (TypeError, ValueError):
        return str(value)


def fingerprint(args: argparse.Namespace) -> str:
    config = {k: fmt(v) for k, v in sorted(vars(args).items()) if k not in NON_CONFIG}
    blob = json.dumps(config, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def render(records: list[Record], style: str) -> str:
    if style == "json":
        return json.dumps(records, indent=1)
    keys: list[str] = []
    for r in records:
        keys.extend(k for k in r if k not in keys)
    if style == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        w.writeheader()
        w.writerows(records)
        return buf.getvalue().rstrip("\n")
    lines = ["| " + " | ".join(keys) + " |", "|" + "---|" * len(keys)]
    for r in records:
        lines.append("| " + " | ".join(r.get(k, "") for k in keys) + " |")
    return "\n".join(lines)


def parse(text: str, style: str) -> list[Record]:
    """Inverse of :func:`render` for the machine-readable formats."""
    if style == "json":
        return json.loads(text)
    if style == "csv":
        return [dict(row) for row in csv.DictReader(io.StringIO(text))]
    raise ValueError(f"cannot parse format {style!r}")


def _effort(value: str) -> Effort:
    if value == "default":
        return Effort()
    try:
        iterations = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("effort is 'default' or a rho iteration budget") from None
    if iterations <= 0:
        raise argparse.ArgumentTypeError("rho iteration budget must be positive")
    return Effort(rho_iterations=iterations)


def _coeffs(value: str) -> LinearForm:
    try:
        return LinearForm(tuple(int(c) for c in value.split(",")))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# -- subcommands --------------------------------------------------------------

def cmd_check(args) -> tuple[list[Record], int]:
    tri = Trinomial(args.n, args.m, args.A, args.B)
    rec = {"n": args.n, "m": args.m, "A": args.A, "B": args.B, "disc": discriminant_swan(tri)}
    if tri.divisible:
        rec["D"] = d_value(tri)
        rec["galois_bound"] = galois_order_bound(tri)
        try:
            v = is_monogenic(tri, args.effort)
        except ReducibleError as exc:
            rec.update(irreducible=False, verdict="reducible", factor=list(exc.factor))
            return [rec], EXIT_OK
        rec.update(irreducible=True, verdict=v.status.value, witness=v.witness)
        if v.status is Outcome.UNKNOWN:
            raise Unknown(v.reason)
    else:
        cert = irreducibility_certificate(tri)
        rec["irreducible"] = {Status.PROVEN_IRREDUCIBLE: True, Status.PROVEN_REDUCIBLE: False}.get(cert.status)
    return [rec], EXIT_OK


def cmd_disc(args) -> tuple[list[Record], int]:
    tri = Trinomial(args.n, args.m, args.A, args.B)
    return [{"n": args.n, "m": args.m, "A": args.A, "B": args.B, "disc": discriminant_swan(tri)}], EXIT_OK


def cmd_count(args) -> tuple[list[Record], int]:
    spec = FamilySpec(args.kind, args.n, args.m, args.X)
    res = count_family(spec, workers=args.workers, effort=args.effort,
                       require_nonsquarefree_disc=args.nonsquarefree_disc,
                       cutoff=args.cutoff if spec.kind.name in ("FIRST", "SECOND") else None)
    rec = {"kind": spec.kind.value, "n": spec.n, "m": spec.m, "X": spec.X, "actual": res.actual}
    if res.main_term is not None:
        rec.update(main_term=res.main_term, main_term_rounded=round_half_away(res.main_term))
    return [rec], EXIT_OK


def cmd_main_term(args) -> tuple[list[Record], int]:
    v = main_term_family(args.kind, args.n, args.m, args.X, args.cutoff)
    rec = {"kind": args.kind, "n": args.n, "m": args.m, "X": args.X, "cutoff": args.cutoff,
           "main_term": v, "rounded": round_half_away(v)}
    return [rec], EXIT_OK


def cmd_tables(args) -> tuple[list[Record], int]:
    X = fixtures.TABLE_X if args.X is None else args.X
    compare = X == fixtures.TABLE_X
    records, status = [], EXIT_OK
    if args.which == "1":
        for A, B, disc, verdict in fixtures.TABLE1:
            tri = Trinomial(4, 2, A, B)
            v = is_monogenic(tri, args.effort)
            if v.status is Outcome.UNKNOWN:
                raise Unknown(f"{tri}: {v.reason}")
            got_disc, got = discriminant_swan(tri), v.status.value
            match = got_disc == disc and got == verdict
            status = status if match else EXIT_MISMATCH
            records.append({"f": str(tri), "disc": got_disc, "verdict": got,
                            "published_disc": disc, "published_verdict": verdict, "match": match})
        return records, status
    kind, rows = ("first", fixtures.TABLE2) if args.which == "2" else ("second", fixtures.TABLE3)
    for n, m, count, main in rows:
        res = count_family(FamilySpec(kind, n, m, X), workers=args.workers, effort=args.effort,
                           cutoff=args.cutoff)
        rounded = round_half_away(res.main_term)
        rec = {"n": n, "m": m, "X": X, "actual": res.actual, "main_term": rounded}
        if compare:
            match = res.actual == count and rounded == main
            status = status if match else EXIT_MISMATCH
            rec.update(published_actual=count, published_main_term=main, match=match)
        records.append(rec)
    return records, status


def cmd_search_b(args) -> tuple[list[Record], int]:
    hits = search_B(args.n, args.m, args.A, args.r, args.how_many, args.effort)
    F = LinearForm.for_search(args.n, args.m, args.A, args.r)
    return [{"n": args.n, "m": args.m, "A": args.A, "r": args.r, "p": p, "B": B, "F_p": F(p)}
            for B, p in hits], EXIT_OK


def cmd_obstructions(args) -> tuple[list[Record], int]:
    qs = local_obstruction_scan(args.coeffs, args.q_max)
    return [{"coeffs": list(args.coeffs.coeffs), "q_max": args.q_max, "obstructed": qs}], EXIT_OK


def cmd_cf(args) -> tuple[list[Record], int]:
    c = density_constant_cF(args.coeffs, args.q_max)
    return [{"coeffs": list(args.coeffs.coeffs), "q_max": args.q_max, "c_F": c.value,
             "tail_bound_heuristic": c.tail_bound}], EXIT_OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "md"), default="json")
    common.add_argument("--effort", type=_effort, default=Effort(), metavar="default|N",
                        help="rho iteration budget for factoring (default: unlimited)")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    common.add_argument("--timing", action="store_true", help="add elapsed seconds to records")

    tri = argparse.ArgumentParser(add_help=False)
    for flag in ("--n", "--m", "--A", "--B"):
        tri.add_argument(flag, type=int, required=True)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--kind", required=True, choices=("first", "second", "kappa2"))
    fam.add_argument("--n", type=int, required=True)
    fam.add_argument("--m", type=int, required=True)
    fam.add_argument("--X", type=int, default=fixtures.TABLE_X)
    fam.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)

    p = argparse.ArgumentParser(prog="monotri", description="Monogenic trinomial toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common, tri], help="verdict, disc, D and Galois bound")
    s.set_defaults(func=cmd_check)
    s = sub.add_parser("disc", parents=[common, tri], help="discriminant")
    s.set_defaults(func=cmd_disc)
    s = sub.add_parser("count", parents=[common, fam], help="exact family count up to X")
    s.add_argument("--nonsquarefree-disc", action="store_true",
                   help="only count trinomials whose discriminant is not squarefree")
    s.set_defaults(func=cmd_count)
    s = sub.add_parser("main-term", parents=[common, fam], help="asymptotic main term")
    s.set_defaults(func=cmd_main_term)
    s = sub.add_parser("tables", parents=[common], help="recompute the published tables")
    s.add_argument("--which", choices=("1", "2", "3"), required=True)
    s.add_argument("--X", type=int, default=None)
    s.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    s.set_defaults(func=cmd_tables)
    s = sub.add_parser("search-b", parents=[common], help="B values from the prime search")
    for flag in ("--n", "--m", "--A", "--r"):
        s.add_argument(flag, type=int, required=True)
    s.add_argument("--how-many", type=int, default=10)
    s.set_defaults(func=cmd_search_b)
    for name, func, help_ in (("obstructions", cmd_obstructions, "local obstructions of F"),
                              ("cf", cmd_cf, "squarefree-value density constant of F")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--coeffs", type=_coeffs, required=True, help="c0,c1,... lowest degree first")
        s.add_argument("--q-max", type=int, default=100)
        s.set_defaults(func=func)
    return p


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return EXIT_INVALID
    func: Callable = args.func
    start = time.perf_counter()
    try:
        raw, status = func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BudgetExhausted, Unknown) as exc:
        print(f"unknown: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    elapsed = time.perf_counter() - start
    fp = fingerprint(args)
    records = []
    for r in raw:
        rec = {k: fmt(v) for k, v in r.items()}
        rec["config"] = fp
        if args.timing:
            rec["elapsed_s"] = fmt(elapsed)
        records.append(rec)
    print(render(records, args.format), file=out)
    return status


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
