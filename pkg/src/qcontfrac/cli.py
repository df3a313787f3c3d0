"""Command-line front end.

    qcontfrac verify --all [--order N] [--seed S] [--parallel] [--no-timings]
    qcontfrac verify --id LEBESGUE --id COR_26 --order 64
    qcontfrac expand --cf R_AB --param a=1 --order 20
    qcontfrac partitions --k 5 --parts 1..5 [--distinct] [--enumerate]
    qcontfrac colored --variant BN --n 1 --i 0 --j 1
    qcontfrac colored --table --variant AN --variant BN --n-max 10 --ij-max 3 --format csv
    qcontfrac real --const pi --depth 1000000
    qcontfrac real --const rr --case e-2pi
    qcontfrac list [--cf]

Exit status: 0 when every check passes, 1 on a failed check or evaluation
error, 2 on bad usage.  Reports go to stdout as JSON unless ``--format``
says otherwise; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import contfrac, identities, partitions, realeval
from .errors import ConvergenceError, DomainError, UsageError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def parse_parts(text: str) -> tuple[int, ...]:
    """``"1..5"`` or ``"1,3,5"`` (ranges may be mixed in: ``"1..3,7"``)."""
    out: set[int] = set()
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if ".." in chunk:
                lo, hi = chunk.split("..")
                out.update(range(int(lo), int(hi) + 1))
            elif chunk:
                out.add(int(chunk))
    except ValueError:
        raise UsageError(f"malformed part list {text!r}") from None
    return tuple(sorted(out))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcontfrac", description="Exact q-series and continued-fraction identity checker.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check catalog identities")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--id", action="append", dest="ids", metavar="ID")
    v.add_argument("--order", type=_nonneg, default=40)
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--parallel", action="store_true")
    v.add_argument("--no-timings", action="store_true", help="report elapsed_ms as 0 for reproducible output")

    e = sub.add_parser("expand", help="expand a catalog continued fraction")
    e.add_argument("--cf", required=True, metavar="ID")
    e.add_argument("--order", type=_nonneg, default=40)
    e.add_argument("--depth", type=_positive)
    e.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    e.add_argument("--exponents", help="q-exponents of the terms, e.g. 1..12 (telescoping fractions)")
    e.add_argument("--part", choices=("value", "numerator", "denominator"), default="value")

    pt = sub.add_parser("partitions", help="count or list partitions")
    pt.add_argument("--k", type=_nonneg, required=True)
    pt.add_argument("--parts", required=True, help='allowed sizes, "1..5" or "1,3,5"')
    pt.add_argument("--distinct", action="store_true")
    pt.add_argument("--enumerate", action="store_true")

    c = sub.add_parser("colored", help="coloured partition counts")
    c.add_argument("--variant", action="append", choices=partitions.VARIANTS, required=True)
    c.add_argument("--n", type=_nonneg)
    c.add_argument("--i", type=_nonneg)
    c.add_argument("--j", type=_nonneg)
    c.add_argument("--enumerate", action="store_true")
    c.add_argument("--table", action="store_true")
    c.add_argument("--n-max", type=_nonneg, default=10)
    c.add_argument("--ij-max", type=_nonneg, default=3)
    c.add_argument("--format", choices=("json", "csv"), default="json")

    r = sub.add_parser("real", help="floating-point continued fractions")
    r.add_argument("--const", choices=("pi", "e", "ln2", "rr"), required=True)
    r.add_argument("--depth", type=_positive)
    r.add_argument("--q", type=float, help="nome for --const rr")
    r.add_argument("--case", choices=tuple(realeval.SINGULAR_CASES), help="singular value check for --const rr")
    r.add_argument("--format", choices=("json", "text"), default="json")

    ls = sub.add_parser("list", help="list catalog identities")
    ls.add_argument("--cf", action="store_true", help="list continued-fraction ids instead")
    return p


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    return build_parser().parse_args(list(argv))


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# verbs


def _cmd_verify(args, out) -> int:
    ids = None if args.all else args.ids
    if ids:
        for id in ids:
            if id not in identities.CATALOG:
                raise UsageError(f"unknown identity {id!r}; valid ids: {', '.join(identities.CATALOG)}")
    reports = identities.verify_all(args.order, args.parallel, args.seed, ids=ids)
    out.write("[\n")
    out.write(",\n".join(_dump(r.to_dict(timings=not args.no_timings)) for r in reports))
    out.write("\n]\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_expand(args, out) -> int:
    if args.cf not in contfrac.CATALOG_CF_IDS:
        raise UsageError(f"unknown fraction {args.cf!r}; valid ids: {', '.join(contfrac.CATALOG_CF_IDS)}")
    params: dict = {}
    for item in args.param:
        name, sep, value = item.partition("=")
        if not sep or name not in ("a", "b", "c", "z"):
            raise UsageError(f"--param expects a=VALUE, b=VALUE, c=VALUE or z=VALUE, got {item!r}")
        params[name] = _rational(value)
    if args.exponents:
        params["exponents"] = parse_parts(args.exponents)
    cf = contfrac.build_catalog_cf(args.cf, params, depth=args.depth, order=args.order)
    report = {"cf": args.cf, "order": args.order, "part": args.part}
    if cf.order is None:
        pair = contfrac.convergent(cf, cf.depth)
        value = {"value": pair.ratio(), "numerator": pair.P, "denominator": pair.Q}[args.part]
        report.update(depth=cf.depth, value=_frac(value), approx=float(Fraction(value)))
    elif args.part != "value":
        pair = contfrac.limit_pair(cf, args.order)
        report.update(depth=pair.depth, series=(pair.P if args.part == "numerator" else pair.Q).to_json())
    elif args.cf in ("THM_2_1", "THM_2_2"):
        exps = params.get("exponents") or ()
        if not exps:
            raise UsageError("telescoping fractions need --exponents")
        series, depth = contfrac.finite_value_series(
            lambda M: contfrac.build_catalog_cf(args.cf, params, order=max(M, max(exps))), args.order
        )
        report.update(depth=depth, series=series.to_json())
    else:
        series, depth = contfrac.eval_series_with_depth(cf)
        report.update(depth=depth, series=series.to_json())
    out.write(_dump(report) + "\n")
    return EXIT_OK


def _cmd_partitions(args, out) -> int:
    spec = partitions.PartSpec(parse_parts(args.parts), args.distinct)
    report: dict = {"k": args.k, "count": partitions.count_partitions(args.k, spec)}
    if args.enumerate:
        report["partitions"] = [list(p) for p in partitions.enumerate_partitions(args.k, spec)]
    out.write(_dump(report) + "\n")
    return EXIT_OK


def _cmd_colored(args, out) -> int:
    if args.table:
        if args.format == "csv":
            out.write(partitions.colored_csv(args.variant, args.n_max, args.ij_max))
        else:
            rows = [
                {"n": n, "i": i, "j": j, "variant": v, "count": cnt}
                for v in args.variant
                for n, i, j, cnt in partitions.colored_table(v, args.n_max, args.ij_max)
            ]
            out.write(_dump(rows) + "\n")
        return EXIT_OK
    if args.n is None or args.i is None or args.j is None:
        raise UsageError("colored needs --n, --i and --j (or --table)")
    rows = []
    for v in args.variant:
        row = {"variant": v, "n": args.n, "i": args.i, "j": args.j,
               "count": partitions.count_colored(v, args.n, args.i, args.j)}
        if args.enumerate:
            row["partitions"] = [
                {"red": list(cp.red_parts), "blue": list(cp.blue_parts)}
                for cp in partitions.enumerate_colored(v, args.n, args.i, args.j)
            ]
        rows.append(row)
    if args.format == "csv":
        out.write("n,i,j,variant,count\n")
        for row in rows:
            out.write(f"{row['n']},{row['i']},{row['j']},{row['variant']},{row['count']}\n")
    else:
        out.write(_dump(rows[0] if len(rows) == 1 else rows) + "\n")
    return EXIT_OK


def _cmd_real(args, out) -> int:
    if args.const == "rr":
        if args.case is not None:
            cf, prod, closed, delta = realeval.singular_value_check(args.case, args.depth or 60)
            report = {"const": "rr", "case": args.case, "cf": cf, "product": prod, "closed_form": closed, "delta": delta}
        else:
            if args.q is None:
                raise UsageError("--const rr needs --q or --case")
            cf, prod = realeval.rr_value(args.q, args.depth or 60)
            report = {"const": "rr", "q": args.q, "cf": cf, "product": prod, "delta": abs(cf - prod)}
    else:
        build, ref, default_depth = {
            "pi": (realeval.pi_cf, math.pi, 1000),
            "e": (lambda d: realeval.exp_cf(1.0, d), math.e, 20),
            "ln2": (lambda d: realeval.log_cf(1 / 3, d), math.log(2), 30),
        }[args.const]
        depth = args.depth or default_depth
        value = realeval.eval_cf_real(build(depth), depth)
        report = {"const": args.const, "depth": depth, "value": value, "reference": ref, "error": abs(value - ref)}
    if args.format == "text":
        out.write(" ".join(f"{k}={v}" for k, v in report.items()) + "\n")
    else:
        out.write(_dump(report) + "\n")
    return EXIT_OK


def _cmd_list(args, out) -> int:
    if args.cf:
        out.write(_dump(list(contfrac.CATALOG_CF_IDS)) + "\n")
    else:
        rows = [{"id": i, "description": d, "anchor": a} for i, d, a in identities.list_identities()]
        out.write(_dump(rows) + "\n")
    return EXIT_OK


VERBS = {
    "verify": _cmd_verify,
    "expand": _cmd_expand,
    "partitions": _cmd_partitions,
    "colored": _cmd_colored,
    "real": _cmd_real,
    "list": _cmd_list,
}


def execute(args: argparse.Namespace, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        return VERBS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, ConvergenceError, ArithmeticError) as exc:
        out.write(_dump({"status": "error", "error": f"{type(exc).__name__}: {exc}"}) + "\n")
        return EXIT_FAIL


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    err = sys.stderr if err is None else err
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        err.write(f"{exc}\n")
        build_parser().print_usage(err)
        return EXIT_USAGE
    return execute(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
