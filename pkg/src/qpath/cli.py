"""Command line front end.

    qpath table --family tangent --max-n 6 --method all
    qpath coeff --family secant --n 5 --width 2 --method all
    qpath enumerate --n 2 --family tangent
    qpath verify --suite all

Exit codes: 0 ok, 1 usage or guard error, 2 mathematical disagreement or a
failed identity.  Every invocation writes a single JSON document (or one CSV
table) so that output is byte-identical between runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .closedform import euler_poly
from .contfrac import cf_series
from .pathcount import BRUTE_MAX_N, Policy, TooLarge, brute_coeff, dp_series, gen_dyck_paths, iter_diagrams
from .qalg import QPoly
from .qhyper import DEFAULT_TERM_TOL, QHyperError
from .verify import SUITES, parse_grid, run_suites

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREE = 2

TABLE_METHODS = ("closed", "dp", "cf")
COEFF_METHODS = ("cf", "dp", "brute", "closed")
# listing diagrams is capped by how many there are, counting by half-length
ENUM_MAX_DIAGRAMS = 100_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments, which we reserve for math failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _width(text: str) -> int | None:
    if text.lower() in ("inf", "infinity", "none"):
        return None
    try:
        w = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"width must be an integer or 'inf', got {text!r}")
    if w < 0:
        raise argparse.ArgumentTypeError("width must be nonnegative")
    return w


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def _poly_cell(p: QPoly) -> list[str]:
    return p.to_json()


def _clean(obj):
    """Replace non-finite floats so the output stays strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit(doc, output: str | None) -> None:
    text = doc if isinstance(doc, str) else json.dumps(_clean(doc), indent=2) + "\n"
    if output and output != "-":
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------- table

def _table_rows(family: Policy, lo: int, hi: int, method: str) -> list[dict]:
    methods = TABLE_METHODS if method == "all" else (method,)
    polys: dict[str, list[QPoly]] = {}
    for m in methods:
        if m == "closed":
            polys[m] = [euler_poly(n, family, "closed").poly for n in range(lo, hi + 1)]
        elif m == "dp":
            s = dp_series(hi, None, family)
            polys[m] = [s[n] for n in range(lo, hi + 1)]
        else:
            # depth hi covers every N <= hi
            s = cf_series(hi, family, hi)
            polys[m] = [s[n] for n in range(lo, hi + 1)]
    rows = []
    for i, n in enumerate(range(lo, hi + 1)):
        p = polys[methods[0]][i]
        row = {
            "family": family.value,
            "N": n,
            "euler_number": str(p(1)),
            "poly": _poly_cell(p),
        }
        if method == "all":
            row["agree"] = all(polys[m][i] == p for m in methods)
        rows.append(row)
    return rows


def _rows_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    fields = list(rows[0]) if rows else ["family", "N", "euler_number", "poly"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        out = dict(r)
        out["poly"] = " ".join(r["poly"])
        if "agree" in out:
            out["agree"] = "true" if out["agree"] else "false"
        writer.writerow(out)
    return buf.getvalue()


def parse_table_csv(text: str) -> list[dict]:
    """Inverse of the CSV writer, giving rows equal to the JSON ones."""
    rows = []
    for r in csv.DictReader(io.StringIO(text)):
        row = {
            "family": r["family"],
            "N": int(r["N"]),
            "euler_number": r["euler_number"],
            "poly": r["poly"].split(" "),
        }
        if "agree" in r:
            row["agree"] = r["agree"] == "true"
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    if args.max_n < 0:
        raise UsageError("--max-n must be nonnegative")
    if not 0 <= args.min_n <= args.max_n:
        raise UsageError("need 0 <= --min-n <= --max-n")
    family = Policy.parse(args.family)
    rows = _table_rows(family, args.min_n, args.max_n, args.method)
    if args.format == "csv":
        _emit(_rows_csv(rows), args.output)
    else:
        _emit({"family": family.value, "method": args.method, "rows": rows}, args.output)
    if any(r.get("agree") is False for r in rows):
        return EXIT_DISAGREE
    return EXIT_OK


# ------------------------------------------------------------------- coeff

def _coeff_by(method: str, n: int, width: int | None, family: Policy) -> QPoly:
    if method == "cf":
        depth = n if width is None else min(width, n)
        return cf_series(depth, family, n)[n]
    if method == "dp":
        return dp_series(n, width, family)[n]
    if method == "brute":
        return brute_coeff(n, width, family)
    if width is not None and width < n:
        raise UsageError("method closed gives the unrestricted coefficient; use --width inf or >= N")
    return euler_poly(n, family, "closed").poly


def cmd_coeff(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    family = Policy.parse(args.family)
    doc = {
        "family": family.value,
        "N": args.n,
        "width": "inf" if args.width is None else args.width,
        "method": args.method,
    }
    if args.method != "all":
        doc["poly"] = _poly_cell(_coeff_by(args.method, args.n, args.width, family))
        _emit(doc, args.output)
        return EXIT_OK
    results = {}
    for m in COEFF_METHODS:
        if m == "brute" and args.n > BRUTE_MAX_N:
            continue
        if m == "closed" and args.width is not None and args.width < args.n:
            continue
        results[m] = _coeff_by(m, args.n, args.width, family)
    first = results["cf"]
    doc["poly"] = _poly_cell(first)
    doc["methods"] = {m: _poly_cell(p) for m, p in results.items()}
    doc["agree"] = all(p == first for p in results.values())
    _emit(doc, args.output)
    return EXIT_OK if doc["agree"] else EXIT_DISAGREE


# --------------------------------------------------------------- enumerate

def cmd_enumerate(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    if args.n > BRUTE_MAX_N:
        raise UsageError(f"enumeration is limited to N <= {BRUTE_MAX_N}")
    family = Policy.parse(args.family)
    count = brute_coeff(args.n, args.width, family)(1)
    if args.count:
        _emit(f"{count}\n", args.output)
        return EXIT_OK
    if count > ENUM_MAX_DIAGRAMS:
        raise UsageError(
            f"{count} diagrams exceed the listing limit {ENUM_MAX_DIAGRAMS}; use --count"
        )
    diagrams = []
    for path in gen_dyck_paths(args.n, args.width):
        for d in iter_diagrams(path, family):
            item = d.to_json()
            item["area"] = d.area
            diagrams.append(item)
    _emit({
        "family": family.value,
        "N": args.n,
        "width": "inf" if args.width is None else args.width,
        "count": count,
        "diagrams": diagrams,
    }, args.output)
    return EXIT_OK


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    grid = parse_grid(args.grid) if args.grid else None
    reports = run_suites(names, grid, args.tol, args.term_tol, args.max_terms)
    ok = all(r.passed for r in reports)
    _emit({
        "suite": args.suite,
        "pass": ok,
        "reports": [r.to_json() for r in reports],
    }, args.output)
    return EXIT_OK if ok else EXIT_DISAGREE


# -------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qpath", description="q-tangent and q-secant numbers from weighted Dyck paths.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, family=True):
        if family:
            p.add_argument("--family", choices=[x.value for x in Policy], default="tangent")
        p.add_argument("-o", "--output", help="write here instead of stdout")

    p = sub.add_parser("table", help="coefficient polynomials for a range of N")
    common(p)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=0)
    p.add_argument("--method", choices=TABLE_METHODS + ("all",), default="closed")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("coeff", help="one coefficient of the width-w generating function")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--width", type=_width, default=None, help="integer or 'inf' (default)")
    p.add_argument("--method", choices=COEFF_METHODS + ("all",), default="cf")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("enumerate", help="list or count path diagrams")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--width", type=_width, default=None)
    p.add_argument("--count", action="store_true", help="print only the number of diagrams")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="numeric checks of the closed forms")
    common(p, family=False)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--tol", type=_positive_float, default=None,
                   help="identity tolerance (default depends on the suite)")
    p.add_argument("--term-tol", type=_positive_float, default=DEFAULT_TERM_TOL,
                   help="series truncation tolerance")
    p.add_argument("--grid", help="e.g. t=0.01..0.15:8,q=0.1..0.6:6")
    p.add_argument("--max-terms", type=int, default=None,
                   help="series term cap (default $QPATH_MAX_TERMS or 20000)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TooLarge, ValueError) as exc:
        # ComplexRootRegion and DomainViolation are ValueErrors
        print(f"qpath: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QHyperError as exc:
        print(f"qpath: numerical failure: {exc}", file=sys.stderr)
        return EXIT_DISAGREE


if __name__ == "__main__":
    sys.exit(main())
