"""Command-line front end (``fqhopf`` / ``python -m fqhopf``).

Exit codes: 0 success or all checks passed, 1 verification failures,
2 usage or input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import shutil
import sys

from . import coalgebra as co
from .compspace import ParseError, parse_lincomb, parse_word, serialize, to_json, to_latex
from .powersums import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    carlitz_sum_Si,
    carlitz_sum_Silt,
    hoffman_basis,
    hoffman_dimension,
    power_sum_S,
    power_sum_Slt,
)
from .products import diamond, shuffle, stuffle, triangle
from .scalar import FieldSpec, _prime_power, field
from .verify import SUITES, run_suite, sweep_associativity_words

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_CACHE_DIR = ".fqhopf-cache"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _field_args(p):
    g = p.add_argument_group("field")
    g.add_argument("--q", type=int, help="field order (a prime power)")
    g.add_argument("--p", type=int, help="characteristic")
    g.add_argument("--k", type=int, default=None, help="degree over F_p (default 1)")


def _common(p, formats=("text", "json", "latex")):
    _field_args(p)
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="cap on polynomial evaluations")
    p.add_argument("--no-header", action="store_true", help="omit the field header line")


def _cache_args(p):
    p.add_argument("--cache", metavar="PATH", default=DEFAULT_CACHE_DIR, help="coproduct cache directory")
    p.add_argument("--no-cache", action="store_true", help="recompute everything, ignore the cache")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fqhopf", description="Shuffle/stuffle Hopf algebras over F_q.")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    p = sub.add_parser("product", help="multiply two linear combinations of words")
    _common(p)
    p.add_argument("--op", choices=["shuffle", "diamond", "triangle", "stuffle"], default="shuffle")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("coproduct", help="coproduct of a word")
    _common(p)
    _cache_args(p)
    p.add_argument("--variant", choices=["shuffle", "closed", "shi", "stuffle"], default="shuffle")
    p.add_argument("word")

    p = sub.add_parser("antipode", help="antipode of a word")
    _common(p)
    p.add_argument("--algebra", choices=["shuffle", "stuffle"], default="shuffle")
    p.add_argument("word")

    p = sub.add_parser("tables", help="coproducts of x_n for a range of n, one line each")
    _common(p)
    _cache_args(p)
    p.add_argument("--from", dest="lo", type=int, default=1)
    p.add_argument("--to", dest="hi", type=int, required=True)

    p = sub.add_parser("powersum", help="exact power sums S_d, S_<d, Si_d, Si_<d")
    _common(p, formats=("text", "json"))
    p.add_argument("--kind", choices=["S", "Slt", "Si", "Silt"], default="S")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("indices", nargs="*", type=int, help="the tuple s_1 ... s_r")

    p = sub.add_parser("dims", help="Hoffman dimensions d(0..w)")
    _common(p, formats=("text", "json"))
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--basis", action="store_true", help="list the basis tuples as well")

    p = sub.add_parser("verify", help="run verification sweeps")
    _common(p, formats=("text", "json"))
    p.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default: all fast suites")
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="list passing items too")
    p.add_argument("--long-run", action="store_true",
                   help="depth-one associativity for all weights below q^3 (hours for q >= 7)")

    p = sub.add_parser("cache", help="manage the coproduct cache")
    _field_args(p)
    _cache_args(p)
    p.add_argument("action", choices=["build", "show", "clear"])
    p.add_argument("--upto", type=int, default=40)
    return ap


def _resolve_field(args) -> FieldSpec:
    if args.q is not None:
        if args.p is not None or args.k is not None:
            p, k = _prime_power(args.q)
            if (args.p is not None and args.p != p) or (args.k is not None and args.k != k):
                raise ValueError(f"--q {args.q} contradicts --p/--k")
        p, k = _prime_power(args.q)
        return field(p, k)
    if args.p is None:
        raise UsageError("give the field with --q or --p [--k]")
    return field(args.p, args.k or 1)


def _cache_path(args, F) -> str:
    return os.path.join(args.cache, f"coproducts-p{F.p}-k{F.k}.txt")


def _open_cache(args, F):
    if getattr(args, "no_cache", True):
        return None
    cache = co.CoproductCache(_cache_path(args, F), F)
    cache.warm()
    return cache


def _emit(x, fmt, F, out):
    if fmt == "json":
        d = to_json(x)
        out.append(json.dumps(d, sort_keys=True))
    elif fmt == "latex":
        out.append(to_latex(x))
    else:
        out.append(serialize(x))


def _header(args, F, out):
    if args.no_header or args.format == "json":
        return
    mark = "%" if args.format == "latex" else "#"
    out.append(f"{mark} {F.describe()}")


def cmd_product(args, F, out):
    a = parse_lincomb(args.left, F)
    b = parse_lincomb(args.right, F)
    op = {"shuffle": shuffle, "diamond": diamond, "triangle": triangle, "stuffle": stuffle}[args.op]
    _emit(op(a, b), args.format, F, out)
    return EXIT_OK


def cmd_coproduct(args, F, out):
    w = parse_word(args.word)
    cache = _open_cache(args, F)
    if args.variant == "closed":
        if len(w) != 1:
            raise ValueError("the closed form applies to a single letter x_n")
        t = co.coproduct_depth_one_closed(F, w[0])
    elif args.variant == "shi":
        t = co.coproduct_shi(F, w)
    elif args.variant == "stuffle":
        t = co.coproduct_stuffle(F, w)
    else:
        t = co.coproduct_shuffle(F, w)
    if cache is not None and args.variant == "shuffle" and w and cache.fill(max(w)):
        cache.save()
    if args.format == "latex" and len(w) == 1:
        out.append(f"\\Delta(x_{{{w[0]}}})&={to_latex(t)}")
    else:
        _emit(t, args.format, F, out)
    return EXIT_OK


def cmd_antipode(args, F, out):
    w = parse_word(args.word)
    x = co.antipode_shuffle(F, w) if args.algebra == "shuffle" else co.antipode_stuffle(F, w)
    _emit(x, args.format, F, out)
    return EXIT_OK


def cmd_tables(args, F, out):
    if args.lo < 1 or args.hi < args.lo:
        raise ValueError("need 1 <= --from <= --to")
    cache = _open_cache(args, F)
    rows = []
    for n in range(args.lo, args.hi + 1):
        t = co.coproduct_shuffle(F, (n,))
        rows.append((n, t))
    if cache is not None and cache.fill(args.hi):
        cache.save()
    if args.format == "json":
        out.append(json.dumps({"type": "CoproductTable", "version": 1, "p": F.p, "k": F.k,
                               "rows": [{"n": n, "coproduct": to_json(t)} for n, t in rows]}, sort_keys=True))
    elif args.format == "latex":
        lines = [f"\\Delta(x_{{{n}}})&={to_latex(t)}" for n, t in rows]
        out.append("\\\\\n".join(lines))
    else:
        out.extend(f"D(x{n}) = {serialize(t)}" for n, t in rows)
    return EXIT_OK


def cmd_powersum(args, F, out):
    fn = {"S": power_sum_S, "Slt": power_sum_Slt, "Si": carlitz_sum_Si, "Silt": carlitz_sum_Silt}[args.kind]
    r = fn(F, args.d, tuple(args.indices), args.budget)
    out.append(json.dumps(r.to_json(), sort_keys=True) if args.format == "json" else r.to_text())
    return EXIT_OK


def cmd_dims(args, F, out):
    dims = [hoffman_dimension(w, F.q) for w in range(args.upto + 1)]
    if args.format == "json":
        d = {"q": F.q, "dimensions": dims}
        if args.basis:
            d["basis"] = {str(w): [list(t) for t in hoffman_basis(w, F.q)] for w in range(args.upto + 1)}
        out.append(json.dumps(d, sort_keys=True))
        return EXIT_OK
    out.append(",".join(str(d) for d in dims))
    if args.basis:
        for w in range(args.upto + 1):
            out.append(f"T_{w}: " + " ".join("(" + ",".join(map(str, t)) + ")" for t in hoffman_basis(w, F.q)))
    return EXIT_OK


def cmd_verify(args, F, out):
    names = args.suite or [s for s in SUITES if s not in ("closed-form",)]
    reports = [run_suite(n, F.q, args.max_weight, args.jobs) for n in names]
    if args.long_run:
        reports.append(sweep_associativity_words(F.q, F.q**3 - 1, depth_one_only=True, jobs=args.jobs))
    if args.format == "json":
        all_pass = all(r.passed for r in reports)
        out.append(json.dumps({"type": "ReportSet", "version": 1, "passed": all_pass,
                               "n_failures": sum(len(r.failures) for r in reports),
                               "reports": [r.to_dict() for r in reports]}, indent=2, sort_keys=True))
    else:
        out.extend(r.to_text(args.verbose) for r in reports)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_cache(args, F, out):
    if args.action == "clear":
        if os.path.isdir(args.cache):
            shutil.rmtree(args.cache)
        out.append(f"removed {args.cache}")
        return EXIT_OK
    path = _cache_path(args, F)
    cache = co.CoproductCache(path, F)
    if args.action == "build":
        cache.warm()
        new = cache.fill(args.upto)
        cache.save()
        out.append(f"{path}: {len(cache.entries)} entries ({new} computed)")
    else:
        out.append(cache.header)
        out.append(f"{path}: {len(cache.entries)} entries, n in "
                   f"{min(cache.entries, default=0)}..{max(cache.entries, default=0)}")
    return EXIT_OK


COMMANDS = {
    "product": cmd_product,
    "coproduct": cmd_coproduct,
    "antipode": cmd_antipode,
    "tables": cmd_tables,
    "powersum": cmd_powersum,
    "dims": cmd_dims,
    "verify": cmd_verify,
    "cache": cmd_cache,
}


def main(argv=None) -> int:
    out: list = []
    try:
        args = build_parser().parse_args(argv)
        clearing = args.cmd == "cache" and args.action == "clear"
        F = None if clearing else _resolve_field(args)
        if hasattr(args, "format"):
            _header(args, F, out)
        code = COMMANDS[args.cmd](args, F, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as e:
        print(f"budget exceeded: {e} (raise it with --budget)", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, ValueError, KeyError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    # buffered so parallel sweeps cannot interleave output
    sys.stdout.write("\n".join(out) + ("\n" if out else ""))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
