"""Command-line front end: ``dessinpairs verify|genus|count|classify|catalog``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__, constructions, counting
from .linfp import ParameterError
from .triangle import TriangleType, catalog_rows, classify_pair, rh_genus, singerman_lookup

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("dessinpairs")


class UsageError(Exception):
    pass


def _type_arg(text: str) -> TriangleType:
    try:
        return TriangleType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(payload: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _verify_one(example_id: str, materialize: bool = False) -> dict:
    name, params = constructions.parse_example_id(example_id)
    if materialize and name == "ex9":
        params["materialize"] = True
    try:
        result = constructions.REGISTRY[name](**params)
    except ParameterError:
        raise
    except ValueError as exc:
        log.error("%s: construction failed: %s", example_id, exc)
        return {"id": example_id, "passed": False, "error": str(exc), "claims": []}
    result.id = example_id
    return result.as_dict()


def _verify_text(result: dict) -> list[str]:
    lines = [f"{result['id']}: {'PASS' if result['passed'] else 'FAIL'}"]
    if "error" in result:
        lines.append(f"  error: {result['error']}")
    for c in result["claims"]:
        mark = "ok  " if c["passed"] else "FAIL"
        detail = "" if c["passed"] else f" (expected {c['expected']})"
        lines.append(f"  {mark} {c['claim']}: {c['computed']}{detail}")
    report = result.get("report")
    if report:
        lines.append(f"  verdict {report['verdict']}, genus {report['genus']}, "
                     f"types {report['types']}, structures {report['structures']}")
    return lines


def cmd_verify(args) -> int:
    ids = list(constructions.GOLDEN_MANIFEST) if args.example == "all" else [args.example]
    for i in ids:
        try:
            constructions.parse_example_id(i)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if len(ids) > 1 and args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_one, ids, [args.materialize] * len(ids)))
    else:
        results = []
        for i in ids:
            log.info("verifying %s", i)
            try:
                results.append(_verify_one(i, args.materialize))
            except TypeError as exc:
                raise UsageError(f"{i}: {exc}") from None
    ok = all(r["passed"] for r in results)
    for r in results:
        for c in r["claims"]:
            if not c["passed"]:
                log.error("%s: claim failed: %s", r["id"], c["claim"])
    payload = results[0] if len(results) == 1 else {"passed": ok, "results": results}
    _emit(payload, args.format, [line for r in results for line in _verify_text(r)])
    return EXIT_OK if ok else EXIT_FAIL


def cmd_genus(args) -> int:
    try:
        g = rh_genus(args.type, args.order)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_FAIL
    _emit({"type": list(args.type), "order": args.order, "genus": g}, args.format, [str(g)])
    return EXIT_OK


def cmd_count(args) -> int:
    handle = constructions.parse_group_spec(args.group)
    orders = tuple(args.orders)
    table = None
    if args.char_table:
        try:
            table = counting.load_table(args.char_table)
        except FileNotFoundError:
            raise UsageError(f"character table not found: {args.char_table}") from None
    try:
        aut = counting.aut_order(handle.kind, next(iter(handle.params.values())))
    except ValueError:
        aut = None
    name = f"{handle.kind}:{next(iter(handle.params.values()))}"
    report = counting.count_report(handle.group, orders, name, table, aut)
    lines = [f"group {name}, orders {orders}",
             f"brute {report.brute_count}", f"frobenius {report.frobenius_count}",
             f"generating {report.epi_count}", f"kernels {report.kernel_count}"]
    _emit(report.as_dict(), args.format, lines)
    if not report.consistent:
        log.error("character sum %s disagrees with brute force %s", report.frobenius_count, report.brute_count)
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        shape = classify_pair(args.type1, args.type2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"type1": list(args.type1), "type2": list(args.type2), **shape.as_dict()}
    _emit(payload, args.format, [f"case {shape.case}, n = {shape.n}"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.sub is None and args.super is None:
        rows = [r.as_dict() for r in catalog_rows(args.n_max)]
        lines = [f"{r['label']}: {tuple(r['sub'])} < {tuple(r['super'])}, index {r['index']}" for r in rows]
        _emit({"rows": rows}, args.format, lines)
        return EXIT_OK
    if args.sub is None or args.super is None:
        raise UsageError("give both --sub and --super, or neither")
    rec = singerman_lookup(args.sub, args.super)
    if rec is None:
        _emit({"found": False, "sub": list(args.sub), "super": list(args.super)}, args.format, ["not found"])
        return EXIT_FAIL
    d = rec.as_dict()
    _emit({"found": True, **d}, args.format,
          [f"{d['label']}: index {d['index']}, normal {d['normal']}, "
           f"normalizer {tuple(d['normalizer'])}, dessins {d['dessin_count']}"])
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dessinpairs", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("-q", "--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="suppress progress on stderr")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common], help="check the stated claims of an example")
    p.add_argument("example", help="example id such as ex5, ex7:variant=noswap, or all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--materialize", action="store_true", help="build the full hypermap for ex9")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("genus", parents=[common], help="Riemann-Hurwitz genus of a regular dessin")
    p.add_argument("--type", type=_type_arg, required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("count", parents=[common], help="count product-one triples of given orders")
    p.add_argument("--group", required=True, help="sym:d, alt:d, pgl2:p, psl2:p or ex4:n")
    p.add_argument("--orders", type=lambda s: tuple(_type_arg(s)), required=True)
    p.add_argument("--char-table")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classify", parents=[common], help="pair shape of two triangle types")
    p.add_argument("--type1", type=_type_arg, required=True)
    p.add_argument("--type2", type=_type_arg, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", parents=[common], help="inclusions between triangle groups")
    p.add_argument("--sub", type=_type_arg)
    p.add_argument("--super", type=_type_arg)
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        sys.stderr.write(f"dessinpairs: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
