"""Command line front end.

Subcommands: bounds (code size bound tables), verify (exhaustive checks),
graph (channel graph statistics), search (exact maximum code), codec
(construct/deconstruct edges).  Exit codes: 0 success, 1 failed check,
2 usage, 3 enumeration cap exceeded, 4 search timeout.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from delins import bounds as bnd
from delins import channels as ch
from delins import codec as cdc
from delins import oracle as orc
from delins.channels import DEFAULT_CAP
from delins.errors import CapExceededError
from delins.qstrings import format_qary, parse_qary

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_TIMEOUT = 4


class UsageError(ValueError):
    pass


def fraction_decimal(value: Fraction) -> str:
    """Six significant digits, exact rational in, decimal text out."""
    with localcontext() as ctx:
        ctx.prec = 6
        return str(Decimal(value.numerator) / Decimal(value.denominator)).lower()


def _fraction_text(value: Fraction) -> str:
    return f"{bnd.fraction_str(value)} ({fraction_decimal(value)})"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fp:
            fp.write(text)
    else:
        sys.stdout.write(text)


def _bound_rows(qs: list[int], ns: list[int], ss: list[int]) -> list[bnd.BoundReport]:
    rows = []
    for q in sorted(set(qs)):
        for n in sorted(set(ns)):
            for s in sorted(set(ss)):
                if q < 2:
                    raise UsageError(f"alphabet size must be at least 2, got {q}")
                if not 0 <= s <= n:
                    raise UsageError(f"need 0 <= s <= n, got s={s}, n={n}")
                for b in range(s + 1):
                    rows.append(bnd.bound_report(q, n, s, b))
    return rows


def cmd_bounds(args: argparse.Namespace) -> int:
    rows = _bound_rows(args.q, args.n, args.s)
    if args.format == "csv":
        text = "\n".join(bnd.report_csv_lines(rows)) + "\n"
    elif args.format == "json":
        text = json.dumps(bnd.report_json_obj(rows), indent=2) + "\n"
    else:
        lines = []
        header = f"{'q':>2} {'n':>4} {'a':>2} {'b':>2} {'s':>2}  {'generalized':<28} {'best':>4}"
        lines.append(header)
        for r in rows:
            mark = "*" if r.b == r.best_b else " "
            lines.append(
                f"{r.q:>2} {r.n:>4} {r.a:>2} {r.b:>2} {r.s:>2}  "
                f"{_fraction_text(r.generalized):<28} {r.best_b:>4}{mark}"
            )
            if r.b == r.s:
                lines.append(
                    f"   levenshtein={_fraction_text(r.levenshtein)} "
                    f"insertion={_fraction_text(r.insertion_bound)} "
                    f"improvement={_fraction_text(r.improvement)}"
                )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    caps = orc.VerifyCaps(max_n=args.max_n, cap=args.cap)
    checks = orc.verify_all_lemmas(args.q, caps)
    width = max(len(c.name) for c in checks)
    failed = False
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{c.name:<{width}}  {status}  (instances={c.instances})")
        if not c.passed:
            failed = True
            print(f"  counterexample: {c.counterexample}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    graph = ch.build_channel_graph(args.q, args.l, args.a, args.b, args.cap)
    constructable = cdc.parameter_count(args.q, args.l, args.a, args.b)
    upper = bnd.edge_count_upper(args.q, args.l, args.a, args.b)
    edges = graph.edge_count
    dmin, davg, dmax = graph.degree_stats()
    print(f"q={args.q} l={args.l} a={args.a} b={args.b}")
    print(f"left={graph.left_size} right={graph.right_size}")
    print(f"edges={edges}")
    print(f"constructable={constructable}")
    print(f"upper={upper}")
    print(f"sandwich={'ok' if constructable <= edges <= upper else 'VIOLATED'}")
    print(f"degree_min={dmin} degree_avg={_fraction_text(davg)} degree_max={dmax}")
    ratio = Fraction(constructable, edges) if edges else Fraction(0)
    print(f"constructable_ratio={_fraction_text(ratio)}")
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fp:
            graph.write_edge_list(fp)
        print(f"edge list written to {args.export}")
    return EXIT_OK if constructable <= edges <= upper else EXIT_FAIL


def cmd_search(args: argparse.Namespace) -> int:
    graph = orc.build_conflict_graph(args.q, args.n, args.s, args.cap)
    cert = orc.max_code_exact(graph, time_limit=args.time_limit, cap=args.cap)
    kind = "maximum" if cert.exact else "lower bound (search timed out)"
    print(f"q={args.q} n={args.n} s={args.s}")
    print(f"code_size={cert.size} ({kind}, verified={str(cert.verified).lower()})")
    if args.q == 2 and args.s == 1:
        print(f"vt_best={orc.best_vt_size(args.n)}")
    if args.s <= args.n:
        lev = bnd.generalized_code_bound(args.q, args.n, args.s, 0)
        best = bnd.optimal_b(args.q, args.s)
        gen = bnd.generalized_code_bound(args.q, args.n, args.s - best, best)
        ins = bnd.insertion_code_bound(args.q, args.n, args.s)
        print(f"levenshtein_bound={_fraction_text(lev)}")
        print(f"generalized_bound_at_b={best}: {_fraction_text(gen)}")
        print(f"insertion_bound={_fraction_text(ins)}")
    if args.certificate:
        with open(args.certificate, "w", encoding="utf-8") as fp:
            cert.write(fp)
        print(f"certificate written to {args.certificate}")
    return EXIT_OK if cert.exact else EXIT_TIMEOUT


def _read_parameter_file(path: str, q: int) -> tuple[cdc.Qstr, tuple[cdc.InsertTriple, ...]]:
    with open(path, encoding="utf-8") as fp:
        lines = [line.strip() for line in fp if line.strip()]
    if not lines or not lines[0].startswith("z0"):
        raise UsageError("parameter file must start with a 'z0 <string>' line")
    first = lines[0].split()
    z0 = parse_qary(first[1], q) if len(first) > 1 else ()
    triples = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] not in (cdc.LEFT, cdc.RIGHT):
            raise UsageError(f"bad triple line: {line!r} (want 'left|right offset interval')")
        triples.append(cdc.InsertTriple(parts[0], int(parts[1]), parse_qary(parts[2], q)))
    return z0, tuple(triples)


def cmd_codec(args: argparse.Namespace) -> int:
    q = args.q
    if args.deconstruct:
        x = parse_qary(args.deconstruct[0], q)
        y = parse_qary(args.deconstruct[1], q)

        def trace(triple: cdc.InsertTriple, rx: cdc.Qstr, ry: cdc.Qstr) -> None:
            if args.trace:
                print(
                    f"{triple.side} {triple.offset} {format_qary(triple.interval, q)}"
                    f" | {format_qary(rx, q)} {format_qary(ry, q)}"
                )

        try:
            z0, triples = cdc.deconstruct(x, y, q, on_step=trace)
        except cdc.NotDeconstructableError as exc:
            print(f"NotDeconstructable: {exc}")
            return EXIT_OK
        parts = [f"z0={format_qary(z0, q)}"]
        parts.extend(
            f"{t.side} {t.offset} {format_qary(t.interval, q)}" for t in triples
        )
        print("; ".join(parts))
        return EXIT_OK
    if args.construct:
        z0, triples = _read_parameter_file(args.construct, q)
        x, y = cdc.construct(z0, triples, q)
        print(f"x={format_qary(x, q)} y={format_qary(y, q)}")
        return EXIT_OK
    if args.roundtrip:
        if args.l is None or args.a is None or args.b is None:
            raise UsageError("--roundtrip needs --l, --a and --b")
        total = 0
        for param in cdc.enumerate_parameters(q, args.l, args.a, args.b, args.cap):
            x, y = cdc.construct_edge(param, q)
            z0, triples = cdc.deconstruct(x, y, q)
            if cdc.EdgeParameter.from_construction(z0, triples) != param:
                print(
                    f"round-trip FAILED for x={format_qary(x, q)} y={format_qary(y, q)}"
                )
                return EXIT_FAIL
            total += 1
        print(f"all {total} parameters round-trip")
        return EXIT_OK
    raise UsageError("codec needs one of --deconstruct, --construct, --roundtrip")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delins",
        description="Deletion/insertion channel combinatorics: bounds, graphs, codec, search.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bounds = sub.add_parser("bounds", help="emit code size bound tables")
    p_bounds.add_argument("--q", type=int, nargs="+", required=True)
    p_bounds.add_argument("--n", type=int, nargs="+", required=True)
    p_bounds.add_argument("--s", type=int, nargs="+", required=True)
    p_bounds.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p_bounds.add_argument("--output", default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_verify = sub.add_parser("verify", help="run the exhaustive verification sweep")
    p_verify.add_argument("--q", type=int, default=2)
    p_verify.add_argument("--max-n", type=int, default=7)
    p_verify.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p_verify.set_defaults(func=cmd_verify)

    p_graph = sub.add_parser("graph", help="channel graph statistics")
    p_graph.add_argument("--q", type=int, required=True)
    p_graph.add_argument("--l", type=int, required=True)
    p_graph.add_argument("--a", type=int, required=True)
    p_graph.add_argument("--b", type=int, required=True)
    p_graph.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p_graph.add_argument("--export", default=None)
    p_graph.set_defaults(func=cmd_graph)

    p_search = sub.add_parser("search", help="exact maximum code search")
    p_search.add_argument("--q", type=int, required=True)
    p_search.add_argument("--n", type=int, required=True)
    p_search.add_argument("--s", type=int, required=True)
    p_search.add_argument("--cap", type=int, default=orc.SEARCH_CAP)
    p_search.add_argument("--time-limit", type=float, default=None)
    p_search.add_argument("--certificate", default=None)
    p_search.set_defaults(func=cmd_search)

    p_codec = sub.add_parser("codec", help="construct/deconstruct edges")
    p_codec.add_argument("--q", type=int, default=2)
    p_codec.add_argument("--deconstruct", nargs=2, metavar=("X", "Y"))
    p_codec.add_argument("--construct", metavar="FILE")
    p_codec.add_argument("--roundtrip", action="store_true")
    p_codec.add_argument("--l", type=int, default=None)
    p_codec.add_argument("--a", type=int, default=None)
    p_codec.add_argument("--b", type=int, default=None)
    p_codec.add_argument("--trace", action="store_true")
    p_codec.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p_codec.set_defaults(func=cmd_codec)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
