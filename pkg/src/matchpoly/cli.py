"""Matching polynomials, subgraph censuses and formula checks for small graphs.

Input is one graph6 string per line, from a file or stdin. Exit status is 0 on
success, 1 when a verification fails and 2 on bad input (which takes precedence).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Iterator, Optional, TextIO

from .catalog import (
    CatalogError,
    build_catalog,
    generate_regular,
    load_catalog_graphs,
    make_entry,
    verify_catalog,
)
from .census import MAX_CENSUS_EDGES, census, default_index_map
from .formulas import PRINTED_FORMULAS, verify_formulas, verify_linear_system
from .graph import Graph, Graph6Error, is_regular, parse_graph6, serialize_graph6
from .matching import matching_polynomial

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Output:
    """Emits records as json-lines or as aligned tables."""

    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream

    def records(self, rows: list[dict], title: Optional[str] = None) -> None:
        if self.fmt == "json-lines":
            for row in rows:
                self.stream.write(json.dumps(row, sort_keys=False) + "\n")
            return
        if title:
            self.stream.write(f"# {title}\n")
        if not rows:
            return
        cols = list(rows[0])
        cells = [[_cell(row.get(c)) for c in cols] for row in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        self.stream.write("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for r in cells:
            self.stream.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")

    def error(self, message: str) -> None:
        sys.stderr.write(message + "\n")


def _cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value)
    return str(value)


def _read_graphs(path: Optional[str], out: Output) -> Iterator[tuple[int, Optional[Graph]]]:
    """Yield (line number, graph or None on parse error) for non-blank lines."""
    stream: Iterable[str]
    if path is None or path == "-":
        stream = sys.stdin
    else:
        stream = open(path, encoding="ascii", errors="replace")
    try:
        for lineno, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, parse_graph6(line)
            except Graph6Error as exc:
                out.error(f"line {lineno}: {exc}")
                yield lineno, None
    finally:
        if stream is not sys.stdin:
            stream.close()


def cmd_poly(args, out: Output) -> int:
    status = EXIT_OK
    rows = []
    for lineno, g in _read_graphs(args.input, out):
        if g is None:
            status = EXIT_INPUT
            continue
        mu = matching_polynomial(g)
        nu = mu.degree_of_matching
        rows.append(
            {
                "line": lineno,
                "n": g.n,
                "rho": list(mu.rho),
                "polynomial": str(mu),
                "matching_number": nu,
                "perfect_matching": g.n % 2 == 0 and nu == g.n // 2,
            }
        )
    out.records(rows)
    return status


def cmd_census(args, out: Output) -> int:
    status = EXIT_OK
    index = default_index_map().by_class() if args.max_edges == MAX_CENSUS_EDGES else None
    rows = []
    for lineno, g in _read_graphs(args.input, out):
        if g is None:
            status = EXIT_INPUT
            continue
        for rec in census(g, args.max_edges).records(index):
            rows.append({"line": lineno, **rec})
    out.records(rows)
    return status


def cmd_verify(args, out: Output) -> int:
    do_formulas = args.formulas or not args.system
    do_system = args.system or not args.formulas
    formulas = PRINTED_FORMULAS if args.printed else None
    mapping = default_index_map()
    status = EXIT_OK
    for lineno, g in _read_graphs(args.input, out):
        if g is None:
            status = EXIT_INPUT
            continue
        if is_regular(g) is None:
            out.error(f"line {lineno}: graph is not regular, skipped")
            status = EXIT_INPUT
            continue
        table = census(g)
        tag = {"line": lineno, "graph6": serialize_graph6(g)}
        if do_formulas:
            res = verify_formulas(g, table, mapping, formulas)
            out.records([{**tag, **r.record(), "ok": r.ok} for r in res], "formula residuals")
            for r in res:
                if not r.ok:
                    out.error(f"line {lineno}: g_{{{r.fid[0]},{r.fid[1]},{r.fid[2]}}} residual {r.residual}")
                    status = max(status, EXIT_FAIL)
        if do_system:
            res = verify_linear_system(g, table, mapping)
            out.records([{**tag, **r.record(), "ok": r.ok} for r in res], "equation residuals")
            for r in res:
                if not r.ok:
                    out.error(f"line {lineno}: equation {r.index} residual {r.residual}")
                    status = max(status, EXIT_FAIL)
    return status


def cmd_catalog(args, out: Output) -> int:
    n, r = args.order, args.degree
    labelled = (n, r) == (10, 3)
    if args.verify and not labelled:
        out.error("--verify is only defined for --order 10 --degree 3")
        return EXIT_INPUT
    try:
        if labelled:
            graphs = generate_regular(n, r) if args.generate else load_catalog_graphs()
            entries = build_catalog(graphs)
        else:
            entries = [make_entry(g) for g in generate_regular(n, r)]
    except (ValueError, CatalogError) as exc:
        out.error(str(exc))
        return EXIT_INPUT if not isinstance(exc, CatalogError) else EXIT_FAIL
    out.records([e.record() for e in entries], f"{r}-regular graphs of order {n}")
    if not args.verify:
        return EXIT_OK
    checks = verify_catalog(entries)
    failed = [c for c in checks if not c.ok]
    out.records([c.record() for c in failed] or [{"check": "all", "ok": True}], "verification failures")
    sys.stderr.write(f"{len(checks) - len(failed)}/{len(checks)} checks passed\n")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matchpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("table", "json-lines"), default="table")

    p = sub.add_parser("poly", help="matching polynomial of each input graph")
    p.add_argument("input", nargs="?", help="graph6 file (default: stdin)")
    common(p)
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("census", help="subgraph class counts of each input graph")
    p.add_argument("input", nargs="?")
    p.add_argument("--max-edges", type=int, default=MAX_CENSUS_EDGES, choices=range(0, MAX_CENSUS_EDGES + 1))
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="closed-form and linear-system residuals for regular graphs")
    p.add_argument("input", nargs="?")
    p.add_argument("--formulas", action="store_true", help="closed-form residuals")
    p.add_argument("--system", action="store_true", help="linear-system residuals")
    p.add_argument("--printed", action="store_true", help="use the formulas exactly as published")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="all r-regular graphs of order n; labelled for n=10, r=3")
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--verify", action="store_true", help="check saturation numbers, printed polynomials, theorem")
    p.add_argument("--generate", action="store_true", help="regenerate instead of reading the shipped list")
    common(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, Output(args.format, sys.stdout))


if __name__ == "__main__":
    sys.exit(main())
