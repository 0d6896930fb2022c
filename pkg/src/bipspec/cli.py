"""Command-line interface: ``analyze``, ``check``, ``batch``, ``catalog`` and ``sweep``.

Exit codes
    0  success (``check``: pass; ``sweep``: no discrepancies)
    1  ``check`` failed, or ``sweep`` found discrepancies
    2  unreadable input, bad arguments or enumeration cap exceeded
    3  disconnected input graph
    4  ``check`` not applicable
    5  unknown check identifier
    6  numerical breakdown (no convergence, ambiguous grouping, ...)

Structured output is JSON with sorted keys and floats rounded to
``FLOAT_DIGITS`` decimals, so identical input gives identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from multiprocessing import Pool

from .characterize import CHECK_IDS, FAIL, NA, PASS, ClassificationReport, classify
from .config import Tolerances, default_tolerances
from .errors import BipspecError, Disconnected, GraphFormatError, TooLarge
from .graph_core import (
    CATALOG_NAMES,
    Graph,
    catalog,
    enumerate_bipartite_upto,
    parse_edge_list,
    parse_graph6,
    to_graph6,
)
from .oracle import ValidationConfig, cross_validate

SCHEMA = "bipspec.report/1"
BATCH_SCHEMA = "bipspec.batch/1"
SWEEP_SCHEMA = "bipspec.sweep/1"
FLOAT_DIGITS = 10

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DISCONNECTED, EXIT_NA, EXIT_UNKNOWN_CHECK, EXIT_NUMERIC = range(7)
_CHECK_EXIT = {PASS: EXIT_OK, FAIL: EXIT_FAIL, NA: EXIT_NA}


# -- serialization ------------------------------------------------------------

def canonical(obj):
    """JSON-ready copy with rounded floats, lists for tuples and no ``-0.0``."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, "item"):        # numpy scalar
        obj = obj.item()
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return repr(obj)
        r = round(obj, FLOAT_DIGITS)
        return 0.0 if r == 0 else r
    return str(obj)


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=indent, ensure_ascii=True)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{canonical(v):.6g}"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    return "-" if v is None else str(v)


def report_document(g: Graph, fmt: str, rep: ClassificationReport, tols: Tolerances) -> dict:
    return {
        "schema": SCHEMA,
        "input": {"format": fmt, "graph6": to_graph6(g)},
        "tolerances": {"eig": tols.eig, "mat": tols.mat, "set": tols.set, "group": tols.group},
        "report": rep.to_dict(),
    }


def text_report(g: Graph, rep: ClassificationReport) -> str:
    lines = [
        f"graph6: {to_graph6(g)}",
        f"vertices: {rep.n}",
        f"edges: {rep.m}",
        f"connected: {_fmt(rep.connected)}",
        f"bipartite: {_fmt(rep.bipartite)}",
    ]
    if rep.parts:
        lines.append(f"parts: {rep.parts[0]}+{rep.parts[1]}")
    if rep.odd_cycle:
        lines.append(f"odd_cycle: {_fmt(rep.odd_cycle)}")
    lines += [
        f"regular: {_fmt(rep.regular)}",
        f"biregular: {_fmt(rep.biregular)}",
        f"diameter: {_fmt(rep.diameter)}",
        f"distinct_eigenvalues: {_fmt(None if rep.d is None else rep.d + 1)}",
        "spectrum: " + " ".join(f"{canonical(t):.6g}^{m}" for t, m in zip(rep.thetas or [], rep.mults or [])),
        f"spectral_excess: {_fmt(rep.spectral_excess)}",
        f"average_excess: {_fmt(rep.average_excess)}",
        f"walk-regular: {_fmt(rep.walk_regular)}",
        f"distance-regular: {_fmt(rep.distance_regular)}",
    ]
    if rep.intersection_array:
        lines.append(f"intersection_array: {rep.intersection_array}")
    if rep.oracle_witness:
        lines.append(f"oracle_witness: {rep.oracle_witness}")
    lines.append("checks:")
    width = max(len(c) for c in CHECK_IDS)
    for cid in CHECK_IDS:
        r = rep.checks[cid]
        extra = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(r.values.items()) if not isinstance(v, list))
        tail = r.note if r.verdict == NA else extra
        lines.append(f"  {cid:<{width}}  {r.verdict:<4}  {tail}".rstrip())
    for msg in rep.discrepancies:
        lines.append(f"discrepancy: {msg}")
    return "\n".join(lines) + "\n"


# -- input --------------------------------------------------------------------

def read_source(source: str) -> str:
    """Contents of a file, of stdin for ``-``, or the argument itself."""
    if source == "-":
        return sys.stdin.read()
    if os.path.isfile(source):
        with open(source, encoding="ascii", errors="replace") as fh:
            return fh.read()
    return source


def load_graph(source: str, fmt: str) -> Graph:
    text = read_source(source)
    if fmt == "edgelist":
        return parse_edge_list(text)
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise GraphFormatError(f"expected exactly one graph6 line, got {len(lines)} (use 'batch')")
    return parse_graph6(lines[0])


def _tolerances(args) -> Tolerances:
    tols = default_tolerances()
    if getattr(args, "tol", None) is not None:
        tols = tols.with_verdict_tol(args.tol)
    return tols


def _error(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _analyze_input(args):
    """``(graph, report)`` or an exit code after printing the error."""
    try:
        g = load_graph(args.input, args.format)
    except (GraphFormatError, OSError) as exc:
        return _error(str(exc), EXIT_INPUT)
    if not g.is_connected:
        return _error(str(Disconnected("input graph is not connected")), EXIT_DISCONNECTED)
    try:
        return g, classify(g, _tolerances(args))
    except BipspecError as exc:
        return _error(f"{type(exc).__name__}: {exc}", EXIT_NUMERIC)


# -- commands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    res = _analyze_input(args)
    if isinstance(res, int):
        return res
    g, rep = res
    if args.json:
        print(dumps(report_document(g, args.format, rep, _tolerances(args)), indent=2))
    else:
        sys.stdout.write(text_report(g, rep))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.check_id not in CHECK_IDS:
        return _error(f"unknown check id {args.check_id!r}; known: {', '.join(CHECK_IDS)}",
                      EXIT_UNKNOWN_CHECK)
    res = _analyze_input(args)
    if isinstance(res, int):
        return res
    _, rep = res
    r = rep.checks[args.check_id]
    if args.json:
        print(dumps({"schema": SCHEMA, "check": r.to_dict()}))
    else:
        print(f"{r.id}: {r.verdict}")
        if r.verdict == NA:
            print(r.note)
        else:
            if r.values:
                print(" ".join(f"{k}={_fmt(v)}" for k, v in r.values.items()))
            if r.witness:
                print("witness: " + " ".join(f"{k}={_fmt(v)}" for k, v in sorted(r.witness.items())))
    return _CHECK_EXIT[r.verdict]


def _batch_line(job):
    lineno, text, tols = job
    try:
        g = parse_graph6(text)
    except GraphFormatError as exc:
        return {"line": lineno, "input": text, "error": type(exc).__name__, "message": str(exc)}
    record = {"line": lineno, "graph6": to_graph6(g), "n": g.n, "connected": g.is_connected}
    if not g.is_connected:
        record.update(error="Disconnected", message="input graph is not connected")
        return record
    try:
        rep = classify(g, tols)
    except BipspecError as exc:
        record.update(error=type(exc).__name__, message=str(exc))
        return record
    record.update(
        bipartite=rep.bipartite, regular=rep.regular, biregular=rep.biregular,
        diameter=rep.diameter, d=rep.d, distance_regular=rep.distance_regular,
        intersection_array=rep.intersection_array,
        checks={cid: r.verdict for cid, r in rep.checks.items()},
        discrepancies=rep.discrepancies,
    )
    return record


def cmd_batch(args) -> int:
    try:
        text = read_source(args.input)
    except OSError as exc:
        return _error(str(exc), EXIT_INPUT)
    tols = _tolerances(args)
    jobs = [(i, ln.strip(), tols) for i, ln in enumerate(text.splitlines(), 1)
            if ln.strip() and not ln.startswith(">>graph6<<")]
    if args.workers > 1 and len(jobs) > 1:
        with Pool(args.workers) as pool:
            records = pool.map(_batch_line, jobs, chunksize=16)
    else:
        records = [_batch_line(j) for j in jobs]
    for rec in records:
        rec["schema"] = BATCH_SCHEMA
        print(dumps(rec))
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.list or not args.name:
        print("\n".join(CATALOG_NAMES))
        return EXIT_OK
    try:
        g = catalog(args.name, args.params)
    except BipspecError as exc:
        return _error(str(exc), EXIT_INPUT)
    if args.format == "edgelist":
        print(f"n {g.n}")
        for u, v in g.edges():
            print(f"{u} {v}")
    else:
        print(to_graph6(g))
    return EXIT_OK


def cmd_sweep(args) -> int:
    a, b = args.max_part
    try:
        corpus = enumerate_bipartite_upto(a, b, allow_large=args.allow_large)
    except TooLarge as exc:
        return _error(f"TooLarge: {exc}", EXIT_INPUT)
    except BipspecError as exc:
        return _error(str(exc), EXIT_INPUT)
    config = ValidationConfig(tols=_tolerances(args), invariants=not args.no_invariants,
                              walk_bruteforce=args.walks, workers=args.workers)
    rep = cross_validate(corpus, config)
    for line in rep.lines():
        print(line)
    summary = rep.summary()
    summary["schema"] = SWEEP_SCHEMA
    summary["max_part"] = [a, b]
    print(dumps(summary))
    return EXIT_OK if rep.ok else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bipspec", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp, formats=True):
        sp.add_argument("input", help="file path, '-' for stdin, or an inline graph6 string")
        if formats:
            sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
        sp.add_argument("--tol", type=_positive_float, default=None,
                        help="verdict tolerance (default: BS_TOL or 1e-6)")

    sp = sub.add_parser("analyze", help="full classification report for one graph")
    add_input(sp)
    out = sp.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="structured output")
    out.add_argument("--text", dest="json", action="store_false", help="plain text (default)")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("check", help="run one named check")
    sp.add_argument("check_id", metavar="check-id")
    add_input(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("batch", help="one JSON record per graph6 line")
    add_input(sp, formats=False)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_batch)

    sp = sub.add_parser("catalog", help="print a named graph")
    sp.add_argument("name", nargs="?")
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    sp.add_argument("--list", action="store_true", help="list catalog names")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("sweep", help="exhaustive oracle comparison over small bipartite graphs")
    sp.add_argument("--max-part", nargs=2, type=int, metavar=("A", "B"), required=True)
    sp.add_argument("--allow-large", action="store_true", help="raise the enumeration cap")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--walks", action="store_true", help="also brute-force walk counts (slow)")
    sp.add_argument("--no-invariants", action="store_true", help="verdicts only")
    sp.add_argument("--tol", type=_positive_float, default=None)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:       # e.g. a malformed BS_TOL
        return _error(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
