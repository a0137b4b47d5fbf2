"""Command-line front end.

Usage:
    recpairs verify SOURCE
    recpairs stats SOURCE
    recpairs product SOURCE [SOURCE2] [--power R] [-o OUT]
    recpairs search --objective {size,f,aharoni} -n N [budget flags]
    recpairs conjecture --n-max N
    recpairs bounds {eval,solve-fn,certify,narrow} ...

SOURCE is a JSON pair document, ``-`` for stdin, or a built-in name
(``hexad``, ``aharoni-counterexample``, ``canonical:<n>:<C>``).

Exit codes: 0 success, 1 property violated, 2 input error, 3 search budget
exhausted before a proof of optimality.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    DATASETS,
    DEFAULT_RECTANGLE,
    THRESHOLD,
    DomainError,
    Rectangle,
    certify_staircase,
    first_bound,
    first_bound_peak,
    narrow_rectangle,
    second_bound,
    solve_f_exponent,
)
from .constructions import UnverifiedInput, power, product
from .io import DocumentError, load, pair_to_document
from .search import OBJECTIVES, SearchBudget, search, verify_conjecture_range
from .setcore import (
    GroundSetMismatch,
    cancellative_witness,
    format_set,
    is_half_recovering,
    pair_size,
    recovering_witness,
    uniformity,
)
from .stats import aharoni_sum, check_cupcap, compute_statistics, full_union_matching

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def num(x: float) -> float:
    """Round to 10 significant digits for reporting."""
    return float(f"{x:.10g}")


def _witness_dict(w) -> dict | None:
    if w is None:
        return None
    return {
        "side": w.side.value,
        "A": format_set(w.a),
        "A'": format_set(w.a2),
        "B": format_set(w.b),
        "B'": format_set(w.b2),
        "description": w.describe(),
    }


def cmd_verify(args) -> tuple[dict, int]:
    pair = load(args.source)
    w = recovering_witness(pair.a, pair.b)
    cw = cancellative_witness(pair.a, pair.b)
    results = {
        "n": pair.n,
        "recovering": w is None,
        "witness": _witness_dict(w),
        "cancellative": cw is None,
        "cancellative_witness": _witness_dict(cw),
        "half_recovering": is_half_recovering(pair.a, pair.b),
        "uniformity": str(uniformity(pair.a, pair.b)) if len(pair.a) and len(pair.b) else None,
        "size_A": len(pair.a),
        "size_B": len(pair.b),
        "pair_size": pair_size(pair),
        "aharoni_sum": aharoni_sum(pair),
    }
    return results, EXIT_OK if w is None else EXIT_VIOLATED


def cmd_stats(args) -> tuple[dict, int]:
    pair = load(args.source).verify()
    s = compute_statistics(pair)
    ok, cupcap_witness = check_cupcap(pair)
    results = {
        "n": pair.n,
        "recovering": pair.verified,
        "histogram": {str(k): v for k, v in s.histogram.items()},
        "u_mode": str(s.u_mode),
        "mode_union_size": s.mode_union_size,
        "average_solutions": str(s.average_solutions),
        "t_density": num(s.t_density),
        "degenerate": s.degenerate,
        "c": None if s.c is None else str(s.c),
        "m_s": None if s.m_s is None else str(s.m_s),
        "m_a": None if s.m_a is None else str(s.m_a),
        "crowded_sets": [format_set(c) for c in s.crowded_sets],
        "full_union_count": len(full_union_matching(pair)),
        "full_union_matching": [[format_set(a), format_set(b)] for a, b in full_union_matching(pair)],
        "cupcap": ok,
        "cupcap_witness": None
        if cupcap_witness is None
        else [[format_set(x) for x in cupcap_witness.first], [format_set(x) for x in cupcap_witness.second]],
        "aharoni_sum": aharoni_sum(pair),
    }
    return results, EXIT_OK if pair.verified else EXIT_VIOLATED


def cmd_product(args) -> tuple[dict, int]:
    left = load(args.source).verify()
    if args.power is not None:
        if args.source2:
            raise DocumentError("give either a second pair or --power, not both")
        out = power(left, args.power)
    else:
        if not args.source2:
            raise DocumentError("product needs a second pair or --power")
        out = product(left, load(args.source2).verify())
    doc = pair_to_document(out)
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    return {"document": doc, "output": args.output, "pair_size": pair_size(out)}, EXIT_OK


def cmd_search(args) -> tuple[dict, int]:
    budget = SearchBudget(max_nodes=args.max_nodes, time_limit=args.time_limit, n=args.n)
    r = search(
        args.n,
        args.objective,
        budget,
        seed_incumbents=args.seed_incumbents,
        backend=args.backend,
        threads=args.threads,
    )
    results = dict(r.as_dict(), witness=pair_to_document(r.witness_pair))
    return results, EXIT_OK if r.exhausted else EXIT_BUDGET


def cmd_conjecture(args) -> tuple[dict, int]:
    rows = verify_conjecture_range(args.n_max, backend=args.backend)
    results = {
        "rows": [
            {"n": r.n, "max_size": r.max_size, "2^n": r.bound, "exhausted": r.exhausted, "passes": r.passes}
            for r in rows
        ],
        "all_pass": all(r.passes for r in rows),
    }
    return results, EXIT_OK if results["all_pass"] else EXIT_VIOLATED


def _load_points(args):
    if args.file:
        try:
            data = json.loads(Path(args.file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DocumentError(f"cannot read staircase file: {exc}") from exc
        try:
            pts = [(str(p["u"]), str(p["t"]), p["which"]) for p in data["points"]]
            rect = Rectangle(**{k: str(v) for k, v in data["rectangle"].items()}) if "rectangle" in data else None
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed staircase file: {exc}") from exc
        return pts, rect, data.get("threshold")
    if args.dataset not in DATASETS:
        raise DocumentError(f"unknown dataset {args.dataset!r}; have {sorted(DATASETS)}")
    return DATASETS[args.dataset], None, None


def cmd_bounds(args) -> tuple[dict, int]:
    if args.bounds_cmd == "eval":
        res = {"u": args.u, "t": args.t, "first": num(first_bound(args.u, args.t))}
        res["first_base"] = num(2 ** res["first"])
        res["peak_u"] = num(first_bound_peak(args.t))
        try:
            sb = second_bound(args.u, args.t)
            res.update(second=num(sb), second_doubled=num(2 * sb))
        except DomainError as exc:
            res.update(second=None, second_error=str(exc))
        return res, EXIT_OK
    if args.bounds_cmd == "solve-fn":
        s, base = solve_f_exponent()
        return {"s": num(s), "base": num(base)}, EXIT_OK
    if args.bounds_cmd == "narrow":
        rep = narrow_rectangle(args.threshold)
        res = {
            "threshold": args.threshold,
            "rectangle": rep.rectangle.as_dict(),
            "t_cap": num(rep.t_cap),
            "checks": {k: num(v) for k, v in rep.checks.items()},
            "ok": rep.ok,
        }
        return res, EXIT_OK if rep.ok else EXIT_VIOLATED
    pts, rect, file_threshold = _load_points(args)
    threshold = args.threshold if args.threshold is not None else (file_threshold or THRESHOLD)
    rect = rect or DEFAULT_RECTANGLE
    rep = certify_staircase(pts, rect, threshold, narrowing=narrow_rectangle(threshold, rect))
    res = rep.as_dict()
    for p in res["points"]:
        for k in ("first", "second", "value", "slack"):
            if p[k] is not None:
                p[k] = num(p[k])
    for k in ("certified_exponent", "derived_bound", "threshold_bound"):
        res[k] = num(res[k])
    res["narrowing"] = {k: num(v) if isinstance(v, float) else v for k, v in res["narrowing"].items()}
    return res, EXIT_OK if rep.verdict else EXIT_VIOLATED


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "structured"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="recpairs", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="classify a pair")
    p.add_argument("source")
    _common(p)

    p = sub.add_parser("stats", help="union/intersection statistics of a pair")
    p.add_argument("source")
    _common(p)

    p = sub.add_parser("product", help="disjoint-union product or power")
    p.add_argument("source")
    p.add_argument("source2", nargs="?")
    p.add_argument("--power", type=int)
    p.add_argument("-o", "--output")
    _common(p)

    threads_default = int(os.environ.get("RECPAIRS_THREADS", "1") or 1)
    p = sub.add_parser("search", help="extremal search on small ground sets")
    p.add_argument("--objective", choices=OBJECTIVES, default="size")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--seed-incumbents", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--threads", type=int, default=threads_default)
    p.add_argument("--backend", choices=("cython", "python"))
    _common(p)

    p = sub.add_parser("conjecture", help="max |A||B| = 2^n for n = 1..n_max")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--backend", choices=("cython", "python"))
    _common(p)

    p = sub.add_parser("bounds", help="entropy bound machinery")
    bsub = p.add_subparsers(dest="bounds_cmd", required=True)
    q = bsub.add_parser("eval")
    q.add_argument("-u", type=float, required=True)
    q.add_argument("-t", type=float, required=True)
    _common(q)
    q = bsub.add_parser("solve-fn")
    _common(q)
    q = bsub.add_parser("certify")
    q.add_argument("--dataset", default="paper-staircase-16")
    q.add_argument("--file")
    q.add_argument("--threshold", type=float)
    _common(q)
    q = bsub.add_parser("narrow")
    q.add_argument("--threshold", type=float, default=THRESHOLD)
    _common(q)
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "stats": cmd_stats,
    "product": cmd_product,
    "search": cmd_search,
    "conjecture": cmd_conjecture,
    "bounds": cmd_bounds,
}


def _inputs(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("format", "command")}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"not serialisable: {type(x).__name__}")


def _print_text(results: dict, out, prefix: str = "") -> None:
    for key, value in results.items():
        if isinstance(value, dict) and key != "document" and key != "witness":
            _print_text(value, out, prefix + key + ".")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                _print_text(item, out, f"{prefix}{key}[{i}].")
        else:
            out.write(f"{prefix}{key}: {json.dumps(value, default=_jsonable)}\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    name = args.command if args.command != "bounds" else f"bounds {args.bounds_cmd}"
    start = time.perf_counter()
    try:
        results, code = COMMANDS[args.command](args)
    except (DocumentError, GroundSetMismatch, UnverifiedInput, DomainError, ValueError) as exc:
        print(f"recpairs: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = time.perf_counter() - start
    if args.command == "product" and args.output is None and args.format == "text":
        sys.stdout.write(json.dumps(results["document"], indent=2) + "\n")
        return code
    report = {
        "command": name,
        "inputs": _inputs(args),
        "results": results,
        "timings": {"wall_seconds": num(elapsed)},
        "version": __version__,
    }
    if args.format == "structured":
        json.dump(report, sys.stdout, indent=2, default=_jsonable)
        sys.stdout.write("\n")
    else:
        _print_text(results, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
