"""Command-line front end.

Verdict JSON goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 census disagreement, 2 invalid arguments, 3 engine limit exceeded. The
GRIDSTAB_NODE_BUDGET environment variable (or --node-budget) bounds the
automorphism search.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .aut import SearchLimitExceeded
from .cayley import GridParams, build_grid, grid_to_cayley, grid_translations
from .census import (
    csv_header,
    csv_line,
    emit_report,
    render_report_figure,
    sweep_grids,
    sweep_val6_znxzk,
)
from .graphs import InvalidParameter, double_cover, graph6_decode, graph6_encode
from .stability import (
    ClauseNotSatisfied,
    classify_qd,
    classify_tr,
    classify_val4,
    iso_shift_witness,
    stability_verdict,
    val4_witness,
)

EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INVALID = 2
EXIT_ENGINE_LIMIT = 3


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gridstab")
    sub = top.add_subparsers(dest="command", required=True)

    def grid_args(p):
        p.add_argument("kind", choices=["qd", "tr"])
        p.add_argument("m", type=int)
        p.add_argument("n", type=int)
        p.add_argument("r", type=int)

    p = sub.add_parser("classify", help="closed-form verdict, no engine")
    grid_args(p)

    p = sub.add_parser("check", help="brute-force verdict via the engine")
    p.add_argument("kind", nargs="?", choices=["qd", "tr"])
    p.add_argument("m", nargs="?", type=int)
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("r", nargs="?", type=int)
    p.add_argument("--graph6", metavar="FILE", help="check a graph6 file instead")
    p.add_argument("--node-budget", type=int)

    p = sub.add_parser("witness", help="explicit instability witness")
    grid_args(p)
    p.add_argument("--node-budget", type=int)

    p = sub.add_parser("sweep", help="census over a parameter range")
    p.add_argument("kind", choices=["qd", "tr", "znxzk"])
    p.add_argument("--max-m", type=int, default=6)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--cap", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--node-budget", type=int)

    p = sub.add_parser("export", help="write graph6")
    grid_args(p)
    p.add_argument("--cover", action="store_true", help="export the double cover")
    p.add_argument("--out", required=True)
    return top


def _grid_params(args) -> GridParams:
    return GridParams(args.kind, args.m, args.n, args.r)


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_classify(args) -> int:
    p = _grid_params(args)
    verdict = classify_qd(p) if p.kind == "qd" else classify_tr(p)
    _emit({"kind": p.kind, "m": p.m, "n": p.n, "r": p.r, **verdict.to_dict()})
    return EXIT_OK


def _cmd_check(args) -> int:
    if args.graph6:
        x = graph6_decode(Path(args.graph6).read_bytes())
        sv = stability_verdict(x, args.node_budget)
        _emit({"graph6": args.graph6, "vertices": x.vertex_count, **sv.to_dict()})
        return EXIT_OK
    if None in (args.kind, args.m, args.n, args.r):
        raise InvalidParameter("check needs kind m n r, or --graph6 FILE")
    p = _grid_params(args)
    sv = stability_verdict(build_grid(p), args.node_budget, grid_translations(p))
    _emit({"kind": p.kind, "m": p.m, "n": p.n, "r": p.r, **sv.to_dict()})
    return EXIT_OK


def _witness_payload(w):
    return {
        "shift": list(w.shift),
        "group_automorphism": None if w.group_automorphism is None else {
            name: list(img) for name, img in w.group_automorphism.items()
        },
        "vertex_map": list(w.vertex_map),
        "verified": w.verified,
    }


def _cmd_witness(args) -> int:
    p = _grid_params(args)
    s = grid_to_cayley(p)
    group = s.group
    a, b = group.named_generators["a"], group.named_generators["b"]
    w = None
    if p.kind == "qd":
        clause = classify_val4(group, a, b).matched_clause
        try:
            if clause == "Thm3.1(1)":
                w = val4_witness(group, a, b, "one")
            elif clause == "Thm3.1(2)":
                w = val4_witness(group, a, b, "two")
        except ClauseNotSatisfied:
            w = None
    if w is None:
        w = iso_shift_witness(s, args.node_budget)
    if w is None:
        print("no implemented witness construction applies", file=sys.stderr)
        _emit({"kind": p.kind, "m": p.m, "n": p.n, "r": p.r, "witness": None})
        return EXIT_OK
    _emit({"kind": p.kind, "m": p.m, "n": p.n, "r": p.r,
           "witness": _witness_payload(w)})
    return EXIT_OK


def _cmd_sweep(args) -> int:
    out = Path(args.out)
    if args.kind == "znxzk":
        report = sweep_val6_znxzk(args.node_budget)
        out.write_bytes(emit_report(report, args.format))
    elif args.format == "csv":
        # stream rows so an interrupted sweep leaves a usable prefix
        with out.open("w", newline="") as handle:
            handle.write(csv_header())
            handle.flush()

            def sink(row):
                handle.write(csv_line(row))
                handle.flush()

            cap = args.cap if args.cap is not None else args.max_m * args.max_n
            report = sweep_grids(args.kind, args.max_m, args.max_n, cap,
                                 args.node_budget, sink=sink)
    else:
        cap = args.cap if args.cap is not None else args.max_m * args.max_n
        report = sweep_grids(args.kind, args.max_m, args.max_n, cap,
                             args.node_budget)
        out.write_bytes(emit_report(report, args.format))
    render_report_figure(report, out.with_suffix(".png"))
    print(
        f"{report.total} rows, {report.disagreements} disagreements, "
        f"{report.runtime_ms} ms; wrote {out} and {out.with_suffix('.png')}",
        file=sys.stderr,
    )
    return EXIT_OK if report.disagreements == 0 else EXIT_DISAGREEMENT


def _cmd_export(args) -> int:
    p = _grid_params(args)
    x = build_grid(p)
    if args.cover:
        x = double_cover(x)
    Path(args.out).write_bytes(graph6_encode(x) + b"\n")
    print(f"wrote {args.out} ({x.vertex_count} vertices)", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "classify": _cmd_classify,
    "check": _cmd_check,
    "witness": _cmd_witness,
    "sweep": _cmd_sweep,
    "export": _cmd_export,
}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return e.code if e.code is not None else EXIT_INVALID
    try:
        return _COMMANDS[args.command](args)
    except SearchLimitExceeded as e:
        print(f"engine limit exceeded: {e}", file=sys.stderr)
        return EXIT_ENGINE_LIMIT
    except (InvalidParameter, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
