"""Exhaustive parameter sweeps: closed-form classifiers vs brute force.

Every row pits the arithmetic classifier against the automorphism engine; the
report records both verdicts and whether they agree. A clean census over the
full grid range is the desk-scale verification of the classification theorems.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

from .abelian import direct_product_group
from .aut import SearchLimitExceeded, automorphism_group
from .cayley import (
    GridParams,
    build_grid,
    cayley_graph,
    connection_set,
    grid_translations,
    translation_automorphisms,
)
from .graphs import InvalidParameter
from .stability import (
    Verdict,
    classify_qd,
    classify_tr,
    classify_val6,
    stability_verdict,
)

ENGINE_ERROR = "EngineError"


@dataclass(frozen=True)
class SweepRow:
    kind: str
    m: int
    n: int
    r: int | None
    vertices: int
    aut_order: int | None
    baut_order: int | None
    oracle: str
    predicted: str
    clause: str | None
    agrees: bool

    def to_dict(self):
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "r": self.r,
            "vertices": self.vertices,
            "aut_order": None if self.aut_order is None else str(self.aut_order),
            "baut_order": None if self.baut_order is None else str(self.baut_order),
            "oracle": self.oracle,
            "predicted": self.predicted,
            "clause": self.clause,
            "agrees": self.agrees,
        }

    @staticmethod
    def from_dict(d) -> "SweepRow":
        return SweepRow(
            kind=d["kind"],
            m=d["m"],
            n=d["n"],
            r=d["r"],
            vertices=d["vertices"],
            aut_order=None if d["aut_order"] is None else int(d["aut_order"]),
            baut_order=None if d["baut_order"] is None else int(d["baut_order"]),
            oracle=d["oracle"],
            predicted=d["predicted"],
            clause=d["clause"],
            agrees=d["agrees"],
        )


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    total: int
    disagreements: int
    runtime_ms: int = field(compare=False, default=0)

    def to_dict(self):
        return {
            "rows": [row.to_dict() for row in self.rows],
            "summary": {
                "total": self.total,
                "disagreements": self.disagreements,
                "runtime_ms": self.runtime_ms,
            },
        }


def _finish(rows, t0) -> SweepReport:
    disagreements = sum(1 for row in rows if not row.agrees)
    return SweepReport(
        tuple(rows), len(rows), disagreements, int((time.monotonic() - t0) * 1000)
    )


def _row(kind, m, n, r, vertices, verdict, predicted, node_budget, x, seeds):
    try:
        sv = stability_verdict(x, node_budget, seeds)
        oracle = sv.verdict.value
        aut_order, baut_order = sv.aut_order, sv.baut_order
        agrees = sv.verdict is predicted.predicted
    except SearchLimitExceeded:
        oracle = ENGINE_ERROR
        aut_order = baut_order = None
        agrees = False
    return SweepRow(
        kind, m, n, r, vertices, aut_order, baut_order,
        oracle, predicted.predicted.value, predicted.matched_clause, agrees,
    )


def sweep_grids(kind: str, max_m: int, max_n: int, vertex_cap: int,
                node_budget=None, sink=None) -> SweepReport:
    """Census every grid with 2 <= m <= max_m, 2 <= n <= max_n, m*n <= cap.

    Rows come in ascending (m, n, r) order. Engine failures mark the row
    EngineError (never agreeing) and the sweep continues. sink, when given,
    receives each row as soon as it is computed.
    """
    if kind not in ("qd", "tr"):
        raise InvalidParameter(f"unknown grid kind {kind!r}")
    if max_m < 2 or max_n < 2:
        raise InvalidParameter("sweep bounds must be >= 2")
    classifier = classify_qd if kind == "qd" else classify_tr
    t0 = time.monotonic()
    rows = []
    for m in range(2, max_m + 1):
        for n in range(2, max_n + 1):
            if m * n > vertex_cap:
                continue
            for r in range(n):
                p = GridParams(kind, m, n, r)
                row = _row(
                    kind, m, n, r, m * n, None, classifier(p),
                    node_budget, build_grid(p), grid_translations(p),
                )
                rows.append(row)
                if sink is not None:
                    sink(row)
    return _finish(rows, t0)


def sweep_val6_znxzk(node_budget=None, sink=None) -> SweepReport:
    """The Z_n x Z_k family: n in [2,12], k in {2,3}, S = {+-a, +-b, +-(a+b)}."""
    t0 = time.monotonic()
    rows = []
    for k in (2, 3):
        for n in range(2, 13):
            group = direct_product_group([n, k])
            a = group.named_generators["a"]
            b = group.named_generators["b"]
            s = connection_set(group, [a, b, group.add(a, b)])
            row = _row(
                "znxzk", n, k, None, group.order, None, classify_val6(group, a, b),
                node_budget, cayley_graph(s), translation_automorphisms(s),
            )
            rows.append(row)
            if sink is not None:
                sink(row)
    return _finish(rows, t0)


def unstable_pairs(report: SweepReport) -> set[tuple[int, int]]:
    """(n, k) pairs of the Z_n x Z_k sweep whose oracle verdict is unstable."""
    return {
        (row.m, row.n)
        for row in report.rows
        if row.kind == "znxzk" and row.oracle in (
            Verdict.TRIVIALLY_UNSTABLE.value, Verdict.NONTRIVIALLY_UNSTABLE.value,
        )
    }


# -- report serialization ----------------------------------------------------

CSV_COLUMNS = (
    "kind", "m", "n", "r", "vertices",
    "aut_order", "baut_order", "oracle", "predicted", "clause", "agrees",
)


def csv_header() -> str:
    out = io.StringIO()
    csv.writer(out, lineterminator="\r\n").writerow(CSV_COLUMNS)
    return out.getvalue()


def csv_line(row: SweepRow) -> str:
    d = row.to_dict()
    d["agrees"] = "true" if row.agrees else "false"
    out = io.StringIO()
    csv.writer(out, lineterminator="\r\n").writerow(
        ["" if d[c] is None else d[c] for c in CSV_COLUMNS]
    )
    return out.getvalue()


def emit_report(report: SweepReport, format: str = "csv") -> bytes:
    if format == "csv":
        return (csv_header() + "".join(csv_line(r) for r in report.rows)).encode()
    if format == "json":
        return json.dumps(report.to_dict(), indent=2).encode()
    raise InvalidParameter(f"unknown report format {format!r}")


def parse_report(data: bytes) -> SweepReport:
    """Inverse of emit_report for the json format."""
    d = json.loads(data)
    rows = tuple(SweepRow.from_dict(r) for r in d["rows"])
    s = d["summary"]
    return SweepReport(rows, s["total"], s["disagreements"], s["runtime_ms"])


def render_report_figure(report: SweepReport, path) -> None:
    """Write a PNG summarizing the sweep next to the delimited output.

    One point per row: |Aut BX| / (2 |Aut X|) on a log scale, colored by the
    oracle verdict; stable rows sit on the ratio-1 line.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    colors = {
        Verdict.STABLE.value: "tab:blue",
        Verdict.TRIVIALLY_UNSTABLE.value: "tab:orange",
        Verdict.NONTRIVIALLY_UNSTABLE.value: "tab:red",
        ENGINE_ERROR: "tab:gray",
    }
    fig, ax = plt.subplots(figsize=(8, 4))
    for verdict, color in colors.items():
        xs = [i for i, row in enumerate(report.rows) if row.oracle == verdict]
        ys = [
            report.rows[i].baut_order / (2 * report.rows[i].aut_order)
            if report.rows[i].aut_order else 1.0
            for i in xs
        ]
        if xs:
            ax.scatter(xs, ys, s=12, color=color, label=verdict)
    ax.set_yscale("log")
    ax.axhline(1.0, color="black", linewidth=0.5)
    ax.set_xlabel("row index")
    ax.set_ylabel("|Aut BX| / 2|Aut X|")
    kinds = sorted({row.kind for row in report.rows})
    ax.set_title(
        f"sweep {'+'.join(kinds) or 'empty'}: "
        f"{report.total} rows, {report.disagreements} disagreements"
    )
    if report.rows:
        ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
