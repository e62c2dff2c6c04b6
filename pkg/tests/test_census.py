import json

import pytest

from gridstab import (
    InvalidParameter,
    SweepReport,
    SweepRow,
    emit_report,
    parse_report,
    render_report_figure,
    sweep_grids,
    sweep_val6_znxzk,
    unstable_pairs,
)
from gridstab.census import ENGINE_ERROR, csv_header, csv_line


def tiny_sweep(**kwargs):
    return sweep_grids("qd", 3, 4, 12, **kwargs)


class TestSweep:
    def test_row_ordering_and_coverage(self):
        report = tiny_sweep()
        keys = [(row.m, row.n, row.r) for row in report.rows]
        assert keys == sorted(keys)
        expected = [
            (m, n, r)
            for m in (2, 3)
            for n in (2, 3, 4)
            if m * n <= 12
            for r in range(n)
        ]
        assert keys == expected
        assert report.total == len(expected)

    def test_tiny_sweep_agrees(self):
        report = tiny_sweep()
        assert report.disagreements == 0
        assert all(row.agrees for row in report.rows)

    def test_sink_streams_every_row(self):
        seen = []
        report = tiny_sweep(sink=seen.append)
        assert seen == list(report.rows)

    def test_vertex_cap(self):
        report = sweep_grids("tr", 4, 4, 9, None)
        assert all(row.vertices <= 9 for row in report.rows)

    def test_engine_error_isolated(self):
        report = sweep_grids("qd", 2, 3, 6, node_budget=1)
        assert report.total > 0
        assert all(row.oracle == ENGINE_ERROR for row in report.rows)
        assert not any(row.agrees for row in report.rows)
        assert report.disagreements == report.total

    def test_invalid_kind(self):
        with pytest.raises(InvalidParameter):
            sweep_grids("hex", 3, 3, 9, None)
        with pytest.raises(InvalidParameter):
            sweep_grids("qd", 1, 3, 9, None)


class TestZnxzkSweep:
    def test_figure_one(self):
        report = sweep_val6_znxzk()
        assert report.disagreements == 0
        assert unstable_pairs(report) == {(4, 2), (3, 3)}

    def test_shape(self):
        report = sweep_val6_znxzk()
        assert report.total == 22
        assert {row.n for row in report.rows} == {2, 3}
        assert all(row.r is None for row in report.rows)


class TestSerialization:
    def test_csv_deterministic(self):
        a = emit_report(tiny_sweep(), "csv")
        b = emit_report(tiny_sweep(), "csv")
        assert a == b

    def test_csv_layout(self):
        report = tiny_sweep()
        text = emit_report(report, "csv").decode()
        lines = text.split("\r\n")
        assert lines[0] == (
            "kind,m,n,r,vertices,aut_order,baut_order,oracle,predicted,clause,agrees"
        )
        assert len(lines) == report.total + 2  # header + rows + trailing ""
        first = lines[1].split(",")
        assert first[0] == "qd" and first[-1] in ("true", "false")

    def test_csv_line_matches_emit(self):
        report = tiny_sweep()
        whole = emit_report(report, "csv").decode()
        rebuilt = csv_header() + "".join(csv_line(r) for r in report.rows)
        assert whole == rebuilt

    def test_json_round_trip(self):
        report = tiny_sweep()
        back = parse_report(emit_report(report, "json"))
        assert back == report  # runtime_ms excluded from equality
        assert back.rows == report.rows

    def test_json_big_ints_are_strings(self):
        payload = json.loads(emit_report(tiny_sweep(), "json"))
        row = payload["rows"][0]
        assert isinstance(row["aut_order"], str)
        assert payload["summary"]["total"] == len(payload["rows"])

    def test_engine_error_serializes_empty(self):
        report = sweep_grids("qd", 2, 2, 4, node_budget=1)
        line = csv_line(report.rows[0])
        assert ",,," in line  # aut/baut columns are empty
        back = parse_report(emit_report(report, "json"))
        assert back.rows[0].aut_order is None

    def test_unknown_format(self):
        with pytest.raises(InvalidParameter):
            emit_report(tiny_sweep(), "xml")


class TestFigure:
    def test_png_written(self, tmp_path):
        out = tmp_path / "sweep.png"
        render_report_figure(tiny_sweep(), out)
        data = out.read_bytes()
        assert data[:8] == b"\x89PNG\r\n\x1a\n"

    def test_handles_engine_error_rows(self, tmp_path):
        out = tmp_path / "err.png"
        render_report_figure(sweep_grids("qd", 2, 2, 4, node_budget=1), out)
        assert out.exists()

    def test_empty_report(self, tmp_path):
        out = tmp_path / "empty.png"
        render_report_figure(SweepReport((), 0, 0, 0), out)
        assert out.exists()
