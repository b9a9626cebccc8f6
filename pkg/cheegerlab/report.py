import csv
import io
import json
import os
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from cheegerlab.analysis import GraphRecord
from cheegerlab.schema import RunReportSchema
from cheegerlab.verdict import Status

CSV_COLUMNS = [
    "graph_id",
    "name",
    "status",
    "lhs",
    "rhs",
    "slack",
    "tol",
    "anchor",
]

# settings that change how a run executes but never what it reports
EXECUTION_SETTINGS = ("workers",)


@dataclass(frozen=True)
class Summary:
    checks_total: int
    holds: int
    skipped: int
    failed: int


@dataclass(frozen=True)
class RunReport:
    graphs: Tuple[GraphRecord, ...]
    config: Dict
    summary: Summary

    @property
    def exit_code(self) -> int:
        return 1 if self.summary.failed else 0


def summarize(records: Sequence[GraphRecord]) -> Summary:
    statuses = [v.status for r in records for v in r.verdicts]
    return Summary(
        checks_total=len(statuses),
        holds=statuses.count(Status.HOLDS),
        skipped=statuses.count(Status.SKIPPED)
        + statuses.count(Status.NOT_APPLICABLE),
        failed=statuses.count(Status.FAILED),
    )


def build_report(records: Sequence[GraphRecord], config: Dict) -> RunReport:
    """Records are sorted by graph_id and execution settings are left out,
    so the report does not depend on how many workers produced it."""
    records = tuple(sorted(records, key=lambda r: r.graph_id))
    settings = {
        name: value
        for name, value in config.items()
        if name not in EXECUTION_SETTINGS
    }
    return RunReport(records, settings, summarize(records))


def to_json(report: RunReport) -> str:
    return json.dumps(RunReportSchema().dump(report), indent=2) + "\n"


def _number(value):
    return "" if value is None else repr(round(value, 12) + 0.0)


def to_csv(report: RunReport) -> str:
    """One row per verdict."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in report.graphs:
        for v in record.verdicts:
            writer.writerow(
                [
                    record.graph_id,
                    v.name,
                    v.status.value,
                    _number(v.lhs),
                    _number(v.rhs),
                    _number(v.slack),
                    repr(v.tol),
                    v.anchor,
                ]
            )
    return buffer.getvalue()


def output_paths(out_path: str) -> Tuple[str, str]:
    """`out.json` and `out.csv` side by side for --out out[.json]."""
    root, ext = os.path.splitext(out_path)
    if ext.lower() in (".json", ".csv"):
        return root + ".json", root + ".csv"
    return out_path + ".json", out_path + ".csv"


def write_report(report: RunReport, out_path: str) -> List[str]:
    json_path, csv_path = output_paths(out_path)
    with open(json_path, "w", encoding="utf-8") as f:
        f.write(to_json(report))
    with open(csv_path, "w", encoding="utf-8", newline="") as f:
        f.write(to_csv(report))
    return [json_path, csv_path]


def format_record(record: GraphRecord) -> str:
    """Human-readable table of one graph's verdicts."""
    lines = [
        f"{record.graph_id}: n={record.n} m={record.m} "
        f"d={record.regular_degree} connected={record.connected} "
        f"bipartite={record.bipartite} "
        f"vertex_transitive={record.vertex_transitive}",
        f"  h = {record.h.numerator}/{record.h.denominator} "
        f"= {record.h_value:.12f}",
    ]
    if record.h_out is not None:
        lines.append(
            f"  h_out = {record.h_out.numerator}/{record.h_out.denominator}"
            f" = {float(record.h_out):.12f}"
        )
    width = max((len(v.name) for v in record.verdicts), default=4)
    lines.append(
        f"  {'check':<{width}}  {'status':<14}  {'lhs':>15}  {'rhs':>15}  "
        f"{'slack':>15}"
    )
    for v in record.verdicts:
        if v.slack is None:
            lines.append(
                f"  {v.name:<{width}}  {v.status.value:<14}  {v.reason}"
            )
            continue
        lines.append(
            f"  {v.name:<{width}}  {v.status.value:<14}  {v.lhs:>15.9g}  "
            f"{v.rhs:>15.9g}  {v.slack:>15.6e}"
        )
    return "\n".join(lines)


def format_summary(summary: Summary) -> str:
    return (
        f"checks: {summary.checks_total}  holds: {summary.holds}  "
        f"skipped: {summary.skipped}  failed: {summary.failed}"
    )
