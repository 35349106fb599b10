"""Batch reports over exported datasets: completion time per interaction
category, per-schema success rates by age group, and the distribution of
algorithmic vs interaction strategies.

All reports are pure functions of the dataset: same bytes in, same report
out. Percentages and minutes round half-up to integers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional

from .telemetry import Dataset, age_in_years

INTERACTION_ORDER = ("GF", "G", "PF", "P")
DIMENSION_ORDER = ("D0", "D1", "D2")


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def pct_half_up(numerator: int, denominator: int) -> int:
    """Integer percentage, exact half-up arithmetic (no float drift)."""
    return (200 * numerator + denominator) // (2 * denominator)


@dataclass(frozen=True)
class AgeGroup:
    label: str
    min_age: int
    max_age: int
    vpi_allowed: bool = True

    def contains(self, age: int) -> bool:
        return self.min_age <= age <= self.max_age


DEFAULT_AGE_GROUPS = (
    AgeGroup("3-6", 3, 6, vpi_allowed=False),
    AgeGroup("10-13", 10, 13),
)

_BAND_RE = re.compile(r"^(\d+)-(\d+)(!?)$")


def parse_age_bands(spec: str) -> tuple[AgeGroup, ...]:
    """Parse a band spec like "3-6!,10-13"; a trailing ! marks a band whose
    students may not use the programming interface."""
    groups = []
    for part in spec.split(","):
        m = _BAND_RE.match(part.strip())
        if not m:
            raise ValueError(f"bad age band {part!r}; expected like 3-6 or 3-6!")
        lo, hi, bang = int(m.group(1)), int(m.group(2)), m.group(3)
        if lo > hi:
            raise ValueError(f"bad age band {part!r}: empty range")
        groups.append(AgeGroup(f"{lo}-{hi}", lo, hi, vpi_allowed=not bang))
    for a, b in zip(groups, groups[1:]):
        if a.max_age >= b.min_age:
            raise ValueError(f"age bands {a.label} and {b.label} overlap")
    return tuple(groups)


def student_ages(dataset: Dataset) -> dict[str, Optional[int]]:
    session_date = dataset.session.get("date")
    ages: dict[str, Optional[int]] = {}
    for student in dataset.students:
        if student.get("age") is not None:
            ages[student["student_id"]] = int(student["age"])
        elif student.get("birth_date") and session_date:
            ages[student["student_id"]] = age_in_years(
                student["birth_date"], session_date
            )
        else:
            ages[student["student_id"]] = None
    return ages


def _group_of(age: Optional[int], groups: tuple[AgeGroup, ...]) -> Optional[str]:
    if age is None:
        return None
    for g in groups:
        if g.contains(age):
            return g.label
    return None


# --- Completion time ---------------------------------------------------------


@dataclass
class TimeRow:
    category: str
    students: int
    avg_minutes: int
    min_minutes: int
    max_minutes: int


@dataclass
class TimeReport:
    rows: list[TimeRow] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    def to_table(self) -> tuple[list[str], list[list[str]]]:
        headers = ["Interface", "Avg time", "Min time", "Max time"]
        body = [
            [r.category, f"{r.avg_minutes} min", f"{r.min_minutes} min", f"{r.max_minutes} min"]
            for r in self.rows
        ]
        return headers, body

    def to_json_dict(self) -> dict:
        return {
            "report": "time_by_interaction",
            "rows": [vars(r) for r in self.rows],
            "notices": self.notices,
        }


def time_by_interaction(dataset: Dataset) -> TimeReport:
    """Per-student total completion time grouped by the interaction
    category the student mostly worked in."""
    per_student_minutes: dict[str, float] = {}
    per_student_counts: dict[str, dict[str, int]] = {}
    for task in dataset.tasks:
        sid = task["student_id"]
        if task.get("duration_s") is not None:
            per_student_minutes[sid] = (
                per_student_minutes.get(sid, 0.0) + task["duration_s"] / 60.0
            )
        label = task.get("interaction")
        if label:
            per_student_counts.setdefault(sid, {})
            per_student_counts[sid][label] = per_student_counts[sid].get(label, 0) + 1

    buckets: dict[str, list[float]] = {}
    everyone: list[float] = []
    for sid, minutes in per_student_minutes.items():
        counts = per_student_counts.get(sid)
        if not counts:
            continue
        category = max(counts, key=counts.get)  # modal; ties keep first seen
        buckets.setdefault(category, []).append(minutes)
        everyone.append(minutes)

    report = TimeReport()
    for category in INTERACTION_ORDER:
        values = buckets.get(category)
        if not values:
            report.notices.append(f"no students in category {category}")
            continue
        report.rows.append(_time_row(category, values))
    if everyone:
        report.rows.append(_time_row("Total", everyone))
    return report


def _time_row(category: str, minutes: list[float]) -> TimeRow:
    return TimeRow(
        category=category,
        students=len(minutes),
        avg_minutes=round_half_up(sum(minutes) / len(minutes)),
        min_minutes=round_half_up(min(minutes)),
        max_minutes=round_half_up(max(minutes)),
    )


# --- Success by schema ---------------------------------------------------------


@dataclass
class SuccessCell:
    solved: int
    attempted: int

    def formatted(self) -> str:
        if self.attempted == 0:
            return "0/0 (—)"
        return f"{self.solved}/{self.attempted} ({pct_half_up(self.solved, self.attempted)}%)"


@dataclass
class SuccessReport:
    group_labels: list[str]
    rows: dict[str, dict[str, SuccessCell]]  # schema -> group label -> cell
    notices: list[str] = field(default_factory=list)

    def to_table(self) -> tuple[list[str], list[list[str]]]:
        headers = ["Schema", *self.group_labels, "Total"]
        body = []
        for schema_id in sorted(self.rows):
            cells = self.rows[schema_id]
            body.append(
                [schema_id]
                + [cells[g].formatted() for g in self.group_labels]
                + [cells["Total"].formatted()]
            )
        return headers, body

    def to_json_dict(self) -> dict:
        return {
            "report": "success_by_schema",
            "groups": self.group_labels,
            "rows": {
                schema: {g: vars(c) for g, c in cells.items()}
                for schema, cells in sorted(self.rows.items())
            },
            "notices": self.notices,
        }


def success_by_schema(
    dataset: Dataset, groups: tuple[AgeGroup, ...] = DEFAULT_AGE_GROUPS
) -> SuccessReport:
    """Solved/attempted counts per schema and age group; the percentage
    denominator only counts students who attempted the schema."""
    ages = student_ages(dataset)
    labels = [g.label for g in groups]
    unassigned_seen = False
    rows: dict[str, dict[str, SuccessCell]] = {}
    for task in dataset.tasks:
        if not task.get("attempted"):
            continue
        schema_id = task["schema_id"]
        group = _group_of(ages.get(task["student_id"]), groups)
        if group is None:
            group = "unassigned"
            unassigned_seen = True
        cells = rows.setdefault(
            schema_id,
            {label: SuccessCell(0, 0) for label in (*labels, "unassigned", "Total")},
        )
        for bucket in (group, "Total"):
            cells[bucket].attempted += 1
            if task.get("solved"):
                cells[bucket].solved += 1

    report = SuccessReport(group_labels=list(labels), rows=rows)
    if unassigned_seen:
        report.group_labels.append("unassigned")
        report.notices.append("some students fall outside every age band")
    else:
        for cells in rows.values():
            del cells["unassigned"]
    return report


# --- Strategy distribution ----------------------------------------------------


@dataclass
class StrategyReport:
    groups: list[str]
    # group -> dimension -> interaction label -> percentage
    matrix: dict[str, dict[str, dict[str, int]]]
    counts: dict[str, int]
    warnings: list[str] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    def to_table(self) -> tuple[list[str], list[list[str]]]:
        headers = ["Group", "Dimension", *INTERACTION_ORDER]
        body = []
        for group in self.groups:
            for dim in DIMENSION_ORDER:
                row = [group, dim]
                for label in INTERACTION_ORDER:
                    pct = self.matrix[group][dim][label]
                    row.append(f"{pct}%" if pct else "—")
                body.append(row)
        return headers, body

    def to_json_dict(self) -> dict:
        return {
            "report": "strategy_distribution",
            "groups": self.groups,
            "matrix": self.matrix,
            "counts": self.counts,
            "warnings": self.warnings,
            "notices": self.notices,
        }


def strategy_distribution(
    dataset: Dataset, groups: tuple[AgeGroup, ...] = DEFAULT_AGE_GROUPS
) -> StrategyReport:
    """Share of each (dimension, interaction) pair within each age group,
    over task records that carry both classifications."""
    ages = student_ages(dataset)
    by_group: dict[str, dict[tuple[str, str], int]] = {g.label: {} for g in groups}
    totals: dict[str, int] = {g.label: 0 for g in groups}
    for task in dataset.tasks:
        dim, label = task.get("dimension"), task.get("interaction")
        if not dim or not label:
            continue
        group = _group_of(ages.get(task["student_id"]), groups)
        if group is None:
            continue
        key = (dim, label)
        by_group[group][key] = by_group[group].get(key, 0) + 1
        totals[group] += 1

    report = StrategyReport(groups=[], matrix={}, counts={})
    for g in groups:
        total = totals[g.label]
        if total == 0:
            report.notices.append(f"group {g.label} has no classified records")
            continue
        report.groups.append(g.label)
        report.counts[g.label] = total
        report.matrix[g.label] = {
            dim: {
                label: pct_half_up(by_group[g.label].get((dim, label), 0), total)
                for label in INTERACTION_ORDER
            }
            for dim in DIMENSION_ORDER
        }
        if not g.vpi_allowed:
            p_records = sum(
                n for (dim, label), n in by_group[g.label].items() if label in ("P", "PF")
            )
            if p_records:
                report.warnings.append(
                    f"group {g.label} is flagged gesture-only but has "
                    f"{p_records} programming-interface record(s)"
                )
    return report


# --- Rendering ----------------------------------------------------------------


def render_text(headers: list[str], body: list[list[str]]) -> str:
    widths = [
        max(len(headers[i]), *(len(row[i]) for row in body)) if body else len(headers[i])
        for i in range(len(headers))
    ]
    def fmt(row):
        return "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
    rule = "  ".join("-" * w for w in widths)
    return "\n".join([fmt(headers), rule, *(fmt(r) for r in body)])


def render_csv(headers: list[str], body: list[list[str]]) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(body)
    return buf.getvalue()
