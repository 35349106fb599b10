"""Timestamped session logging, task-record derivation, dataset export
and pseudonymisation.

A session log is append-only: session and student details plus a stream
of per-student events with millisecond timestamps. The exported dataset
is newline-delimited JSON (`.catlog.jsonl`), one object per line with a
``type`` discriminator: one session line, then student lines, then
derived per-task summary lines, then the raw event stream in order.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Union

from .board import CrossBoard
from .lang import parse_command, parse_program
from .interp import CatExecError, ExecState, execute_command
from .scorer import (
    DEFAULT_RUBRIC,
    Rubric,
    TaskOutcome,
    UnclassifiableProgramError,
    cat_score,
    classify_dimension,
    derive_interaction,
)

DATASET_SUFFIX = ".catlog.jsonl"

#: Events are re-stamped rather than rejected when a client clock lags by
#: at most this much behind the student's previous event.
CLOCK_SKEW_TOLERANCE_MS = 1000


class EventKind(str, Enum):
    ADD_COMMAND = "ADD_COMMAND"
    CONFIRM_COMMAND = "CONFIRM_COMMAND"
    REMOVE_COMMAND = "REMOVE_COMMAND"
    REORDER_COMMANDS = "REORDER_COMMANDS"
    MODIFY_PROPERTY = "MODIFY_PROPERTY"
    FEEDBACK_TOGGLE = "FEEDBACK_TOGGLE"
    INTERFACE_SWITCH = "INTERFACE_SWITCH"
    RETRY = "RETRY"
    SURRENDER = "SURRENDER"
    NAVIGATE = "NAVIGATE"
    TASK_COMPLETED = "TASK_COMPLETED"
    TASK_ABANDONED = "TASK_ABANDONED"

    def __str__(self) -> str:
        return self.value


# required / optional payload keys per kind
_PAYLOAD_SCHEMA: dict[EventKind, tuple[frozenset, frozenset]] = {
    EventKind.ADD_COMMAND: (frozenset({"command"}), frozenset({"index"})),
    EventKind.CONFIRM_COMMAND: (frozenset({"command"}), frozenset({"index", "error"})),
    EventKind.REMOVE_COMMAND: (frozenset({"index"}), frozenset({"command"})),
    EventKind.REORDER_COMMANDS: (frozenset({"from", "to"}), frozenset()),
    EventKind.MODIFY_PROPERTY: (
        frozenset({"property", "new"}),
        frozenset({"old", "index", "command"}),
    ),
    EventKind.FEEDBACK_TOGGLE: (frozenset({"enabled"}), frozenset()),
    EventKind.INTERFACE_SWITCH: (frozenset({"interface"}), frozenset()),
    EventKind.RETRY: (frozenset(), frozenset()),
    EventKind.SURRENDER: (frozenset(), frozenset({"board", "program"})),
    EventKind.NAVIGATE: (frozenset({"target"}), frozenset({"from"})),
    EventKind.TASK_COMPLETED: (
        frozenset({"success", "program", "board"}),
        frozenset(),
    ),
    EventKind.TASK_ABANDONED: (
        frozenset(),
        frozenset({"board", "program", "reason"}),
    ),
}

COMMAND_EVENT_KINDS = frozenset(
    {
        EventKind.ADD_COMMAND,
        EventKind.CONFIRM_COMMAND,
        EventKind.REMOVE_COMMAND,
        EventKind.REORDER_COMMANDS,
        EventKind.MODIFY_PROPERTY,
    }
)

TERMINAL_EVENT_KINDS = frozenset(
    {EventKind.TASK_COMPLETED, EventKind.TASK_ABANDONED, EventKind.SURRENDER}
)


@dataclass(frozen=True)
class SessionInfo:
    session_id: str
    date: str  # ISO yyyy-mm-dd
    canton: str
    school: str
    grade_level: str

    def to_dict(self) -> dict:
        return {
            "type": "session",
            "session_id": self.session_id,
            "date": self.date,
            "canton": self.canton,
            "school": self.school,
            "grade_level": self.grade_level,
        }


@dataclass
class StudentInfo:
    student_id: str
    gender: str
    birth_date: Optional[str]  # ISO yyyy-mm-dd; None once pseudonymised
    age: Optional[int] = None
    survey: Optional[dict] = None

    def to_dict(self) -> dict:
        doc: dict = {
            "type": "student",
            "student_id": self.student_id,
            "gender": self.gender,
        }
        if self.birth_date is not None:
            doc["birth_date"] = self.birth_date
        if self.age is not None:
            doc["age"] = self.age
        if self.survey is not None:
            doc["survey"] = self.survey
        return doc


@dataclass(frozen=True)
class SessionEvent:
    timestamp_ms: int
    student_id: str
    schema_id: Optional[str]
    kind: EventKind
    payload: dict

    def to_dict(self) -> dict:
        return {
            "type": "event",
            "timestamp_ms": self.timestamp_ms,
            "student_id": self.student_id,
            "schema_id": self.schema_id,
            "kind": self.kind.value,
            "payload": self.payload,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "SessionEvent":
        return cls(
            timestamp_ms=int(doc["timestamp_ms"]),
            student_id=doc["student_id"],
            schema_id=doc.get("schema_id"),
            kind=EventKind(doc["kind"]),
            payload=doc.get("payload", {}),
        )


class EventLogError(ValueError):
    pass


class EventLog:
    """Append-only per-session event store with per-student monotone
    timestamps. Optionally mirrors every event to a JSONL file as it is
    recorded."""

    def __init__(self, session: SessionInfo, path: Optional[Path] = None):
        self.session = session
        self.students: dict[str, StudentInfo] = {}
        self.events: list[SessionEvent] = []
        self.closed = False
        self._last_ts: dict[str, int] = {}
        self._path = path
        if path is not None:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(session.to_dict(), separators=(",", ":")) + "\n")

    def add_student(self, student: StudentInfo) -> None:
        if self.closed:
            raise EventLogError("log is closed")
        if student.student_id in self.students:
            raise EventLogError(f"duplicate student id {student.student_id!r}")
        self.students[student.student_id] = student
        self._sink(student.to_dict())

    def record_event(self, event: SessionEvent) -> SessionEvent:
        """Validate and append; returns the (possibly re-stamped) event."""
        if self.closed:
            raise EventLogError("log is closed")
        if event.student_id not in self.students:
            raise EventLogError(f"unknown student {event.student_id!r}")
        required, optional = _PAYLOAD_SCHEMA[event.kind]
        keys = set(event.payload)
        if not required <= keys:
            missing = ", ".join(sorted(required - keys))
            raise EventLogError(f"{event.kind} payload missing {missing}")
        unknown = keys - required - optional
        if unknown:
            raise EventLogError(
                f"{event.kind} payload has unexpected keys {sorted(unknown)}"
            )
        last = self._last_ts.get(event.student_id)
        if last is not None and event.timestamp_ms < last:
            if last - event.timestamp_ms > CLOCK_SKEW_TOLERANCE_MS:
                raise EventLogError(
                    f"timestamp for {event.student_id} jumps back "
                    f"{last - event.timestamp_ms} ms"
                )
            event = replace(event, timestamp_ms=last)
        self._last_ts[event.student_id] = event.timestamp_ms
        self.events.append(event)
        self._sink(event.to_dict())
        return event

    def record(
        self,
        kind: EventKind,
        student_id: str,
        schema_id: Optional[str],
        payload: Optional[dict] = None,
        *,
        timestamp_ms: int,
    ) -> SessionEvent:
        return self.record_event(
            SessionEvent(timestamp_ms, student_id, schema_id, kind, payload or {})
        )

    def close(self) -> None:
        self.closed = True

    def events_for(self, student_id: str) -> list[SessionEvent]:
        return [e for e in self.events if e.student_id == student_id]

    def _sink(self, doc: dict) -> None:
        if self._path is not None:
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(doc, separators=(",", ":")) + "\n")


@dataclass(frozen=True)
class TaskRecord:
    student_id: str
    outcome: TaskOutcome
    truncated: bool = False

    def to_dict(self) -> dict:
        o = self.outcome
        return {
            "type": "task",
            "student_id": self.student_id,
            "schema_id": o.schema_id,
            "attempted": o.attempted,
            "solved": o.solved,
            "surrendered": o.surrendered,
            "truncated": self.truncated,
            "duration_s": o.duration_s,
            "dimension": o.dimension.name if o.dimension else None,
            "interaction": o.interaction.label if o.interaction else None,
            "score": o.score.to_dict() if o.score else None,
        }


def derive_task_records(
    log: EventLog, rubric: Rubric = DEFAULT_RUBRIC
) -> list[TaskRecord]:
    """Fold the event stream into one record per (student, schema).

    Interface and feedback state is threaded across each student's whole
    stream so a task opened after a switch inherits the right artefact.
    Tasks with events but no terminal event come out flagged truncated.
    """
    records: list[TaskRecord] = []
    for student_id in log.students:
        stream = log.events_for(student_id)
        slices: dict[str, list[SessionEvent]] = {}
        initial_state: dict[str, tuple[str, bool]] = {}
        interface, feedback = "G", False
        for event in stream:
            sid = event.schema_id
            if sid is not None:
                if sid not in slices:
                    slices[sid] = []
                    initial_state[sid] = (interface, feedback)
                slices[sid].append(event)
            if event.kind is EventKind.INTERFACE_SWITCH:
                interface = event.payload["interface"]
            elif event.kind is EventKind.FEEDBACK_TOGGLE:
                feedback = bool(event.payload["enabled"])
        for schema_id, events in slices.items():
            records.append(
                _task_record(student_id, schema_id, events, initial_state[schema_id], rubric)
            )
    return records


def _task_record(
    student_id: str,
    schema_id: str,
    events: list[SessionEvent],
    initial_state: tuple[str, bool],
    rubric: Rubric,
) -> TaskRecord:
    attempted = any(e.kind in COMMAND_EVENT_KINDS for e in events)
    terminal = None
    for e in events:
        if e.kind in TERMINAL_EVENT_KINDS:
            terminal = e
    solved = (
        terminal is not None
        and terminal.kind is EventKind.TASK_COMPLETED
        and bool(terminal.payload.get("success"))
    )
    surrendered = terminal is not None and terminal.kind is EventKind.SURRENDER
    duration = None
    if terminal is not None:
        duration = (terminal.timestamp_ms - events[0].timestamp_ms) / 1000.0
    truncated = attempted and terminal is None

    dimension = interaction = score = None
    if terminal is not None and terminal.kind is EventKind.TASK_COMPLETED:
        try:
            dimension = classify_dimension(parse_program(terminal.payload["program"]))
        except (UnclassifiableProgramError, ValueError):
            dimension = None
    if terminal is not None:
        try:
            interaction = derive_interaction(
                events,
                initial_interface=initial_state[0],
                initial_feedback=initial_state[1],
            )
        except ValueError:
            interaction = None
    if dimension is not None and interaction is not None:
        score = cat_score(dimension, interaction, rubric)

    outcome = TaskOutcome(
        schema_id=schema_id,
        attempted=attempted,
        solved=solved,
        surrendered=surrendered,
        duration_s=duration,
        dimension=dimension,
        interaction=interaction,
        score=score,
    )
    return TaskRecord(student_id=student_id, outcome=outcome, truncated=truncated)


# --- Export ----------------------------------------------------------------


def _dump(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def export_dataset(
    log: EventLog,
    records: Optional[list[TaskRecord]] = None,
    rubric: Rubric = DEFAULT_RUBRIC,
) -> bytes:
    """Serialise a session to the newline-delimited dataset format."""
    if records is None:
        records = derive_task_records(log, rubric)
    lines = [_dump(log.session.to_dict())]
    lines += [_dump(s.to_dict()) for s in log.students.values()]
    lines += [_dump(r.to_dict()) for r in records]
    lines += [_dump(e.to_dict()) for e in log.events]
    return ("\n".join(lines) + "\n").encode("utf-8")


@dataclass
class Dataset:
    session: dict
    students: list[dict] = field(default_factory=list)
    tasks: list[dict] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)


def parse_dataset(data: Union[bytes, str]) -> Dataset:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    session = None
    students: list[dict] = []
    tasks: list[dict] = []
    events: list[dict] = []
    for line_no, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise EventLogError(f"dataset line {line_no}: {exc}") from None
        kind = doc.get("type")
        if kind == "session":
            session = doc
        elif kind == "student":
            students.append(doc)
        elif kind == "task":
            tasks.append(doc)
        elif kind == "event":
            events.append(doc)
        else:
            raise EventLogError(f"dataset line {line_no}: unknown type {kind!r}")
    if session is None:
        raise EventLogError("dataset has no session line")
    return Dataset(session=session, students=students, tasks=tasks, events=events)


# --- Pseudonymisation -------------------------------------------------------

_CODE_PREFIXES = {"school": "S", "canton": "C", "grade_level": "G"}
_STUDENT_PREFIX = "ST"


def _code(prefix: str, salt: str, value: str) -> str:
    digest = hashlib.sha256(f"{salt}:{prefix}:{value}".encode("utf-8")).hexdigest()
    return f"{prefix}-{digest[:10]}"


def _is_code(prefix: str, value: str) -> bool:
    return (
        isinstance(value, str)
        and value.startswith(prefix + "-")
        and len(value) == len(prefix) + 11
        and all(c in "0123456789abcdef" for c in value[len(prefix) + 1 :])
    )


def age_in_years(birth_date: str, on_date: str) -> int:
    born = date.fromisoformat(birth_date)
    on = date.fromisoformat(on_date)
    years = on.year - born.year
    if (on.month, on.day) < (born.month, born.day):
        years -= 1
    return years


def pseudonymise(
    dataset: Union[bytes, str], salt: Optional[str] = None
) -> tuple[bytes, dict]:
    """Replace direct identifiers with salted opaque codes.

    School, canton and grade free-text become hashed codes; birth dates
    are reduced to age in years at the session date; student ids are
    re-keyed. Idempotent: already-coded fields pass through untouched.
    Returns the transformed dataset plus the re-identification mapping,
    which is never part of the dataset itself.
    """
    if isinstance(dataset, bytes):
        dataset = dataset.decode("utf-8")
    lines = [json.loads(line) for line in dataset.splitlines() if line.strip()]
    session = next((d for d in lines if d.get("type") == "session"), None)
    if session is None:
        raise EventLogError("dataset has no session line")
    if salt is None:
        salt = hashlib.sha256(f"pseudo:{session['session_id']}".encode()).hexdigest()[:16]

    mapping: dict = {"salt": salt, "student_id": {}}
    for field_name in _CODE_PREFIXES:
        mapping[field_name] = {}

    def recode_field(doc: dict, field_name: str) -> None:
        prefix = _CODE_PREFIXES[field_name]
        value = doc.get(field_name)
        if value is None or _is_code(prefix, value):
            return
        coded = _code(prefix, salt, value)
        mapping[field_name][value] = coded
        doc[field_name] = coded

    def recode_student_id(value: str) -> str:
        if _is_code(_STUDENT_PREFIX, value):
            return value
        coded = _code(_STUDENT_PREFIX, salt, value)
        mapping["student_id"][value] = coded
        return coded

    session_date = session["date"]
    for doc in lines:
        kind = doc.get("type")
        if kind == "session":
            for field_name in _CODE_PREFIXES:
                recode_field(doc, field_name)
        elif kind == "student":
            doc["student_id"] = recode_student_id(doc["student_id"])
            if "birth_date" in doc:
                doc["age"] = age_in_years(doc.pop("birth_date"), session_date)
        elif kind in ("task", "event"):
            if doc.get("student_id") is not None:
                doc["student_id"] = recode_student_id(doc["student_id"])
    out = ("\n".join(_dump(d) for d in lines) + "\n").encode("utf-8")
    return out, mapping


# --- Replay -----------------------------------------------------------------


@dataclass
class ReplayedTask:
    student_id: str
    schema_id: str
    board_cells: dict
    recorded_cells: Optional[dict] = None
    recorded_success: Optional[bool] = None


def replay_log(events: Iterable[Union[SessionEvent, dict]]) -> list[ReplayedTask]:
    """Re-execute every confirmed command through the interpreter and
    report the reconstructed board per (student, schema).

    Failed confirmations (payload carries an error) changed nothing when
    recorded and are skipped; RETRY resets the task. Where a terminal
    event recorded a board snapshot it is attached for comparison.
    """
    states: dict[tuple[str, str], ExecState] = {}
    recorded: dict[tuple[str, str], tuple[Optional[dict], Optional[bool]]] = {}
    order: list[tuple[str, str]] = []
    for raw in events:
        event = raw if isinstance(raw, SessionEvent) else SessionEvent.from_dict(raw)
        if event.schema_id is None:
            continue
        key = (event.student_id, event.schema_id)
        if key not in states:
            states[key] = ExecState()
            order.append(key)
        state = states[key]
        if event.kind is EventKind.CONFIRM_COMMAND and "error" not in event.payload:
            try:
                execute_command(state, parse_command(event.payload["command"]))
            except CatExecError:
                # recorded as clean but fails now: surface as a mismatch by
                # leaving the board short rather than masking the drift
                continue
        elif event.kind is EventKind.RETRY:
            states[key] = ExecState()
        elif event.kind in TERMINAL_EVENT_KINDS:
            payload_board = event.payload.get("board")
            success = event.payload.get("success")
            recorded[key] = (payload_board, success)
    out = []
    for key in order:
        student_id, schema_id = key
        rec_cells, rec_success = recorded.get(key, (None, None))
        out.append(
            ReplayedTask(
                student_id=student_id,
                schema_id=schema_id,
                board_cells=states[key].board.to_cells_dict(),
                recorded_cells=rec_cells,
                recorded_success=rec_success,
            )
        )
    return out
