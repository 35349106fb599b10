"""HTTP session service: the assessment lifecycle over JSON.

Endpoints
    POST /sessions                      create a session (opens its log)
    POST /sessions/{id}/students        register a student
    POST /sessions/{id}/close           close the session (enables export)
    GET  /sessions/{id}/export          dataset, ?pseudo=1 to pseudonymise
    GET  /sessions/{id}/pseudonym-map   re-identification table (separate!)
    POST /students/{id}/module          switch validation <-> training
    POST /students/{id}/actions         submit one action (see kinds below)
    POST /students/{id}/navigate        jump to a schema by index
    GET  /students/{id}/view            current task view (?lang=it|fr|de|en)
    GET  /students/{id}/dashboard       per-schema summary
    POST /students/{id}/survey          smileyometer answers

Action kinds mirror the telemetry event kinds. Every accepted
state-changing call records exactly one event; interpreter failures come
back inside the view payload (with a suggestion), never as transport
errors. Clients may pass a `seq` number: replays of an already-seen seq
return the cached response, which makes retrying safe on flaky networks.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from .board import CrossBoard, Schema
from .interp import CatExecError, ExecState, execute_command
from .lang import ParseError, parse_command, parse_program
from .locale import labels_for
from .schemas import training_schemas, validation_schemas
from .scorer import (
    DEFAULT_RUBRIC,
    Artefact,
    InteractionDimension,
    Rubric,
    UnclassifiableProgramError,
    cat_score,
    check_success,
    classify_dimension,
)
from .telemetry import (
    EventKind,
    EventLog,
    EventLogError,
    SessionInfo,
    StudentInfo,
    derive_task_records,
    export_dataset,
    pseudonymise,
)

SMILEYS = ("happy", "neutral", "sad")


class SessionCreate(BaseModel):
    date: str
    canton: str
    school: str
    grade_level: str
    vpi_allowed: bool = True


class StudentCreate(BaseModel):
    gender: str
    birth_date: str


class ModuleRequest(BaseModel):
    module: str  # "validation" | "training"


class ActionRequest(BaseModel):
    kind: str
    payload: dict = Field(default_factory=dict)
    seq: Optional[int] = None


class NavigateRequest(BaseModel):
    target: int
    seq: Optional[int] = None


class SurveyRequest(BaseModel):
    answers: dict[str, str]


@dataclass
class TaskState:
    schema: Schema
    index: int
    exec: ExecState = field(default_factory=ExecState)
    draft: list[str] = field(default_factory=list)
    confirmed: list[str] = field(default_factory=list)
    status: str = "active"  # active | completed | surrendered
    success: Optional[bool] = None
    started_at_ms: Optional[int] = None
    ended_at_ms: Optional[int] = None
    feedback_used: bool = False

    @property
    def terminal(self) -> bool:
        return self.status != "active"


@dataclass
class StudentState:
    session_id: str
    info: StudentInfo
    module: str = "validation"
    interface: str = "G"
    feedback: bool = False
    current: dict[str, int] = field(default_factory=lambda: {"validation": 1, "training": 1})
    tasks: dict = field(default_factory=dict)  # (module, index) -> TaskState
    seq_cache: dict = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_error: Optional[dict] = None


@dataclass
class SessionState:
    info: SessionInfo
    log: EventLog
    vpi_allowed: bool = True
    closed: bool = False
    pseudonym_map: Optional[dict] = None


class Store:
    def __init__(self):
        self.sessions: dict[str, SessionState] = {}
        self.students: dict[str, StudentState] = {}
        self._counter = 0
        self.validation = validation_schemas()
        self.training = training_schemas()

    def next_id(self, prefix: str) -> str:
        self._counter += 1
        return f"{prefix}-{self._counter:04d}"

    def schemas_for(self, module: str) -> list[Schema]:
        return self.validation if module == "validation" else self.training


def create_app(
    clock: Callable[[], float] = time.time,
    rubric: Rubric = DEFAULT_RUBRIC,
    data_dir: Optional[Path] = None,
) -> FastAPI:
    app = FastAPI(title="cross-array assessment service")
    store = Store()
    app.state.store = store

    def now_ms() -> int:
        return int(clock() * 1000)

    def get_session(session_id: str) -> SessionState:
        session = store.sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"unknown session {session_id!r}")
        return session

    def get_student(student_id: str) -> StudentState:
        student = store.students.get(student_id)
        if student is None:
            raise HTTPException(404, f"unknown student {student_id!r}")
        return student

    def current_task(student: StudentState, create: bool = False) -> Optional[TaskState]:
        key = (student.module, student.current[student.module])
        task = student.tasks.get(key)
        if task is None and create:
            schemas = store.schemas_for(student.module)
            task = TaskState(schema=schemas[key[1] - 1], index=key[1])
            task.started_at_ms = now_ms()
            task.feedback_used = student.feedback  # carried over from last task
            student.tasks[key] = task
        return task

    def log_event(
        student: StudentState,
        kind: EventKind,
        schema_id: Optional[str],
        payload: dict,
    ) -> None:
        session = store.sessions[student.session_id]
        try:
            session.log.record(
                kind, student.info.student_id, schema_id, payload, timestamp_ms=now_ms()
            )
        except EventLogError as exc:
            raise HTTPException(409, str(exc)) from None

    def task_score(student: StudentState, task: TaskState) -> Optional[dict]:
        if student.module == "training":
            return None  # practice runs are never scored
        try:
            program = parse_program("\n".join(task.confirmed))
            dimension = classify_dimension(program)
        except (UnclassifiableProgramError, ParseError):
            return None
        interaction = InteractionDimension(
            Artefact(student.interface), task.feedback_used
        )
        return cat_score(dimension, interaction, rubric).to_dict()

    def view_payload(student: StudentState, lang: str = "en") -> dict:
        labels = labels_for(lang)
        task = current_task(student)
        schemas = store.schemas_for(student.module)
        index = student.current[student.module]
        schema = schemas[index - 1]
        feedback_on = student.feedback
        board = None
        cursor = None
        if task is not None and feedback_on:
            board = task.exec.board.to_cells_dict()
            cursor = str(task.exec.cursor) if task.exec.cursor else None
        view = {
            "student_id": student.info.student_id,
            "module": student.module,
            "schema_id": schema.id,
            "instructions": labels["training_help"] if student.module == "training" else None,
            "progress": {"index": index, "total": len(schemas)},
            "reference": schema.cells.to_cells_dict(),
            "board": board,
            "cursor": cursor,
            "feedback_enabled": feedback_on,
            "interface": student.interface,
            "status": task.status if task else "active",
            "read_only": bool(task and task.terminal),
            "draft": list(task.draft) if task else [],
            "confirmed": list(task.confirmed) if task else [],
            "score": task_score(student, task) if task else None,
            "error": student.last_error,
            "labels": labels,
        }
        student.last_error = None
        return view

    def advance_past(student: StudentState) -> None:
        """Move to the next unfinished schema, if any."""
        schemas = store.schemas_for(student.module)
        start = student.current[student.module]
        for index in range(start + 1, len(schemas) + 1):
            key = (student.module, index)
            task = student.tasks.get(key)
            if task is None or not task.terminal:
                student.current[student.module] = index
                return

    # --- sessions ---------------------------------------------------------

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionCreate):
        for name in ("date", "canton", "school", "grade_level"):
            if not getattr(body, name).strip():
                raise HTTPException(422, f"field {name!r} must not be empty")
        session_id = store.next_id("sess")
        info = SessionInfo(
            session_id=session_id,
            date=body.date,
            canton=body.canton,
            school=body.school,
            grade_level=body.grade_level,
        )
        sink = data_dir / "sessions" / f"{session_id}.catlog.jsonl" if data_dir else None
        store.sessions[session_id] = SessionState(
            info=info, log=EventLog(info, path=sink), vpi_allowed=body.vpi_allowed
        )
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/students", status_code=201)
    def register_student(session_id: str, body: StudentCreate):
        session = get_session(session_id)
        if session.closed:
            raise HTTPException(409, "session is closed")
        student_id = store.next_id("stu")
        info = StudentInfo(
            student_id=student_id, gender=body.gender, birth_date=body.birth_date
        )
        session.log.add_student(info)
        store.students[student_id] = StudentState(session_id=session_id, info=info)
        return {"student_id": student_id}

    @app.post("/sessions/{session_id}/close")
    def close_session(session_id: str):
        session = get_session(session_id)
        session.closed = True
        session.log.close()
        return {"session_id": session_id, "closed": True}

    @app.get("/sessions/{session_id}/export")
    def export(
        session_id: str,
        pseudo: int = Query(default=0),
        salt: Optional[str] = Query(default=None),
    ):
        session = get_session(session_id)
        if not session.closed:
            raise HTTPException(409, "session still active")
        data = export_dataset(session.log, rubric=rubric)
        if pseudo:
            data, mapping = pseudonymise(data, salt=salt)
            session.pseudonym_map = mapping
        return PlainTextResponse(data, media_type="application/x-ndjson")

    @app.get("/sessions/{session_id}/pseudonym-map")
    def pseudonym_map(session_id: str):
        session = get_session(session_id)
        if session.pseudonym_map is None:
            raise HTTPException(404, "no pseudonymised export has been made")
        return JSONResponse(session.pseudonym_map)

    # --- students -----------------------------------------------------------

    @app.post("/students/{student_id}/module")
    def switch_module(student_id: str, body: ModuleRequest):
        student = get_student(student_id)
        if body.module not in ("validation", "training"):
            raise HTTPException(422, f"unknown module {body.module!r}")
        with student.lock:
            student.module = body.module
            index = student.current[student.module]
            schema = store.schemas_for(student.module)[index - 1]
            current_task(student, create=True)
            log_event(
                student, EventKind.NAVIGATE, schema.id, {"target": index}
            )
            return view_payload(student)

    @app.post("/students/{student_id}/actions")
    def submit_action(student_id: str, body: ActionRequest):
        student = get_student(student_id)
        with student.lock:
            if body.seq is not None and body.seq in student.seq_cache:
                return student.seq_cache[body.seq]
            response = handle_action(student, body)
            if body.seq is not None:
                student.seq_cache[body.seq] = response
            return response

    def handle_action(student: StudentState, body: ActionRequest) -> dict:
        try:
            kind = EventKind(body.kind)
        except ValueError:
            raise HTTPException(422, f"unknown action kind {body.kind!r}") from None
        if kind is EventKind.NAVIGATE:
            raise HTTPException(422, "use POST /students/{id}/navigate")

        payload = body.payload
        task = current_task(student, create=True)
        schema_id = task.schema.id

        # settings toggles work even on a finished task
        if kind is EventKind.FEEDBACK_TOGGLE:
            enabled = bool(payload.get("enabled", not student.feedback))
            student.feedback = enabled
            if enabled and not task.terminal:
                task.feedback_used = True
            log_event(student, kind, schema_id, {"enabled": enabled})
            return view_payload(student)
        if kind is EventKind.INTERFACE_SWITCH:
            interface = payload.get("interface")
            if interface not in ("G", "P"):
                raise HTTPException(422, f"unknown interface {interface!r}")
            session = store.sessions[student.session_id]
            if interface == "P" and not session.vpi_allowed:
                raise HTTPException(
                    403, "the programming interface is disabled for this session"
                )
            student.interface = interface
            log_event(student, kind, schema_id, {"interface": interface})
            return view_payload(student)

        if task.terminal:
            raise HTTPException(409, f"schema {schema_id} is read-only (already {task.status})")

        if kind in (EventKind.REORDER_COMMANDS, EventKind.MODIFY_PROPERTY):
            if student.interface != "P":
                raise HTTPException(
                    409, f"{kind.value} is only available in the programming interface"
                )

        if kind is EventKind.ADD_COMMAND:
            return do_add(student, task, payload)
        if kind is EventKind.CONFIRM_COMMAND:
            return do_confirm(student, task, payload)
        if kind is EventKind.REMOVE_COMMAND:
            return do_remove(student, task, payload)
        if kind is EventKind.REORDER_COMMANDS:
            return do_reorder(student, task, payload)
        if kind is EventKind.MODIFY_PROPERTY:
            return do_modify(student, task, payload)
        if kind is EventKind.RETRY:
            task.exec = ExecState()
            task.draft.clear()
            task.confirmed.clear()
            log_event(student, kind, task.schema.id, {})
            return view_payload(student)
        if kind is EventKind.SURRENDER:
            task.status = "surrendered"
            task.ended_at_ms = now_ms()
            log_event(
                student,
                kind,
                task.schema.id,
                {
                    "board": task.exec.board.to_cells_dict(),
                    "program": "\n".join(task.confirmed),
                },
            )
            advance_past(student)
            return view_payload(student)
        if kind is EventKind.TASK_COMPLETED:
            success = check_success(task.exec.board, task.schema)
            task.status = "completed"
            task.success = success
            task.ended_at_ms = now_ms()
            log_event(
                student,
                kind,
                task.schema.id,
                {
                    "success": success,
                    "program": "\n".join(task.confirmed),
                    "board": task.exec.board.to_cells_dict(),
                },
            )
            advance_past(student)
            return view_payload(student)
        if kind is EventKind.TASK_ABANDONED:
            task.status = "surrendered"
            task.ended_at_ms = now_ms()
            log_event(
                student,
                kind,
                task.schema.id,
                {
                    "board": task.exec.board.to_cells_dict(),
                    "program": "\n".join(task.confirmed),
                    "reason": payload.get("reason", "abandoned"),
                },
            )
            advance_past(student)
            return view_payload(student)
        raise HTTPException(422, f"unhandled action kind {kind.value!r}")

    def parse_or_error(student: StudentState, text: str):
        try:
            return parse_command(text)
        except ParseError as exc:
            student.last_error = {
                "type": "parse",
                "message": str(exc),
                "offset": exc.offset,
            }
            return None

    def do_add(student: StudentState, task: TaskState, payload: dict) -> dict:
        text = payload.get("command", "")
        if parse_or_error(student, text) is None:
            return view_payload(student)
        index = payload.get("index")
        if index is None or not 0 <= index <= len(task.draft):
            index = len(task.draft)
        task.draft.insert(index, text)
        log_event(
            student,
            EventKind.ADD_COMMAND,
            task.schema.id,
            {"command": text, "index": index},
        )
        return view_payload(student)

    def do_confirm(student: StudentState, task: TaskState, payload: dict) -> dict:
        text = payload.get("command") or (task.draft[-1] if task.draft else "")
        cmd = parse_or_error(student, text)
        if cmd is None:
            return view_payload(student)
        try:
            execute_command(task.exec, cmd)
        except CatExecError as exc:
            student.last_error = {
                "type": "exec",
                "kind": exc.kind.value,
                "message": exc.message,
                "suggestion": exc.suggestion,
            }
            log_event(
                student,
                EventKind.CONFIRM_COMMAND,
                task.schema.id,
                {"command": text, "error": exc.kind.value},
            )
            return view_payload(student)
        task.confirmed.append(text)
        log_event(
            student,
            EventKind.CONFIRM_COMMAND,
            task.schema.id,
            {"command": text, "index": len(task.confirmed) - 1},
        )
        return view_payload(student)

    def do_remove(student: StudentState, task: TaskState, payload: dict) -> dict:
        index = payload.get("index")
        if not isinstance(index, int) or not 0 <= index < len(task.draft):
            raise HTTPException(422, f"no draft command at index {index!r}")
        removed = task.draft.pop(index)
        log_event(
            student,
            EventKind.REMOVE_COMMAND,
            task.schema.id,
            {"index": index, "command": removed},
        )
        return view_payload(student)

    def do_reorder(student: StudentState, task: TaskState, payload: dict) -> dict:
        src, dst = payload.get("from"), payload.get("to")
        n = len(task.draft)
        if not (isinstance(src, int) and isinstance(dst, int) and 0 <= src < n and 0 <= dst < n):
            raise HTTPException(422, f"cannot reorder {src!r} -> {dst!r}")
        task.draft.insert(dst, task.draft.pop(src))
        log_event(
            student,
            EventKind.REORDER_COMMANDS,
            task.schema.id,
            {"from": src, "to": dst},
        )
        return view_payload(student)

    def do_modify(student: StudentState, task: TaskState, payload: dict) -> dict:
        index = payload.get("index")
        if not isinstance(index, int) or not 0 <= index < len(task.draft):
            raise HTTPException(422, f"no draft command at index {index!r}")
        new_text = payload.get("command", "")
        if parse_or_error(student, new_text) is None:
            return view_payload(student)
        old_text = task.draft[index]
        task.draft[index] = new_text
        log_event(
            student,
            EventKind.MODIFY_PROPERTY,
            task.schema.id,
            {
                "property": payload.get("property", "command"),
                "old": payload.get("old", old_text),
                "new": payload.get("new", new_text),
                "index": index,
                "command": new_text,
            },
        )
        return view_payload(student)

    @app.post("/students/{student_id}/navigate")
    def navigate(student_id: str, body: NavigateRequest):
        student = get_student(student_id)
        with student.lock:
            if body.seq is not None and body.seq in student.seq_cache:
                return student.seq_cache[body.seq]
            schemas = store.schemas_for(student.module)
            if not 1 <= body.target <= len(schemas):
                raise HTTPException(
                    422, f"schema index {body.target} out of range 1..{len(schemas)}"
                )
            previous = student.current[student.module]
            student.current[student.module] = body.target
            current_task(student, create=True)
            log_event(
                student,
                EventKind.NAVIGATE,
                schemas[body.target - 1].id,
                {"target": body.target, "from": previous},
            )
            response = view_payload(student)
            if body.seq is not None:
                student.seq_cache[body.seq] = response
            return response

    @app.get("/students/{student_id}/view")
    def get_view(student_id: str, lang: str = Query(default="en")):
        student = get_student(student_id)
        with student.lock:
            return view_payload(student, lang)

    @app.get("/students/{student_id}/dashboard")
    def dashboard(student_id: str, lang: str = Query(default="en")):
        student = get_student(student_id)
        labels = labels_for(lang)
        rows = []
        with student.lock:
            for index in range(1, len(store.validation) + 1):
                task = student.tasks.get(("validation", index))
                if task is None:
                    continue
                if task.status == "completed":
                    status = "correct" if task.success else "incorrect"
                elif task.status == "surrendered":
                    status = "skipped"
                else:
                    status = "pending"
                duration = None
                if task.ended_at_ms is not None and task.started_at_ms is not None:
                    duration = (task.ended_at_ms - task.started_at_ms) / 1000.0
                rows.append(
                    {
                        "schema_id": task.schema.id,
                        "index": index,
                        "reference": task.schema.cells.to_cells_dict(),
                        "board": task.exec.board.to_cells_dict(),
                        "score": task_score(student, task),
                        "status": status,
                        "status_label": labels.get(status, status),
                        "duration_s": duration,
                    }
                )
        return {"student_id": student_id, "rows": rows, "labels": labels}

    @app.post("/students/{student_id}/survey")
    def survey(student_id: str, body: SurveyRequest):
        student = get_student(student_id)
        with student.lock:
            for question, answer in body.answers.items():
                if answer not in SMILEYS:
                    raise HTTPException(
                        422, f"answer for {question!r} must be one of {SMILEYS}"
                    )
            unfinished = [
                i
                for i in range(1, len(store.validation) + 1)
                if ("validation", i) not in student.tasks
                or not student.tasks[("validation", i)].terminal
            ]
            if unfinished:
                raise HTTPException(
                    409,
                    f"survey opens after the validation module: schemas {unfinished} unfinished",
                )
            old = dict(student.info.survey) if student.info.survey else None
            student.info.survey = dict(
                student.info.survey or {}, **body.answers
            )
            log_event(
                student,
                EventKind.MODIFY_PROPERTY,
                None,
                {"property": "survey", "old": old, "new": dict(body.answers)},
            )
            return {"student_id": student_id, "answers": student.info.survey}

    return app


def task_records_for_session(app: FastAPI, session_id: str):
    """Derived records for a live session (test/ops convenience)."""
    session = app.state.store.sessions[session_id]
    return derive_task_records(session.log)
