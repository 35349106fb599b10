"""Program execution against a cross board.

Execution keeps a cursor (initially unset), paints cells, and stops at the
first semantic error. Every top-level command is atomic: a failing command
rolls back whatever it touched, so the reported state is exactly the state
after the last successful command.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .board import Axis, Cell, Color, CrossBoard, cell_is_valid, mirror_coord
from .lang import (
    Command,
    CopyCells,
    Direction,
    FillEmpty,
    Go,
    GoCell,
    MirrorBoard,
    MirrorCells,
    MirrorCommands,
    PaintMultipleCells,
    PaintPattern,
    PaintSingleCell,
    PatternKind,
    PatternSpec,
    Program,
    RepeatCommands,
    format_command,
    pattern_structure_error,
    reflect_direction,
)

DELTAS = {
    Direction.UP: (1, 0),
    Direction.DOWN: (-1, 0),
    Direction.LEFT: (0, -1),
    Direction.RIGHT: (0, 1),
    Direction.UP_LEFT: (1, -1),
    Direction.UP_RIGHT: (1, 1),
    Direction.DOWN_LEFT: (-1, -1),
    Direction.DOWN_RIGHT: (-1, 1),
}

#: Pattern geometry: the move sequence painting `reps` cells starting at
#: (and including) the cursor. Square and l are fixed-size (4 cells); the
#: others repeat their step rule. Changing a convention is a one-line edit.
def pattern_moves(spec: PatternSpec, repetitions: int) -> list[Direction]:
    if spec.kind is PatternKind.SQUARE:
        return list(spec.directions)  # start, d1, d2, d3
    if spec.kind is PatternKind.L:
        d1, d2 = spec.directions
        return [d1, d1, d2]  # start, two along d1, one along d2
    if spec.kind is PatternKind.ZIGZAG:
        d1, d2 = spec.directions
        return [d1 if k % 2 == 0 else d2 for k in range(repetitions - 1)]
    return [spec.directions[0]] * (repetitions - 1)


class ExecErrorKind(str, Enum):
    OUT_OF_BOARD = "OUT_OF_BOARD"
    NO_POSITION = "NO_POSITION"
    PATTERN_OVERFLOW = "PATTERN_OVERFLOW"
    INVALID_PATTERN = "INVALID_PATTERN"
    LENGTH_MISMATCH = "LENGTH_MISMATCH"
    NO_COLOR = "NO_COLOR"


_SUGGESTIONS = {
    ExecErrorKind.OUT_OF_BOARD: (
        "stay on the cross: rows C and D span all columns, "
        "the other rows only columns 3 and 4"
    ),
    ExecErrorKind.NO_POSITION: "go to a cell first, for example goCell(C1)",
    ExecErrorKind.PATTERN_OVERFLOW: (
        "the pattern runs off the cross; shorten it or start elsewhere"
    ),
    ExecErrorKind.INVALID_PATTERN: "square and l patterns paint exactly 4 cells",
    ExecErrorKind.LENGTH_MISMATCH: "give one destination cell per origin cell",
    ExecErrorKind.NO_COLOR: "select a colour first",
}


class CatExecError(Exception):
    """Semantic execution failure; names the failing command once known."""

    def __init__(self, kind: ExecErrorKind, message: str):
        self.kind = kind
        self.suggestion = _SUGGESTIONS[kind]
        self.command_index: Optional[int] = None
        self.command_text: Optional[str] = None
        super().__init__(message)

    @property
    def message(self) -> str:
        return self.args[0]

    def describe(self) -> str:
        where = f" in command {self.command_index}" if self.command_index is not None else ""
        what = f" ({self.command_text})" if self.command_text else ""
        return f"{self.kind.value}{where}{what}: {self.message} — {self.suggestion}"


@dataclass
class TraceEntry:
    index: int
    command: str
    cells_changed: tuple[str, ...]
    error: Optional[str] = None


@dataclass
class ExecState:
    board: CrossBoard = field(default_factory=CrossBoard)
    cursor: Optional[Cell] = None
    executed: int = 0
    trace: list[TraceEntry] = field(default_factory=list)


def _require_cursor(state: ExecState) -> Cell:
    if state.cursor is None:
        raise CatExecError(
            ExecErrorKind.NO_POSITION, "no current position on the board"
        )
    return state.cursor


def _require_valid(cell: Cell) -> Cell:
    if not cell_is_valid(cell):
        raise CatExecError(
            ExecErrorKind.OUT_OF_BOARD, f"{cell} is outside the board"
        )
    return cell


def _paint(state: ExecState, cell: Cell, color: Color, changed: list[Cell]) -> None:
    if state.board[cell] != color:
        state.board[cell] = color
        changed.append(cell)


def exec_go_cell(state: ExecState, cell: Cell) -> list[Cell]:
    state.cursor = _require_valid(cell)
    return []


def exec_go(state: ExecState, direction: Direction, repetitions: int) -> list[Cell]:
    pos = _require_cursor(state)
    if repetitions < 1:
        raise CatExecError(
            ExecErrorKind.INVALID_PATTERN, "repetitions must be at least 1"
        )
    drow, dcol = DELTAS[direction]
    for _ in range(repetitions):
        nxt = pos.shift(drow, dcol)
        if not cell_is_valid(nxt):
            raise CatExecError(
                ExecErrorKind.OUT_OF_BOARD,
                f"moving {direction} from {pos} leaves the board",
            )
        pos = nxt
    state.cursor = pos
    return []


def exec_paint_single(state: ExecState, color: Color) -> list[Cell]:
    cell = _require_cursor(state)
    changed: list[Cell] = []
    _paint(state, cell, color, changed)
    return changed


def pattern_cell_sequence(
    start: Cell, spec: PatternSpec, repetitions: int
) -> list[Cell]:
    """The cells a pattern paints, cursor first. Raises INVALID_PATTERN for
    malformed specs or a fixed-size pattern with the wrong count, and
    PATTERN_OVERFLOW as soon as the walk leaves the cross."""
    problem = pattern_structure_error(spec)
    if problem is not None:
        raise CatExecError(ExecErrorKind.INVALID_PATTERN, problem)
    if spec.kind in (PatternKind.SQUARE, PatternKind.L) and repetitions != 4:
        raise CatExecError(
            ExecErrorKind.INVALID_PATTERN,
            f"{spec.kind.value} pattern paints exactly 4 cells, got {repetitions}",
        )
    if repetitions < 1:
        raise CatExecError(
            ExecErrorKind.INVALID_PATTERN, "repetitions must be at least 1"
        )
    cells = [_require_valid_pattern_cell(start, spec)]
    pos = start
    for move in pattern_moves(spec, repetitions):
        drow, dcol = DELTAS[move]
        nxt = pos.shift(drow, dcol)
        if not cell_is_valid(nxt):
            raise CatExecError(
                ExecErrorKind.PATTERN_OVERFLOW,
                f"pattern {spec.token()} leaves the board after {pos}",
            )
        pos = nxt
        cells.append(pos)
    return cells


def _require_valid_pattern_cell(start: Cell, spec: PatternSpec) -> Cell:
    if not cell_is_valid(start):
        raise CatExecError(
            ExecErrorKind.PATTERN_OVERFLOW,
            f"pattern {spec.token()} starts off the board at {start}",
        )
    return start


def exec_paint_pattern(
    state: ExecState,
    colors: tuple[Color, ...],
    repetitions: int,
    pattern: PatternSpec,
) -> list[Cell]:
    start = _require_cursor(state)
    if not colors:
        raise CatExecError(ExecErrorKind.NO_COLOR, "no colours given")
    cells = pattern_cell_sequence(start, pattern, repetitions)
    changed: list[Cell] = []
    for k, cell in enumerate(cells):
        _paint(state, cell, colors[k % len(colors)], changed)
    state.cursor = cells[-1]
    return changed


def exec_paint_multiple(
    state: ExecState, colors: tuple[Color, ...], cells: tuple[Cell, ...]
) -> list[Cell]:
    if not colors:
        raise CatExecError(ExecErrorKind.NO_COLOR, "no colours given")
    for cell in cells:
        _require_valid(cell)
    changed: list[Cell] = []
    for k, cell in enumerate(cells):
        _paint(state, cell, colors[k % len(colors)], changed)
    if cells:
        state.cursor = cells[-1]
    return changed


def exec_fill_empty(state: ExecState, color: Optional[Color]) -> list[Cell]:
    if color is None:
        raise CatExecError(ExecErrorKind.NO_COLOR, "fillEmpty used without a colour")
    changed: list[Cell] = []
    for cell in state.board.uncoloured_cells():
        _paint(state, cell, color, changed)
    return changed


def exec_repeat(
    state: ExecState, commands: tuple[Command, ...], positions: tuple[Cell, ...]
) -> list[Cell]:
    for pos in positions:
        _require_valid(pos)
    changed: list[Cell] = []
    for pos in positions:
        state.cursor = pos
        for cmd in commands:
            changed.extend(_dispatch_nested(state, cmd))
    return changed


def exec_copy(
    state: ExecState, origin: tuple[Cell, ...], destination: tuple[Cell, ...]
) -> list[Cell]:
    if len(origin) != len(destination):
        raise CatExecError(
            ExecErrorKind.LENGTH_MISMATCH,
            f"copyCells got {len(origin)} origins and {len(destination)} destinations",
        )
    for cell in (*origin, *destination):
        _require_valid(cell)
    snapshot = state.board.copy()  # read-before-write: swaps work
    changed: list[Cell] = []
    for src, dst in zip(origin, destination):
        color = snapshot[src]
        if color is not None:
            _paint(state, dst, color, changed)
    return changed


def _mirror_onto_empty(
    state: ExecState, sources: list[Cell], axis: Axis
) -> list[Cell]:
    snapshot = state.board.copy()
    changed: list[Cell] = []
    for src in sources:
        color = snapshot[src]
        if color is None:
            continue
        target = mirror_coord(src, axis)
        if snapshot[target] is None:
            _paint(state, target, color, changed)
    return changed


def exec_mirror_board(state: ExecState, axis: Axis) -> list[Cell]:
    return _mirror_onto_empty(state, state.board.coloured_cells(), axis)


def exec_mirror_cells(
    state: ExecState, cells: tuple[Cell, ...], axis: Axis
) -> list[Cell]:
    for cell in cells:
        _require_valid(cell)
    return _mirror_onto_empty(state, list(cells), axis)


def mirror_command_ast(cmd: Command, axis: Axis) -> Command:
    """Structurally reflect a command: every coordinate through
    mirror_coord, every direction through the reflection table. Mirror
    axes themselves are unchanged (reflecting an axis across an axis is
    the identity)."""
    mc = lambda c: mirror_coord(c, axis)
    if isinstance(cmd, GoCell):
        return GoCell(mc(cmd.cell))
    if isinstance(cmd, Go):
        return Go(reflect_direction(cmd.direction, axis), cmd.repetitions)
    if isinstance(cmd, PaintPattern):
        spec = PatternSpec(
            cmd.pattern.kind,
            tuple(reflect_direction(d, axis) for d in cmd.pattern.directions),
        )
        return PaintPattern(cmd.colors, cmd.repetitions, spec)
    if isinstance(cmd, PaintMultipleCells):
        return PaintMultipleCells(cmd.colors, tuple(mc(c) for c in cmd.cells))
    if isinstance(cmd, CopyCells):
        return CopyCells(
            tuple(mc(c) for c in cmd.origin), tuple(mc(c) for c in cmd.destination)
        )
    if isinstance(cmd, MirrorCells):
        return MirrorCells(tuple(mc(c) for c in cmd.cells), cmd.axis)
    if isinstance(cmd, RepeatCommands):
        return RepeatCommands(
            tuple(mirror_command_ast(c, axis) for c in cmd.commands),
            tuple(mc(c) for c in cmd.positions),
        )
    if isinstance(cmd, MirrorCommands):
        return MirrorCommands(
            tuple(mirror_command_ast(c, axis) for c in cmd.commands), cmd.axis
        )
    return cmd  # PaintSingleCell, FillEmpty, MirrorBoard carry no geometry


def exec_mirror_commands(
    state: ExecState, commands: tuple[Command, ...], axis: Axis
) -> list[Cell]:
    changed: list[Cell] = []
    for cmd in commands:
        changed.extend(_dispatch_nested(state, mirror_command_ast(cmd, axis)))
    return changed


def _dispatch_nested(state: ExecState, cmd: Command) -> list[Cell]:
    if isinstance(cmd, (RepeatCommands, MirrorCommands)):
        raise CatExecError(
            ExecErrorKind.INVALID_PATTERN,
            f"{type(cmd).__name__} cannot be nested",
        )
    return _dispatch(state, cmd)


def _dispatch(state: ExecState, cmd: Command) -> list[Cell]:
    if isinstance(cmd, GoCell):
        return exec_go_cell(state, cmd.cell)
    if isinstance(cmd, Go):
        return exec_go(state, cmd.direction, cmd.repetitions)
    if isinstance(cmd, PaintSingleCell):
        return exec_paint_single(state, cmd.color)
    if isinstance(cmd, PaintPattern):
        return exec_paint_pattern(state, cmd.colors, cmd.repetitions, cmd.pattern)
    if isinstance(cmd, PaintMultipleCells):
        return exec_paint_multiple(state, cmd.colors, cmd.cells)
    if isinstance(cmd, FillEmpty):
        return exec_fill_empty(state, cmd.color)
    if isinstance(cmd, RepeatCommands):
        return exec_repeat(state, cmd.commands, cmd.positions)
    if isinstance(cmd, CopyCells):
        return exec_copy(state, cmd.origin, cmd.destination)
    if isinstance(cmd, MirrorBoard):
        return exec_mirror_board(state, cmd.axis)
    if isinstance(cmd, MirrorCells):
        return exec_mirror_cells(state, cmd.cells, cmd.axis)
    if isinstance(cmd, MirrorCommands):
        return exec_mirror_commands(state, cmd.commands, cmd.axis)
    raise TypeError(f"not a command: {cmd!r}")


def execute_command(state: ExecState, cmd: Command) -> list[Cell]:
    """Run one command atomically: on error the board and cursor are
    restored and the error re-raised."""
    board_before = state.board.copy()
    cursor_before = state.cursor
    try:
        return _dispatch(state, cmd)
    except CatExecError:
        state.board = board_before
        state.cursor = cursor_before
        raise


StepCallback = Callable[[int, Command, ExecState, list[Cell]], None]


@dataclass
class RunResult:
    state: ExecState
    error: Optional[CatExecError] = None

    @property
    def ok(self) -> bool:
        return self.error is None


def run_program(
    program: Program,
    initial_board: Optional[CrossBoard] = None,
    on_step: Optional[StepCallback] = None,
) -> RunResult:
    """Execute commands in order, halting at the first error.

    The returned state reflects every command before the failing one; the
    error carries the failing command's index and canonical text.
    """
    state = ExecState(board=initial_board.copy() if initial_board else CrossBoard())
    for index, cmd in enumerate(program):
        text = format_command(cmd)
        try:
            changed = execute_command(state, cmd)
        except CatExecError as err:
            err.command_index = index
            err.command_text = text
            state.trace.append(TraceEntry(index, text, (), err.kind.value))
            return RunResult(state, err)
        state.executed += 1
        state.trace.append(
            TraceEntry(index, text, tuple(str(c) for c in changed))
        )
        if on_step is not None:
            on_step(index, cmd, state, changed)
    return RunResult(state)


def trace_lines(state: ExecState) -> list[str]:
    """Newline-delimited trace records for the telemetry layer."""
    out = []
    for entry in state.trace:
        record = {
            "index": entry.index,
            "command": entry.command,
            "cells_changed": list(entry.cells_changed),
        }
        if entry.error is not None:
            record["error"] = entry.error
        out.append(json.dumps(record, separators=(",", ":")))
    return out
