"""The cross-array colouring language: AST, parser, printer, static checks.

Concrete syntax is camelCase calls, one command per line (or separated by
';'), with `{}` for list literals and no significant whitespace:

    goCell(C1)
    paintPattern({yellow,red},6,right)
    repeatCommands({paintPattern({green,blue},4,square_right_up_left)},{A3,E3})
    mirrorCells({C1,C2,C3,C4,C5,C6},horizontal)

`#` starts a line comment. Parsing and printing are inverses over valid
ASTs: parse_program(format_program(p)) == p, and format_program is the
canonical spelling (the parser accepts arbitrary spacing, the printer
emits none).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .board import Axis, Cell, Color, cell_is_valid


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"
    UP_LEFT = "up_left"
    UP_RIGHT = "up_right"
    DOWN_LEFT = "down_left"
    DOWN_RIGHT = "down_right"

    def __str__(self) -> str:
        return self.value


CARDINALS = (Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT)
DIAGONALS = (
    Direction.UP_LEFT,
    Direction.UP_RIGHT,
    Direction.DOWN_LEFT,
    Direction.DOWN_RIGHT,
)

OPPOSITE = {
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
    Direction.UP_LEFT: Direction.DOWN_RIGHT,
    Direction.UP_RIGHT: Direction.DOWN_LEFT,
    Direction.DOWN_LEFT: Direction.UP_RIGHT,
    Direction.DOWN_RIGHT: Direction.UP_LEFT,
}

_VERTICAL_FLIP = {  # reflection across the horizontal axis (rows flip)
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
    Direction.UP_LEFT: Direction.DOWN_LEFT,
    Direction.UP_RIGHT: Direction.DOWN_RIGHT,
    Direction.DOWN_LEFT: Direction.UP_LEFT,
    Direction.DOWN_RIGHT: Direction.UP_RIGHT,
}

_HORIZONTAL_FLIP = {  # reflection across the vertical axis (columns flip)
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
    Direction.UP_LEFT: Direction.UP_RIGHT,
    Direction.UP_RIGHT: Direction.UP_LEFT,
    Direction.DOWN_LEFT: Direction.DOWN_RIGHT,
    Direction.DOWN_RIGHT: Direction.DOWN_LEFT,
}


def is_cardinal(d: Direction) -> bool:
    return d in CARDINALS


def are_perpendicular(a: Direction, b: Direction) -> bool:
    """Only defined over cardinals: one vertical, one horizontal."""
    vert = (Direction.UP, Direction.DOWN)
    return (a in vert) != (b in vert)


def reflect_direction(d: Direction, axis: Axis) -> Direction:
    table = _VERTICAL_FLIP if axis is Axis.HORIZONTAL else _HORIZONTAL_FLIP
    return table.get(d, d)


class PatternKind(str, Enum):
    CARDINAL = "cardinal"
    DIAGONAL = "diagonal"
    SQUARE = "square"
    L = "l"
    ZIGZAG = "zigzag"


@dataclass(frozen=True)
class PatternSpec:
    """A paintPattern shape: kind plus its direction components.

    cardinal/diagonal take one direction; square takes the three moves of
    its name (second perpendicular to the first, third opposite the
    first); l takes two orthogonal cardinals; zigzag takes two distinct,
    non-opposite directions.
    """

    kind: PatternKind
    directions: tuple[Direction, ...]

    def token(self) -> str:
        if self.kind in (PatternKind.CARDINAL, PatternKind.DIAGONAL):
            return self.directions[0].value
        parts = "_".join(d.value for d in self.directions)
        prefix = "square" if self.kind is PatternKind.SQUARE else self.kind.value
        return f"{prefix}_{parts}"


def pattern_structure_error(spec: PatternSpec) -> Optional[str]:
    """Why this spec is malformed, or None if it is well-formed."""
    kind, dirs = spec.kind, spec.directions
    if kind is PatternKind.CARDINAL:
        if len(dirs) != 1 or not is_cardinal(dirs[0]):
            return "cardinal pattern needs one cardinal direction"
    elif kind is PatternKind.DIAGONAL:
        if len(dirs) != 1 or dirs[0] not in DIAGONALS:
            return "diagonal pattern needs one diagonal direction"
    elif kind is PatternKind.SQUARE:
        if len(dirs) != 3 or not all(is_cardinal(d) for d in dirs):
            return "square pattern needs three cardinal moves"
        d1, d2, d3 = dirs
        if not are_perpendicular(d1, d2) or d3 is not OPPOSITE[d1]:
            return "square moves must turn perpendicular then reverse"
    elif kind is PatternKind.L:
        if len(dirs) != 2 or not all(is_cardinal(d) for d in dirs):
            return "l pattern needs two cardinal moves"
        if not are_perpendicular(dirs[0], dirs[1]):
            return "l moves must be perpendicular"
    elif kind is PatternKind.ZIGZAG:
        if len(dirs) != 2:
            return "zigzag pattern needs two directions"
        d1, d2 = dirs
        if d1 is d2:
            return "zigzag directions must differ"
        if OPPOSITE[d1] is d2:
            return "zigzag directions must not be opposite"
    return None


# --- Commands -------------------------------------------------------------


@dataclass(frozen=True)
class GoCell:
    cell: Cell


@dataclass(frozen=True)
class Go:
    direction: Direction
    repetitions: int


@dataclass(frozen=True)
class PaintSingleCell:
    color: Color


@dataclass(frozen=True)
class PaintPattern:
    colors: tuple[Color, ...]
    repetitions: int
    pattern: PatternSpec


@dataclass(frozen=True)
class PaintMultipleCells:
    colors: tuple[Color, ...]
    cells: tuple[Cell, ...]


@dataclass(frozen=True)
class FillEmpty:
    # color may be None only for commands assembled by the gesture
    # interface before a colour is picked; the parser always requires it.
    color: Optional[Color]


@dataclass(frozen=True)
class RepeatCommands:
    commands: tuple["Command", ...]
    positions: tuple[Cell, ...]


@dataclass(frozen=True)
class CopyCells:
    origin: tuple[Cell, ...]
    destination: tuple[Cell, ...]


@dataclass(frozen=True)
class MirrorBoard:
    axis: Axis


@dataclass(frozen=True)
class MirrorCells:
    cells: tuple[Cell, ...]
    axis: Axis


@dataclass(frozen=True)
class MirrorCommands:
    commands: tuple["Command", ...]
    axis: Axis


Command = Union[
    GoCell,
    Go,
    PaintSingleCell,
    PaintPattern,
    PaintMultipleCells,
    FillEmpty,
    RepeatCommands,
    CopyCells,
    MirrorBoard,
    MirrorCells,
    MirrorCommands,
]

Program = tuple[Command, ...]

NESTING_COMMANDS = (RepeatCommands, MirrorCommands)


# --- Printer --------------------------------------------------------------


def _cells_text(cells: tuple[Cell, ...]) -> str:
    return "{" + ",".join(str(c) for c in cells) + "}"


def _colors_text(colors: tuple[Color, ...]) -> str:
    return "{" + ",".join(c.value for c in colors) + "}"


def format_command(cmd: Command) -> str:
    if isinstance(cmd, GoCell):
        return f"goCell({cmd.cell})"
    if isinstance(cmd, Go):
        return f"go({cmd.direction},{cmd.repetitions})"
    if isinstance(cmd, PaintSingleCell):
        return f"paintSingleCell({cmd.color})"
    if isinstance(cmd, PaintPattern):
        return (
            f"paintPattern({_colors_text(cmd.colors)},"
            f"{cmd.repetitions},{cmd.pattern.token()})"
        )
    if isinstance(cmd, PaintMultipleCells):
        return f"paintMultipleCells({_colors_text(cmd.colors)},{_cells_text(cmd.cells)})"
    if isinstance(cmd, FillEmpty):
        return f"fillEmpty({cmd.color if cmd.color else ''})"
    if isinstance(cmd, RepeatCommands):
        inner = ",".join(format_command(c) for c in cmd.commands)
        return f"repeatCommands({{{inner}}},{_cells_text(cmd.positions)})"
    if isinstance(cmd, CopyCells):
        return f"copyCells({_cells_text(cmd.origin)},{_cells_text(cmd.destination)})"
    if isinstance(cmd, MirrorBoard):
        return f"mirrorBoard({cmd.axis})"
    if isinstance(cmd, MirrorCells):
        return f"mirrorCells({_cells_text(cmd.cells)},{cmd.axis})"
    if isinstance(cmd, MirrorCommands):
        inner = ",".join(format_command(c) for c in cmd.commands)
        return f"mirrorCommands({{{inner}}},{cmd.axis})"
    raise TypeError(f"not a command: {cmd!r}")


def format_program(program: Program) -> str:
    return "\n".join(format_command(c) for c in program)


# --- Parser ---------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, line: int, col: int):
        super().__init__(f"line {line}:{col}: {message}")
        self.message = message
        self.offset = offset
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<semi>;)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<punct>[(){},])
""",
    re.VERBOSE,
)

_CELL_TOKEN_RE = re.compile(r"[A-F][1-6]$")


@dataclass
class _Token:
    kind: str  # ident | number | punct | sep | eof
    text: str
    offset: int
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"unexpected character {text[pos]!r}", pos, line, pos - line_start + 1
            )
        kind = m.lastgroup
        tok = m.group()
        col = pos - line_start + 1
        if kind == "newline":
            tokens.append(_Token("sep", "\n", pos, line, col))
            line += 1
            line_start = m.end()
        elif kind == "semi":
            tokens.append(_Token("sep", ";", pos, line, col))
        elif kind in ("ident", "number"):
            tokens.append(_Token(kind, tok, pos, line, col))
        elif kind == "punct":
            tokens.append(_Token("punct", tok, pos, line, col))
        # ws and comments are dropped
        pos = m.end()
    tokens.append(_Token("eof", "", n, line, n - line_start + 1))
    return tokens


_COLOR_NAMES = {c.value: c for c in Color}
_DIRECTION_NAMES = {d.value: d for d in Direction}
_AXIS_NAMES = {a.value: a for a in Axis}

_COMMAND_NAMES = {
    "goCell",
    "go",
    "paintSingleCell",
    "paintPattern",
    "paintMultipleCells",
    "fillEmpty",
    "repeatCommands",
    "copyCells",
    "mirrorBoard",
    "mirrorCells",
    "mirrorCommands",
}


def parse_pattern_token(token: str) -> Optional[PatternSpec]:
    """Decode a paintPattern shape token, or None if unrecognised.

    Multi-word shapes join their direction components with underscores;
    the direction vocabulary makes every such spelling decompose
    uniquely.
    """
    if token in _DIRECTION_NAMES:
        d = _DIRECTION_NAMES[token]
        kind = PatternKind.CARDINAL if is_cardinal(d) else PatternKind.DIAGONAL
        return PatternSpec(kind, (d,))
    for prefix, kind in (
        ("square_", PatternKind.SQUARE),
        ("l_", PatternKind.L),
        ("zigzag_", PatternKind.ZIGZAG),
    ):
        if token.startswith(prefix):
            rest = token[len(prefix):]
            if kind is PatternKind.ZIGZAG:
                dirs = _split_two_directions(rest)
            else:
                words = rest.split("_")
                want = 3 if kind is PatternKind.SQUARE else 2
                if len(words) != want or not all(w in _DIRECTION_NAMES for w in words):
                    return None
                dirs = tuple(_DIRECTION_NAMES[w] for w in words)
            if dirs is None:
                return None
            spec = PatternSpec(kind, dirs)
            return spec
    return None


def _split_two_directions(joined: str) -> Optional[tuple[Direction, ...]]:
    words = joined.split("_")
    for cut in (1, 2):
        first, second = "_".join(words[:cut]), "_".join(words[cut:])
        if first in _DIRECTION_NAMES and second in _DIRECTION_NAMES:
            return (_DIRECTION_NAMES[first], _DIRECTION_NAMES[second])
    return None


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def error(self, message: str, tok: Optional[_Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.offset, tok.line, tok.col)

    def expect_punct(self, ch: str) -> _Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.text != ch:
            shown = tok.text or "end of input"
            raise self.error(f"expected {ch!r}, found {shown!r}")
        return self.next()

    def parse_program(self) -> Program:
        commands: list[Command] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                break
            if tok.kind == "sep":
                self.next()
                continue
            commands.append(self.parse_command(nested=False))
            tok = self.peek()
            if tok.kind not in ("sep", "eof"):
                raise self.error("expected ';' or end of line after command")
        return tuple(commands)

    def parse_command(self, nested: bool) -> Command:
        tok = self.peek()
        if tok.kind != "ident":
            shown = tok.text or "end of input"
            raise self.error(f"expected a command, found {shown!r}")
        if tok.text not in _COMMAND_NAMES:
            raise self.error(f"unknown command {tok.text!r}", tok)
        if nested and tok.text in ("repeatCommands", "mirrorCommands"):
            raise self.error(f"{tok.text} cannot be nested", tok)
        name = self.next().text
        self.expect_punct("(")
        cmd = getattr(self, f"_args_{name}")()
        self.expect_punct(")")
        return cmd

    # one `_args_*` per command form; each consumes the argument list only

    def _args_goCell(self) -> Command:
        return GoCell(self.parse_cell())

    def _args_go(self) -> Command:
        d = self.parse_direction()
        self.expect_punct(",")
        return Go(d, self.parse_repetitions())

    def _args_paintSingleCell(self) -> Command:
        return PaintSingleCell(self.parse_color())

    def _args_paintPattern(self) -> Command:
        colors = self.parse_color_set()
        self.expect_punct(",")
        reps = self.parse_repetitions()
        self.expect_punct(",")
        tok = self.peek()
        if tok.kind != "ident":
            raise self.error("expected a pattern name")
        spec = parse_pattern_token(tok.text)
        if spec is None:
            raise self.error(f"unknown pattern {tok.text!r}", tok)
        problem = pattern_structure_error(spec)
        if problem is not None:
            raise self.error(f"invalid pattern {tok.text!r}: {problem}", tok)
        self.next()
        return PaintPattern(colors, reps, spec)

    def _args_paintMultipleCells(self) -> Command:
        colors = self.parse_color_set()
        self.expect_punct(",")
        cells = self.parse_cell_set(allow_empty=False)
        return PaintMultipleCells(colors, cells)

    def _args_fillEmpty(self) -> Command:
        return FillEmpty(self.parse_color())

    def _args_repeatCommands(self) -> Command:
        commands = self.parse_command_set(allow_empty=False)
        self.expect_punct(",")
        positions = self.parse_cell_set(allow_empty=False)
        return RepeatCommands(commands, positions)

    def _args_copyCells(self) -> Command:
        origin = self.parse_cell_set(allow_empty=True)
        self.expect_punct(",")
        destination = self.parse_cell_set(allow_empty=True)
        return CopyCells(origin, destination)

    def _args_mirrorBoard(self) -> Command:
        return MirrorBoard(self.parse_axis())

    def _args_mirrorCells(self) -> Command:
        cells = self.parse_cell_set(allow_empty=True)
        self.expect_punct(",")
        return MirrorCells(cells, self.parse_axis())

    def _args_mirrorCommands(self) -> Command:
        commands = self.parse_command_set(allow_empty=True)
        self.expect_punct(",")
        return MirrorCommands(commands, self.parse_axis())

    # argument atoms

    def parse_cell(self) -> Cell:
        tok = self.peek()
        if tok.kind != "ident" or not _CELL_TOKEN_RE.match(tok.text):
            shown = tok.text or "end of input"
            raise self.error(f"expected a cell coordinate, found {shown!r}")
        cell = Cell.parse(tok.text)
        if not cell_is_valid(cell):
            raise self.error(f"invalid coordinate {tok.text}: not on the cross", tok)
        self.next()
        return cell

    def parse_color(self) -> Color:
        tok = self.peek()
        if tok.kind != "ident":
            shown = tok.text or "end of input"
            raise self.error(f"expected a colour, found {shown!r}")
        if tok.text not in _COLOR_NAMES:
            raise self.error(f"unknown colour {tok.text!r}")
        self.next()
        return _COLOR_NAMES[tok.text]

    def parse_direction(self) -> Direction:
        tok = self.peek()
        if tok.kind != "ident":
            shown = tok.text or "end of input"
            raise self.error(f"expected a direction, found {shown!r}")
        if tok.text not in _DIRECTION_NAMES:
            raise self.error(f"unknown direction {tok.text!r}")
        self.next()
        return _DIRECTION_NAMES[tok.text]

    def parse_axis(self) -> Axis:
        tok = self.peek()
        if tok.kind != "ident" or tok.text not in _AXIS_NAMES:
            shown = tok.text or "end of input"
            raise self.error(f"expected horizontal or vertical, found {shown!r}")
        self.next()
        return _AXIS_NAMES[tok.text]

    def parse_repetitions(self) -> int:
        tok = self.peek()
        if tok.kind != "number":
            shown = tok.text or "end of input"
            raise self.error(f"expected a repetition count, found {shown!r}")
        value = int(tok.text)
        if value < 1:
            raise self.error("repetition count must be at least 1", tok)
        self.next()
        return value

    def _parse_set(self, item, allow_empty: bool, what: str) -> tuple:
        self.expect_punct("{")
        items = []
        if not (self.peek().kind == "punct" and self.peek().text == "}"):
            items.append(item())
            while self.peek().kind == "punct" and self.peek().text == ",":
                self.next()
                items.append(item())
        if not items and not allow_empty:
            raise self.error(f"empty {what} list")
        self.expect_punct("}")
        return tuple(items)

    def parse_color_set(self) -> tuple[Color, ...]:
        return self._parse_set(self.parse_color, allow_empty=False, what="colour")

    def parse_cell_set(self, allow_empty: bool) -> tuple[Cell, ...]:
        return self._parse_set(self.parse_cell, allow_empty, what="cell")

    def parse_command_set(self, allow_empty: bool) -> tuple[Command, ...]:
        return self._parse_set(
            lambda: self.parse_command(nested=True), allow_empty, what="command"
        )


def parse_program(text: str) -> Program:
    """Parse source text into a Program; raises ParseError with position."""
    return _Parser(_tokenize(text)).parse_program()


def parse_command(text: str) -> Command:
    """Parse exactly one command (no separators)."""
    program = parse_program(text)
    if len(program) != 1:
        raise ParseError(
            f"expected exactly one command, found {len(program)}", 0, 1, 1
        )
    return program[0]


# --- Static validation ----------------------------------------------------


class DiagnosticCode(str, Enum):
    SQUARE_ARITY = "square-arity"
    LENGTH_MISMATCH = "length-mismatch"
    ZIGZAG_OPPOSITE = "zigzag-opposite"
    EMPTY_COMMANDS = "empty-commands"
    EMPTY_LIST = "empty-list"
    NESTED_NESTING = "nested-nesting"
    BAD_PATTERN = "bad-pattern"
    NONPOSITIVE_REPETITIONS = "nonpositive-repetitions"


@dataclass(frozen=True)
class Diagnostic:
    code: DiagnosticCode
    message: str
    command_index: int


def validate_static(program: Program) -> list[Diagnostic]:
    """Statically decidable faults; an empty list means clean.

    The parser already rejects these spellings, so this mostly guards
    ASTs assembled in code (blocks, gestures, tests).
    """
    out: list[Diagnostic] = []

    def check(cmd: Command, index: int, nested: bool) -> None:
        if isinstance(cmd, PaintPattern):
            problem = pattern_structure_error(cmd.pattern)
            if problem is not None:
                code = (
                    DiagnosticCode.ZIGZAG_OPPOSITE
                    if cmd.pattern.kind is PatternKind.ZIGZAG
                    else DiagnosticCode.BAD_PATTERN
                )
                out.append(Diagnostic(code, problem, index))
            if (
                cmd.pattern.kind in (PatternKind.SQUARE, PatternKind.L)
                and cmd.repetitions != 4
            ):
                out.append(
                    Diagnostic(
                        DiagnosticCode.SQUARE_ARITY,
                        f"{cmd.pattern.kind.value} pattern paints exactly 4 cells, "
                        f"got repetitions={cmd.repetitions}",
                        index,
                    )
                )
            if cmd.repetitions < 1:
                out.append(
                    Diagnostic(
                        DiagnosticCode.NONPOSITIVE_REPETITIONS,
                        "repetitions must be at least 1",
                        index,
                    )
                )
            if not cmd.colors:
                out.append(
                    Diagnostic(DiagnosticCode.EMPTY_LIST, "empty colour list", index)
                )
        elif isinstance(cmd, Go) and cmd.repetitions < 1:
            out.append(
                Diagnostic(
                    DiagnosticCode.NONPOSITIVE_REPETITIONS,
                    "repetitions must be at least 1",
                    index,
                )
            )
        elif isinstance(cmd, PaintMultipleCells):
            if not cmd.colors:
                out.append(
                    Diagnostic(DiagnosticCode.EMPTY_LIST, "empty colour list", index)
                )
            if not cmd.cells:
                out.append(
                    Diagnostic(DiagnosticCode.EMPTY_LIST, "empty cell list", index)
                )
        elif isinstance(cmd, CopyCells):
            if len(cmd.origin) != len(cmd.destination):
                out.append(
                    Diagnostic(
                        DiagnosticCode.LENGTH_MISMATCH,
                        f"copyCells needs matching lists, got "
                        f"{len(cmd.origin)} vs {len(cmd.destination)}",
                        index,
                    )
                )
        elif isinstance(cmd, RepeatCommands):
            if not cmd.commands:
                out.append(
                    Diagnostic(
                        DiagnosticCode.EMPTY_COMMANDS, "empty nested command list", index
                    )
                )
            if not cmd.positions:
                out.append(
                    Diagnostic(DiagnosticCode.EMPTY_LIST, "empty position list", index)
                )
        if isinstance(cmd, (RepeatCommands, MirrorCommands)):
            for sub in cmd.commands:
                if isinstance(sub, NESTING_COMMANDS):
                    out.append(
                        Diagnostic(
                            DiagnosticCode.NESTED_NESTING,
                            f"{type(sub).__name__} cannot be nested",
                            index,
                        )
                    )
                else:
                    check(sub, index, nested=True)

    for i, cmd in enumerate(program):
        check(cmd, i, nested=False)
    return out
