"""Cross-array board model.

The board is a 2-thick cross of 20 dots laid out on a 6x6 grid. Rows are
lettered A-F bottom to top, columns numbered 1-6 left to right. A grid
position belongs to the cross iff its row is C or D (the horizontal bar)
or its column is 3 or 4 (the vertical bar):

        F      . .
        E      . .
        D  . . . . . .
        C  . . . . . .
        B      . .
        A      . .
           1 2 3 4 5 6

Cells hold one of four colours or stay uncoloured. A fully coloured board
plus an id is a reference schema, the target pattern a student replicates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Iterator, Optional, Union

ROWS = "ABCDEF"
COLS = (1, 2, 3, 4, 5, 6)

BAR_ROWS = frozenset("CD")
BAR_COLS = frozenset((3, 4))


class Color(str, Enum):
    YELLOW = "yellow"
    RED = "red"
    GREEN = "green"
    BLUE = "blue"

    def __str__(self) -> str:
        return self.value


class Axis(str, Enum):
    """Reflection axis: horizontal flips rows, vertical flips columns."""

    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Cell:
    """One dot position, e.g. Cell('C', 1) == Cell.parse('C1')."""

    row: str
    col: int

    @classmethod
    def parse(cls, token: str) -> "Cell":
        if len(token) != 2 or token[0] not in ROWS or not token[1].isdigit():
            raise ValueError(f"not a cell coordinate: {token!r}")
        col = int(token[1])
        if col not in COLS:
            raise ValueError(f"not a cell coordinate: {token!r}")
        return cls(token[0], col)

    def __str__(self) -> str:
        return f"{self.row}{self.col}"

    def shift(self, drow: int, dcol: int) -> "Cell":
        """Grid-step neighbour; may land outside both grid and cross."""
        ri = ROWS.index(self.row) + drow
        col = self.col + dcol
        row = ROWS[ri] if 0 <= ri < len(ROWS) else "?"
        return Cell(row, col)


def is_valid_cell(row: str, col: int) -> bool:
    """True iff (row, col) is one of the 20 cross dots. Total: anything
    outside the 6x6 grid is simply not on the cross."""
    if row not in ROWS or col not in COLS:
        return False
    return row in BAR_ROWS or col in BAR_COLS


def cell_is_valid(cell: Cell) -> bool:
    return is_valid_cell(cell.row, cell.col)


def _canonical_cells() -> tuple[Cell, ...]:
    return tuple(
        Cell(r, c) for r in ROWS for c in COLS if is_valid_cell(r, c)
    )


#: The 20 cross cells in canonical order: row A..F, then column ascending.
CELLS: tuple[Cell, ...] = _canonical_cells()

_CELL_SET = frozenset(CELLS)

_ROW_MIRROR = {r: ROWS[len(ROWS) - 1 - i] for i, r in enumerate(ROWS)}
_COL_MIRROR = {c: COLS[len(COLS) - 1 - i] for i, c in enumerate(COLS)}


def mirror_coord(cell: Cell, axis: Axis) -> Cell:
    """Reflect a cell across the given axis.

    Horizontal swaps rows A-F, B-E, C-D; vertical swaps columns 1-6, 2-5,
    3-4. The cross is symmetric about both axes, so a valid cell always
    reflects onto a valid cell.
    """
    if axis is Axis.HORIZONTAL:
        return Cell(_ROW_MIRROR[cell.row], cell.col)
    return Cell(cell.row, _COL_MIRROR[cell.col])


class CrossBoard:
    """Mutable colouring state over the 20 cross cells.

    Value-semantic: copy() detaches all state; equality is cell-by-cell.
    Accessing a coordinate off the cross raises KeyError, so any painting
    bug surfaces immediately instead of corrupting state.
    """

    __slots__ = ("_cells",)

    def __init__(self, cells: Optional[dict[Cell, Optional[Color]]] = None):
        self._cells: dict[Cell, Optional[Color]] = {c: None for c in CELLS}
        if cells:
            for cell, color in cells.items():
                self[cell] = color

    def __getitem__(self, cell: Cell) -> Optional[Color]:
        try:
            return self._cells[cell]
        except KeyError:
            raise KeyError(f"{cell} is not on the cross") from None

    def __setitem__(self, cell: Cell, color: Optional[Color]) -> None:
        if cell not in self._cells:
            raise KeyError(f"{cell} is not on the cross")
        self._cells[cell] = color

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CrossBoard):
            return NotImplemented
        return self._cells == other._cells

    def __iter__(self) -> Iterator[Cell]:
        return iter(CELLS)

    def copy(self) -> "CrossBoard":
        fresh = CrossBoard()
        fresh._cells = dict(self._cells)
        return fresh

    def coloured_cells(self) -> list[Cell]:
        return [c for c in CELLS if self._cells[c] is not None]

    def uncoloured_cells(self) -> list[Cell]:
        return [c for c in CELLS if self._cells[c] is None]

    def is_fully_coloured(self) -> bool:
        return all(v is not None for v in self._cells.values())

    def to_cells_dict(self) -> dict[str, Optional[str]]:
        """Canonically ordered {"A3": "yellow", ...} mapping."""
        return {
            str(c): (v.value if v is not None else None)
            for c, v in ((c, self._cells[c]) for c in CELLS)
        }

    @classmethod
    def from_cells_dict(cls, cells: dict[str, Optional[str]]) -> "CrossBoard":
        board = cls()
        for token, name in cells.items():
            cell = Cell.parse(token)
            board[cell] = Color(name) if name is not None else None
        return board

    def render(self) -> str:
        """Text grid, row F at top; colours as their initial, '.' = empty."""
        lines = []
        for row in reversed(ROWS):
            chars = []
            for col in COLS:
                if not is_valid_cell(row, col):
                    chars.append(" ")
                else:
                    color = self._cells[Cell(row, col)]
                    chars.append(color.value[0] if color else ".")
            lines.append(f"{row}  " + " ".join(chars).rstrip())
        lines.append("   " + " ".join(str(c) for c in COLS))
        return "\n".join(lines)

    def __repr__(self) -> str:
        painted = sum(1 for v in self._cells.values() if v is not None)
        return f"<CrossBoard {painted}/20 coloured>"


class SchemaError(ValueError):
    """Raised for malformed or incomplete schema documents."""


@dataclass(frozen=True)
class Schema:
    """A reference pattern: id plus a fully coloured board."""

    id: str
    cells: CrossBoard
    complexity_hint: Optional[int] = None

    def __post_init__(self):
        if not self.cells.is_fully_coloured():
            missing = ", ".join(str(c) for c in self.cells.uncoloured_cells())
            raise SchemaError(f"incomplete schema {self.id!r}: uncoloured {missing}")


def save_schema(schema: Schema) -> bytes:
    """Serialise to canonical UTF-8 JSON; load_schema(save_schema(s)) == s."""
    doc: dict = {"id": schema.id, "cells": schema.cells.to_cells_dict()}
    if schema.complexity_hint is not None:
        doc["complexity_hint"] = schema.complexity_hint
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def load_schema(source: Union[bytes, str, Path, IO]) -> Schema:
    if isinstance(source, Path):
        source = source.read_bytes()
    elif hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed schema document: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("cells"), dict):
        raise SchemaError("malformed schema document: expected object with 'cells'")
    if "id" not in doc or not isinstance(doc["id"], str):
        raise SchemaError("malformed schema document: missing string 'id'")

    board = CrossBoard()
    seen = set()
    for token, name in doc["cells"].items():
        try:
            cell = Cell.parse(token)
        except ValueError:
            raise SchemaError(f"invalid coordinate {token!r}") from None
        if not cell_is_valid(cell):
            raise SchemaError(f"invalid coordinate {token!r}: not on the cross")
        if name is None:
            raise SchemaError(f"uncoloured cell {token} in reference schema")
        try:
            board[cell] = Color(name)
        except ValueError:
            raise SchemaError(f"unknown colour {name!r} at {token}") from None
        seen.add(cell)
    if len(seen) != len(CELLS):
        missing = ", ".join(str(c) for c in CELLS if c not in seen)
        raise SchemaError(f"incomplete schema: missing {missing}")

    hint = doc.get("complexity_hint")
    if hint is not None and not isinstance(hint, int):
        raise SchemaError("complexity_hint must be an integer")
    return Schema(id=doc["id"], cells=board, complexity_hint=hint)
