"""Bundled reference schema sets.

These are generated stand-ins, not the original assessment artwork: 12
validation schemas (V01-V12) and 15 training schemas (T01-T15), built to
exhibit increasing regularity — uniform fills, then halves and stripes,
then symmetric and alternating multi-colour patterns.
"""

from __future__ import annotations

from .board import CELLS, Axis, Cell, Color, CrossBoard, Schema, mirror_coord

_PALETTE = (Color.YELLOW, Color.RED, Color.GREEN, Color.BLUE)


def _board(fn) -> CrossBoard:
    b = CrossBoard()
    for cell in CELLS:
        b[cell] = fn(cell)
    return b


def _uniform(color: Color) -> CrossBoard:
    return _board(lambda c: color)


def _split(axis: Axis, low: Color, high: Color) -> CrossBoard:
    """Two halves. Horizontal: rows A-C vs D-F; vertical: cols 1-3 vs 4-6."""
    if axis is Axis.HORIZONTAL:
        return _board(lambda c: low if c.row in "ABC" else high)
    return _board(lambda c: low if c.col <= 3 else high)


def _stripes(by_row: bool, colors: tuple[Color, ...]) -> CrossBoard:
    if by_row:
        return _board(lambda c: colors["ABCDEF".index(c.row) % len(colors)])
    return _board(lambda c: colors[(c.col - 1) % len(colors)])


def _checker(colors: tuple[Color, Color]) -> CrossBoard:
    return _board(lambda c: colors[("ABCDEF".index(c.row) + c.col) % 2])


def _mirrored(axis: Axis, fn) -> CrossBoard:
    """Colour one half with fn, reflect it onto the other."""
    b = CrossBoard()
    for cell in CELLS:
        if b[cell] is not None:
            continue
        color = fn(cell)
        b[cell] = color
        b[mirror_coord(cell, axis)] = color
    return b


def _arm_core(core: Color, bar: Color, arms: Color) -> CrossBoard:
    def pick(c: Cell) -> Color:
        if c.row in "CD" and c.col in (3, 4):
            return core
        if c.row in "CD":
            return bar
        return arms

    return _board(pick)


def _diagonal_bands(colors: tuple[Color, ...]) -> CrossBoard:
    return _board(lambda c: colors[("ABCDEF".index(c.row) + c.col - 1) % len(colors)])


def _validation_boards() -> list[CrossBoard]:
    y, r, g, b = _PALETTE
    return [
        _uniform(y),
        _uniform(b),
        _split(Axis.HORIZONTAL, r, g),
        _split(Axis.VERTICAL, y, b),
        _stripes(True, (y, r)),
        _stripes(False, (g, b)),
        _arm_core(r, y, b),
        _mirrored(Axis.HORIZONTAL, lambda c: _PALETTE[(c.col - 1) % 3]),
        _mirrored(Axis.VERTICAL, lambda c: _PALETTE[("ABCDEF".index(c.row)) % 3]),
        _checker((y, g)),
        _diagonal_bands((r, b, g)),
        _diagonal_bands(_PALETTE),
    ]


def _training_boards() -> list[CrossBoard]:
    y, r, g, b = _PALETTE
    boards = [
        _uniform(r),
        _uniform(g),
        _split(Axis.HORIZONTAL, b, y),
        _split(Axis.VERTICAL, g, r),
        _stripes(True, (b, g)),
        _stripes(False, (r, y)),
        _stripes(True, (y, r, g)),
        _stripes(False, (b, y, r)),
        _arm_core(g, b, y),
        _arm_core(y, g, r),
        _mirrored(Axis.HORIZONTAL, lambda c: _PALETTE[c.col % 2]),
        _mirrored(Axis.VERTICAL, lambda c: _PALETTE[2 + ("ABCDEF".index(c.row)) % 2]),
        _checker((r, b)),
        _checker((g, y)),
        _diagonal_bands((y, g, b, r)),
    ]
    return boards


def validation_schemas() -> list[Schema]:
    """The 12-schema assessment set, in increasing-regularity order."""
    return [
        Schema(id=f"V{i:02d}", cells=board, complexity_hint=i)
        for i, board in enumerate(_validation_boards(), start=1)
    ]


def training_schemas() -> list[Schema]:
    """The 15-schema practice set."""
    return [
        Schema(id=f"T{i:02d}", cells=board, complexity_hint=i)
        for i, board in enumerate(_training_boards(), start=1)
    ]
