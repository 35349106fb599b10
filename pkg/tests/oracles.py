"""Independent brute-force oracles for the geometry under test.

Everything here is written from first principles: the 20 board cells and
both mirror maps are literal tables, and pattern walks enumerate steps
with their own arithmetic. Nothing imports the interpreter.
"""

# The 20 cross cells, enumerated by hand from the board drawing:
# rows C and D run the full width, every other row only columns 3 and 4.
VALID_CELLS = [
    "A3", "A4",
    "B3", "B4",
    "C1", "C2", "C3", "C4", "C5", "C6",
    "D1", "D2", "D3", "D4", "D5", "D6",
    "E3", "E4",
    "F3", "F4",
]

VALID_SET = frozenset(VALID_CELLS)

# Hand-written reflection tables over all 20 cells.
MIRROR_HORIZONTAL = {
    "A3": "F3", "A4": "F4",
    "B3": "E3", "B4": "E4",
    "C1": "D1", "C2": "D2", "C3": "D3", "C4": "D4", "C5": "D5", "C6": "D6",
    "D1": "C1", "D2": "C2", "D3": "C3", "D4": "C4", "D5": "C5", "D6": "C6",
    "E3": "B3", "E4": "B4",
    "F3": "A3", "F4": "A4",
}

MIRROR_VERTICAL = {
    "A3": "A4", "A4": "A3",
    "B3": "B4", "B4": "B3",
    "C1": "C6", "C2": "C5", "C3": "C4", "C4": "C3", "C5": "C2", "C6": "C1",
    "D1": "D6", "D2": "D5", "D3": "D4", "D4": "D3", "D5": "D2", "D6": "D1",
    "E3": "E4", "E4": "E3",
    "F3": "F4", "F4": "F3",
}

STEP = {
    "up": (1, 0),
    "down": (-1, 0),
    "left": (0, -1),
    "right": (0, 1),
    "up_left": (1, -1),
    "up_right": (1, 1),
    "down_left": (-1, -1),
    "down_right": (-1, 1),
}

_ROWS = "ABCDEF"


class OracleOverflow(Exception):
    pass


def step_cell(cell: str, direction: str) -> str:
    """One grid step; returns a token even off-grid (caller checks)."""
    drow, dcol = STEP[direction]
    row_index = _ROWS.index(cell[0]) + drow
    col = int(cell[1]) + dcol
    row = _ROWS[row_index] if 0 <= row_index < len(_ROWS) else "?"
    return f"{row}{col}"


def pattern_move_list(kind: str, directions: list[str], repetitions: int) -> list[str]:
    """The move sequence after the start cell, per the documented
    conventions: straight lines repeat one step; square takes its three
    named moves; l goes twice along the first then once along the second;
    zigzag alternates starting with the first."""
    if kind == "square":
        assert repetitions == 4
        return list(directions)
    if kind == "l":
        assert repetitions == 4
        d1, d2 = directions
        return [d1, d1, d2]
    if kind == "zigzag":
        d1, d2 = directions
        return [d1 if i % 2 == 0 else d2 for i in range(repetitions - 1)]
    # cardinal / diagonal straight line
    (d,) = directions
    return [d] * (repetitions - 1)


def oracle_pattern_cells(
    kind: str, directions: list[str], start: str, repetitions: int
) -> list[str]:
    """Brute-force walk of the painted cell sequence, start included.
    Raises OracleOverflow the moment the walk leaves the 20-cell cross."""
    if start not in VALID_SET:
        raise OracleOverflow(start)
    cells = [start]
    pos = start
    for move in pattern_move_list(kind, directions, repetitions):
        pos = step_cell(pos, move)
        if pos not in VALID_SET:
            raise OracleOverflow(pos)
        cells.append(pos)
    return cells


def oracle_alternation(colors: list[str], count: int) -> list[str]:
    """Colour of each painted cell under the alternation rule."""
    return [colors[k % len(colors)] for k in range(count)]


def all_legal_patterns() -> list[tuple[str, list[str]]]:
    """Every (kind, directions) combination the language admits."""
    cardinals = ["up", "down", "left", "right"]
    diagonals = ["up_left", "up_right", "down_left", "down_right"]
    every = cardinals + diagonals
    opposite = {
        "up": "down", "down": "up", "left": "right", "right": "left",
        "up_left": "down_right", "down_right": "up_left",
        "up_right": "down_left", "down_left": "up_right",
    }
    vertical = {"up", "down"}

    out: list[tuple[str, list[str]]] = []
    out += [("cardinal", [d]) for d in cardinals]
    out += [("diagonal", [d]) for d in diagonals]
    for d1 in cardinals:
        for d2 in cardinals:
            if (d1 in vertical) == (d2 in vertical):
                continue
            out.append(("square", [d1, d2, opposite[d1]]))
            out.append(("l", [d1, d2]))
    for d1 in every:
        for d2 in every:
            if d1 != d2 and opposite[d1] != d2:
                out.append(("zigzag", [d1, d2]))
    return out
