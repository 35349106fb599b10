import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catkit.board import Axis, Cell, Color
from catkit.lang import (
    CopyCells,
    Diagnostic,
    DiagnosticCode,
    Direction,
    Go,
    GoCell,
    MirrorCells,
    MirrorCommands,
    PaintMultipleCells,
    PaintPattern,
    PaintSingleCell,
    ParseError,
    PatternKind,
    PatternSpec,
    RepeatCommands,
    format_command,
    format_program,
    parse_command,
    parse_pattern_token,
    parse_program,
    validate_static,
)

from genast import random_program


def C(token):
    return Cell.parse(token)


# --- parsing ---------------------------------------------------------------


def test_parse_go():
    assert parse_command("go(right,2)") == Go(Direction.RIGHT, 2)


def test_parse_paint_pattern_row():
    cmd = parse_command("paintPattern({yellow,red},6,right)")
    assert cmd == PaintPattern(
        (Color.YELLOW, Color.RED),
        6,
        PatternSpec(PatternKind.CARDINAL, (Direction.RIGHT,)),
    )


def test_parse_error_reports_token_position():
    with pytest.raises(ParseError) as err:
        parse_program("go(rigth,2)")
    assert "rigth" in str(err.value)
    assert err.value.offset == 3
    assert err.value.line == 1
    assert err.value.col == 4


def test_parse_square_repeat_example():
    program = parse_program(
        "repeatCommands({paintPattern({green,blue},4,square_right_up_left)},{A3,E3})"
    )
    (cmd,) = program
    assert isinstance(cmd, RepeatCommands)
    assert cmd.positions == (C("A3"), C("E3"))
    (inner,) = cmd.commands
    assert inner.pattern.kind is PatternKind.SQUARE


def test_statement_separators_and_comments():
    text = """
    # warm-up
    goCell(C1); paintSingleCell(red)
    go(up,1)  # then up
    """
    program = parse_program(text)
    assert [type(c).__name__ for c in program] == ["GoCell", "PaintSingleCell", "Go"]


def test_whitespace_is_insignificant():
    spaced = "paintMultipleCells( { yellow , red } , { C1 , C2 } )"
    assert parse_program(spaced) == parse_program("paintMultipleCells({yellow,red},{C1,C2})")


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("goCel(C1)", "unknown command"),
        ("go(right,0)", "at least 1"),
        ("goCell(B2)", "invalid coordinate"),
        ("goCell(C9)", "cell coordinate"),
        ("paintSingleCell(pink)", "unknown colour"),
        ("paintPattern({},3,right)", "empty colour list"),
        ("paintPattern({red},3,sideways)", "unknown pattern"),
        ("paintPattern({red},2,zigzag_up_down)", "invalid pattern"),
        ("fillEmpty()", "expected a colour"),
        ("go(right)", "expected ','"),
        ("go(right,2,3)", "expected ')'"),
        ("mirrorBoard(diagonal)", "horizontal or vertical"),
        ("copyCells({C1},{C2)", "expected '}'"),
        ("copyCells({C1},{C2}", "expected ')'"),
        ("repeatCommands({},{C1})", "empty command list"),
        ("repeatCommands({goCell(C1)},{})", "empty cell list"),
        ("paintPattern({red},4,square_right_up_right)", "invalid pattern"),
        ("goCell(C1) goCell(C2)", "end of line"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_program(text)
    assert fragment in str(err.value)


def test_nesting_commands_cannot_nest():
    with pytest.raises(ParseError, match="cannot be nested"):
        parse_program("repeatCommands({repeatCommands({goCell(C1)},{C1})},{C2})")
    with pytest.raises(ParseError, match="cannot be nested"):
        parse_program("mirrorCommands({mirrorCommands({},horizontal)},vertical)")
    with pytest.raises(ParseError, match="cannot be nested"):
        parse_program("repeatCommands({mirrorCommands({},horizontal)},{C1})")


def test_empty_lists_where_allowed():
    assert parse_command("mirrorCells({},horizontal)") == MirrorCells((), Axis.HORIZONTAL)
    assert parse_command("mirrorCommands({},vertical)") == MirrorCommands((), Axis.VERTICAL)
    assert parse_command("copyCells({},{})") == CopyCells((), ())


# --- pattern token decoding --------------------------------------------------


def test_exactly_eight_square_names():
    cardinals = ["up", "down", "left", "right"]
    valid = []
    for a in cardinals:
        for b in cardinals:
            for c in cardinals:
                token = f"square_{a}_{b}_{c}"
                spec = parse_pattern_token(token)
                if spec is not None and spec.kind is PatternKind.SQUARE:
                    from catkit.lang import pattern_structure_error

                    if pattern_structure_error(spec) is None:
                        valid.append(token)
    assert len(valid) == 8
    assert "square_right_up_left" in valid


def test_zigzag_token_decomposition_is_unambiguous():
    spec = parse_pattern_token("zigzag_up_left_down")
    assert spec.directions == (Direction.UP_LEFT, Direction.DOWN)
    spec = parse_pattern_token("zigzag_up_down_left")
    assert spec.directions == (Direction.UP, Direction.DOWN_LEFT)
    spec = parse_pattern_token("zigzag_up_right_down_right")
    assert spec.directions == (Direction.UP_RIGHT, Direction.DOWN_RIGHT)


def test_l_tokens():
    spec = parse_pattern_token("l_right_up")
    assert spec.kind is PatternKind.L
    assert parse_pattern_token("l_right_left") is not None  # shape decodes…
    from catkit.lang import pattern_structure_error

    assert pattern_structure_error(parse_pattern_token("l_right_left"))  # …but is invalid


# --- printing ----------------------------------------------------------------


def test_format_examples():
    assert format_command(GoCell(C("C3"))) == "goCell(C3)"
    cells = tuple(C(f"C{i}") for i in range(1, 7))
    assert (
        format_command(MirrorCells(cells, Axis.HORIZONTAL))
        == "mirrorCells({C1,C2,C3,C4,C5,C6},horizontal)"
    )
    assert format_program(()) == ""


def test_format_is_canonical_fixed_point():
    text = " goCell( C1 ) ; paintPattern({yellow , red},6, right) "
    once = format_program(parse_program(text))
    assert format_program(parse_program(once)) == once
    assert once == "goCell(C1)\npaintPattern({yellow,red},6,right)"


def test_seeded_round_trip():
    rng = random.Random(0xCA7)
    for _ in range(500):
        program = random_program(rng)
        assert parse_program(format_program(program)) == program


@st.composite
def command_texts(draw):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    return format_program(random_program(rng))


@given(command_texts())
@settings(max_examples=200, deadline=None)
def test_round_trip_property(text):
    program = parse_program(text)
    assert format_program(program) == text


@given(st.text(max_size=80))
@settings(max_examples=300, deadline=None)
def test_parser_never_crashes_on_junk(text):
    try:
        parse_program(text)
    except ParseError:
        pass  # the only acceptable failure mode


# --- static validation ---------------------------------------------------------


def codes(diags: list[Diagnostic]):
    return [d.code for d in diags]


def test_valid_square_is_clean():
    program = parse_program("goCell(A3)\npaintPattern({green,blue},4,square_right_up_left)")
    assert validate_static(program) == []


def test_square_arity_flagged():
    bad = PaintPattern(
        (Color.RED,),
        3,
        PatternSpec(
            PatternKind.SQUARE, (Direction.RIGHT, Direction.UP, Direction.LEFT)
        ),
    )
    diags = validate_static((bad,))
    assert codes(diags) == [DiagnosticCode.SQUARE_ARITY]
    assert "4" in diags[0].message


def test_copy_length_mismatch_flagged():
    bad = CopyCells((C("C1"), C("C2")), (C("F3"),))
    diags = validate_static((bad,))
    assert codes(diags) == [DiagnosticCode.LENGTH_MISMATCH]
    assert "2 vs 1" in diags[0].message


def test_zigzag_opposite_flagged():
    bad = PaintPattern(
        (Color.RED,),
        3,
        PatternSpec(PatternKind.ZIGZAG, (Direction.UP, Direction.DOWN)),
    )
    assert codes(validate_static((bad,))) == [DiagnosticCode.ZIGZAG_OPPOSITE]


def test_empty_nested_command_list_flagged():
    bad = RepeatCommands((), (C("C1"),))
    assert DiagnosticCode.EMPTY_COMMANDS in codes(validate_static((bad,)))


def test_nested_nesting_flagged():
    inner = RepeatCommands((PaintSingleCell(Color.RED),), (C("C1"),))
    outer = MirrorCommands((inner,), Axis.HORIZONTAL)
    assert DiagnosticCode.NESTED_NESTING in codes(validate_static((outer,)))


def test_diagnostics_carry_command_index():
    program = (
        GoCell(C("C1")),
        CopyCells((C("C1"),), ()),
    )
    (diag,) = validate_static(program)
    assert diag.command_index == 1


def test_clean_random_programs_validate_clean():
    rng = random.Random(7)
    for _ in range(200):
        assert validate_static(random_program(rng)) == []
