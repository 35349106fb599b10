import random
from dataclasses import dataclass

import pytest

from catkit.board import Cell, Color, CrossBoard
from catkit.lang import parse_program
from catkit.scorer import (
    DEFAULT_RUBRIC,
    AlgorithmDimension,
    Artefact,
    InteractionDimension,
    Rubric,
    RubricError,
    TaskOutcome,
    UnclassifiableProgramError,
    cat_score,
    check_success,
    classify_dimension,
    derive_interaction,
    load_rubric,
)
from catkit.schemas import validation_schemas

from genast import random_program

D0, D1, D2 = AlgorithmDimension.D0, AlgorithmDimension.D1, AlgorithmDimension.D2


def classify_text(text):
    return classify_dimension(parse_program(text))


# --- dimension classification -------------------------------------------------


def test_single_dots_are_0d():
    assert classify_text("goCell(C1)\npaintSingleCell(red)") is D0


def test_single_colour_pattern_is_1d():
    assert classify_text("goCell(C1)\npaintPattern({yellow},6,right)") is D1


def test_alternating_colours_are_2d():
    assert classify_text("goCell(C1)\npaintPattern({yellow,red},6,right)") is D2


def test_fill_empty_is_1d():
    assert classify_text("fillEmpty(blue)") is D1


def test_multi_colour_cell_list_is_2d():
    assert classify_text("paintMultipleCells({yellow,red},{C1,C2})") is D2


def test_single_colour_cell_list_is_1d():
    assert classify_text("paintMultipleCells({red},{C1,C2,C3})") is D1


@pytest.mark.parametrize(
    "text",
    [
        "repeatCommands({paintSingleCell(red)},{C1,C2})",
        "copyCells({C1},{C6})",
        "mirrorBoard(horizontal)",
        "mirrorCells({C1},vertical)",
        "mirrorCommands({goCell(C1)},horizontal)",
    ],
)
def test_repetition_copy_and_mirroring_are_2d(text):
    assert classify_text(text) is D2


def test_highest_class_wins():
    assert classify_text("paintSingleCell(red)\nfillEmpty(blue)") is D1
    assert classify_text("fillEmpty(blue)\ncopyCells({C1},{C6})") is D2


def test_movement_only_is_unclassifiable():
    with pytest.raises(UnclassifiableProgramError):
        classify_text("goCell(C1)\ngo(right,2)")
    with pytest.raises(UnclassifiableProgramError):
        classify_dimension(())


def test_dimension_ordering():
    assert D0 < D1 < D2
    assert max([D1, D0, D2]) is D2


def classify_or_none(program):
    try:
        return classify_dimension(program)
    except UnclassifiableProgramError:
        return None


def test_classification_monotone_under_extension():
    rng = random.Random(99)
    for _ in range(300):
        program = random_program(rng)
        extended = program + random_program(rng, max_len=3)
        before, after = classify_or_none(program), classify_or_none(extended)
        if before is not None:
            assert after is not None and after >= before


def test_classification_invariant_under_reordering():
    rng = random.Random(100)
    for _ in range(300):
        program = list(random_program(rng))
        shuffled = program[:]
        rng.shuffle(shuffled)
        assert classify_or_none(tuple(program)) == classify_or_none(tuple(shuffled))


# --- CAT score ------------------------------------------------------------------


def test_default_rubric_maximum_cell():
    score = cat_score(D2, InteractionDimension(Artefact.PROGRAMMING, feedback=False))
    assert (score.algorithm_points, score.artefact_points, score.autonomy_points) == (2, 1, 1)
    assert score.total == 4


def test_default_rubric_minimum_cell():
    score = cat_score(D0, InteractionDimension(Artefact.GESTURE, feedback=True))
    assert score.total == 0


def test_zero_rubric():
    zero = Rubric(
        id="zero",
        algorithm={"D0": 0, "D1": 0, "D2": 0},
        artefact={"G": 0, "P": 0},
        autonomy={"feedback": 0, "no_feedback": 0},
    )
    score = cat_score(D2, InteractionDimension(Artefact.PROGRAMMING, False), zero)
    assert score.total == 0


def test_rubric_missing_entry():
    broken = Rubric(id="broken", algorithm={"D0": 0}, artefact={"G": 0}, autonomy={})
    with pytest.raises(RubricError):
        cat_score(D2, InteractionDimension(Artefact.GESTURE, True), broken)


def test_load_rubric_from_document():
    rubric = load_rubric(
        {
            "id": "strict",
            "algorithm": {"D0": 0, "D1": 2, "D2": 5},
            "artefact": {"G": 0, "P": 3},
            "autonomy": {"feedback": 0, "no_feedback": 2},
        }
    )
    score = cat_score(D1, InteractionDimension(Artefact.PROGRAMMING, False), rubric)
    assert score.total == 2 + 3 + 2


def test_monotone_rubric_gives_monotone_totals():
    rng = random.Random(4)
    for _ in range(50):
        a0 = rng.randint(0, 3)
        a1 = a0 + rng.randint(0, 3)
        a2 = a1 + rng.randint(0, 3)
        g = rng.randint(0, 3)
        p = g + rng.randint(0, 3)
        fb = rng.randint(0, 3)
        nofb = fb + rng.randint(0, 3)
        rubric = Rubric(
            id="mono",
            algorithm={"D0": a0, "D1": a1, "D2": a2},
            artefact={"G": g, "P": p},
            autonomy={"feedback": fb, "no_feedback": nofb},
        )
        for artefact in Artefact:
            for feedback in (True, False):
                interaction = InteractionDimension(artefact, feedback)
                totals = [cat_score(d, interaction, rubric).total for d in (D0, D1, D2)]
                assert totals == sorted(totals)
        for dim in (D0, D1, D2):
            for feedback in (True, False):
                less = cat_score(dim, InteractionDimension(Artefact.GESTURE, feedback), rubric)
                more = cat_score(dim, InteractionDimension(Artefact.PROGRAMMING, feedback), rubric)
                assert less.total <= more.total
            for artefact in Artefact:
                relied = cat_score(dim, InteractionDimension(artefact, True), rubric)
                autonomous = cat_score(dim, InteractionDimension(artefact, False), rubric)
                assert relied.total <= autonomous.total


# --- success check ----------------------------------------------------------------


def test_success_exact_match():
    schema = validation_schemas()[0]
    assert check_success(schema.cells.copy(), schema) is True


def test_success_fails_on_uncoloured_cell():
    schema = validation_schemas()[0]
    board = schema.cells.copy()
    board[Cell.parse("C1")] = None
    assert check_success(board, schema) is False


def test_success_fails_on_wrong_colour():
    schema = validation_schemas()[2]  # two-colour split
    board = schema.cells.copy()
    current = board[Cell.parse("C1")]
    board[Cell.parse("C1")] = Color.BLUE if current is not Color.BLUE else Color.RED
    assert check_success(board, schema) is False


def test_any_single_cell_perturbation_breaks_success():
    schema = validation_schemas()[5]
    for cell in schema.cells:
        board = schema.cells.copy()
        original = board[cell]
        for replacement in (*Color, None):
            if replacement is original:
                continue
            board[cell] = replacement
            assert check_success(board, schema) is False
        board[cell] = original
        assert check_success(board, schema) is True


# --- interaction derivation ----------------------------------------------------------


@dataclass
class Ev:
    kind: str
    payload: dict


def test_interaction_switch_then_confirm():
    events = [
        Ev("INTERFACE_SWITCH", {"interface": "P"}),
        Ev("TASK_COMPLETED", {"success": True}),
    ]
    got = derive_interaction(events)
    assert got == InteractionDimension(Artefact.PROGRAMMING, False)
    assert got.label == "P"


def test_interaction_any_feedback_interval_counts():
    events = [
        Ev("FEEDBACK_TOGGLE", {"enabled": True}),
        Ev("FEEDBACK_TOGGLE", {"enabled": False}),
        Ev("TASK_COMPLETED", {"success": False}),
    ]
    got = derive_interaction(events)
    assert got == InteractionDimension(Artefact.GESTURE, True)
    assert got.label == "GF"


def test_interaction_defaults():
    got = derive_interaction([Ev("TASK_COMPLETED", {"success": True})])
    assert got == InteractionDimension(Artefact.GESTURE, False)


def test_interaction_initial_state_carries_over():
    got = derive_interaction(
        [Ev("SURRENDER", {})], initial_interface="P", initial_feedback=True
    )
    assert got.label == "PF"


def test_interaction_requires_a_terminal_event():
    with pytest.raises(ValueError):
        derive_interaction([Ev("ADD_COMMAND", {"command": "goCell(C1)"})])


def test_interaction_artefact_at_final_confirmation():
    events = [
        Ev("CONFIRM_COMMAND", {"command": "fillEmpty(red)"}),
        Ev("INTERFACE_SWITCH", {"interface": "P"}),
        Ev("TASK_COMPLETED", {"success": True}),
    ]
    assert derive_interaction(events).artefact is Artefact.PROGRAMMING


def test_interaction_labels_round_trip():
    for label in ("GF", "G", "PF", "P"):
        assert InteractionDimension.from_label(label).label == label


# --- task outcome invariants -----------------------------------------------------------


def test_outcome_invariants():
    with pytest.raises(ValueError):
        TaskOutcome(schema_id="V01", attempted=False, solved=True, surrendered=False)
    with pytest.raises(ValueError):
        TaskOutcome(schema_id="V01", attempted=True, solved=True, surrendered=True)
    ok = TaskOutcome(schema_id="V01", attempted=True, solved=False, surrendered=True)
    assert ok.surrendered
