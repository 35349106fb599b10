"""Assessment scoring: algorithmic dimension, interaction dimension,
composite score, and the task success check.

The algorithmic dimension grades what a program demonstrates: colouring
dots one by one (D0), single-colour multi-dot patterns (D1), or
alternation, repetition, copying and mirroring (D2). A program's class is
the maximum over its commands. The interaction dimension pairs the
artefact used (gesture vs programming blocks) with whether visual
feedback was relied on; less feedback means more autonomy.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering
from pathlib import Path
from typing import IO, Iterable, Optional, Union

from .board import CrossBoard, Schema
from .lang import (
    Command,
    CopyCells,
    FillEmpty,
    MirrorBoard,
    MirrorCells,
    MirrorCommands,
    PaintMultipleCells,
    PaintPattern,
    PaintSingleCell,
    Program,
    RepeatCommands,
)


@total_ordering
class AlgorithmDimension(Enum):
    D0 = 0
    D1 = 1
    D2 = 2

    def __lt__(self, other: "AlgorithmDimension"):
        if not isinstance(other, AlgorithmDimension):
            return NotImplemented
        return self.value < other.value

    def __str__(self) -> str:
        return self.name


class Artefact(str, Enum):
    GESTURE = "G"
    PROGRAMMING = "P"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class InteractionDimension:
    artefact: Artefact
    feedback: bool

    @property
    def label(self) -> str:
        """One of GF, G, PF, P — the F marks reliance on visual feedback."""
        return self.artefact.value + ("F" if self.feedback else "")

    @classmethod
    def from_label(cls, label: str) -> "InteractionDimension":
        feedback = label.endswith("F")
        return cls(Artefact(label[:1]), feedback)


class UnclassifiableProgramError(ValueError):
    """The program contains no painting command to grade."""


def _command_dimension(cmd: Command) -> Optional[AlgorithmDimension]:
    if isinstance(cmd, PaintSingleCell):
        return AlgorithmDimension.D0
    if isinstance(cmd, FillEmpty):
        return AlgorithmDimension.D1
    if isinstance(cmd, (PaintPattern, PaintMultipleCells)):
        alternating = len(set(cmd.colors)) > 1
        return AlgorithmDimension.D2 if alternating else AlgorithmDimension.D1
    if isinstance(
        cmd, (RepeatCommands, CopyCells, MirrorBoard, MirrorCells, MirrorCommands)
    ):
        return AlgorithmDimension.D2
    return None  # Go / GoCell say nothing about colouring skill


def classify_dimension(program: Program) -> AlgorithmDimension:
    """Highest dimension demonstrated by any command of the program."""
    best: Optional[AlgorithmDimension] = None
    for cmd in program:
        d = _command_dimension(cmd)
        if d is not None and (best is None or d > best):
            best = d
    if best is None:
        raise UnclassifiableProgramError("program has no painting command")
    return best


class RubricError(ValueError):
    pass


@dataclass(frozen=True)
class Rubric:
    """Point tables for the three score components."""

    id: str
    algorithm: dict[str, int]
    artefact: dict[str, int]
    autonomy: dict[str, int]

    def lookup(self, table_name: str, key: str) -> int:
        table = getattr(self, table_name)
        if key not in table:
            raise RubricError(f"rubric {self.id!r} has no {table_name} entry {key!r}")
        return table[key]


DEFAULT_RUBRIC = Rubric(
    id="default-v1",
    algorithm={"D0": 0, "D1": 1, "D2": 2},
    artefact={"G": 0, "P": 1},
    autonomy={"feedback": 0, "no_feedback": 1},
)


def load_rubric(source: Union[str, Path, bytes, dict, IO]) -> Rubric:
    """Read a rubric config document (JSON object with algorithm /
    artefact / autonomy tables and an optional id)."""
    if isinstance(source, dict):
        doc = source
    else:
        if isinstance(source, Path):
            source = source.read_bytes()
        elif hasattr(source, "read"):
            source = source.read()
        if isinstance(source, str) and "{" not in source:
            source = Path(source).read_bytes()
        doc = json.loads(source)
    try:
        return Rubric(
            id=str(doc.get("id", "custom")),
            algorithm={str(k): int(v) for k, v in doc["algorithm"].items()},
            artefact={str(k): int(v) for k, v in doc["artefact"].items()},
            autonomy={str(k): int(v) for k, v in doc["autonomy"].items()},
        )
    except KeyError as exc:
        raise RubricError(f"rubric document missing table {exc}") from None


@dataclass(frozen=True)
class CatScore:
    algorithm_points: int
    artefact_points: int
    autonomy_points: int
    total: int
    rubric_id: str

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm_points,
            "artefact": self.artefact_points,
            "autonomy": self.autonomy_points,
            "total": self.total,
            "rubric_id": self.rubric_id,
        }


def cat_score(
    dimension: AlgorithmDimension,
    interaction: InteractionDimension,
    rubric: Rubric = DEFAULT_RUBRIC,
) -> CatScore:
    algo = rubric.lookup("algorithm", dimension.name)
    arte = rubric.lookup("artefact", interaction.artefact.value)
    auto = rubric.lookup("autonomy", "feedback" if interaction.feedback else "no_feedback")
    return CatScore(
        algorithm_points=algo,
        artefact_points=arte,
        autonomy_points=auto,
        total=algo + arte + auto,
        rubric_id=rubric.id,
    )


def check_success(board: CrossBoard, reference: Schema) -> bool:
    """Exact replication: all 20 cells coloured and matching."""
    return board == reference.cells


_TERMINAL_KINDS = ("TASK_COMPLETED", "TASK_ABANDONED", "SURRENDER")


def derive_interaction(
    events: Iterable,
    initial_interface: str = "G",
    initial_feedback: bool = False,
) -> InteractionDimension:
    """Interaction dimension of one task's event slice.

    Interface and feedback settings persist across tasks, so callers pass
    the state at task start. The artefact is whatever interface was active
    at the final confirmation (or surrender); feedback counts if it was on
    at any point during the task.

    Events only need `.kind` and `.payload` attributes.
    """
    interface = initial_interface
    feedback_seen = initial_feedback
    final_artefact: Optional[str] = None
    saw_confirm = False
    for event in events:
        kind = str(event.kind)
        if kind == "INTERFACE_SWITCH":
            interface = event.payload["interface"]
        elif kind == "FEEDBACK_TOGGLE":
            if event.payload.get("enabled"):
                feedback_seen = True
        elif kind in _TERMINAL_KINDS:
            final_artefact = interface
            saw_confirm = True
        elif kind == "CONFIRM_COMMAND":
            final_artefact = interface
            saw_confirm = True
    if not saw_confirm:
        raise ValueError("task has no confirmation or surrender event")
    return InteractionDimension(Artefact(final_artefact), feedback_seen)


@dataclass(frozen=True)
class TaskOutcome:
    """Per-schema outcome of one student's attempt."""

    schema_id: str
    attempted: bool
    solved: bool
    surrendered: bool
    duration_s: Optional[float] = None
    dimension: Optional[AlgorithmDimension] = None
    interaction: Optional[InteractionDimension] = None
    score: Optional[CatScore] = None

    def __post_init__(self):
        if self.solved and not self.attempted:
            raise ValueError("solved implies attempted")
        if self.surrendered and self.solved:
            raise ValueError("a surrendered task cannot be solved")
