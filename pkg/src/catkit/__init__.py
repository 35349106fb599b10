"""Cross-array colouring task toolkit.

A formal colouring language over a 20-dot cross board, its interpreter,
assessment scoring, session telemetry with dataset export and
pseudonymisation, batch analyses, and an HTTP session service.
"""

from .board import (
    CELLS,
    Axis,
    Cell,
    Color,
    CrossBoard,
    Schema,
    SchemaError,
    is_valid_cell,
    load_schema,
    mirror_coord,
    save_schema,
)
from .lang import (
    Command,
    Diagnostic,
    Direction,
    ParseError,
    PatternKind,
    PatternSpec,
    Program,
    format_command,
    format_program,
    parse_command,
    parse_program,
    validate_static,
)
from .interp import (
    CatExecError,
    ExecErrorKind,
    ExecState,
    RunResult,
    execute_command,
    mirror_command_ast,
    run_program,
    trace_lines,
)
from .scorer import (
    AlgorithmDimension,
    Artefact,
    CatScore,
    InteractionDimension,
    Rubric,
    DEFAULT_RUBRIC,
    TaskOutcome,
    UnclassifiableProgramError,
    cat_score,
    check_success,
    classify_dimension,
    derive_interaction,
    load_rubric,
)

__version__ = "0.1.0"

__all__ = [
    "CELLS",
    "Axis",
    "Cell",
    "Color",
    "CrossBoard",
    "Schema",
    "SchemaError",
    "is_valid_cell",
    "load_schema",
    "mirror_coord",
    "save_schema",
    "Command",
    "Diagnostic",
    "Direction",
    "ParseError",
    "PatternKind",
    "PatternSpec",
    "Program",
    "format_command",
    "format_program",
    "parse_command",
    "parse_program",
    "validate_static",
    "CatExecError",
    "ExecErrorKind",
    "ExecState",
    "RunResult",
    "execute_command",
    "mirror_command_ast",
    "run_program",
    "trace_lines",
    "AlgorithmDimension",
    "Artefact",
    "CatScore",
    "InteractionDimension",
    "Rubric",
    "DEFAULT_RUBRIC",
    "TaskOutcome",
    "UnclassifiableProgramError",
    "cat_score",
    "check_success",
    "classify_dimension",
    "derive_interaction",
    "load_rubric",
    "__version__",
]
