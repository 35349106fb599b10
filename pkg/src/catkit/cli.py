"""Command-line entry points for running programs, poking at boards
interactively, validating schema files, crunching datasets and serving
the HTTP API.

Exit codes for `run`: 0 board matches the reference, 1 parse error,
2 interpreter error, 3 ran cleanly but the board differs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import (
    DEFAULT_AGE_GROUPS,
    parse_age_bands,
    render_csv,
    render_text,
    strategy_distribution,
    success_by_schema,
    time_by_interaction,
)
from .board import SchemaError, load_schema, save_schema
from .interp import CatExecError, ExecState, execute_command, run_program
from .lang import ParseError, parse_program
from .locale import labels_for
from .schemas import training_schemas, validation_schemas
from .scorer import (
    DEFAULT_RUBRIC,
    Artefact,
    InteractionDimension,
    UnclassifiableProgramError,
    cat_score,
    check_success,
    classify_dimension,
    load_rubric,
)
from .telemetry import parse_dataset, pseudonymise


def data_dir() -> Path:
    return Path(os.environ.get("CAT_DATA_DIR", ".")).expanduser()


def _rubric_from(args):
    if getattr(args, "rubric", None):
        return load_rubric(Path(args.rubric))
    return DEFAULT_RUBRIC


# Batch runs use the symbolic no-feedback interaction: a text program is
# symbolic by construction and a batch run has no live feedback.
_BATCH_INTERACTION = InteractionDimension(Artefact.PROGRAMMING, feedback=False)


def cmd_run(args) -> int:
    try:
        program = parse_program(Path(args.program).read_text(encoding="utf-8"))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    reference = None
    if args.schema:
        reference = load_schema(Path(args.schema))
    rubric = _rubric_from(args)

    result = run_program(program)
    board = result.state.board
    success = reference is not None and check_success(board, reference)
    try:
        dimension = classify_dimension(program)
    except UnclassifiableProgramError:
        dimension = None

    if args.format == "json":
        doc = {
            "board": board.to_cells_dict(),
            "executed": result.state.executed,
            "success": success,
            "dimension": dimension.name if dimension else None,
            "error": result.error.describe() if result.error else None,
        }
        if dimension is not None:
            doc["score"] = cat_score(dimension, _BATCH_INTERACTION, rubric).to_dict()
        print(json.dumps(doc, indent=2))
    else:
        print(board.render())
        if result.error is not None:
            print(f"error: {result.error.describe()}")
        print(f"executed: {result.state.executed}/{len(program)}")
        print(f"success: {'yes' if success else 'no'}")
        if dimension is None:
            print("dimension: — (no painting command)")
        else:
            score = cat_score(dimension, _BATCH_INTERACTION, rubric)
            print(f"dimension: {dimension.name}")
            print(
                f"score: algorithm={score.algorithm_points} "
                f"artefact={score.artefact_points} autonomy={score.autonomy_points} "
                f"total={score.total} (rubric {score.rubric_id})"
            )

    if result.error is not None:
        return 2
    return 0 if success else 3


def cmd_repl(args) -> int:
    reference = load_schema(Path(args.schema)) if args.schema else None
    rubric = _rubric_from(args)
    labels = labels_for(args.lang)
    state = ExecState()
    confirmed: list = []
    feedback = True

    def show():
        if feedback:
            print(state.board.render())
            if state.cursor:
                print(f"cursor: {state.cursor}")
        elif reference is not None:
            print(f"{labels['reference']}:")
            print(reference.cells.render())
        else:
            print(f"({labels['feedback_off']})")

    print("cross-array repl — :feedback on|off, :score, :reset, :surrender, :quit")
    show()
    while True:
        try:
            line = input("cat> ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            continue
        if line.startswith(":"):
            parts = line[1:].split()
            word = parts[0] if parts else ""
            if word == "quit":
                return 0
            if word == "feedback":
                feedback = not (parts[1:] == ["off"])
                print(labels["feedback_on"] if feedback else labels["feedback_off"])
                show()
            elif word == "score":
                try:
                    dimension = classify_dimension(tuple(confirmed))
                except UnclassifiableProgramError:
                    print("dimension: — (nothing painted yet)")
                    continue
                score = cat_score(dimension, _BATCH_INTERACTION, rubric)
                print(f"dimension: {dimension.name}  total: {score.total}")
            elif word == "reset":
                state = ExecState()
                confirmed.clear()
                print("board reset")
                show()
            elif word == "surrender":
                print("schema skipped")
                return 0
            else:
                print(f"unknown repl command :{word}")
            continue
        try:
            commands = parse_program(line)
        except ParseError as exc:
            print(f"parse error: {exc}")
            continue
        for cmd in commands:
            try:
                execute_command(state, cmd)
            except CatExecError as exc:
                print(f"error: {exc.kind.value}: {exc.message} — {exc.suggestion}")
                break
            confirmed.append(cmd)
        show()
        if reference is not None and check_success(state.board, reference):
            print("schema complete!")


def cmd_validate(args) -> int:
    failed = False
    for path in args.schemas:
        try:
            schema = load_schema(Path(path))
        except (SchemaError, OSError) as exc:
            print(f"{path}: INVALID — {exc}")
            failed = True
            continue
        print(f"{path}: ok ({schema.id})")
    return 1 if failed else 0


def cmd_schemas(args) -> int:
    out = Path(args.out) if args.out else data_dir() / "schemas"
    out.mkdir(parents=True, exist_ok=True)
    count = 0
    for schema in (*validation_schemas(), *training_schemas()):
        (out / f"{schema.id}.json").write_bytes(save_schema(schema))
        count += 1
    print(f"wrote {count} schema files to {out}")
    return 0


def cmd_analyze(args) -> int:
    dataset = parse_dataset(Path(args.dataset).read_bytes())
    groups = parse_age_bands(args.bands) if args.bands else DEFAULT_AGE_GROUPS
    if args.kind == "times":
        report = time_by_interaction(dataset)
    elif args.kind == "success":
        report = success_by_schema(dataset, groups)
    else:
        report = strategy_distribution(dataset, groups)

    if args.format == "json":
        text = json.dumps(report.to_json_dict(), indent=2, ensure_ascii=False)
    else:
        headers, body = report.to_table()
        text = render_csv(headers, body) if args.format == "csv" else render_text(headers, body)
        extras = [*getattr(report, "warnings", []), *getattr(report, "notices", [])]
        if extras and args.format == "text":
            text += "\n" + "\n".join(f"note: {line}" for line in extras)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def cmd_pseudonymise(args) -> int:
    raw = Path(args.dataset).read_bytes()
    data, mapping = pseudonymise(raw, salt=args.salt)
    out = Path(args.out) if args.out else Path(args.dataset).with_suffix(".pseudo.jsonl")
    out.write_bytes(data)
    map_path = Path(args.map_out) if args.map_out else out.with_suffix(".mapping.json")
    map_path.write_text(json.dumps(mapping, indent=2), encoding="utf-8")
    print(f"wrote {out} (mapping kept separately in {map_path})")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    store_dir = Path(args.data_dir) if args.data_dir else data_dir()
    app = create_app(rubric=_rubric_from(args), data_dir=store_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catkit", description="cross-array colouring task toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="execute a .cat program against a schema")
    p.add_argument("program", help="program file (.cat)")
    p.add_argument("--schema", help="reference schema JSON file")
    p.add_argument("--rubric", help="rubric JSON file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("repl", help="interactive command loop")
    p.add_argument("--schema", help="reference schema JSON file")
    p.add_argument("--rubric", help="rubric JSON file")
    p.add_argument("--lang", default="en", help="label language (it|fr|de|en)")
    p.set_defaults(fn=cmd_repl)

    p = sub.add_parser("validate", help="check schema files")
    p.add_argument("schemas", nargs="+")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("schemas", help="write the bundled schema sets")
    p.add_argument("--out", help="output directory (default $CAT_DATA_DIR/schemas)")
    p.set_defaults(fn=cmd_schemas)

    p = sub.add_parser("analyze", help="reports over an exported dataset")
    p.add_argument("kind", choices=("times", "success", "strategies"))
    p.add_argument("dataset", help="dataset file (.catlog.jsonl)")
    p.add_argument("--bands", help="age bands, e.g. 3-6!,10-13 (! = gesture-only)")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("--out", help="write the report to a file")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("pseudonymise", help="pseudonymise a dataset file")
    p.add_argument("dataset")
    p.add_argument("--salt", help="explicit salt (default: derived from session id)")
    p.add_argument("--out", help="output dataset path")
    p.add_argument("--map-out", dest="map_out", help="mapping table path")
    p.set_defaults(fn=cmd_pseudonymise)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--rubric", help="rubric JSON file")
    p.add_argument("--data-dir", help="storage root (default $CAT_DATA_DIR)")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
