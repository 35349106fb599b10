/** Shared vocabulary and wire types for the assessment service API. */

export const COLORS = ["yellow", "red", "green", "blue"] as const;
export type Color = (typeof COLORS)[number];

export const DIRECTIONS = [
  "up",
  "down",
  "left",
  "right",
  "up_left",
  "up_right",
  "down_left",
  "down_right",
] as const;
export type Direction = (typeof DIRECTIONS)[number];

export const CARDINALS = ["up", "down", "left", "right"] as const;
export type Cardinal = (typeof CARDINALS)[number];

export const AXES = ["horizontal", "vertical"] as const;
export type Axis = (typeof AXES)[number];

export const OPPOSITE: Record<Direction, Direction> = {
  up: "down",
  down: "up",
  left: "right",
  right: "left",
  up_left: "down_right",
  up_right: "down_left",
  down_left: "up_right",
  down_right: "up_left",
};

/** The 20 dots of the cross, canonical order: rows A..F bottom-up, then
 * column; rows C and D span all six columns, the rest only 3 and 4. */
export const BOARD_CELLS: readonly string[] = (() => {
  const out: string[] = [];
  for (const row of "ABCDEF") {
    for (let col = 1; col <= 6; col += 1) {
      if (row === "C" || row === "D" || col === 3 || col === 4) {
        out.push(`${row}${col}`);
      }
    }
  }
  return out;
})();

export const BOARD_CELL_SET: ReadonlySet<string> = new Set(BOARD_CELLS);

export type CellToken = string; // e.g. "C1"; membership checked against BOARD_CELL_SET

export type CellColours = Record<string, string | null>;

export interface CatScore {
  algorithm: number;
  artefact: number;
  autonomy: number;
  total: number;
  rubric_id: string;
}

export interface Progress {
  index: number;
  total: number;
}

export interface ActionError {
  type: "parse" | "exec";
  message: string;
  kind?: string;
  suggestion?: string;
  offset?: number;
}

export interface View {
  student_id: string;
  module: "validation" | "training";
  schema_id: string;
  progress: Progress;
  reference: CellColours;
  board: CellColours | null; // null whenever visual feedback is off
  cursor: string | null;
  feedback_enabled: boolean;
  interface: "G" | "P";
  status: "active" | "completed" | "surrendered";
  read_only: boolean;
  draft: string[];
  confirmed: string[];
  score: CatScore | null;
  error: ActionError | null;
  labels: Record<string, string>;
}

export interface DashboardRow {
  schema_id: string;
  index: number;
  reference: CellColours;
  board: CellColours;
  score: CatScore | null;
  status: "correct" | "incorrect" | "skipped" | "pending";
  status_label: string;
  duration_s: number | null;
}

export interface Dashboard {
  student_id: string;
  rows: DashboardRow[];
  labels: Record<string, string>;
}

export type ActionKind =
  | "ADD_COMMAND"
  | "CONFIRM_COMMAND"
  | "REMOVE_COMMAND"
  | "REORDER_COMMANDS"
  | "MODIFY_PROPERTY"
  | "FEEDBACK_TOGGLE"
  | "INTERFACE_SWITCH"
  | "RETRY"
  | "SURRENDER"
  | "TASK_COMPLETED";

export type SmileyAnswer = "happy" | "neutral" | "sad";
