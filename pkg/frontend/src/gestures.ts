/** Gesture-interface model: taps, drags and the advanced-action buttons.
 *
 * A finished gesture compiles to one or more canonical command texts; an
 * unfinished or impossible one reports what is missing so the UI can
 * disable buttons and flash the palette instead of ever submitting a
 * bad string.
 */

import { Axis, BOARD_CELL_SET, CellToken, Color } from "./types.js";

export type AdvancedAction = "fill" | "copy" | "mirror";

export interface GestureState {
  selectedColor: Color | null;
  /** Dots touched by the current drag, in touch order (deduplicated). */
  path: CellToken[];
  pending: AdvancedAction | null;
  /** For copy: the origin dots picked before switching to destinations. */
  copyOrigin: CellToken[];
  mirrorAxis: Axis;
}

export function freshGesture(): GestureState {
  return {
    selectedColor: null,
    path: [],
    pending: null,
    copyOrigin: [],
    mirrorAxis: "horizontal",
  };
}

export function touchCell(state: GestureState, cell: CellToken): GestureState {
  if (!BOARD_CELL_SET.has(cell) || state.path.includes(cell)) return state;
  return { ...state, path: [...state.path, cell] };
}

export type GestureResult =
  | { ok: true; commands: string[] }
  | { ok: false; problem: string };

/** Buttons light up only when pressing them could produce a command. */
export function canUse(state: GestureState, action: AdvancedAction): boolean {
  if (action === "fill") return state.selectedColor !== null;
  if (action === "copy") return true;
  return true; // mirror works on any board
}

const list = (items: string[]) => `{${items.join(",")}}`;

export function compileGesture(state: GestureState): GestureResult {
  if (state.pending === "fill") {
    if (state.selectedColor === null) {
      return { ok: false, problem: "select a colour first" };
    }
    return { ok: true, commands: [`fillEmpty(${state.selectedColor})`] };
  }
  if (state.pending === "copy") {
    if (state.copyOrigin.length === 0 || state.path.length === 0) {
      return { ok: false, problem: "pick the dots to copy, then where they go" };
    }
    if (state.copyOrigin.length !== state.path.length) {
      return { ok: false, problem: "pick one destination dot per origin dot" };
    }
    return {
      ok: true,
      commands: [`copyCells(${list(state.copyOrigin)},${list(state.path)})`],
    };
  }
  if (state.pending === "mirror") {
    if (state.path.length > 0) {
      return {
        ok: true,
        commands: [`mirrorCells(${list(state.path)},${state.mirrorAxis})`],
      };
    }
    return { ok: true, commands: [`mirrorBoard(${state.mirrorAxis})`] };
  }
  // plain tap / drag colouring
  if (state.selectedColor === null) {
    return { ok: false, problem: "select a colour first" };
  }
  if (state.path.length === 0) {
    return { ok: false, problem: "touch at least one dot" };
  }
  if (state.path.length === 1) {
    return {
      ok: true,
      commands: [`goCell(${state.path[0]})`, `paintSingleCell(${state.selectedColor})`],
    };
  }
  return {
    ok: true,
    commands: [`paintMultipleCells({${state.selectedColor}},${list(state.path)})`],
  };
}
