/** Programming-block model.
 *
 * Each block mirrors one command form of the colouring language. Slots
 * start empty (null / empty lists); `blockProblems` lists what is still
 * missing so the UI can shade those slots and keep the confirm button
 * disabled, and `serialiseBlock` emits the canonical command text only
 * for a fully-filled block. By construction the client can never send
 * the service a string its parser rejects.
 */

import {
  Axis,
  BOARD_CELL_SET,
  Cardinal,
  CellToken,
  Color,
  Direction,
  OPPOSITE,
} from "./types.js";

export type PatternChoice =
  | { kind: "line"; direction: Direction }
  | { kind: "square"; first: Cardinal; second: Cardinal }
  | { kind: "l"; first: Cardinal; second: Cardinal }
  | { kind: "zigzag"; first: Direction; second: Direction };

export type Block =
  | { kind: "goCell"; cell: CellToken | null }
  | { kind: "go"; direction: Direction | null; repetitions: number }
  | { kind: "paintSingleCell"; color: Color | null }
  | {
      kind: "paintPattern";
      colors: Color[];
      repetitions: number;
      pattern: PatternChoice | null;
    }
  | { kind: "paintMultipleCells"; colors: Color[]; cells: CellToken[] }
  | { kind: "fillEmpty"; color: Color | null }
  | { kind: "repeatCommands"; commands: Block[]; positions: CellToken[] }
  | { kind: "copyCells"; origin: CellToken[]; destination: CellToken[] }
  | { kind: "mirrorBoard"; axis: Axis | null }
  | { kind: "mirrorCells"; cells: CellToken[]; axis: Axis | null }
  | { kind: "mirrorCommands"; commands: Block[]; axis: Axis | null };

export type BlockKind = Block["kind"];

export const BLOCK_KINDS: readonly BlockKind[] = [
  "goCell",
  "go",
  "paintSingleCell",
  "paintPattern",
  "paintMultipleCells",
  "fillEmpty",
  "repeatCommands",
  "copyCells",
  "mirrorBoard",
  "mirrorCells",
  "mirrorCommands",
];

/** Menu grouping for the left-hand palette. */
export const BLOCK_MENUS: Record<string, readonly BlockKind[]> = {
  move: ["goCell", "go"],
  paint: ["paintSingleCell", "paintPattern", "paintMultipleCells", "fillEmpty"],
  repeat: ["repeatCommands", "copyCells"],
  mirror: ["mirrorBoard", "mirrorCells", "mirrorCommands"],
};

/** Kinds that hold nested command lists; these may not nest each other. */
export const NESTING_KINDS: readonly BlockKind[] = ["repeatCommands", "mirrorCommands"];

export function emptyBlock(kind: BlockKind): Block {
  switch (kind) {
    case "goCell":
      return { kind, cell: null };
    case "go":
      return { kind, direction: null, repetitions: 1 };
    case "paintSingleCell":
      return { kind, color: null };
    case "paintPattern":
      return { kind, colors: [], repetitions: 1, pattern: null };
    case "paintMultipleCells":
      return { kind, colors: [], cells: [] };
    case "fillEmpty":
      return { kind, color: null };
    case "repeatCommands":
      return { kind, commands: [], positions: [] };
    case "copyCells":
      return { kind, origin: [], destination: [] };
    case "mirrorBoard":
      return { kind, axis: null };
    case "mirrorCells":
      return { kind, cells: [], axis: null };
    case "mirrorCommands":
      return { kind, commands: [], axis: null };
  }
}

function perpendicular(a: Cardinal, b: Cardinal): boolean {
  const vertical = (d: Cardinal) => d === "up" || d === "down";
  return vertical(a) !== vertical(b);
}

export function patternToken(choice: PatternChoice): string {
  switch (choice.kind) {
    case "line":
      return choice.direction;
    case "square":
      return `square_${choice.first}_${choice.second}_${OPPOSITE[choice.first]}`;
    case "l":
      return `l_${choice.first}_${choice.second}`;
    case "zigzag":
      return `zigzag_${choice.first}_${choice.second}`;
  }
}

export function patternChoiceProblem(choice: PatternChoice): string | null {
  switch (choice.kind) {
    case "line":
      return null;
    case "square":
    case "l":
      return perpendicular(choice.first, choice.second)
        ? null
        : "the two moves must be perpendicular";
    case "zigzag":
      if (choice.first === choice.second) return "pick two different directions";
      if (OPPOSITE[choice.first] === choice.second)
        return "the directions must not be opposite";
      return null;
  }
}

/** Cells a pattern choice will paint: square and l are always 4. */
export function patternFixedSize(choice: PatternChoice): number | null {
  return choice.kind === "square" || choice.kind === "l" ? 4 : null;
}

function badCell(cell: CellToken): boolean {
  return !BOARD_CELL_SET.has(cell);
}

/** What still stops this block from serialising; empty means complete. */
export function blockProblems(block: Block): string[] {
  const problems: string[] = [];
  const needCells = (cells: CellToken[], slot: string) => {
    for (const cell of cells) {
      if (badCell(cell)) problems.push(`${slot}: ${cell} is not on the board`);
    }
  };
  switch (block.kind) {
    case "goCell":
      if (block.cell === null) problems.push("cell: pick a target dot");
      else needCells([block.cell], "cell");
      break;
    case "go":
      if (block.direction === null) problems.push("direction: pick one");
      if (block.repetitions < 1) problems.push("repetitions: must be at least 1");
      break;
    case "paintSingleCell":
      if (block.color === null) problems.push("colour: pick one");
      break;
    case "paintPattern": {
      if (block.colors.length === 0) problems.push("colours: pick at least one");
      if (block.pattern === null) problems.push("pattern: pick one");
      else {
        const bad = patternChoiceProblem(block.pattern);
        if (bad !== null) problems.push(`pattern: ${bad}`);
        const fixed = patternFixedSize(block.pattern);
        if (fixed !== null && block.repetitions !== fixed) {
          problems.push(`repetitions: this pattern paints exactly ${fixed} dots`);
        }
      }
      if (block.repetitions < 1) problems.push("repetitions: must be at least 1");
      break;
    }
    case "paintMultipleCells":
      if (block.colors.length === 0) problems.push("colours: pick at least one");
      if (block.cells.length === 0) problems.push("cells: pick at least one");
      needCells(block.cells, "cells");
      break;
    case "fillEmpty":
      if (block.color === null) problems.push("colour: pick one");
      break;
    case "repeatCommands":
      if (block.commands.length === 0) problems.push("commands: add at least one");
      if (block.positions.length === 0) problems.push("positions: pick at least one");
      needCells(block.positions, "positions");
      for (const inner of block.commands) {
        if (NESTING_KINDS.includes(inner.kind)) {
          problems.push(`commands: ${inner.kind} cannot go inside`);
        } else {
          problems.push(...blockProblems(inner).map((p) => `commands: ${p}`));
        }
      }
      break;
    case "copyCells":
      if (block.origin.length !== block.destination.length) {
        problems.push("cells: pick one destination per origin");
      }
      needCells(block.origin, "origin");
      needCells(block.destination, "destination");
      break;
    case "mirrorBoard":
      if (block.axis === null) problems.push("axis: pick one");
      break;
    case "mirrorCells":
      if (block.axis === null) problems.push("axis: pick one");
      needCells(block.cells, "cells");
      break;
    case "mirrorCommands":
      if (block.axis === null) problems.push("axis: pick one");
      for (const inner of block.commands) {
        if (NESTING_KINDS.includes(inner.kind)) {
          problems.push(`commands: ${inner.kind} cannot go inside`);
        } else {
          problems.push(...blockProblems(inner).map((p) => `commands: ${p}`));
        }
      }
      break;
  }
  return problems;
}

export function isComplete(block: Block): boolean {
  return blockProblems(block).length === 0;
}

const list = (items: string[]) => `{${items.join(",")}}`;

/** Canonical command text for a complete block; null while incomplete. */
export function serialiseBlock(block: Block): string | null {
  if (!isComplete(block)) return null;
  switch (block.kind) {
    case "goCell":
      return `goCell(${block.cell})`;
    case "go":
      return `go(${block.direction},${block.repetitions})`;
    case "paintSingleCell":
      return `paintSingleCell(${block.color})`;
    case "paintPattern":
      return `paintPattern(${list(block.colors)},${block.repetitions},${patternToken(
        block.pattern as PatternChoice,
      )})`;
    case "paintMultipleCells":
      return `paintMultipleCells(${list(block.colors)},${list(block.cells)})`;
    case "fillEmpty":
      return `fillEmpty(${block.color})`;
    case "repeatCommands": {
      const inner = block.commands.map((c) => serialiseBlock(c) as string);
      return `repeatCommands(${list(inner)},${list(block.positions)})`;
    }
    case "copyCells":
      return `copyCells(${list(block.origin)},${list(block.destination)})`;
    case "mirrorBoard":
      return `mirrorBoard(${block.axis})`;
    case "mirrorCells":
      return `mirrorCells(${list(block.cells)},${block.axis})`;
    case "mirrorCommands": {
      const inner = block.commands.map((c) => serialiseBlock(c) as string);
      return `mirrorCommands(${list(inner)},${block.axis})`;
    }
  }
}
