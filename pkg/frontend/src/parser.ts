/** Parser for canonical command text back into block configurations.
 *
 * The client needs this to re-render blocks from draft/confirmed command
 * strings returned by the service (and the round-trip test leans on it:
 * serialise -> parse -> serialise must be the identity).
 */

import { Block, PatternChoice } from "./blocks.js";
import {
  AXES,
  Axis,
  BOARD_CELL_SET,
  CARDINALS,
  Cardinal,
  COLORS,
  Color,
  DIRECTIONS,
  Direction,
} from "./types.js";

export class CommandParseError extends Error {
  constructor(message: string, readonly offset: number) {
    super(`${message} (at ${offset})`);
  }
}

type Token = { kind: "ident" | "number" | "punct"; text: string; offset: number };

function tokenize(text: string): Token[] {
  const tokens: Token[] = [];
  let i = 0;
  while (i < text.length) {
    const ch = text[i] as string;
    if (ch === " " || ch === "\t" || ch === "\r") {
      i += 1;
    } else if (/[A-Za-z_]/.test(ch)) {
      let j = i;
      while (j < text.length && /[A-Za-z0-9_]/.test(text[j] as string)) j += 1;
      tokens.push({ kind: "ident", text: text.slice(i, j), offset: i });
      i = j;
    } else if (/[0-9]/.test(ch)) {
      let j = i;
      while (j < text.length && /[0-9]/.test(text[j] as string)) j += 1;
      tokens.push({ kind: "number", text: text.slice(i, j), offset: i });
      i = j;
    } else if ("(){},".includes(ch)) {
      tokens.push({ kind: "punct", text: ch, offset: i });
      i += 1;
    } else {
      throw new CommandParseError(`unexpected character ${JSON.stringify(ch)}`, i);
    }
  }
  return tokens;
}

class Cursor {
  i = 0;
  constructor(readonly tokens: Token[], readonly length: number) {}

  peek(): Token | null {
    return this.tokens[this.i] ?? null;
  }

  next(): Token {
    const token = this.tokens[this.i];
    if (token === undefined) {
      throw new CommandParseError("unexpected end of command", this.length);
    }
    this.i += 1;
    return token;
  }

  punct(ch: string): void {
    const token = this.next();
    if (token.kind !== "punct" || token.text !== ch) {
      throw new CommandParseError(`expected ${ch}, found ${token.text}`, token.offset);
    }
  }

  ident(): Token {
    const token = this.next();
    if (token.kind !== "ident") {
      throw new CommandParseError(`expected a name, found ${token.text}`, token.offset);
    }
    return token;
  }
}

function isColor(text: string): text is Color {
  return (COLORS as readonly string[]).includes(text);
}

function isDirection(text: string): text is Direction {
  return (DIRECTIONS as readonly string[]).includes(text);
}

function isCardinal(text: string): text is Cardinal {
  return (CARDINALS as readonly string[]).includes(text);
}

function isAxis(text: string): text is Axis {
  return (AXES as readonly string[]).includes(text);
}

export function decodePatternToken(token: string, offset = 0): PatternChoice {
  if (isDirection(token)) return { kind: "line", direction: token };
  const fail = () =>
    new CommandParseError(`unknown pattern ${JSON.stringify(token)}`, offset);
  if (token.startsWith("square_")) {
    const words = token.slice("square_".length).split("_");
    if (words.length !== 3 || !words.every(isCardinal)) throw fail();
    const [first, second] = words as [Cardinal, Cardinal, Cardinal];
    return { kind: "square", first, second };
  }
  if (token.startsWith("l_")) {
    const words = token.slice("l_".length).split("_");
    if (words.length !== 2 || !words.every(isCardinal)) throw fail();
    return { kind: "l", first: words[0] as Cardinal, second: words[1] as Cardinal };
  }
  if (token.startsWith("zigzag_")) {
    const joined = token.slice("zigzag_".length);
    const words = joined.split("_");
    for (const cut of [1, 2]) {
      const first = words.slice(0, cut).join("_");
      const second = words.slice(cut).join("_");
      if (isDirection(first) && isDirection(second)) {
        return { kind: "zigzag", first, second };
      }
    }
    throw fail();
  }
  throw fail();
}

function parseList<T>(cursor: Cursor, item: () => T): T[] {
  cursor.punct("{");
  const items: T[] = [];
  if (cursor.peek()?.text !== "}") {
    items.push(item());
    while (cursor.peek()?.text === ",") {
      cursor.next();
      items.push(item());
    }
  }
  cursor.punct("}");
  return items;
}

function parseCell(cursor: Cursor): string {
  const token = cursor.ident();
  if (!BOARD_CELL_SET.has(token.text)) {
    throw new CommandParseError(`${token.text} is not a board cell`, token.offset);
  }
  return token.text;
}

function parseColor(cursor: Cursor): Color {
  const token = cursor.ident();
  if (!isColor(token.text)) {
    throw new CommandParseError(`unknown colour ${token.text}`, token.offset);
  }
  return token.text;
}

function parseAxis(cursor: Cursor): Axis {
  const token = cursor.ident();
  if (!isAxis(token.text)) {
    throw new CommandParseError(`expected horizontal or vertical`, token.offset);
  }
  return token.text;
}

function parseNumber(cursor: Cursor): number {
  const token = cursor.next();
  if (token.kind !== "number") {
    throw new CommandParseError(`expected a number, found ${token.text}`, token.offset);
  }
  return Number(token.text);
}

function parseOneCommand(cursor: Cursor, nested: boolean): Block {
  const name = cursor.ident();
  const block = ((): Block => {
    switch (name.text) {
      case "goCell": {
        cursor.punct("(");
        const cell = parseCell(cursor);
        return { kind: "goCell", cell };
      }
      case "go": {
        cursor.punct("(");
        const direction = cursor.ident();
        if (!isDirection(direction.text)) {
          throw new CommandParseError(
            `unknown direction ${direction.text}`,
            direction.offset,
          );
        }
        cursor.punct(",");
        const repetitions = parseNumber(cursor);
        return { kind: "go", direction: direction.text, repetitions };
      }
      case "paintSingleCell": {
        cursor.punct("(");
        return { kind: "paintSingleCell", color: parseColor(cursor) };
      }
      case "paintPattern": {
        cursor.punct("(");
        const colors = parseList(cursor, () => parseColor(cursor));
        cursor.punct(",");
        const repetitions = parseNumber(cursor);
        cursor.punct(",");
        const token = cursor.ident();
        const pattern = decodePatternToken(token.text, token.offset);
        return { kind: "paintPattern", colors, repetitions, pattern };
      }
      case "paintMultipleCells": {
        cursor.punct("(");
        const colors = parseList(cursor, () => parseColor(cursor));
        cursor.punct(",");
        const cells = parseList(cursor, () => parseCell(cursor));
        return { kind: "paintMultipleCells", colors, cells };
      }
      case "fillEmpty": {
        cursor.punct("(");
        return { kind: "fillEmpty", color: parseColor(cursor) };
      }
      case "repeatCommands": {
        if (nested) {
          throw new CommandParseError("repeatCommands cannot be nested", name.offset);
        }
        cursor.punct("(");
        const commands = parseList(cursor, () => parseOneCommand(cursor, true));
        cursor.punct(",");
        const positions = parseList(cursor, () => parseCell(cursor));
        return { kind: "repeatCommands", commands, positions };
      }
      case "copyCells": {
        cursor.punct("(");
        const origin = parseList(cursor, () => parseCell(cursor));
        cursor.punct(",");
        const destination = parseList(cursor, () => parseCell(cursor));
        return { kind: "copyCells", origin, destination };
      }
      case "mirrorBoard": {
        cursor.punct("(");
        return { kind: "mirrorBoard", axis: parseAxis(cursor) };
      }
      case "mirrorCells": {
        cursor.punct("(");
        const cells = parseList(cursor, () => parseCell(cursor));
        cursor.punct(",");
        return { kind: "mirrorCells", cells, axis: parseAxis(cursor) };
      }
      case "mirrorCommands": {
        if (nested) {
          throw new CommandParseError("mirrorCommands cannot be nested", name.offset);
        }
        cursor.punct("(");
        const commands = parseList(cursor, () => parseOneCommand(cursor, true));
        cursor.punct(",");
        return { kind: "mirrorCommands", commands, axis: parseAxis(cursor) };
      }
      default:
        throw new CommandParseError(`unknown command ${name.text}`, name.offset);
    }
  })();
  cursor.punct(")");
  return block;
}

/** Parse exactly one canonical command into a block configuration. */
export function parseCommandText(text: string): Block {
  const cursor = new Cursor(tokenize(text), text.length);
  const block = parseOneCommand(cursor, false);
  const leftover = cursor.peek();
  if (leftover !== null) {
    throw new CommandParseError(`trailing input ${leftover.text}`, leftover.offset);
  }
  return block;
}
