import { describe, expect, it } from "vitest";

import { CommandParseError, decodePatternToken, parseCommandText } from "../src/parser.js";

describe("canonical command parsing", () => {
  it("parses movement", () => {
    expect(parseCommandText("goCell(C3)")).toEqual({ kind: "goCell", cell: "C3" });
    expect(parseCommandText("go(right,2)")).toEqual({
      kind: "go",
      direction: "right",
      repetitions: 2,
    });
  });

  it("parses nested commands", () => {
    const block = parseCommandText(
      "repeatCommands({goCell(C1),paintSingleCell(red)},{A3,E3})",
    );
    expect(block.kind).toBe("repeatCommands");
    if (block.kind === "repeatCommands") {
      expect(block.commands).toHaveLength(2);
      expect(block.positions).toEqual(["A3", "E3"]);
    }
  });

  it("rejects strings the block UI could never produce", () => {
    expect(() => parseCommandText("goCell(B2)")).toThrow(CommandParseError);
    expect(() => parseCommandText("go(rigth,2)")).toThrow(/unknown direction/);
    expect(() => parseCommandText("fillEmpty()")).toThrow(CommandParseError);
    expect(() => parseCommandText("explode(C1)")).toThrow(/unknown command/);
    expect(() => parseCommandText("goCell(C1) extra")).toThrow(/trailing/);
    expect(() =>
      parseCommandText("repeatCommands({repeatCommands({goCell(C1)},{C1})},{C1})"),
    ).toThrow(/nested/);
  });

  it("decodes multi-word pattern tokens unambiguously", () => {
    expect(decodePatternToken("zigzag_up_left_down")).toEqual({
      kind: "zigzag",
      first: "up_left",
      second: "down",
    });
    expect(decodePatternToken("zigzag_up_down_left")).toEqual({
      kind: "zigzag",
      first: "up",
      second: "down_left",
    });
    expect(decodePatternToken("square_right_up_left")).toEqual({
      kind: "square",
      first: "right",
      second: "up",
    });
    expect(decodePatternToken("l_down_left")).toEqual({
      kind: "l",
      first: "down",
      second: "left",
    });
    expect(() => decodePatternToken("square_right_up")).toThrow(CommandParseError);
  });
});
