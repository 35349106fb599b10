import { describe, expect, it } from "vitest";

import { canUse, compileGesture, freshGesture, touchCell } from "../src/gestures.js";

describe("gesture compilation", () => {
  it("drag across a row with a colour becomes one multi-cell paint", () => {
    let state = { ...freshGesture(), selectedColor: "yellow" as const };
    for (const cell of ["C1", "C2", "C3", "C4", "C5", "C6"]) {
      state = touchCell(state, cell);
    }
    const result = compileGesture(state);
    expect(result).toEqual({
      ok: true,
      commands: ["paintMultipleCells({yellow},{C1,C2,C3,C4,C5,C6})"],
    });
  });

  it("a single tap goes to the dot and paints it", () => {
    let state = { ...freshGesture(), selectedColor: "red" as const };
    state = touchCell(state, "D4");
    expect(compileGesture(state)).toEqual({
      ok: true,
      commands: ["goCell(D4)", "paintSingleCell(red)"],
    });
  });

  it("touches off the cross or repeated touches are ignored", () => {
    let state = { ...freshGesture(), selectedColor: "red" as const };
    state = touchCell(state, "B2");
    state = touchCell(state, "C1");
    state = touchCell(state, "C1");
    expect(state.path).toEqual(["C1"]);
  });

  it("fill needs a selected colour and the button knows it", () => {
    const noColour = { ...freshGesture(), pending: "fill" as const };
    expect(canUse(noColour, "fill")).toBe(false);
    expect(compileGesture(noColour)).toEqual({
      ok: false,
      problem: "select a colour first",
    });
    const ready = { ...noColour, selectedColor: "green" as const };
    expect(canUse(ready, "fill")).toBe(true);
    expect(compileGesture(ready)).toEqual({ ok: true, commands: ["fillEmpty(green)"] });
  });

  it("copy pairs origins with destinations", () => {
    let state = { ...freshGesture(), pending: "copy" as const, copyOrigin: ["C1", "C2"] };
    state = touchCell(state, "D1");
    expect(compileGesture(state).ok).toBe(false); // one destination short
    state = touchCell(state, "D2");
    expect(compileGesture(state)).toEqual({
      ok: true,
      commands: ["copyCells({C1,C2},{D1,D2})"],
    });
  });

  it("mirror without a path mirrors the whole board", () => {
    const state = { ...freshGesture(), pending: "mirror" as const };
    expect(compileGesture(state)).toEqual({
      ok: true,
      commands: ["mirrorBoard(horizontal)"],
    });
    const some = touchCell(state, "C1");
    expect(compileGesture(some)).toEqual({
      ok: true,
      commands: ["mirrorCells({C1},horizontal)"],
    });
  });
});
