/** Single-page client wiring: palette on the left, workspace in the
 * middle, reference + colouring boards on the right with skip/retry
 * below, as in the final three-column layout. Logic lives in the pure
 * modules; this file only mounts HTML and forwards events. */

import { ApiClient } from "./api.js";
import {
  BLOCK_MENUS,
  Block,
  BlockKind,
  blockProblems,
  emptyBlock,
  serialiseBlock,
} from "./blocks.js";
import { compileGesture, freshGesture, GestureState, touchCell } from "./gestures.js";
import { Lang, labelFor } from "./locale.js";
import { renderDashboard, renderSurvey, renderView } from "./render.js";
import { COLORS, Color, View } from "./types.js";

type Mode = "G" | "P";

export class App {
  private view: View | null = null;
  private mode: Mode = "G";
  private gesture: GestureState = freshGesture();
  private editing: Block | null = null;
  private symbolic = false;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
    private readonly lang: Lang = "en",
  ) {}

  async start(): Promise<void> {
    this.view = await this.api.view();
    this.redraw();
    this.root.addEventListener("click", (event) => {
      void this.onClick(event);
    });
  }

  private redraw(): void {
    if (this.view === null) return;
    this.root.innerHTML = renderView(this.view);
    const palette = this.root.querySelector("#palette");
    if (palette !== null) palette.innerHTML = this.renderPalette();
    const workspace = this.root.querySelector("#workspace");
    if (workspace !== null) workspace.innerHTML = this.renderWorkspace();
  }

  private renderPalette(): string {
    const colours = COLORS.map(
      (c) =>
        `<button class="swatch ${c}" data-color="${c}" aria-pressed="${
          this.gesture.selectedColor === c
        }"></button>`,
    ).join("");
    if (this.mode === "G") {
      return (
        `<div class="palette-colours">${colours}</div>` +
        `<button data-gesture="fill" ${this.gesture.selectedColor ? "" : "disabled"}>🪣</button>` +
        `<button data-gesture="copy">⧉</button>` +
        `<button data-gesture="mirror">🪞</button>` +
        `<button data-action="switch-interface">⇄</button>`
      );
    }
    const menus = Object.entries(BLOCK_MENUS)
      .map(([menu, kinds]) => {
        const buttons = kinds
          .map(
            (kind) =>
              `<button data-block="${kind}">${labelFor(kind, this.lang, this.symbolic)}</button>`,
          )
          .join("");
        return `<details class="menu-${menu}" open><summary>${menu}</summary>${buttons}</details>`;
      })
      .join("");
    return (
      `<div class="palette-colours">${colours}</div>` +
      menus +
      `<button data-action="toggle-symbolic">Aa/🙂</button>` +
      `<button data-action="switch-interface">⇄</button>`
    );
  }

  private renderWorkspace(): string {
    if (this.view === null) return "";
    const draft = this.view.draft
      .map(
        (text, i) =>
          `<li class="draft-command" data-index="${i}">${text}` +
          `<button data-action="confirm-draft" data-index="${i}">▶</button>` +
          `<button data-action="remove-draft" data-index="${i}">✕</button></li>`,
      )
      .join("");
    const editor = this.editing === null ? "" : this.renderEditor(this.editing);
    return `<ol class="draft">${draft}</ol>${editor}`;
  }

  private renderEditor(block: Block): string {
    const problems = blockProblems(block);
    const ready = problems.length === 0;
    const shaded = problems
      .map((p) => `<li class="shaded-slot">${p}</li>`)
      .join("");
    return (
      `<div class="block-editor" data-kind="${block.kind}">` +
      `<strong>${labelFor(block.kind, this.lang, this.symbolic)}</strong>` +
      `<ul class="slots">${shaded}</ul>` +
      `<button data-action="add-block" ${ready ? "" : "disabled"}>＋</button></div>`
    );
  }

  private async onClick(event: Event): Promise<void> {
    const target = event.target as HTMLElement | null;
    if (target === null || this.view === null) return;
    const color = target.dataset.color as Color | undefined;
    if (color !== undefined) {
      this.gesture = { ...this.gesture, selectedColor: color };
      this.redraw();
      return;
    }
    const cell = target.dataset.cell;
    if (cell !== undefined && this.mode === "G") {
      this.gesture = touchCell(this.gesture, cell);
      const compiled = compileGesture(this.gesture);
      if (compiled.ok && this.gesture.pending === null && this.gesture.path.length === 1) {
        for (const command of compiled.commands) {
          this.view = await this.api.action("CONFIRM_COMMAND", { command });
        }
        this.gesture = { ...freshGesture(), selectedColor: this.gesture.selectedColor };
        this.redraw();
      }
      return;
    }
    const gestureButton = target.dataset.gesture;
    if (gestureButton !== undefined) {
      this.gesture = { ...this.gesture, pending: gestureButton as GestureState["pending"] };
      const compiled = compileGesture(this.gesture);
      if (compiled.ok) {
        for (const command of compiled.commands) {
          this.view = await this.api.action("CONFIRM_COMMAND", { command });
        }
        this.gesture = { ...freshGesture(), selectedColor: this.gesture.selectedColor };
      }
      this.redraw();
      return;
    }
    const blockKind = target.dataset.block as BlockKind | undefined;
    if (blockKind !== undefined) {
      this.editing = emptyBlock(blockKind);
      this.redraw();
      return;
    }
    switch (target.dataset.action) {
      case "toggle-feedback":
        this.view = await this.api.action("FEEDBACK_TOGGLE", {
          enabled: !this.view.feedback_enabled,
        });
        break;
      case "retry":
        this.view = await this.api.action("RETRY");
        break;
      case "surrender":
        this.view = await this.api.action("SURRENDER");
        break;
      case "switch-interface":
        this.mode = this.mode === "G" ? "P" : "G";
        this.view = await this.api.action("INTERFACE_SWITCH", { interface: this.mode });
        break;
      case "toggle-symbolic":
        this.symbolic = !this.symbolic;
        break;
      case "add-block": {
        if (this.editing === null) break;
        const text = serialiseBlock(this.editing);
        if (text !== null) {
          this.view = await this.api.action("ADD_COMMAND", { command: text });
          this.editing = null;
        }
        break;
      }
      case "confirm-draft": {
        const index = Number(target.dataset.index);
        const command = this.view.draft[index];
        if (command !== undefined) {
          this.view = await this.api.action("CONFIRM_COMMAND", { command });
        }
        break;
      }
      case "remove-draft":
        this.view = await this.api.action("REMOVE_COMMAND", {
          index: Number(target.dataset.index),
        });
        break;
      case "show-dashboard": {
        const dashboard = await this.api.dashboard();
        this.root.innerHTML = renderDashboard(dashboard);
        return;
      }
      case "show-survey":
        this.root.innerHTML = renderSurvey(
          ["Did you enjoy the activity?", "Would you use it again?"],
          this.lang,
        );
        return;
      default:
        return;
    }
    this.redraw();
  }
}

export async function mount(rootId: string, baseUrl: string, lang: Lang = "en"): Promise<App> {
  const root = document.getElementById(rootId);
  if (root === null) throw new Error(`no element #${rootId}`);
  const api = new ApiClient({ baseUrl, lang });
  const app = new App(root, api, lang);
  await app.start();
  return app;
}
