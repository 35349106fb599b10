/** Pure HTML renderers. Everything the tests need to see is produced
 * here as strings; app.ts only mounts the strings and wires events. */

import { CatScore, CellColours, Dashboard, Progress, View } from "./types.js";
import { Lang, STRINGS } from "./locale.js";

const ROWS_TOP_DOWN = ["F", "E", "D", "C", "B", "A"] as const;

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function onCross(row: string, col: number): boolean {
  return row === "C" || row === "D" || col === 3 || col === 4;
}

/** The cross as a grid of dots. `cells` carries colour data; passing
 * null (feedback off) renders a placeholder with no per-cell markup at
 * all, so hidden boards leak nothing into the page. */
export function renderBoard(
  cells: CellColours | null,
  options: { title?: string; interactive?: boolean; hiddenNote?: string } = {},
): string {
  const title = options.title ? `<h3>${esc(options.title)}</h3>` : "";
  if (cells === null) {
    const note = esc(options.hiddenNote ?? "");
    return `<div class="board board-hidden">${title}<p class="hidden-note">${note} 🙈</p></div>`;
  }
  const rows: string[] = [];
  for (const row of ROWS_TOP_DOWN) {
    const dots: string[] = [];
    for (let col = 1; col <= 6; col += 1) {
      if (!onCross(row, col)) {
        dots.push(`<span class="gap"></span>`);
        continue;
      }
      const token = `${row}${col}`;
      const colour = cells[token] ?? null;
      const cls = colour === null ? "dot empty" : `dot ${colour}`;
      const data = options.interactive ? ` data-cell="${token}"` : "";
      dots.push(`<span class="${cls}"${data}></span>`);
    }
    rows.push(`<div class="board-row">${dots.join("")}</div>`);
  }
  return `<div class="board">${title}${rows.join("")}</div>`;
}

export function renderProgress(progress: Progress): string {
  const pct = Math.round((progress.index / progress.total) * 100);
  return (
    `<div class="progress" role="progressbar" aria-valuenow="${progress.index}"` +
    ` aria-valuemax="${progress.total}">` +
    `<div class="progress-fill" style="width:${pct}%"></div>` +
    `<span class="progress-text">${progress.index}/${progress.total}</span></div>`
  );
}

export function renderScore(score: CatScore | null, label: string): string {
  if (score === null) {
    return `<div class="score-box">${esc(label)}: —</div>`;
  }
  return `<div class="score-box">${esc(label)}: ${score.total}</div>`;
}

/** Open eye = feedback on, closed eye = off. */
export function renderFeedbackToggle(enabled: boolean, labels: Record<string, string>): string {
  const icon = enabled ? "👁" : "🙈";
  const label = enabled ? labels.feedback_on ?? "on" : labels.feedback_off ?? "off";
  return (
    `<button class="feedback-toggle" data-action="toggle-feedback"` +
    ` aria-pressed="${enabled}">${icon} ${esc(label)}</button>`
  );
}

export function renderView(view: View): string {
  const labels = view.labels;
  const right =
    renderBoard(view.reference, { title: labels.reference ?? "Reference" }) +
    renderBoard(view.board, {
      title: labels.colouring ?? "Your colouring",
      interactive: !view.read_only,
      hiddenNote: labels.feedback_off ?? "",
    }) +
    `<div class="task-buttons">` +
    `<button data-action="retry">🔄 ${esc(labels.retry ?? "Retry")}</button>` +
    `<button data-action="surrender">⏭ ${esc(labels.surrender ?? "Skip")}</button>` +
    `</div>`;
  const error = view.error
    ? `<div class="error shake">${esc(view.error.message)}` +
      (view.error.suggestion ? `<br><em>${esc(view.error.suggestion)}</em>` : "") +
      `</div>`
    : "";
  return (
    `<div class="task-view" data-schema="${esc(view.schema_id)}">` +
    renderProgress(view.progress) +
    renderScore(view.score, labels.score ?? "Score") +
    renderFeedbackToggle(view.feedback_enabled, labels) +
    error +
    `<div class="columns"><div class="column palette" id="palette"></div>` +
    `<div class="column workspace" id="workspace"></div>` +
    `<div class="column boards">${right}</div></div></div>`
  );
}

export function renderDashboard(dashboard: Dashboard): string {
  const labels = dashboard.labels;
  const rows = dashboard.rows
    .map((row) => {
      const minutes =
        row.duration_s === null ? "—" : `${Math.floor(row.duration_s / 60)}m${Math.round(row.duration_s % 60)}s`;
      const score = row.score === null ? "—" : String(row.score.total);
      return (
        `<tr class="status-${row.status}">` +
        `<td>${esc(row.schema_id)}</td>` +
        `<td>${renderBoard(row.reference)}</td>` +
        `<td>${renderBoard(row.board)}</td>` +
        `<td>${esc(row.status_label)}</td>` +
        `<td>${score}</td>` +
        `<td>${minutes}</td></tr>`
      );
    })
    .join("");
  return (
    `<table class="dashboard"><thead><tr>` +
    `<th></th><th>${esc(labels.reference ?? "Reference")}</th>` +
    `<th>${esc(labels.colouring ?? "Result")}</th>` +
    `<th></th><th>${esc(labels.score ?? "Score")}</th><th>⏱</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

const SMILEYS = [
  ["happy", "🙂"],
  ["neutral", "😐"],
  ["sad", "🙁"],
] as const;

export function renderSurvey(questions: string[], lang: Lang): string {
  const title = STRINGS[lang].survey_title ?? "";
  const body = questions
    .map((question, i) => {
      const buttons = SMILEYS.map(
        ([value, face]) =>
          `<button data-question="q${i + 1}" data-answer="${value}" class="smiley">${face}</button>`,
      ).join("");
      return `<div class="survey-question"><p>${esc(question)}</p>${buttons}</div>`;
    })
    .join("");
  return `<div class="survey"><h2>${esc(title)}</h2>${body}</div>`;
}
