/** Drives the real HTTP service end to end through ApiClient: register,
 * solve a schema, skip one, read the dashboard. Skipped when the engine
 * or uvicorn is not available on this machine. */

import { ChildProcess, execFileSync, spawn } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";

const SRC_DIR = path.resolve(
  path.dirname(fileURLToPath(import.meta.url)),
  "../../src",
);
const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;

function serverPossible(): boolean {
  try {
    execFileSync("python3", ["-c", "import catkit.service, uvicorn"], {
      env: { ...process.env, PYTHONPATH: SRC_DIR },
      stdio: "pipe",
    });
    return true;
  } catch {
    return false;
  }
}

const available = serverPossible();
let server: ChildProcess | null = null;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i += 1) {
    try {
      const response = await fetch(`${BASE}/openapi.json`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("service did not come up");
}

describe.skipIf(!available)("live service", () => {
  beforeAll(async () => {
    server = spawn(
      "python3",
      [
        "-m",
        "uvicorn",
        "--factory",
        "catkit.service:create_app",
        "--port",
        String(PORT),
        "--log-level",
        "warning",
      ],
      { env: { ...process.env, PYTHONPATH: SRC_DIR }, stdio: "ignore" },
    );
    await waitForServer();
  }, 30_000);

  afterAll(() => {
    server?.kill();
  });

  it("runs a miniature session through the typed client", async () => {
    const api = new ApiClient({ baseUrl: BASE, lang: "it" });
    await api.createSession({
      date: "2023-03-15",
      canton: "Ticino",
      school: "Scuola di Prova",
      grade_level: "5a",
    });
    await api.registerStudent({ gender: "f", birth_date: "2011-05-01" });

    let view = await api.view();
    expect(view.progress).toEqual({ index: 1, total: 12 });
    expect(view.board).toBeNull(); // feedback starts off
    expect(view.labels.retry).toBe("Riprova");

    view = await api.action("FEEDBACK_TOGGLE", { enabled: true });
    expect(view.board).not.toBeNull();

    // V01 is a uniform fill: one command solves it
    const colour = view.reference.C1;
    view = await api.action("CONFIRM_COMMAND", { command: `fillEmpty(${colour})` });
    expect(Object.values(view.board ?? {}).every((v) => v === colour)).toBe(true);
    view = await api.action("TASK_COMPLETED");
    expect(view.progress.index).toBe(2);

    view = await api.action("SURRENDER");
    expect(view.progress.index).toBe(3);

    const dashboard = await api.dashboard();
    const byId = new Map(dashboard.rows.map((r) => [r.schema_id, r.status]));
    expect(byId.get("V01")).toBe("correct");
    expect(byId.get("V02")).toBe("skipped");

    // a semantic error comes back as a payload, not a transport failure
    view = await api.action("CONFIRM_COMMAND", { command: "go(up,9)" });
    expect(view.error?.type).toBe("exec");
    expect(view.error?.suggestion).toBeTruthy();
  }, 30_000);
});

describe("sanity", () => {
  it("records whether the live-service check ran", () => {
    expect(typeof available).toBe("boolean");
  });
});
