/** Thin typed client for the session service.
 *
 * Every state-changing call carries a per-student sequence number, so a
 * network retry replays to the same seq and the server answers from its
 * cache instead of acting twice.
 */

import { ActionKind, Dashboard, SmileyAnswer, View } from "./types.js";

export interface ApiOptions {
  baseUrl?: string;
  lang?: string;
  fetchImpl?: typeof fetch;
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
  }
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchImpl: typeof fetch;
  private seq = 0;
  lang: string;
  studentId: string | null = null;
  sessionId: string | null = null;

  constructor(options: ApiOptions = {}) {
    this.baseUrl = (options.baseUrl ?? "").replace(/\/$/, "");
    this.fetchImpl = options.fetchImpl ?? fetch.bind(globalThis);
    this.lang = options.lang ?? "en";
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const attempt = () =>
      this.fetchImpl(`${this.baseUrl}${path}`, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    let response: Response;
    try {
      response = await attempt();
    } catch {
      response = await attempt(); // one retry; seq numbers make this safe
    }
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const doc = (await response.json()) as { detail?: string };
        if (doc.detail) detail = doc.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  async createSession(body: {
    date: string;
    canton: string;
    school: string;
    grade_level: string;
    vpi_allowed?: boolean;
  }): Promise<string> {
    const doc = await this.request<{ session_id: string }>("POST", "/sessions", body);
    this.sessionId = doc.session_id;
    return doc.session_id;
  }

  async registerStudent(body: { gender: string; birth_date: string }): Promise<string> {
    const doc = await this.request<{ student_id: string }>(
      "POST",
      `/sessions/${this.sessionId}/students`,
      body,
    );
    this.studentId = doc.student_id;
    return doc.student_id;
  }

  async action(kind: ActionKind, payload: Record<string, unknown> = {}): Promise<View> {
    this.seq += 1;
    return this.request<View>("POST", `/students/${this.studentId}/actions`, {
      kind,
      payload,
      seq: this.seq,
    });
  }

  async navigate(target: number): Promise<View> {
    this.seq += 1;
    return this.request<View>("POST", `/students/${this.studentId}/navigate`, {
      target,
      seq: this.seq,
    });
  }

  async view(): Promise<View> {
    return this.request<View>(
      "GET",
      `/students/${this.studentId}/view?lang=${this.lang}`,
    );
  }

  async dashboard(): Promise<Dashboard> {
    return this.request<Dashboard>(
      "GET",
      `/students/${this.studentId}/dashboard?lang=${this.lang}`,
    );
  }

  async submitSurvey(answers: Record<string, SmileyAnswer>): Promise<void> {
    await this.request("POST", `/students/${this.studentId}/survey`, { answers });
  }

  async switchModule(module: "validation" | "training"): Promise<View> {
    return this.request<View>("POST", `/students/${this.studentId}/module`, { module });
  }
}
