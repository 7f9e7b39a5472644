// The wizard state machine and its DOM rendering.
//
// Two rules the whole file obeys:
//  - Nothing is filtered, counted or ranked locally. Every number shown on
//    screen is copied verbatim out of an API response.
//  - No artificial delays between showing a question and submitting the
//    answer; the server measures answer time from issuance to receipt.

import {
  AnswerResponse,
  AnswerValue,
  ApiClient,
  Question,
  ResultsResponse,
} from "./api.js";

type View = "idle" | "question" | "results" | "done";

export class WizardController {
  sessionId: string | null = null;
  private question: Question | null = null;
  private candidateCount: number | null = null;
  private view: View = "idle";
  private results: ResultsResponse | null = null;
  private openSheet: string | null = null;
  private errorMessage: string | null = null;
  private retryAction: (() => Promise<void>) | null = null;

  constructor(private root: HTMLElement, private api: ApiClient) {}

  async start(): Promise<void> {
    await this.guarded(async () => {
      const created = await this.api.createSession();
      this.sessionId = created.session_id;
      this.candidateCount = created.candidate_count;
      this.question = created.question;
      this.view = created.question ? "question" : "done";
      this.results = null;
    }, () => this.start());
  }

  async submit(value: AnswerValue): Promise<void> {
    if (!this.sessionId || !this.question) return;
    const questionId = this.question.question_id;
    await this.guarded(async () => {
      const body = await this.api.answer(this.sessionId!, questionId, value);
      this.applyAnswer(body);
    }, () => this.submit(value));
  }

  async skip(): Promise<void> {
    if (!this.sessionId || !this.question) return;
    const questionId = this.question.question_id;
    await this.guarded(async () => {
      const body = await this.api.skip(this.sessionId!, questionId);
      this.applyAnswer(body);
    }, () => this.skip());
  }

  async showResults(): Promise<void> {
    if (!this.sessionId) return;
    await this.guarded(async () => {
      this.results = await this.api.results(this.sessionId!);
      this.candidateCount = this.results.candidate_count;
      this.view = "results";
    }, () => this.showResults());
  }

  private applyAnswer(body: AnswerResponse): void {
    this.candidateCount = body.remaining_count;
    this.question = body.question;
    if (body.done) {
      this.view = "done";
    }
  }

  private async guarded(action: () => Promise<void>, retry: () => Promise<void>): Promise<void> {
    try {
      this.errorMessage = null;
      this.retryAction = null;
      await action();
    } catch (err) {
      // the session lives on server-side; offer a retry instead of resetting
      this.errorMessage = err instanceof Error ? err.message : String(err);
      this.retryAction = retry;
    }
    this.render();
  }

  retry(): Promise<void> {
    const action = this.retryAction;
    return action ? action() : Promise.resolve();
  }

  // ---------------------------------------------------------------- render

  render(): void {
    const header = this.renderHeader();
    let body = "";
    if (this.view === "question" && this.question) {
      body = this.renderQuestion(this.question);
    } else if (this.view === "results" && this.results) {
      body = this.renderResults(this.results);
    } else if (this.view === "done") {
      body = `<section class="card" id="done-view">
        <p>No more questions.</p>
        <button id="results-btn">Show results</button>
      </section>`;
    } else {
      body = `<section class="card"><button id="start-btn">Start a session</button></section>`;
    }
    this.root.innerHTML = `${this.renderBanner()}${header}${body}`;
    this.wire();
  }

  private renderBanner(): string {
    if (!this.errorMessage) return "";
    return `<div id="retry-banner" class="banner">
      <span>Connection trouble: ${escapeHtml(this.errorMessage)}. The session is preserved.</span>
      <button id="retry-btn">Retry</button>
    </div>`;
  }

  private renderHeader(): string {
    const count = this.candidateCount === null
      ? "&mdash;"
      : `<span id="candidate-count">${this.candidateCount}</span>`;
    const progress = this.question
      ? `<span id="progress">Question ${this.question.index} of ${this.question.total}</span>`
      : "";
    return `<header>
      <h1>refind</h1>
      <div class="status">${progress} <span class="badge">${count} candidates</span></div>
    </header>`;
  }

  private renderQuestion(q: Question): string {
    let controls = "";
    if (q.kind === "binary_split") {
      controls = `
        <button class="option" id="option-a" data-value="option_a">A. ${escapeHtml(q.option_a ?? "")}</button>
        <button class="option" id="option-b" data-value="option_b">B. ${escapeHtml(q.option_b ?? "")}</button>`;
      if (q.allows_precise) {
        controls += `
        <div class="precise">
          <label>or exactly: <input id="precise-input" type="number" step="any" /></label>
          <button id="precise-submit">Answer precisely</button>
        </div>`;
      }
    } else if (q.kind === "boolean") {
      controls = `
        <button class="option choice" data-value="true">Yes</button>
        <button class="option choice" data-value="false">No</button>`;
    } else {
      controls = q.options
        .map(
          (opt) =>
            `<button class="option choice" data-value="${escapeHtml(String(opt))}">${escapeHtml(String(opt))}</button>`,
        )
        .join("\n");
    }
    return `<section class="card" id="question-view">
      <p id="prompt">${escapeHtml(q.prompt)}</p>
      <div class="controls">${controls}</div>
      <div class="actions">
        <button id="skip-btn">Skip</button>
        <button id="results-btn">Show results now</button>
      </div>
    </section>`;
  }

  private renderResults(res: ResultsResponse): string {
    const rows = res.results
      .map((item) => {
        const sheet = res.documents[item.doc_id];
        const open = this.openSheet === item.doc_id;
        const sheetHtml = open && sheet
          ? `<div class="sheet">
               <div>path: ${escapeHtml(sheet.path)}</div>
               <div>pages: ${sheet.pages}</div>
               <div>last access: ${new Date(sheet.last_accessed_at * 1000).toISOString().slice(0, 10)}</div>
             </div>`
          : "";
        return `<li class="result-row" data-doc-id="${escapeHtml(item.doc_id)}">
          <span class="rank">${item.rank}</span>
          <span class="doc-id">${escapeHtml(item.doc_id)}</span>
          <span class="f-i">F=${item.F_i.toFixed(3)}</span>
          <span class="dist">d=${item.d.toFixed(3)}</span>
          ${sheetHtml}
        </li>`;
      })
      .join("\n");
    return `<section class="card" id="results-view">
      <p>Familiarity toward the target <span id="f-t">${res.F_t.toFixed(3)}</span>
         (T_a ${res.metrics.T_a.toFixed(1)} s, skipped ${(res.metrics.P_s * 100).toFixed(0)}%,
          precise ${(res.metrics.P_e * 100).toFixed(0)}%)</p>
      <ol id="ranked-list">${rows}</ol>
    </section>`;
  }

  private wire(): void {
    this.root.querySelector("#start-btn")?.addEventListener("click", () => void this.start());
    this.root.querySelector("#retry-btn")?.addEventListener("click", () => void this.retry());
    this.root.querySelector("#skip-btn")?.addEventListener("click", () => void this.skip());
    this.root
      .querySelector("#results-btn")
      ?.addEventListener("click", () => void this.showResults());
    this.root.querySelector("#option-a")?.addEventListener("click", () => void this.submit("option_a"));
    this.root.querySelector("#option-b")?.addEventListener("click", () => void this.submit("option_b"));
    this.root.querySelectorAll("button.choice").forEach((button) => {
      button.addEventListener("click", () => {
        const raw = (button as HTMLElement).dataset.value ?? "";
        const value: AnswerValue = raw === "true" ? true : raw === "false" ? false : raw;
        void this.submit(value);
      });
    });
    this.root.querySelector("#precise-submit")?.addEventListener("click", () => {
      const input = this.root.querySelector<HTMLInputElement>("#precise-input");
      const value = input ? Number(input.value) : NaN;
      if (Number.isFinite(value)) {
        void this.submit(value);
      }
    });
    this.root.querySelectorAll("li.result-row").forEach((row) => {
      row.addEventListener("click", () => {
        const docId = (row as HTMLElement).dataset.docId ?? null;
        this.openSheet = this.openSheet === docId ? null : docId;
        this.render();
      });
    });
  }
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
