// Typed client for the refind session API. The UI's only data source:
// every candidate count and every rank shown on screen originates from a
// response object returned here.

export interface Question {
  question_id: string;
  attribute: string;
  prompt: string;
  kind: "binary_split" | "categorical" | "boolean" | "precise_numeric_allowed";
  split_threshold: number | null;
  option_a: string | null;
  option_b: string | null;
  options: Array<string | boolean>;
  allows_precise: boolean;
  index: number;
  total: number;
}

export interface CreateSessionResponse {
  session_id: string;
  candidate_count: number;
  question: Question | null;
  done: boolean;
}

export interface AnswerResponse {
  remaining_count: number;
  done: boolean;
  question: Question | null;
}

export interface RankedItem {
  doc_id: string;
  F_i: number;
  d: number;
  rank: number;
}

export interface DocumentSheet {
  path: string;
  pages: number;
  file_type: string;
  content_category: string;
  last_accessed_at: number;
}

export interface ResultsResponse {
  session_id: string;
  candidate_count: number;
  F_t: number;
  metrics: { T_a: number; P_s: number; P_e: number };
  results: RankedItem[];
  documents: Record<string, DocumentSheet>;
}

export type AnswerValue = string | number | boolean;

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { detail?: string };
        if (parsed.detail) detail = parsed.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  createSession(): Promise<CreateSessionResponse> {
    return this.request("POST", "/sessions");
  }

  answer(sessionId: string, questionId: string, value: AnswerValue): Promise<AnswerResponse> {
    return this.request("POST", `/sessions/${sessionId}/answer`, {
      question_id: questionId,
      value,
    });
  }

  skip(sessionId: string, questionId: string): Promise<AnswerResponse> {
    return this.request("POST", `/sessions/${sessionId}/skip`, {
      question_id: questionId,
    });
  }

  results(sessionId: string): Promise<ResultsResponse> {
    return this.request("GET", `/sessions/${sessionId}/results`);
  }

  async healthz(): Promise<boolean> {
    try {
      const response = await this.fetchImpl(`${this.baseUrl}/healthz`);
      return response.ok;
    } catch {
      return false;
    }
  }
}
