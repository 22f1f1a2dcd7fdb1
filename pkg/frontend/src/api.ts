// Typed client for the lanescan analysis service. Every number the UI
// displays comes back from these calls; nothing is computed locally.

export interface SessionInfo {
  session_id: string;
  width: number;
  height: number;
}

export interface RunInfo {
  run_id: number;
  crop_width: number;
  crop_height: number;
}

export interface MarksInfo {
  seed_row: number;
  front_row: number;
}

export interface ChromatogramData {
  signal: number[];
  seed_idx: number;
  front_idx: number;
}

export interface PeakRow {
  number: number;
  start_idx: number;
  end_idx: number;
  area: number;
  percent: number;
  apex_idx: number;
  rf: number;
}

export interface PeaksResponse {
  peaks: PeakRow[];
  report_text: string;
}

export interface FinalizeResponse {
  output_dir: string;
  files: string[];
}

export interface ApiFailure {
  code: string;
  message: string;
  field?: string;
}

export class ApiError extends Error {
  constructor(public status: number, public failure: ApiFailure) {
    super(failure.message);
    this.name = "ApiError";
  }
}

export type Click = [number, number];
export type ClickPair = [Click, Click];

/** One request in flight at a time, matching the service's single-writer rule. */
export class LanescanApi {
  private pending = false;

  constructor(private baseUrl: string = "") {}

  get busy(): boolean {
    return this.pending;
  }

  uploadImage(file: File | Blob, name: string): Promise<SessionInfo> {
    const form = new FormData();
    form.append("file", file, name);
    return this.send<SessionInfo>("POST", "/sessions", form);
  }

  setRotation(sessionId: string, degrees: number): Promise<{ width: number; height: number }> {
    return this.send("POST", `/sessions/${sessionId}/rotation`, { degrees });
  }

  previewUrl(sessionId: string): string {
    // cache-busted so a rotation refresh always refetches
    return `${this.baseUrl}/sessions/${sessionId}/preview.png?t=${Date.now()}`;
  }

  createRun(sessionId: string, rectClicks: ClickPair): Promise<RunInfo> {
    return this.send("POST", `/sessions/${sessionId}/runs`, { rect_clicks: rectClicks });
  }

  setMarks(sessionId: string, runId: number, seedClickY: number, frontClickY: number): Promise<MarksInfo> {
    return this.send("POST", `/sessions/${sessionId}/runs/${runId}/marks`, {
      seed_click_y: seedClickY,
      front_click_y: frontClickY,
    });
  }

  chromatogram(sessionId: string, runId: number): Promise<ChromatogramData> {
    return this.send("GET", `/sessions/${sessionId}/runs/${runId}/chromatogram`);
  }

  submitPeaks(
    sessionId: string,
    runId: number,
    peakClicks: ClickPair[],
    baseline: "raw" | "linear",
    comments: string,
  ): Promise<PeaksResponse> {
    return this.send("POST", `/sessions/${sessionId}/runs/${runId}/peaks`, {
      peak_clicks: peakClicks,
      baseline,
      comments,
    });
  }

  finalize(sessionId: string): Promise<FinalizeResponse> {
    return this.send("POST", `/sessions/${sessionId}/finalize`, {});
  }

  private async send<T>(method: string, path: string, body?: FormData | object): Promise<T> {
    if (this.pending) {
      throw new Error("a request is already in flight for this session");
    }
    this.pending = true;
    try {
      const init: RequestInit = { method };
      if (body instanceof FormData) {
        init.body = body;
      } else if (body !== undefined) {
        init.body = JSON.stringify(body);
        init.headers = { "content-type": "application/json" };
      }
      const resp = await fetch(this.baseUrl + path, init);
      if (!resp.ok) {
        let failure: ApiFailure = { code: "http_error", message: `HTTP ${resp.status}` };
        try {
          failure = (await resp.json()) as ApiFailure;
        } catch {
          // non-JSON error body; keep the fallback
        }
        throw new ApiError(resp.status, failure);
      }
      return (await resp.json()) as T;
    } finally {
      this.pending = false;
    }
  }
}
