// UI phase machine. Phases follow the analysis step order; the only
// backward edge is Review -> SelectLane for analyzing another run.

export type Phase =
  | "upload"
  | "rotate"
  | "select_lane"
  | "mark_points"
  | "pick_peaks"
  | "review";

const NEXT: Record<Phase, Phase | null> = {
  upload: "rotate",
  rotate: "select_lane",
  select_lane: "mark_points",
  mark_points: "pick_peaks",
  pick_peaks: "review",
  review: null,
};

export class UiState {
  phase: Phase = "upload";
  sessionId: string | null = null;
  imageWidth = 0;
  imageHeight = 0;
  runId: number | null = null;
  cropWidth = 0;
  cropHeight = 0;

  advance(to: Phase): void {
    if (NEXT[this.phase] !== to) {
      throw new Error(`cannot go from ${this.phase} to ${to}`);
    }
    this.phase = to;
  }

  /** Review -> SelectLane: the analyze-another-run loop. */
  anotherRun(): void {
    if (this.phase !== "review") {
      throw new Error(`cannot start another run from ${this.phase}`);
    }
    this.runId = null;
    this.cropWidth = 0;
    this.cropHeight = 0;
    this.phase = "select_lane";
  }

  startSession(sessionId: string, width: number, height: number): void {
    if (this.phase !== "upload") {
      throw new Error("session already started");
    }
    this.sessionId = sessionId;
    this.imageWidth = width;
    this.imageHeight = height;
    this.advance("rotate");
  }

  setWorkingSize(width: number, height: number): void {
    this.imageWidth = width;
    this.imageHeight = height;
  }

  startRun(runId: number, cropWidth: number, cropHeight: number): void {
    this.runId = runId;
    this.cropWidth = cropWidth;
    this.cropHeight = cropHeight;
    this.advance("mark_points");
  }
}
