// Wires the whole workflow: upload, rotate, lane selection, seed/front
// marks, peak picking, results. One section per phase, shown in the
// paper step order; the server is the single source of truth for every
// analysis number and every re-ask.

import { ApiError, ClickPair, LanescanApi, PeakRow } from "./api.js";
import { canvasToImage } from "./coords.js";
import { LaneSelectionOverlay } from "./laneOverlay.js";
import { ChromatogramPicker } from "./peakPicker.js";
import { ResultsPanel } from "./resultsPanel.js";
import { Phase, UiState } from "./state.js";

const TEMPLATE = `
  <h1>lanescan</h1>
  <section data-phase="upload">
    <h2>1. Upload the plate scan</h2>
    <input type="file" id="file-input" accept="image/*">
    <div class="message" id="upload-message"></div>
  </section>
  <section data-phase="rotate" hidden>
    <h2>2. Rotation correction</h2>
    <p>Seed points must sit at the bottom. Use 0 if the scan is straight.</p>
    <label>angle (degrees, counterclockwise)
      <input type="number" id="rotation-input" value="0" step="0.1">
    </label>
    <button id="apply-rotation">Apply</button>
    <button id="rotation-done">Continue</button>
    <div class="message" id="rotate-message"></div>
    <canvas id="rotate-preview"></canvas>
  </section>
  <section data-phase="select_lane" hidden>
    <h2>3. Select the run</h2>
    <p>Click two opposite corners of the lane; include the seed point and the solvent front.</p>
    <div class="message" id="lane-message"></div>
    <canvas id="lane-canvas"></canvas>
  </section>
  <section data-phase="mark_points" hidden>
    <h2>4. Mark seed and solvent front</h2>
    <p>One click on each, in either order.</p>
    <div class="message" id="marks-message"></div>
    <canvas id="marks-canvas"></canvas>
  </section>
  <section data-phase="pick_peaks" hidden>
    <h2>5. Pick the peaks</h2>
    <p>Click the start and the end of every peak. The height of the click never matters.</p>
    <div class="message" id="peaks-message"></div>
    <canvas id="peaks-canvas" width="720" height="300"></canvas>
    <div>
      <button id="undo-click">Undo click</button>
      <label>baseline
        <select id="baseline-select">
          <option value="raw" selected>raw</option>
          <option value="linear">linear</option>
        </select>
      </label>
    </div>
    <label>comments <textarea id="comments-input" rows="2"></textarea></label>
    <button id="confirm-peaks">Confirm peaks</button>
  </section>
  <section data-phase="review" hidden>
    <h2>6. Results</h2>
    <div id="results-root"></div>
  </section>
`;

export class App {
  readonly state = new UiState();
  readonly laneOverlay: LaneSelectionOverlay;
  readonly picker: ChromatogramPicker;
  readonly results: ResultsPanel;

  private backdrop: HTMLImageElement | null = null;
  private laneClicks: ClickPair | null = null;
  private markClicks: number[] = [];
  private lastPeaks: PeakRow[] = [];

  constructor(private root: HTMLElement, private api: LanescanApi) {
    root.innerHTML = TEMPLATE;

    this.el<HTMLInputElement>("#file-input").addEventListener("change", (ev) => {
      const input = ev.target as HTMLInputElement;
      if (input.files && input.files.length > 0) {
        void this.upload(input.files[0]);
      }
    });
    this.el<HTMLButtonElement>("#apply-rotation").addEventListener("click", () => {
      void this.applyRotation();
    });
    this.el<HTMLButtonElement>("#rotation-done").addEventListener("click", () => {
      this.state.advance("select_lane");
      this.prepareLaneCanvas();
      this.render();
    });

    const laneCanvas = this.el<HTMLCanvasElement>("#lane-canvas");
    this.laneOverlay = new LaneSelectionOverlay(
      laneCanvas,
      (pair) => void this.submitLane(pair),
      () => this.drawBackdrop(laneCanvas),
    );
    laneCanvas.addEventListener("pointerdown", (ev) => {
      this.laneOverlay.handlePointerDown(ev.clientX, ev.clientY);
    });
    laneCanvas.addEventListener("pointermove", (ev) => {
      this.laneOverlay.handlePointerMove(ev.clientX, ev.clientY);
    });

    this.el<HTMLCanvasElement>("#marks-canvas").addEventListener("pointerdown", (ev) => {
      void this.handleMarkClick(ev.clientX, ev.clientY);
    });

    const peaksCanvas = this.el<HTMLCanvasElement>("#peaks-canvas");
    this.picker = new ChromatogramPicker(peaksCanvas);
    peaksCanvas.addEventListener("pointerdown", (ev) => {
      this.picker.handleClick(ev.clientX, ev.clientY);
    });
    this.el<HTMLButtonElement>("#undo-click").addEventListener("click", () => {
      this.picker.undo();
    });
    this.el<HTMLButtonElement>("#confirm-peaks").addEventListener("click", () => {
      void this.confirmPeaks();
    });

    this.results = new ResultsPanel(
      this.el("#results-root"),
      () => this.anotherRun(),
      () => void this.finalize(),
    );
    this.render();
  }

  el<T extends HTMLElement>(selector: string): T {
    return this.root.querySelector(selector) as T;
  }

  /** Reflect the in-flight state (buttons disabled) for the whole call. */
  private async call<T>(promise: Promise<T>): Promise<T> {
    this.render();
    try {
      return await promise;
    } finally {
      this.render();
    }
  }

  render(): void {
    const phase: Phase = this.state.phase;
    this.root.querySelectorAll<HTMLElement>("section[data-phase]").forEach((section) => {
      section.hidden = section.dataset.phase !== phase;
    });
    const pending = this.api.busy;
    this.root.querySelectorAll<HTMLButtonElement>("button").forEach((b) => {
      b.disabled = pending;
    });
  }

  private message(id: string, text: string): void {
    this.el(`#${id}`).textContent = text;
  }

  private async upload(file: File): Promise<void> {
    try {
      const info = await this.call(this.api.uploadImage(file, (file as File).name ?? "upload.png"));
      this.state.startSession(info.session_id, info.width, info.height);
      this.refreshPreview();
    } catch (err) {
      this.message("upload-message", describe(err));
    }
    this.render();
  }

  private async applyRotation(): Promise<void> {
    const degrees = Number(this.el<HTMLInputElement>("#rotation-input").value);
    try {
      const size = await this.call(this.api.setRotation(this.state.sessionId!, degrees));
      this.state.setWorkingSize(size.width, size.height);
      this.message("rotate-message", `working image is now ${size.width}x${size.height}`);
      this.refreshPreview();
    } catch (err) {
      this.message("rotate-message", describe(err));
    }
    this.render();
  }

  /** Reload the preview backdrop after upload or rotation. */
  private refreshPreview(): void {
    const img = new Image();
    img.onload = () => {
      this.backdrop = img;
      this.drawBackdrop(this.el<HTMLCanvasElement>("#rotate-preview"));
      if (this.state.phase === "select_lane") {
        this.drawBackdrop(this.el<HTMLCanvasElement>("#lane-canvas"));
      }
    };
    img.src = this.api.previewUrl(this.state.sessionId!);
    const preview = this.el<HTMLCanvasElement>("#rotate-preview");
    preview.width = this.state.imageWidth;
    preview.height = this.state.imageHeight;
  }

  private prepareLaneCanvas(): void {
    const canvas = this.el<HTMLCanvasElement>("#lane-canvas");
    // intrinsic size = working image size, so payloads are image pixels
    canvas.width = this.state.imageWidth;
    canvas.height = this.state.imageHeight;
    this.laneOverlay.reset();
    this.drawBackdrop(canvas);
  }

  private drawBackdrop(canvas: HTMLCanvasElement): void {
    const ctx = canvas.getContext("2d");
    if (!ctx) {
      return;
    }
    ctx.fillStyle = "#f3f4f6";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    if (this.backdrop) {
      ctx.drawImage(this.backdrop, 0, 0, canvas.width, canvas.height);
    }
  }

  private async submitLane(pair: ClickPair): Promise<void> {
    try {
      const run = await this.call(this.api.createRun(this.state.sessionId!, pair));
      this.laneClicks = pair;
      this.state.startRun(run.run_id, run.crop_width, run.crop_height);
      this.prepareMarksCanvas();
      this.message("lane-message", "");
    } catch (err) {
      // degenerate_selection and friends: show the reason and re-arm
      this.message("lane-message", `${describe(err)} - try again`);
      this.laneOverlay.reset();
    }
    this.render();
  }

  private prepareMarksCanvas(): void {
    const canvas = this.el<HTMLCanvasElement>("#marks-canvas");
    canvas.width = this.state.cropWidth;
    canvas.height = this.state.cropHeight;
    this.markClicks = [];
    const ctx = canvas.getContext("2d");
    if (!ctx) {
      return;
    }
    ctx.fillStyle = "#f3f4f6";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    if (this.backdrop && this.laneClicks) {
      const [[ax, ay], [bx, by]] = this.laneClicks;
      const sx = Math.min(ax, bx);
      const sy = Math.min(ay, by);
      ctx.drawImage(
        this.backdrop,
        sx,
        sy,
        Math.abs(bx - ax),
        Math.abs(by - ay),
        0,
        0,
        canvas.width,
        canvas.height,
      );
    }
  }

  private async handleMarkClick(clientX: number, clientY: number): Promise<void> {
    const canvas = this.el<HTMLCanvasElement>("#marks-canvas");
    const p = canvasToImage(canvas, clientX, clientY);
    this.markClicks.push(p.y);
    this.drawMarkLine(p.y);
    if (this.markClicks.length < 2) {
      this.message("marks-message", "one more click");
      return;
    }
    const [first, second] = this.markClicks;
    try {
      // either order; the server decides which is the seed
      const marks = await this.call(this.api.setMarks(this.state.sessionId!, this.state.runId!, first, second));
      this.message("marks-message", `seed row ${marks.seed_row}, front row ${marks.front_row}`);
      const chrom = await this.call(this.api.chromatogram(this.state.sessionId!, this.state.runId!));
      this.state.advance("pick_peaks");
      this.picker.setData(chrom);
    } catch (err) {
      this.message("marks-message", `${describe(err)} - click both points again`);
      this.markClicks = [];
      this.prepareMarksCanvas();
    }
    this.render();
  }

  private drawMarkLine(y: number): void {
    const canvas = this.el<HTMLCanvasElement>("#marks-canvas");
    const ctx = canvas.getContext("2d");
    if (!ctx) {
      return;
    }
    ctx.strokeStyle = "#dc2626";
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(canvas.width, y);
    ctx.stroke();
  }

  private async confirmPeaks(): Promise<void> {
    const payload = this.picker.payload();
    if (typeof payload === "string") {
      // local pairing check; nothing is sent
      this.message("peaks-message", payload);
      return;
    }
    const baseline = this.el<HTMLSelectElement>("#baseline-select").value as "raw" | "linear";
    const comments = this.el<HTMLTextAreaElement>("#comments-input").value;
    try {
      const result = await this.call(this.api.submitPeaks(
        this.state.sessionId!,
        this.state.runId!,
        payload,
        baseline,
        comments,
      ));
      this.lastPeaks = result.peaks;
      this.state.advance("review");
      this.results.showPeaks(result.peaks, result.report_text);
      this.message("peaks-message", "");
    } catch (err) {
      // overlapping_peaks etc: keep the click buffer editable
      this.message("peaks-message", `${describe(err)} - adjust the clicks and confirm again`);
    }
    this.render();
  }

  private anotherRun(): void {
    this.state.anotherRun();
    this.laneClicks = null;
    this.prepareLaneCanvas();
    this.render();
  }

  private async finalize(): Promise<void> {
    try {
      const result = await this.call(this.api.finalize(this.state.sessionId!));
      this.results.showFinalized(result);
    } catch (err) {
      this.results.showFinalized({ output_dir: describe(err), files: [] });
    }
    this.render();
  }

  /** Exposed for tests: the last peaks the server returned. */
  get peaks(): PeakRow[] {
    return this.lastPeaks;
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return `${err.failure.code}: ${err.failure.message}`;
  }
  return err instanceof Error ? err.message : String(err);
}
