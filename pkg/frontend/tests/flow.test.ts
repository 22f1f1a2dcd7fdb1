// End-to-end UI flow against the fake service: upload -> rotate 0 ->
// select lane -> mark seed/front -> pick two peaks (at absurd click
// heights) -> results table. Asserts the displayed percents sum to
// 100.00 and that peak markers sit on the curve regardless of click
// height.

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/app.js";
import { LanescanApi } from "../src/api.js";
import { FakeServer } from "./fakeServer.js";

const LEFT = 44;
const RIGHT = 12;

function rectify(canvas: HTMLCanvasElement): void {
  canvas.getBoundingClientRect = () =>
    ({
      left: 0,
      top: 0,
      width: canvas.width,
      height: canvas.height,
      right: canvas.width,
      bottom: canvas.height,
      x: 0,
      y: 0,
      toJSON: () => ({}),
    }) as DOMRect;
}

function pointerDown(el: HTMLElement, clientX: number, clientY: number): void {
  const ev = new MouseEvent("pointerdown", { clientX, clientY, bubbles: true });
  el.dispatchEvent(ev);
}

describe("full analysis flow", () => {
  let server: FakeServer;
  let app: App;
  let root: HTMLElement;

  beforeEach(() => {
    server = new FakeServer();
    vi.stubGlobal("fetch", server.fetch);
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app") as HTMLElement;
    app = new App(root, new LanescanApi());
  });

  afterEach(() => {
    vi.unstubAllGlobals();
  });

  async function uploadPlate(): Promise<void> {
    const input = root.querySelector("#file-input") as HTMLInputElement;
    const file = new File([new Uint8Array([137, 80, 78, 71])], "plate.png");
    Object.defineProperty(input, "files", { value: [file], configurable: true });
    input.dispatchEvent(new Event("change"));
    await vi.waitFor(() => expect(app.state.phase).toBe("rotate"));
  }

  async function rotateZeroAndContinue(): Promise<void> {
    (root.querySelector("#rotation-input") as HTMLInputElement).value = "0";
    (root.querySelector("#apply-rotation") as HTMLButtonElement).click();
    await vi.waitFor(() =>
      expect(
        server.requests.some((r) => r.path.endsWith("/rotation")),
      ).toBe(true),
    );
    await vi.waitFor(() =>
      expect((root.querySelector("#rotation-done") as HTMLButtonElement).disabled).toBe(false),
    );
    (root.querySelector("#rotation-done") as HTMLButtonElement).click();
    expect(app.state.phase).toBe("select_lane");
  }

  async function selectLane(): Promise<void> {
    const canvas = root.querySelector("#lane-canvas") as HTMLCanvasElement;
    rectify(canvas); // canvas intrinsic size is the image size, mapping is 1:1
    pointerDown(canvas, 20, 0);
    pointerDown(canvas, 59.9, 399.9);
    await vi.waitFor(() => expect(app.state.phase).toBe("mark_points"));
  }

  async function markPoints(): Promise<void> {
    const canvas = root.querySelector("#marks-canvas") as HTMLCanvasElement;
    rectify(canvas);
    pointerDown(canvas, 5, 370);
    pointerDown(canvas, 5, 30);
    await vi.waitFor(() => expect(app.state.phase).toBe("pick_peaks"));
  }

  function chartX(dataX: number): number {
    const canvas = root.querySelector("#peaks-canvas") as HTMLCanvasElement;
    const plotWidth = canvas.width - LEFT - RIGHT;
    return LEFT + (dataX / (server.signal.length - 1)) * plotWidth;
  }

  async function pickTwoPeaks(): Promise<void> {
    const canvas = root.querySelector("#peaks-canvas") as HTMLCanvasElement;
    rectify(canvas);
    // absurd click heights on purpose: only x may matter
    pointerDown(canvas, chartX(0), 1);
    pointerDown(canvas, chartX(199), 299);
    pointerDown(canvas, chartX(199), 2);
    pointerDown(canvas, chartX(399), 150);

    // every marker must sit exactly on the curve
    const markers = app.picker.markers();
    expect(markers).toHaveLength(4);
    for (const m of markers) {
      expect(m.value).toBe(server.signal[m.idx]);
    }

    (root.querySelector("#confirm-peaks") as HTMLButtonElement).click();
    await vi.waitFor(() => expect(app.state.phase).toBe("review"));
  }

  it("runs upload to results with percents summing to 100.00", async () => {
    await uploadPlate();
    await rotateZeroAndContinue();
    await selectLane();
    await markPoints();
    await pickTwoPeaks();

    const cells = Array.from(
      root.querySelectorAll<HTMLTableCellElement>("#results-root td.percent"),
    );
    expect(cells).toHaveLength(2);
    const displayed = cells.map((c) => c.textContent);
    expect(displayed).toEqual(["66.70", "33.30"]);
    const total = displayed.reduce((acc, text) => acc + Number(text), 0);
    expect(total.toFixed(2)).toBe("100.00");

    // numbering matches the service response order
    const firstCol = Array.from(
      root.querySelectorAll("#results-root tbody tr td:first-child"),
    ).map((td) => td.textContent);
    expect(firstCol).toEqual(["1", "2"]);
  });

  it("buttons are disabled while a request is in flight", async () => {
    const releases: (() => void)[] = [];
    vi.stubGlobal(
      "fetch",
      () =>
        new Promise((resolve) => {
          releases.push(() =>
            resolve({
              ok: true,
              status: 200,
              json: async () => ({ session_id: "s000001", width: 120, height: 400 }),
            }),
          );
        }),
    );
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById("app") as HTMLElement;
    app = new App(root, new LanescanApi());

    const input = root.querySelector("#file-input") as HTMLInputElement;
    const file = new File([new Uint8Array([1])], "plate.png");
    Object.defineProperty(input, "files", { value: [file], configurable: true });
    input.dispatchEvent(new Event("change"));

    const button = root.querySelector("#apply-rotation") as HTMLButtonElement;
    expect(button.disabled).toBe(true); // request pending
    releases.shift()!();
    await vi.waitFor(() => expect(app.state.phase).toBe("rotate"));
    expect(button.disabled).toBe(false); // settled
  });

  it("degenerate lane selection re-arms the overlay", async () => {
    await uploadPlate();
    await rotateZeroAndContinue();
    const canvas = root.querySelector("#lane-canvas") as HTMLCanvasElement;
    rectify(canvas);
    pointerDown(canvas, 30, 5);
    pointerDown(canvas, 30, 300); // zero width -> 422 degenerate_selection
    await vi.waitFor(() =>
      expect(root.querySelector("#lane-message")?.textContent).toMatch(/degenerate_selection/),
    );
    expect(app.state.phase).toBe("select_lane");
    expect(app.laneOverlay.armed).toBe(false); // fresh click pair expected

    pointerDown(canvas, 20, 0);
    pointerDown(canvas, 59.9, 399.9);
    await vi.waitFor(() => expect(app.state.phase).toBe("mark_points"));
  });

  it("overlapping peaks keep the click buffer editable", async () => {
    await uploadPlate();
    await rotateZeroAndContinue();
    await selectLane();
    await markPoints();

    const canvas = root.querySelector("#peaks-canvas") as HTMLCanvasElement;
    rectify(canvas);
    pointerDown(canvas, chartX(0), 10);
    pointerDown(canvas, chartX(250), 10);
    pointerDown(canvas, chartX(199), 10);
    pointerDown(canvas, chartX(399), 10);
    (root.querySelector("#confirm-peaks") as HTMLButtonElement).click();
    await vi.waitFor(() =>
      expect(root.querySelector("#peaks-message")?.textContent).toMatch(/overlapping_peaks/),
    );
    expect(app.state.phase).toBe("pick_peaks");
    expect(app.picker.clickCount).toBe(4); // still editable

    // fix the second click and confirm again
    app.picker.undo();
    app.picker.undo();
    app.picker.undo();
    pointerDown(canvas, chartX(199), 10);
    pointerDown(canvas, chartX(199), 10);
    pointerDown(canvas, chartX(399), 10);
    (root.querySelector("#confirm-peaks") as HTMLButtonElement).click();
    await vi.waitFor(() => expect(app.state.phase).toBe("review"));
  });

  it("odd click count never sends a request", async () => {
    await uploadPlate();
    await rotateZeroAndContinue();
    await selectLane();
    await markPoints();

    const canvas = root.querySelector("#peaks-canvas") as HTMLCanvasElement;
    rectify(canvas);
    pointerDown(canvas, chartX(100), 10);
    const requestsBefore = server.requests.length;
    (root.querySelector("#confirm-peaks") as HTMLButtonElement).click();
    expect(root.querySelector("#peaks-message")?.textContent).toMatch(/unpaired/);
    expect(server.requests.length).toBe(requestsBefore);
  });

  it("review loops back for another run and finalize lists the bundle", async () => {
    await uploadPlate();
    await rotateZeroAndContinue();
    await selectLane();
    await markPoints();
    await pickTwoPeaks();

    (root.querySelector("#another-run") as HTMLButtonElement).click();
    expect(app.state.phase).toBe("select_lane");
    await selectLane(); // run 2
    expect(app.state.runId).toBe(2);
    await markPoints();
    await pickTwoPeaks();

    (root.querySelector("#finalize") as HTMLButtonElement).click();
    await vi.waitFor(() =>
      expect(root.querySelector("#finalize-result")?.textContent).toMatch(/results_run1\.txt/),
    );
  });
});
