import { beforeEach, describe, expect, it } from "vitest";

import { ChromatogramPicker } from "../src/peakPicker.js";

// chart geometry from peakPicker.ts: 44px left margin, 12px right
const LEFT = 44;
const RIGHT = 12;

function makeCanvas(): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = 720;
  canvas.height = 300;
  canvas.getBoundingClientRect = () =>
    ({ left: 0, top: 0, width: 720, height: 300, right: 720, bottom: 300, x: 0, y: 0, toJSON: () => ({}) }) as DOMRect;
  return canvas;
}

const SIGNAL = Array.from({ length: 101 }, (_, i) => (i % 11) * 10);

function clientXForData(dataX: number, n: number, canvas: HTMLCanvasElement): number {
  const plotWidth = canvas.width - LEFT - RIGHT;
  return LEFT + (dataX / (n - 1)) * plotWidth;
}

describe("ChromatogramPicker", () => {
  let canvas: HTMLCanvasElement;
  let picker: ChromatogramPicker;

  beforeEach(() => {
    canvas = makeCanvas();
    picker = new ChromatogramPicker(canvas);
    picker.setData({ signal: SIGNAL, seed_idx: 5, front_idx: 95 });
  });

  it("markers land on the curve no matter the click height", () => {
    const x = clientXForData(40, SIGNAL.length, canvas);
    picker.handleClick(x, 2); // far above the curve
    picker.handleClick(x, 298); // far below
    const markers = picker.markers();
    expect(markers).toHaveLength(2);
    for (const m of markers) {
      expect(m.idx).toBe(40);
      expect(m.value).toBe(SIGNAL[40]);
    }
  });

  it("clicks outside the data range clamp to the ends", () => {
    picker.handleClick(0, 150); // left of the plot area
    picker.handleClick(719, 150); // right of it
    const [lo, hi] = picker.markers();
    expect(lo.idx).toBe(0);
    expect(hi.idx).toBe(SIGNAL.length - 1);
  });

  it("odd click counts are a local validation error, even counts pair up", () => {
    picker.handleClick(clientXForData(10, SIGNAL.length, canvas), 50);
    expect(typeof picker.payload()).toBe("string");

    picker.handleClick(clientXForData(30, SIGNAL.length, canvas), 250);
    const payload = picker.payload();
    expect(Array.isArray(payload)).toBe(true);
    const pairs = payload as [number, number][][];
    expect(pairs).toHaveLength(1);
    expect(Math.round(pairs[0][0][0])).toBe(10);
    expect(Math.round(pairs[0][1][0])).toBe(30);
  });

  it("empty buffer cannot be confirmed", () => {
    expect(picker.payload()).toMatch(/at least one peak/);
  });

  it("undo keeps the buffer editable", () => {
    picker.handleClick(clientXForData(10, SIGNAL.length, canvas), 50);
    picker.handleClick(clientXForData(30, SIGNAL.length, canvas), 50);
    picker.undo();
    expect(picker.clickCount).toBe(1);
    picker.handleClick(clientXForData(35, SIGNAL.length, canvas), 50);
    const pairs = picker.payload() as [number, number][][];
    expect(Math.round(pairs[0][1][0])).toBe(35);
  });

  it("setData clears any previous clicks", () => {
    picker.handleClick(clientXForData(10, SIGNAL.length, canvas), 50);
    picker.setData({ signal: SIGNAL, seed_idx: 5, front_idx: 95 });
    expect(picker.clickCount).toBe(0);
  });
});
