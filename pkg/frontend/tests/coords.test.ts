import { describe, expect, it } from "vitest";

import { canvasToImage } from "../src/coords.js";

function canvasWithRect(
  width: number,
  height: number,
  rect: { left: number; top: number; width: number; height: number },
): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = width;
  canvas.height = height;
  canvas.getBoundingClientRect = () =>
    ({ ...rect, right: rect.left + rect.width, bottom: rect.top + rect.height, x: rect.left, y: rect.top, toJSON: () => ({}) }) as DOMRect;
  return canvas;
}

describe("canvasToImage", () => {
  it("maps 1:1 when css size equals pixel size", () => {
    const canvas = canvasWithRect(400, 200, { left: 10, top: 20, width: 400, height: 200 });
    expect(canvasToImage(canvas, 110, 70)).toEqual({ x: 100, y: 50 });
  });

  it("a 2x-zoomed canvas sends identical payloads", () => {
    const at1x = canvasWithRect(400, 200, { left: 0, top: 0, width: 400, height: 200 });
    const at2x = canvasWithRect(400, 200, { left: 0, top: 0, width: 800, height: 400 });
    const image1x = canvasToImage(at1x, 100, 50);
    const image2x = canvasToImage(at2x, 200, 100); // same spot on a doubled canvas
    expect(image2x).toEqual(image1x);
  });

  it("handles fractional zoom and offsets", () => {
    const canvas = canvasWithRect(300, 300, { left: 15, top: 5, width: 450, height: 450 });
    const p = canvasToImage(canvas, 15 + 225, 5 + 90);
    expect(p.x).toBeCloseTo(150, 10);
    expect(p.y).toBeCloseTo(60, 10);
  });

  it("falls back to the pixel grid before layout", () => {
    const canvas = canvasWithRect(120, 400, { left: 0, top: 0, width: 0, height: 0 });
    expect(canvasToImage(canvas, 30, 40)).toEqual({ x: 30, y: 40 });
  });
});
