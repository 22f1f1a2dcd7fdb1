// Lane rectangle selection: two pointer clicks on the plate canvas form
// the payload; between them a live rectangle follows the pointer. On a
// degenerate_selection rejection the overlay re-arms for new clicks.

import { Click, ClickPair } from "./api.js";
import { canvasToImage } from "./coords.js";

export class LaneSelectionOverlay {
  private first: Click | null = null;
  private hover: Click | null = null;

  constructor(
    private canvas: HTMLCanvasElement,
    private onComplete: (rectClicks: ClickPair) => void,
    private redrawBackdrop: () => void,
  ) {}

  get armed(): boolean {
    return this.first !== null;
  }

  handlePointerDown(clientX: number, clientY: number): void {
    const p = canvasToImage(this.canvas, clientX, clientY);
    const click: Click = [p.x, p.y];
    if (this.first === null) {
      this.first = click;
      this.draw();
      return;
    }
    const pair: ClickPair = [this.first, click];
    this.reset();
    this.onComplete(pair);
  }

  handlePointerMove(clientX: number, clientY: number): void {
    if (this.first === null) {
      return;
    }
    const p = canvasToImage(this.canvas, clientX, clientY);
    this.hover = [p.x, p.y];
    this.draw();
  }

  /** Clear clicks and the live rectangle (used after server re-ask). */
  reset(): void {
    this.first = null;
    this.hover = null;
    this.draw();
  }

  private draw(): void {
    this.redrawBackdrop();
    const ctx = this.canvas.getContext("2d");
    if (!ctx || this.first === null) {
      return;
    }
    const [x0, y0] = this.first;
    ctx.strokeStyle = "#d97706";
    ctx.lineWidth = 1.5;
    if (this.hover !== null) {
      const [x1, y1] = this.hover;
      ctx.strokeRect(Math.min(x0, x1), Math.min(y0, y1), Math.abs(x1 - x0), Math.abs(y1 - y0));
    } else {
      ctx.beginPath();
      ctx.moveTo(x0 - 6, y0);
      ctx.lineTo(x0 + 6, y0);
      ctx.moveTo(x0, y0 - 6);
      ctx.lineTo(x0, y0 + 6);
      ctx.stroke();
    }
  }
}
