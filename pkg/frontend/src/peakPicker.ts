// Chromatogram chart with click-to-mark peak picking. Only the x value
// of a click matters: the marker is drawn ON the curve at
// signal[round(x)] no matter how high or low the pointer was. Clicks
// pair up start/end; the buffer stays editable until confirmed.

import { ChromatogramData, Click, ClickPair } from "./api.js";
import { canvasToImage } from "./coords.js";

const MARGIN = { left: 44, right: 12, top: 12, bottom: 26 };

export interface Marker {
  idx: number;
  value: number;
}

export class ChromatogramPicker {
  private chrom: ChromatogramData | null = null;
  private clicks: Click[] = [];

  constructor(private canvas: HTMLCanvasElement) {}

  setData(chrom: ChromatogramData): void {
    this.chrom = chrom;
    this.clicks = [];
    this.draw();
  }

  /** Raw data-space clicks buffered so far (x matters, y is free). */
  get clickCount(): number {
    return this.clicks.length;
  }

  /** Snapped on-curve markers, one per buffered click. */
  markers(): Marker[] {
    const chrom = this.chrom;
    if (!chrom) {
      return [];
    }
    return this.clicks.map(([x]) => {
      const idx = this.snapIndex(x);
      return { idx, value: chrom.signal[idx] };
    });
  }

  handleClick(clientX: number, clientY: number): void {
    if (!this.chrom) {
      return;
    }
    const p = canvasToImage(this.canvas, clientX, clientY);
    this.clicks.push([this.dataX(p.x), this.dataY(p.y)]);
    this.draw();
  }

  undo(): void {
    this.clicks.pop();
    this.draw();
  }

  clear(): void {
    this.clicks = [];
    this.draw();
  }

  /**
   * Click pairs for POST /peaks, or an error string when the buffer
   * cannot form peaks yet (local check only; no request is sent).
   */
  payload(): ClickPair[] | string {
    if (this.clicks.length === 0) {
      return "select at least one peak (start and end click)";
    }
    if (this.clicks.length % 2 !== 0) {
      return "every peak needs a start and an end click; one click is unpaired";
    }
    const pairs: ClickPair[] = [];
    for (let i = 0; i < this.clicks.length; i += 2) {
      pairs.push([this.clicks[i], this.clicks[i + 1]]);
    }
    return pairs;
  }

  draw(): void {
    const ctx = this.canvas.getContext("2d");
    const chrom = this.chrom;
    if (!ctx || !chrom) {
      return;
    }
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(0, 0, width, height);

    // pending peak spans
    ctx.fillStyle = "rgba(31, 119, 180, 0.15)";
    for (let i = 0; i + 1 < this.clicks.length; i += 2) {
      const a = this.pxX(this.snapIndex(this.clicks[i][0]));
      const b = this.pxX(this.snapIndex(this.clicks[i + 1][0]));
      ctx.fillRect(Math.min(a, b), MARGIN.top, Math.abs(b - a), this.plotHeight());
    }

    // seed / front guides
    ctx.strokeStyle = "#9ca3af";
    ctx.setLineDash([4, 3]);
    for (const idx of [chrom.seed_idx, chrom.front_idx]) {
      const x = this.pxX(idx);
      ctx.beginPath();
      ctx.moveTo(x, MARGIN.top);
      ctx.lineTo(x, MARGIN.top + this.plotHeight());
      ctx.stroke();
    }
    ctx.setLineDash([]);

    // the curve
    ctx.strokeStyle = "#1f77b4";
    ctx.lineWidth = 1.2;
    ctx.beginPath();
    chrom.signal.forEach((v, i) => {
      const x = this.pxX(i);
      const y = this.pxY(v);
      if (i === 0) {
        ctx.moveTo(x, y);
      } else {
        ctx.lineTo(x, y);
      }
    });
    ctx.stroke();

    // snapped markers, always on the curve
    ctx.fillStyle = "#dc2626";
    for (const m of this.markers()) {
      ctx.beginPath();
      ctx.arc(this.pxX(m.idx), this.pxY(m.value), 3.5, 0, Math.PI * 2);
      ctx.fill();
    }

    // axes
    ctx.strokeStyle = "#111827";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.moveTo(MARGIN.left, MARGIN.top);
    ctx.lineTo(MARGIN.left, MARGIN.top + this.plotHeight());
    ctx.lineTo(MARGIN.left + this.plotWidth(), MARGIN.top + this.plotHeight());
    ctx.stroke();
    ctx.fillStyle = "#111827";
    ctx.font = "11px sans-serif";
    ctx.fillText("distance from seed (px)", MARGIN.left + 4, height - 8);
  }

  private snapIndex(dataX: number): number {
    const n = this.chrom!.signal.length;
    return Math.min(Math.max(Math.round(dataX), 0), n - 1);
  }

  private plotWidth(): number {
    return this.canvas.width - MARGIN.left - MARGIN.right;
  }

  private plotHeight(): number {
    return this.canvas.height - MARGIN.top - MARGIN.bottom;
  }

  private maxValue(): number {
    return Math.max(1, ...this.chrom!.signal);
  }

  private pxX(dataX: number): number {
    const n = this.chrom!.signal.length;
    return MARGIN.left + (dataX / (n - 1)) * this.plotWidth();
  }

  private pxY(value: number): number {
    return MARGIN.top + (1 - value / this.maxValue()) * this.plotHeight();
  }

  private dataX(canvasX: number): number {
    const n = this.chrom!.signal.length;
    return ((canvasX - MARGIN.left) / this.plotWidth()) * (n - 1);
  }

  private dataY(canvasY: number): number {
    return (1 - (canvasY - MARGIN.top) / this.plotHeight()) * this.maxValue();
  }
}
