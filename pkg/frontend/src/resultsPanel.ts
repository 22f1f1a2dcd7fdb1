// Results table plus the run loop controls. Every cell is a formatted
// echo of a server value; the panel computes nothing itself.

import { FinalizeResponse, PeakRow } from "./api.js";
import { fmtArea, fmtPercent, fmtRf } from "./format.js";

export class ResultsPanel {
  constructor(
    private root: HTMLElement,
    private onAnotherRun: () => void,
    private onFinalize: () => void,
  ) {}

  showPeaks(peaks: PeakRow[], reportText: string): void {
    const rows = peaks
      .map(
        (p) =>
          `<tr><td>${p.number}</td><td>${fmtArea(p.area)}</td>` +
          `<td class="percent">${fmtPercent(p.percent)}</td><td>${fmtRf(p.rf)}</td></tr>`,
      )
      .join("");
    this.root.innerHTML = `
      <table class="results">
        <thead><tr><th>peak</th><th>area</th><th>percent</th><th>rf</th></tr></thead>
        <tbody>${rows}</tbody>
      </table>
      <details><summary>report text</summary><pre class="report"></pre></details>
      <div class="actions">
        <button id="another-run">Analyze another run</button>
        <button id="finalize">Finalize</button>
      </div>
      <div id="finalize-result"></div>
    `;
    (this.root.querySelector("pre.report") as HTMLPreElement).textContent = reportText;
    (this.root.querySelector("#another-run") as HTMLButtonElement).addEventListener(
      "click",
      () => this.onAnotherRun(),
    );
    (this.root.querySelector("#finalize") as HTMLButtonElement).addEventListener(
      "click",
      () => this.onFinalize(),
    );
  }

  showFinalized(result: FinalizeResponse): void {
    const target = this.root.querySelector("#finalize-result") as HTMLElement;
    const items = result.files.map((f) => `<li>${f}</li>`).join("");
    target.innerHTML = `<p>written to <code>${result.output_dir}</code>:</p><ul>${items}</ul>`;
  }
}
