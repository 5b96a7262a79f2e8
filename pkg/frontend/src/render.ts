import { readFileSync, writeFileSync } from "node:fs";

import { renderHeatmapSvg } from "./heatmap.js";
import { parseScanJson } from "./scan.js";
import { renderTimeseriesSvg } from "./timeseries.js";
import { parseTrajectoryCsv } from "./trajectory.js";
import { PlotKind, PlotSpec } from "./types.js";

export function inferKind(input: string): PlotKind {
  return input.endsWith(".json") ? "heatmap" : "timeseries";
}

/** Read one artifact, render it, write the SVG; the input is never touched. */
export function render(spec: PlotSpec): string {
  const textContent = readFileSync(spec.input, "utf-8");
  let svg: string;
  if (spec.kind === "heatmap") {
    svg = renderHeatmapSvg(parseScanJson(textContent), {
      title: spec.title,
      xLabel: spec.xLabel,
      yLabel: spec.yLabel,
      boundaryOverlay: spec.boundaryOverlay,
    });
  } else {
    svg = renderTimeseriesSvg(parseTrajectoryCsv(textContent), {
      title: spec.title,
      xLabel: spec.xLabel,
      yLabel: spec.yLabel,
    });
  }
  writeFileSync(spec.output, svg, { encoding: "utf-8" });
  return spec.output;
}
