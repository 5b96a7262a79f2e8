import { viridis } from "./colormap.js";
import { ScanData } from "./scan.js";
import { document as svgDoc, fmt, niceTicks, scale, tag, text } from "./svg.js";
import { axisLabel } from "./types.js";

export interface HeatmapOptions {
  title?: string;
  xLabel?: string;
  yLabel?: string;
  boundaryOverlay?: boolean;
}

const M = { left: 76, right: 110, top: 46, bottom: 58 };
const PLOT_W = 560;
const PLOT_H = 400;

/** axis2 runs along x, axis1 along y (increasing upward). */
export function renderHeatmapSvg(scan: ScanData, opts: HeatmapOptions = {}): string {
  const width = M.left + PLOT_W + M.right;
  const height = M.top + PLOT_H + M.bottom;
  const n1 = scan.axis1.count;
  const n2 = scan.axis2.count;

  let vmin = Infinity;
  let vmax = -Infinity;
  for (const row of scan.values) {
    for (const v of row) {
      if (v < vmin) vmin = v;
      if (v > vmax) vmax = v;
    }
  }
  if (!(vmax > vmin)) vmax = vmin + 1;

  const x = scale(scan.axis2.min, scan.axis2.max, M.left, M.left + PLOT_W);
  const y = scale(scan.axis1.min, scan.axis1.max, M.top + PLOT_H, M.top);
  const cellW = PLOT_W / (n2 - 1);
  const cellH = PLOT_H / (n1 - 1);

  const parts: string[] = [];
  for (let i = 0; i < n1; i++) {
    for (let j = 0; j < n2; j++) {
      const t = (scan.values[i][j] - vmin) / (vmax - vmin);
      parts.push(tag("rect", {
        x: x(scan.axis2.min + (j - 0.5) * (scan.axis2.max - scan.axis2.min) / (n2 - 1)),
        y: y(scan.axis1.min + (i + 0.5) * (scan.axis1.max - scan.axis1.min) / (n1 - 1)),
        width: cellW + 0.5,
        height: cellH + 0.5,
        fill: viridis(t),
      }));
    }
  }

  if (opts.boundaryOverlay !== false) {
    for (const line of scan.boundaries) {
      if (line.length === 0) continue;
      const pts = line.map(([a1, a2]) => `${fmt(x(a2))},${fmt(y(a1))}`).join(" ");
      if (line.length === 1) {
        const [a1, a2] = line[0];
        parts.push(tag("circle", {
          cx: x(a2), cy: y(a1), r: 1.6, fill: "white", class: "boundary",
        }));
      } else {
        parts.push(tag("polyline", {
          points: pts, fill: "none", stroke: "white",
          "stroke-width": 2, class: "boundary",
        }));
      }
    }
  }

  // frame and ticks
  parts.push(tag("rect", {
    x: M.left, y: M.top, width: PLOT_W, height: PLOT_H,
    fill: "none", stroke: "black",
  }));
  for (const v of niceTicks(scan.axis2.min, scan.axis2.max)) {
    parts.push(tag("line", {
      x1: x(v), x2: x(v), y1: M.top + PLOT_H, y2: M.top + PLOT_H + 5, stroke: "black",
    }));
    parts.push(text(x(v), M.top + PLOT_H + 20, fmt(v),
                    { "text-anchor": "middle", "font-size": 12 }));
  }
  for (const v of niceTicks(scan.axis1.min, scan.axis1.max)) {
    parts.push(tag("line", {
      x1: M.left - 5, x2: M.left, y1: y(v), y2: y(v), stroke: "black",
    }));
    parts.push(text(M.left - 9, y(v) + 4, fmt(v),
                    { "text-anchor": "end", "font-size": 12 }));
  }
  parts.push(text(M.left + PLOT_W / 2, height - 14,
                  opts.xLabel ?? axisLabel(scan.axis2.name),
                  { "text-anchor": "middle", "font-size": 15 }));
  parts.push(text(18, M.top + PLOT_H / 2,
                  opts.yLabel ?? axisLabel(scan.axis1.name),
                  {
                    "text-anchor": "middle", "font-size": 15,
                    transform: `rotate(-90 18 ${M.top + PLOT_H / 2})`,
                  }));
  parts.push(text(M.left + PLOT_W / 2, 26, opts.title ?? scan.quantity,
                  { "text-anchor": "middle", "font-size": 16 }));

  // colorbar
  const cbX = M.left + PLOT_W + 24;
  const cbW = 16;
  const steps = 64;
  for (let k = 0; k < steps; k++) {
    const t0 = k / steps;
    parts.push(tag("rect", {
      x: cbX,
      y: M.top + PLOT_H * (1 - (k + 1) / steps),
      width: cbW,
      height: PLOT_H / steps + 0.5,
      fill: viridis(t0 + 0.5 / steps),
    }));
  }
  parts.push(tag("rect", {
    x: cbX, y: M.top, width: cbW, height: PLOT_H, fill: "none", stroke: "black",
  }));
  parts.push(text(cbX + cbW + 6, M.top + PLOT_H + 4, fmt(vmin), { "font-size": 11 }));
  parts.push(text(cbX + cbW + 6, M.top + 8, fmt(vmax), { "font-size": 11 }));

  return svgDoc(width, height, parts.join("\n"));
}
