import { TrajectoryData } from "./trajectory.js";
import { document as svgDoc, fmt, niceTicks, scale, tag, text } from "./svg.js";

export interface TimeseriesOptions {
  title?: string;
  xLabel?: string;
  yLabel?: string;
}

const M = { left: 70, right: 150, top: 40, bottom: 54 };
const PLOT_W = 560;
const PLOT_H = 360;

/** Styling mirrors the four-state labeling of the source figures. */
const SERIES = [
  { col: 0, label: "P1 |0,↑⟩", color: "#e69f00", width: 1.4, dash: "" },
  { col: 1, label: "P2 |↓,0⟩", color: "#7b3fa0", width: 1.6, dash: "5,3" },
  { col: 2, label: "P3 |↑,0⟩", color: "#2e8b57", width: 1.4, dash: "9,4" },
  { col: 3, label: "P4 |0,↓⟩", color: "#d62728", width: 2.2, dash: "11,5" },
  { col: 4, label: "Ptot", color: "#1f77b4", width: 1.8, dash: "" },
];

const LOG_FLOOR = 1e-16;

export function renderTimeseriesSvg(traj: TrajectoryData,
                                    opts: TimeseriesOptions = {}): string {
  const width = M.left + PLOT_W + M.right;
  const height = M.top + PLOT_H + M.bottom;
  const times = traj.times;
  const tMin = Math.min(...times);
  const tMax = Math.max(...times);

  let yMax = 0;
  for (const row of traj.probabilities) {
    for (const v of row) if (v > yMax) yMax = v;
  }
  const logScale = yMax > 100;
  const yLo = logScale ? Math.log10(LOG_FLOOR) : 0;
  const yHi = logScale ? Math.log10(Math.max(yMax, 1)) * 1.05 : yMax * 1.05 || 1;
  const yVal = (v: number) => (logScale ? Math.log10(Math.max(v, LOG_FLOOR)) : v);

  const x = scale(tMin, tMax, M.left, M.left + PLOT_W);
  const y = scale(yLo, yHi, M.top + PLOT_H, M.top);

  const parts: string[] = [];
  for (const s of SERIES) {
    const pts = times
      .map((t, i) => `${fmt(x(t))},${fmt(y(yVal(traj.probabilities[i][s.col])))}`)
      .join(" ");
    const attrs: Record<string, string | number> = {
      points: pts, fill: "none", stroke: s.color,
      "stroke-width": s.width, class: "series",
    };
    if (s.dash) attrs["stroke-dasharray"] = s.dash;
    parts.push(tag("polyline", attrs));
  }

  parts.push(tag("rect", {
    x: M.left, y: M.top, width: PLOT_W, height: PLOT_H,
    fill: "none", stroke: "black",
  }));
  for (const v of niceTicks(tMin, tMax)) {
    parts.push(tag("line", {
      x1: x(v), x2: x(v), y1: M.top + PLOT_H, y2: M.top + PLOT_H + 5, stroke: "black",
    }));
    parts.push(text(x(v), M.top + PLOT_H + 20, fmt(v),
                    { "text-anchor": "middle", "font-size": 12 }));
  }
  const yTicks = logScale
    ? niceTicks(yLo, yHi, 6).map((v) => Math.round(v))
        .filter((v, i, a) => a.indexOf(v) === i)
    : niceTicks(yLo, yHi, 6);
  for (const v of yTicks) {
    parts.push(tag("line", {
      x1: M.left - 5, x2: M.left, y1: y(v), y2: y(v), stroke: "black",
    }));
    parts.push(text(M.left - 9, y(v) + 4, logScale ? `1e${fmt(v)}` : fmt(v),
                    { "text-anchor": "end", "font-size": 12 }));
  }
  parts.push(text(M.left + PLOT_W / 2, height - 14, opts.xLabel ?? "t",
                  { "text-anchor": "middle", "font-size": 15 }));
  parts.push(text(18, M.top + PLOT_H / 2,
                  opts.yLabel ?? (logScale ? "probability (log)" : "probability"),
                  {
                    "text-anchor": "middle", "font-size": 15,
                    transform: `rotate(-90 18 ${M.top + PLOT_H / 2})`,
                  }));
  if (opts.title) {
    parts.push(text(M.left + PLOT_W / 2, 24, opts.title,
                    { "text-anchor": "middle", "font-size": 16 }));
  }

  // legend
  const lx = M.left + PLOT_W + 16;
  let ly = M.top + 10;
  for (const s of SERIES) {
    const attrs: Record<string, string | number> = {
      x1: lx, x2: lx + 26, y1: ly, y2: ly,
      stroke: s.color, "stroke-width": s.width,
    };
    if (s.dash) attrs["stroke-dasharray"] = s.dash;
    parts.push(tag("line", attrs));
    parts.push(text(lx + 32, ly + 4, s.label, { "font-size": 13, class: "legend" }));
    ly += 22;
  }

  return svgDoc(width, height, parts.join("\n"));
}
