export type PlotKind = "heatmap" | "timeseries";

export interface PlotSpec {
  input: string;
  kind: PlotKind;
  output: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  /** draw white stability-boundary polylines on heatmaps (default true) */
  boundaryOverlay?: boolean;
}

/** Input file does not match the expected schema; names the offending part. */
export class SchemaError extends Error {
  readonly offending: string;

  constructor(message: string, offending: string) {
    super(`${message} (offending: ${offending})`);
    this.name = "SchemaError";
    this.offending = offending;
  }
}

export const AXIS_LABELS: Record<string, string> = {
  lambda: "λ",
  two_eps_over_omega: "2ε/ω",
  beta: "β",
  beta_l: "β_l",
  beta_r: "β_r",
};

export function axisLabel(name: string): string {
  return AXIS_LABELS[name] ?? name;
}
