import { SchemaError } from "./types.js";

export interface ScanAxis {
  name: string;
  min: number;
  max: number;
  count: number;
}

export interface ScanData {
  quantity: string;
  axis1: ScanAxis;
  axis2: ScanAxis;
  /** values[i][j] belongs to (axis1[i], axis2[j]) */
  values: number[][];
  verdicts: string[][];
  /** polylines of (axis1, axis2) pairs */
  boundaries: [number, number][][];
}

const VERDICT_LETTERS = new Set(["A", "B", "C", "D"]);

function requireAxis(obj: unknown, field: string): ScanAxis {
  const ax = obj as Partial<ScanAxis> | undefined;
  if (!ax || typeof ax.name !== "string" || typeof ax.min !== "number"
      || typeof ax.max !== "number" || typeof ax.count !== "number") {
    throw new SchemaError("scan axis is malformed", field);
  }
  if (!(ax.count >= 2) || !(ax.min < ax.max)) {
    throw new SchemaError("scan axis range is degenerate", field);
  }
  return ax as ScanAxis;
}

export function parseScanJson(text: string): ScanData {
  let raw: any;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`scan file is not valid JSON: ${err}`, "file");
  }
  if (raw?.kind !== "scan") {
    throw new SchemaError(`expected kind "scan", got ${JSON.stringify(raw?.kind)}`, "kind");
  }
  const axis1 = requireAxis(raw.axis1, "axis1");
  const axis2 = requireAxis(raw.axis2, "axis2");
  const cells = axis1.count * axis2.count;

  if (!Array.isArray(raw.values) || raw.values.length !== cells) {
    throw new SchemaError(`values must hold ${cells} numbers`, "values");
  }
  if (!Array.isArray(raw.verdicts) || raw.verdicts.length !== cells) {
    throw new SchemaError(`verdicts must hold ${cells} letters`, "verdicts");
  }

  const values: number[][] = [];
  const verdicts: string[][] = [];
  for (let i = 0; i < axis1.count; i++) {
    const vrow: number[] = [];
    const crow: string[] = [];
    for (let j = 0; j < axis2.count; j++) {
      const v = raw.values[i * axis2.count + j];
      if (typeof v !== "number" || Number.isNaN(v)) {
        throw new SchemaError(`non-numeric value at cell (${i}, ${j})`, "values");
      }
      const w = raw.verdicts[i * axis2.count + j];
      if (!VERDICT_LETTERS.has(w)) {
        throw new SchemaError(`bad verdict ${JSON.stringify(w)} at cell (${i}, ${j})`, "verdicts");
      }
      vrow.push(v);
      crow.push(w);
    }
    values.push(vrow);
    verdicts.push(crow);
  }

  const boundaries: [number, number][][] = [];
  if (raw.boundaries !== undefined) {
    if (!Array.isArray(raw.boundaries)) {
      throw new SchemaError("boundaries must be an array of polylines", "boundaries");
    }
    for (const line of raw.boundaries) {
      if (!Array.isArray(line)) {
        throw new SchemaError("each boundary must be a list of points", "boundaries");
      }
      const pts: [number, number][] = line.map((pt: unknown) => {
        if (!Array.isArray(pt) || pt.length !== 2
            || typeof pt[0] !== "number" || typeof pt[1] !== "number") {
          throw new SchemaError("boundary points must be [axis1, axis2] pairs", "boundaries");
        }
        return [pt[0], pt[1]];
      });
      boundaries.push(pts);
    }
  }

  return {
    quantity: typeof raw.quantity === "string" ? raw.quantity : "",
    axis1, axis2, values, verdicts, boundaries,
  };
}
