import { SchemaError } from "./types.js";

export const TRAJECTORY_COLUMNS = [
  "t", "P1", "P2", "P3", "P4", "Ptot",
  "re_a1", "im_a1", "re_a2", "im_a2", "re_a3", "im_a3", "re_a4", "im_a4",
] as const;

export interface TrajectoryData {
  times: number[];
  /** columns P1..P4 and Ptot, one row per sample */
  probabilities: number[][];
}

export function parseTrajectoryCsv(text: string): TrajectoryData {
  const lines = text.trim().split(/\r?\n/);
  if (lines.length < 2) {
    throw new SchemaError("trajectory CSV needs a header and at least one row", "file");
  }
  const header = lines[0].split(",");
  for (let i = 0; i < TRAJECTORY_COLUMNS.length; i++) {
    if (header[i] !== TRAJECTORY_COLUMNS[i]) {
      throw new SchemaError(
        `unexpected trajectory column ${i + 1}: got ${JSON.stringify(header[i])}, ` +
        `expected ${TRAJECTORY_COLUMNS[i]}`,
        `column ${header[i] ?? "<missing>"}`);
    }
  }
  if (header.length !== TRAJECTORY_COLUMNS.length) {
    throw new SchemaError(
      `trajectory CSV has ${header.length} columns, expected ${TRAJECTORY_COLUMNS.length}`,
      `column ${header[TRAJECTORY_COLUMNS.length]}`);
  }

  const times: number[] = [];
  const probabilities: number[][] = [];
  for (let r = 1; r < lines.length; r++) {
    const cells = lines[r].split(",");
    if (cells.length !== TRAJECTORY_COLUMNS.length) {
      throw new SchemaError(`row ${r} has ${cells.length} cells`, `row ${r}`);
    }
    const row = cells.map((c, j) => {
      const v = Number(c);
      if (c.trim() === "" || Number.isNaN(v)) {
        throw new SchemaError(
          `non-numeric value ${JSON.stringify(c)} in row ${r}`,
          `column ${TRAJECTORY_COLUMNS[j]}`);
      }
      return v;
    });
    times.push(row[0]);
    probabilities.push(row.slice(1, 6));
  }
  return { times, probabilities };
}
