/** Trace-CSV ingestion for the simulation harness's logging format. */

import { readFileSync } from "node:fs";

/** Columns produced by the simulation harness, one row per control step. */
export const TRACE_COLUMNS = [
  "t",
  "s",
  "v_ref",
  "v_true",
  "v_meas",
  "error",
  "f_hat",
  "alpha_hat",
  "u_total",
  "u_applied",
  "tq_fl",
  "tq_fr",
  "tq_rl",
  "tq_rr",
] as const;

export interface Trace {
  /** Column name -> per-step values. */
  columns: Map<string, Float64Array>;
  length: number;
  path: string;
}

export class TraceError extends Error {}

/** Parse a trace CSV. Fails on empty files or ragged rows. */
export function parseTrace(path: string): Trace {
  const text = readFileSync(path, "utf8");
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new TraceError(`${path}: file is empty`);
  }
  const header = lines[0].split(",").map((h) => h.trim());
  if (lines.length === 1) {
    throw new TraceError(`${path}: no data rows`);
  }
  const n = lines.length - 1;
  const cols = header.map(() => new Float64Array(n));
  for (let i = 0; i < n; i++) {
    const parts = lines[i + 1].split(",");
    if (parts.length !== header.length) {
      throw new TraceError(
        `${path}: row ${i + 2} has ${parts.length} fields, expected ${header.length}`,
      );
    }
    for (let j = 0; j < header.length; j++) {
      const v = Number(parts[j]);
      if (Number.isNaN(v)) {
        throw new TraceError(`${path}: row ${i + 2}, column ${header[j]}: not a number`);
      }
      cols[j][i] = v;
    }
  }
  const columns = new Map<string, Float64Array>();
  header.forEach((h, j) => columns.set(h, cols[j]));
  return { columns, length: n, path };
}

/** Fetch a column, naming it explicitly when absent. */
export function requireColumn(trace: Trace, name: string): Float64Array {
  const col = trace.columns.get(name);
  if (col === undefined) {
    throw new TraceError(`${trace.path}: required column "${name}" is missing`);
  }
  return col;
}
