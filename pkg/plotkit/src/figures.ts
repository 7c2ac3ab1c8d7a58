/** The four figure kinds over harness traces: speed, error, torque, gain.
 *
 * Every figure uses the curvilinear abscissa as its x axis and overlays up
 * to two traces (classic/adaptive comparisons); speed figures also draw the
 * reference speed from the first trace.
 */

import { writeFileSync } from "node:fs";

import { type ChartSpec, renderChart, type Series } from "./chart.js";
import { parseTrace, requireColumn, type Trace, TraceError } from "./csv.js";
import type { Color } from "./png.js";

export const FIGURE_KINDS = ["speed", "error", "torque", "alpha"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface PlotSpec {
  kind: FigureKind;
  tracePaths: string[];
  outPath: string;
}

const TRACE_COLORS: Color[] = [
  [31, 90, 166], // blue
  [196, 64, 32], // red
];
const REFERENCE_COLOR: Color = [110, 110, 110];

const TRACE_LABELS = ["trace 1", "trace 2"];

function labelFor(index: number, count: number): string {
  if (count === 2) {
    return index === 0 ? "classic" : "adaptive";
  }
  return TRACE_LABELS[index] ?? `trace ${index + 1}`;
}

/** Columns each figure kind reads (checked up front, errors name them). */
export const REQUIRED_COLUMNS: Record<FigureKind, string[]> = {
  speed: ["s", "v_true", "v_ref"],
  error: ["s", "v_true", "v_ref"],
  torque: ["s", "u_total"],
  alpha: ["s", "alpha_hat"],
};

/** Assemble the data series for a figure (exposed for tests). */
export function buildSeries(kind: FigureKind, traces: Trace[]): Series[] {
  for (const trace of traces) {
    for (const column of REQUIRED_COLUMNS[kind]) {
      requireColumn(trace, column);
    }
  }
  const series: Series[] = [];
  if (kind === "speed") {
    const first = traces[0];
    series.push({
      label: "reference",
      x: requireColumn(first, "s"),
      y: requireColumn(first, "v_ref"),
      color: REFERENCE_COLOR,
      dash: [6, 5],
    });
  }
  traces.forEach((trace, i) => {
    const s = requireColumn(trace, "s");
    let y: Float64Array;
    switch (kind) {
      case "speed":
        y = requireColumn(trace, "v_true");
        break;
      case "error": {
        const vt = requireColumn(trace, "v_true");
        const vr = requireColumn(trace, "v_ref");
        y = new Float64Array(trace.length);
        for (let k = 0; k < trace.length; k++) {
          y[k] = vt[k] - vr[k];
        }
        break;
      }
      case "torque":
        y = requireColumn(trace, "u_total");
        break;
      case "alpha":
        y = requireColumn(trace, "alpha_hat");
        break;
    }
    series.push({
      label: labelFor(i, traces.length),
      x: s,
      y,
      color: TRACE_COLORS[i % TRACE_COLORS.length],
    });
  });
  return series;
}

const FIGURE_TEXT: Record<FigureKind, { title: string; yLabel: string }> = {
  speed: { title: "longitudinal speed", yLabel: "speed [m/s]" },
  error: { title: "speed tracking error (ground truth)", yLabel: "error [m/s]" },
  torque: { title: "total torque command", yLabel: "torque [n m]" },
  alpha: { title: "adaptive gain estimate", yLabel: "alpha" },
};

/** Render one figure from 1-2 trace files and write the PNG. */
export function plot(spec: PlotSpec): void {
  if (spec.tracePaths.length < 1 || spec.tracePaths.length > 2) {
    throw new TraceError("plot expects one or two --trace files");
  }
  const traces = spec.tracePaths.map(parseTrace);
  const series = buildSeries(spec.kind, traces);
  const chart: ChartSpec = {
    title: FIGURE_TEXT[spec.kind].title,
    xLabel: "curvilinear abscissa s [m]",
    yLabel: FIGURE_TEXT[spec.kind].yLabel,
    series,
  };
  const raster = renderChart(chart);
  writeFileSync(spec.outPath, raster.encode());
}
