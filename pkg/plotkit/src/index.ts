export { parseTrace, requireColumn, TraceError, TRACE_COLUMNS } from "./csv.js";
export type { Trace } from "./csv.js";
export { Raster, BLACK, WHITE } from "./png.js";
export type { Color } from "./png.js";
export { renderChart, ticks, formatTick, FIG_WIDTH, FIG_HEIGHT } from "./chart.js";
export type { ChartSpec, Series } from "./chart.js";
export { plot, buildSeries, FIGURE_KINDS, REQUIRED_COLUMNS } from "./figures.js";
export type { FigureKind, PlotSpec } from "./figures.js";
export { main, parseArgs } from "./cli.js";
