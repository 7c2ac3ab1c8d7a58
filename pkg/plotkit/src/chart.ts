/** Line-chart rendering on the raw raster: scales, axes, series, legend. */

import { drawText, GLYPH_H, textWidth } from "./font.js";
import { BLACK, type Color, Raster, WHITE } from "./png.js";

export const FIG_WIDTH = 960;
export const FIG_HEIGHT = 540;

const MARGIN = { left: 78, right: 24, top: 46, bottom: 52 };
const GRID: Color = [225, 225, 225];
const AXIS: Color = [40, 40, 40];

export interface Series {
  label: string;
  x: Float64Array | number[];
  y: Float64Array | number[];
  color: Color;
  dash?: readonly [number, number];
  thickness?: number;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

interface Scale {
  min: number;
  max: number;
  toPixel(v: number): number;
}

function makeScale(min: number, max: number, pixelLo: number, pixelHi: number): Scale {
  if (!(max > min)) {
    max = min + 1;
    min = min - 1;
  }
  const span = max - min;
  return {
    min,
    max,
    toPixel: (v: number) => pixelLo + ((v - min) / span) * (pixelHi - pixelLo),
  };
}

/** Tick positions at a 1/2/5 decade step covering [min, max]. */
export function ticks(min: number, max: number, target = 6): number[] {
  const span = max - min;
  if (!(span > 0) || !Number.isFinite(span)) {
    return [min];
  }
  const rawStep = span / target;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (mult * power >= rawStep) {
      step = mult * power;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + 1e-9 * span; v += step) {
    out.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return out;
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    return v.toExponential(1).replace("e", "E");
  }
  const text = a >= 100 ? v.toFixed(0) : a >= 1 ? v.toFixed(2) : v.toFixed(3);
  return text.replace(/\.?0+$/, "");
}

function dataRange(series: Series[], pick: (s: Series) => Float64Array | number[]) {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const v of pick(s)) {
      if (Number.isFinite(v)) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    }
  }
  if (!Number.isFinite(lo)) {
    lo = 0;
    hi = 1;
  }
  return [lo, hi] as const;
}

/** Render the chart and return the raster (deterministic size and axes). */
export function renderChart(spec: ChartSpec): Raster {
  const raster = new Raster(FIG_WIDTH, FIG_HEIGHT, WHITE);
  const plotLeft = MARGIN.left;
  const plotRight = FIG_WIDTH - MARGIN.right;
  const plotTop = MARGIN.top;
  const plotBottom = FIG_HEIGHT - MARGIN.bottom;

  const [xLo, xHi] = dataRange(spec.series, (s) => s.x);
  const [yLoRaw, yHiRaw] = dataRange(spec.series, (s) => s.y);
  const pad = 0.05 * (yHiRaw - yLoRaw || 1);
  const xScale = makeScale(xLo, xHi, plotLeft, plotRight);
  const yScale = makeScale(yLoRaw - pad, yHiRaw + pad, plotBottom, plotTop);

  // grid and tick labels
  for (const tx of ticks(xScale.min, xScale.max, 8)) {
    const px = Math.round(xScale.toPixel(tx));
    raster.line(px, plotTop, px, plotBottom, GRID);
    const label = formatTick(tx);
    drawText(raster, px - textWidth(label) / 2, plotBottom + 8, label, AXIS);
  }
  for (const ty of ticks(yScale.min, yScale.max, 6)) {
    const py = Math.round(yScale.toPixel(ty));
    raster.line(plotLeft, py, plotRight, py, GRID);
    const label = formatTick(ty);
    drawText(raster, plotLeft - textWidth(label) - 8, py - GLYPH_H / 2, label, AXIS);
  }

  // frame
  raster.line(plotLeft, plotTop, plotRight, plotTop, AXIS);
  raster.line(plotLeft, plotBottom, plotRight, plotBottom, AXIS);
  raster.line(plotLeft, plotTop, plotLeft, plotBottom, AXIS);
  raster.line(plotRight, plotTop, plotRight, plotBottom, AXIS);

  // series
  for (const s of spec.series) {
    const n = Math.min(s.x.length, s.y.length);
    let phase = 0;
    for (let i = 1; i < n; i++) {
      const x0 = xScale.toPixel(s.x[i - 1] as number);
      const y0 = yScale.toPixel(s.y[i - 1] as number);
      const x1 = xScale.toPixel(s.x[i] as number);
      const y1 = yScale.toPixel(s.y[i] as number);
      phase = raster.line(
        Math.round(x0),
        Math.round(y0),
        Math.round(x1),
        Math.round(y1),
        s.color,
        s.thickness ?? 2,
        s.dash,
        phase,
      );
    }
  }

  // title, labels, legend
  drawText(raster, plotLeft, 12, spec.title, BLACK);
  drawText(
    raster,
    Math.round((plotLeft + plotRight) / 2 - textWidth(spec.xLabel) / 2),
    FIG_HEIGHT - GLYPH_H - 10,
    spec.xLabel,
    BLACK,
  );
  drawText(raster, 8, plotTop - GLYPH_H - 8, spec.yLabel, BLACK);

  let lx = plotRight;
  for (const s of [...spec.series].reverse()) {
    lx -= textWidth(s.label) + 34;
    raster.line(lx, 12 + GLYPH_H / 2, lx + 18, 12 + GLYPH_H / 2, s.color, 2, s.dash);
    drawText(raster, lx + 24, 12, s.label, BLACK);
  }
  return raster;
}
