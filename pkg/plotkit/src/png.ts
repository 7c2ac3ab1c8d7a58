/** Minimal truecolor PNG writer and a pixel raster to draw into.
 *
 * Only what the charts need: 8-bit RGB, no alpha, no interlacing; the
 * deflate stage comes from node's zlib.
 */

import { deflateSync } from "node:zlib";

export type Color = readonly [number, number, number];

export const WHITE: Color = [255, 255, 255];
export const BLACK: Color = [0, 0, 0];

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(bytes: Uint8Array): number {
  let crc = 0xffffffff;
  for (const b of bytes) {
    crc = CRC_TABLE[(crc ^ b) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Uint8Array): Uint8Array {
  const out = new Uint8Array(12 + data.length);
  const view = new DataView(out.buffer);
  view.setUint32(0, data.length);
  for (let i = 0; i < 4; i++) {
    out[4 + i] = type.charCodeAt(i);
  }
  out.set(data, 8);
  view.setUint32(8 + data.length, crc32(out.subarray(4, 8 + data.length)));
  return out;
}

export class Raster {
  readonly width: number;
  readonly height: number;
  private readonly pixels: Uint8Array; // RGB, row-major

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 3);
    for (let i = 0; i < width * height; i++) {
      this.pixels[3 * i] = background[0];
      this.pixels[3 * i + 1] = background[1];
      this.pixels[3 * i + 2] = background[2];
    }
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = 3 * (y * this.width + x);
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
  }

  /** Square dot of the given pixel size, centered-ish at (x, y). */
  dot(x: number, y: number, size: number, color: Color): void {
    const lo = -((size - 1) >> 1);
    const hi = size >> 1;
    for (let dy = lo; dy <= hi; dy++) {
      for (let dx = lo; dx <= hi; dx++) {
        this.set(x + dx, y + dy, color);
      }
    }
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Color): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.set(x, y, color);
      }
    }
  }

  /**
   * Line segment with thickness; `dash` alternates on/off pixel runs and
   * `phase` carries the pattern across consecutive segments.
   */
  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    color: Color,
    thickness = 1,
    dash?: readonly [number, number],
    phase = 0,
  ): number {
    const dx = x1 - x0;
    const dy = y1 - y0;
    const steps = Math.max(Math.abs(dx), Math.abs(dy), 1);
    const period = dash ? dash[0] + dash[1] : 0;
    let travelled = phase;
    for (let i = 0; i <= steps; i++) {
      const x = Math.round(x0 + (dx * i) / steps);
      const y = Math.round(y0 + (dy * i) / steps);
      const on = !dash || travelled % period < dash[0];
      if (on) {
        this.dot(x, y, thickness, color);
      }
      travelled += Math.hypot(dx / steps, dy / steps);
    }
    return period > 0 ? travelled % period : 0;
  }

  /** Encode the raster as a PNG byte buffer. */
  encode(): Buffer {
    const stride = this.width * 3;
    const raw = new Uint8Array((stride + 1) * this.height);
    for (let y = 0; y < this.height; y++) {
      raw[y * (stride + 1)] = 0; // filter: none
      raw.set(this.pixels.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
    }
    const ihdr = new Uint8Array(13);
    const view = new DataView(ihdr.buffer);
    view.setUint32(0, this.width);
    view.setUint32(4, this.height);
    ihdr[8] = 8; // bit depth
    ihdr[9] = 2; // truecolor
    const signature = Uint8Array.from([137, 80, 78, 71, 13, 10, 26, 10]);
    return Buffer.concat([
      signature,
      chunk("IHDR", ihdr),
      chunk("IDAT", deflateSync(raw)),
      chunk("IEND", new Uint8Array(0)),
    ]);
  }
}
