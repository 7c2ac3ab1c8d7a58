#!/usr/bin/env node
/** plot --kind error --trace a.csv [--trace b.csv] --out fig.png */

import { FIGURE_KINDS, type FigureKind, plot } from "./figures.js";

function usage(): string {
  return (
    "usage: plot --kind <speed|error|torque|alpha> --trace FILE [--trace FILE] --out FILE.png"
  );
}

export function parseArgs(argv: string[]): {
  kind: FigureKind;
  tracePaths: string[];
  outPath: string;
} {
  let kind: string | undefined;
  const tracePaths: string[] = [];
  let outPath: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--kind":
        kind = argv[++i];
        break;
      case "--trace":
        tracePaths.push(argv[++i]);
        break;
      case "--out":
        outPath = argv[++i];
        break;
      case "--help":
      case "-h":
        throw new RangeError(usage());
      default:
        throw new Error(`unknown argument ${argv[i]}\n${usage()}`);
    }
  }
  if (!kind || !(FIGURE_KINDS as readonly string[]).includes(kind)) {
    throw new Error(`--kind must be one of ${FIGURE_KINDS.join(", ")}\n${usage()}`);
  }
  if (tracePaths.length === 0 || tracePaths.some((p) => !p)) {
    throw new Error(`at least one --trace file is required\n${usage()}`);
  }
  if (!outPath) {
    throw new Error(`--out is required\n${usage()}`);
  }
  return { kind: kind as FigureKind, tracePaths, outPath };
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    plot(args);
    console.log(`wrote ${args.outPath}`);
    return 0;
  } catch (err) {
    if (err instanceof RangeError) {
      console.log(err.message);
      return 0;
    }
    console.error(err instanceof Error ? err.message : String(err));
    return 1;
  }
}

import { fileURLToPath } from "node:url";

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}
