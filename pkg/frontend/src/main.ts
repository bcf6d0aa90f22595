#!/usr/bin/env node
/**
 * diasil-figures: render publication-style SVG figures from the simulation
 * toolkit's CSV/PGM outputs.
 *
 *   diasil-figures <kind> --out fig.svg input1.csv [input2.csv ...]
 *
 * kinds: fieldmap | efficiency | sweep | saturation | g2 | linescan
 */

import { writeFileSync } from "fs";

import { SchemaError } from "./csv.js";
import { FigureKind, FigureSpec, render } from "./figures.js";

const KINDS: FigureKind[] = [
  "fieldmap",
  "efficiency",
  "sweep",
  "saturation",
  "g2",
  "linescan",
];

function usage(): string {
  return (
    "usage: diasil-figures <kind> --out <file.svg> [--title <t>] <inputs...>\n" +
    `  kinds: ${KINDS.join(", ")}\n`
  );
}

export function main(argv: string[]): number {
  const args = [...argv];
  const kind = args.shift();
  if (!kind || kind === "--help" || kind === "-h") {
    process.stdout.write(usage());
    return kind ? 0 : 2;
  }
  if (!KINDS.includes(kind as FigureKind)) {
    process.stderr.write(`error: unknown figure kind '${kind}'\n${usage()}`);
    return 2;
  }
  let out: string | null = null;
  let title: string | undefined;
  const inputs: string[] = [];
  while (args.length > 0) {
    const a = args.shift()!;
    if (a === "--out") out = args.shift() ?? null;
    else if (a === "--title") title = args.shift();
    else inputs.push(a);
  }
  if (!out || inputs.length === 0) {
    process.stderr.write(`error: need --out and at least one input\n${usage()}`);
    return 2;
  }
  const spec: FigureSpec = { kind: kind as FigureKind, inputs, title };
  try {
    const svg = render(spec);
    writeFileSync(out, svg);
    process.stdout.write(`wrote ${out}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: schema: ${err.message}\n`);
      return 3;
    }
    if (err instanceof Error && "code" in err) {
      process.stderr.write(`error: io: ${err.message}\n`);
      return 4;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
