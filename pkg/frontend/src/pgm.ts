/** Reader for the toolkit's ASCII (P2) PGM field maps. */

import { readFileSync } from "fs";

import { SchemaError } from "./csv.js";

export interface PgmImage {
  width: number;
  height: number;
  maxval: number;
  /** row-major, normalised to [0, 1] */
  data: Float64Array;
}

export function readPgm(path: string): PgmImage {
  const text = readFileSync(path, "utf8");
  const tokens: string[] = [];
  for (const line of text.split(/\r?\n/)) {
    const body = line.split("#", 1)[0].trim();
    if (body.length > 0) tokens.push(...body.split(/\s+/));
  }
  if (tokens[0] !== "P2") throw new SchemaError(`${path}: not an ASCII (P2) PGM`);
  const width = Number(tokens[1]);
  const height = Number(tokens[2]);
  const maxval = Number(tokens[3]);
  const values = tokens.slice(4).map(Number);
  if (values.length !== width * height) {
    throw new SchemaError(
      `${path}: expected ${width * height} samples, found ${values.length}`
    );
  }
  const data = new Float64Array(values.length);
  for (let i = 0; i < values.length; i++) data[i] = values[i] / maxval;
  return { width, height, maxval, data };
}
