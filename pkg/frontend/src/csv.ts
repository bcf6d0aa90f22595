/**
 * Readers for the simulation toolkit's documented CSV formats.
 *
 * Every file starts with `# diasil v... config=<hash>` comment lines, then a
 * header row and comma-separated data rows.
 */

import { readFileSync } from "fs";

export interface CsvTable {
  /** config hash parsed from the header comment ("unknown" if absent) */
  configHash: string;
  header: string[];
  rows: string[][];
  comments: Map<string, string>;
}

export class SchemaError extends Error {}

export function readCsv(path: string): CsvTable {
  const text = readFileSync(path, "utf8");
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  const comments = new Map<string, string>();
  let configHash = "unknown";
  const data: string[][] = [];
  let header: string[] | null = null;
  for (const line of lines) {
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const m = body.match(/config=([0-9a-f]+)/);
      if (m) configHash = m[1];
      const kv = body.split(",");
      if (kv.length >= 2) comments.set(kv[0].trim(), kv.slice(1).join(",").trim());
      const eq = body.split("=");
      if (eq.length === 2) comments.set(eq[0].trim(), eq[1].trim());
      continue;
    }
    const cells = line.split(",").map((c) => c.trim());
    if (header === null) {
      header = cells;
    } else {
      data.push(cells);
    }
  }
  if (header === null) throw new SchemaError(`${path}: no header row`);
  return { configHash, header, rows: data, comments };
}

/** Numeric column by name; rows whose cell is non-numeric are skipped. */
export function numericColumn(table: CsvTable, name: string, path = "?"): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `${path}: missing column '${name}' (have: ${table.header.join(", ")})`
    );
  }
  const out: number[] = [];
  for (const row of table.rows) {
    const v = Number(row[idx]);
    if (Number.isFinite(v)) out.push(v);
  }
  return out;
}

export function requireColumns(table: CsvTable, names: string[], path = "?"): void {
  for (const n of names) {
    if (!table.header.includes(n)) {
      throw new SchemaError(
        `${path}: missing column '${n}' (have: ${table.header.join(", ")})`
      );
    }
  }
}
