import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { SchemaError } from "../src/csv.js";
import { render, FigureSpec } from "../src/figures.js";

const FIX = join(__dirname, "fixtures");
const f = (name: string) => join(FIX, name);

function renderKind(kind: FigureSpec["kind"], inputs: string[]): string {
  return render({ kind, inputs });
}

describe("all six figure kinds render from golden fixtures", () => {
  const cases: [FigureSpec["kind"], string[]][] = [
    ["fieldmap", [f("fieldmap.csv")]],
    ["efficiency", [f("eta.csv")]],
    ["sweep", [f("sweep.csv")]],
    ["saturation", [f("sil.csv"), f("planar.csv"), f("saturation_fit.csv")]],
    ["g2", [f("g2_corrected.csv")]],
    ["linescan", [f("scan.csv"), f("linescan_fit.csv")]],
  ];
  for (const [kind, inputs] of cases) {
    it(`renders ${kind}`, () => {
      const svg = renderKind(kind, inputs);
      expect(svg).toContain("<svg");
      expect(svg).toContain("</svg>");
      expect(svg).toContain("config=abc123def456"); // caption footer
      for (const p of inputs) {
        expect(svg).toContain(p.split("/").pop()!);
      }
    });
  }

  it("fieldmap also renders from PGM", () => {
    const svg = renderKind("fieldmap", [f("fieldmap.pgm")]);
    expect(svg).toContain("<svg");
    expect((svg.match(/<rect/g) ?? []).length).toBeGreaterThan(12 * 16);
  });
});

describe("figure content", () => {
  it("efficiency shows the band average as a dashed rule", () => {
    const svg = renderKind("efficiency", [f("eta.csv")]);
    expect(svg).toContain("band average 0.289");
    expect(svg).toContain("stroke-dasharray");
    expect(svg).toContain("wavelength (nm)");
  });

  it("saturation overlays two series with their fitted models", () => {
    const svg = renderKind("saturation", [
      f("sil.csv"),
      f("planar.csv"),
      f("saturation_fit.csv"),
    ]);
    expect(svg).toContain("sil fit (I_sat 345 kcps)");
    expect(svg).toContain("planar fit (I_sat 34.5 kcps)");
    expect(svg).toContain("excitation power (mW)");
  });

  it("g2 draws the 0.5 single-emitter threshold", () => {
    const svg = renderKind("g2", [f("g2_corrected.csv")]);
    expect(svg).toContain("single-emitter threshold");
    expect(svg).toContain("background corrected");
  });

  it("linescan overlays data, fit, and magnification-corrected fit", () => {
    const svg = renderKind("linescan", [f("scan.csv"), f("linescan_fit.csv")]);
    expect(svg).toContain('data-series="scan data"');
    expect(svg).toContain("fit FWHM 289 nm");
    expect(svg).toContain("real fit FWHM 119 nm");
    // three distinct marks: scatter + two polylines
    expect((svg.match(/<polyline/g) ?? []).length).toBeGreaterThanOrEqual(2);
    expect((svg.match(/<circle/g) ?? []).length).toBeGreaterThan(50);
  });

  it("is deterministic", () => {
    const a = renderKind("efficiency", [f("eta.csv")]);
    const b = renderKind("efficiency", [f("eta.csv")]);
    expect(a).toEqual(b);
  });
});

describe("schema validation", () => {
  it("rejects a CSV missing required columns", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "# diasil\nfoo,bar\n1,2\n");
    expect(() => renderKind("efficiency", [bad])).toThrow(SchemaError);
    expect(() => renderKind("g2", [bad])).toThrow(SchemaError);
  });

  it("rejects a truncated PGM", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const bad = join(dir, "bad.pgm");
    writeFileSync(bad, "P2\n4 4\n255\n0 1 2\n");
    expect(() => renderKind("fieldmap", [bad])).toThrow(SchemaError);
  });
});
