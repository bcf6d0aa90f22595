/**
 * The six figure kinds rendered from the simulation toolkit's outputs.
 *
 * Rendering never alters numeric inputs: data are drawn as-is, and model
 * curves (saturation, Gaussian) are evaluated from fitted parameters read
 * from the toolkit's fit reports.  Every figure's caption embeds the source
 * file names and the config hash found in their headers.
 */

import { basename } from "path";

import { numericColumn, readCsv, requireColumns, SchemaError } from "./csv.js";
import { readPgm } from "./pgm.js";
import { renderFigure, renderHeatmap, Series, extent } from "./svg.js";

const FWHM_SIGMA = 2.3548200450309493;

export type FigureKind =
  | "fieldmap"
  | "efficiency"
  | "sweep"
  | "saturation"
  | "g2"
  | "linescan";

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  title?: string;
}

function caption(inputs: string[], hash: string): string {
  return `sources: ${inputs.map((p) => basename(p)).join(", ")} | config=${hash}`;
}

export function renderFieldmap(spec: FigureSpec): string {
  const [path] = spec.inputs;
  if (path.endsWith(".pgm")) {
    const img = readPgm(path);
    return renderHeatmap(img.data, img.width, img.height, {
      title: spec.title ?? "Field intensity |E|^2 (normalised)",
      xlabel: "z (pixels)",
      ylabel: "y (pixels)",
      caption: caption(spec.inputs, "unknown"),
      x0: 0,
      dx: 1,
      y0: 0,
      dy: 1,
    });
  }
  const table = readCsv(path);
  requireColumns(table, ["iy", "iz", "intensity"], path);
  const iy = numericColumn(table, "iy", path);
  const iz = numericColumn(table, "iz", path);
  const inten = numericColumn(table, "intensity", path);
  const ny = Math.max(...iy) + 1;
  const nz = Math.max(...iz) + 1;
  const data = new Float64Array(ny * nz);
  for (let k = 0; k < inten.length; k++) {
    // row-major over (iy, iz); heatmap x-axis = z, y-axis = y
    data[iy[k] * nz + iz[k]] = inten[k];
  }
  const cell = Number(table.comments.get("cell_um") ?? "1");
  const y0 = Number(table.comments.get("y0_um") ?? "0");
  const z0 = Number(table.comments.get("z0_um") ?? "0");
  // transpose into (row=y, col=z) image with z rightward, y upward
  return renderHeatmap(data, nz, ny, {
    title: spec.title ?? "Field intensity |E|^2 in the y-z plane",
    xlabel: "z (um)",
    ylabel: "y (um)",
    caption: caption(spec.inputs, table.configHash),
    x0: z0,
    dx: cell,
    y0: y0,
    dy: cell,
  });
}

export function renderEfficiency(spec: FigureSpec): string {
  const [path] = spec.inputs;
  const table = readCsv(path);
  requireColumns(table, ["scenario", "wavelength_nm", "eta"], path);
  const wl: number[] = [];
  const eta: number[] = [];
  let band: number | null = null;
  let scenario = "";
  const iw = table.header.indexOf("wavelength_nm");
  const ie = table.header.indexOf("eta");
  const isc = table.header.indexOf("scenario");
  for (const row of table.rows) {
    scenario = row[isc];
    if (row[iw] === "band_average") {
      band = Number(row[ie]);
    } else {
      wl.push(Number(row[iw]));
      eta.push(Number(row[ie]));
    }
  }
  if (wl.length === 0) throw new SchemaError(`${path}: no wavelength rows`);
  const series: Series[] = [
    { x: wl, y: eta, color: "#1f77b4", kind: "line", label: "eta(lambda)" },
    { x: wl, y: eta, color: "#1f77b4", kind: "scatter" },
  ];
  if (band !== null) {
    series.push({
      x: [Math.min(...wl), Math.max(...wl)],
      y: [band, band],
      color: "#d62728",
      kind: "dashed",
      label: `band average ${band.toPrecision(3)}`,
    });
  }
  return renderFigure(series, {
    title: spec.title ?? `Collection efficiency: ${scenario}`,
    xlabel: "wavelength (nm)",
    ylabel: "collection efficiency",
    caption: caption(spec.inputs, table.configHash),
    yExtent: extent([0, ...eta]),
  });
}

export function renderSweep(spec: FigureSpec): string {
  const [path] = spec.inputs;
  const table = readCsv(path);
  requireColumns(table, ["scenario", "axis", "offset_um", "eta_band"], path);
  const off = numericColumn(table, "offset_um", path);
  const eta = numericColumn(table, "eta_band", path);
  const axis = table.rows[0]?.[table.header.indexOf("axis")] ?? "?";
  return renderFigure(
    [
      { x: off, y: eta, color: "#1f77b4", kind: "line", label: `axis ${axis}` },
      { x: off, y: eta, color: "#1f77b4", kind: "scatter" },
    ],
    {
      title: spec.title ?? "Collection efficiency vs dipole displacement",
      xlabel: "offset (um)",
      ylabel: "band-averaged efficiency",
      caption: caption(spec.inputs, table.configHash),
      yExtent: extent([0, ...eta]),
    }
  );
}

function saturationModel(
  p: number[],
  iSat: number,
  pSat: number,
  slope: number
): number[] {
  return p.map((pp) => (iSat * pp) / (pp + pSat) + slope * pp);
}

export function renderSaturation(spec: FigureSpec): string {
  // inputs: one or two data CSVs, optionally a saturation_fit.csv last
  const dataPaths = spec.inputs.filter((p) => !basename(p).includes("fit"));
  const fitPath = spec.inputs.find((p) => basename(p).includes("fit"));
  if (dataPaths.length === 0) throw new SchemaError("saturation needs a data CSV");

  const colors = ["#1f77b4", "#d62728"];
  const series: Series[] = [];
  let hash = "unknown";
  const fits: { iSat: number; pSat: number; slope: number }[] = [];
  if (fitPath) {
    const ft = readCsv(fitPath);
    requireColumns(ft, ["series", "i_sat_kcps", "p_sat_mw", "background_slope"], fitPath);
    hash = ft.configHash;
    for (const row of ft.rows) {
      fits.push({
        iSat: Number(row[ft.header.indexOf("i_sat_kcps")]),
        pSat: Number(row[ft.header.indexOf("p_sat_mw")]),
        slope: Number(row[ft.header.indexOf("background_slope")]),
      });
    }
  }
  dataPaths.forEach((path, i) => {
    const t = readCsv(path);
    requireColumns(t, ["power_mw", "total_kcps"], path);
    if (hash === "unknown") hash = t.configHash;
    const p = numericColumn(t, "power_mw", path);
    const total = numericColumn(t, "total_kcps", path);
    const name = basename(path).replace(/\.csv$/, "");
    series.push({ x: p, y: total, color: colors[i % 2], kind: "scatter", label: name });
    if (t.header.includes("background_kcps")) {
      series.push({
        x: p,
        y: numericColumn(t, "background_kcps", path),
        color: colors[i % 2],
        kind: "dashed",
        label: `${name} background`,
      });
    }
    const fit = fits[i];
    if (fit) {
      const dense: number[] = [];
      const n = 120;
      const pmax = Math.max(...p);
      for (let k = 0; k <= n; k++) dense.push((pmax * k) / n);
      series.push({
        x: dense,
        y: saturationModel(dense, fit.iSat, fit.pSat, fit.slope),
        color: colors[i % 2],
        kind: "line",
        label: `${name} fit (I_sat ${fit.iSat.toPrecision(3)} kcps)`,
      });
    }
  });
  return renderFigure(series, {
    title: spec.title ?? "Count rate vs excitation power",
    xlabel: "excitation power (mW)",
    ylabel: "count rate (kcps)",
    caption: caption(spec.inputs, hash),
  });
}

export function renderG2(spec: FigureSpec): string {
  const [path] = spec.inputs;
  const table = readCsv(path);
  requireColumns(table, ["tau_ns", "c_corrected"], path);
  const tau = numericColumn(table, "tau_ns", path);
  const corr = numericColumn(table, "c_corrected", path);
  const series: Series[] = [];
  if (table.header.includes("c_norm")) {
    series.push({
      x: tau,
      y: numericColumn(table, "c_norm", path),
      color: "#999999",
      kind: "line",
      label: "measured",
    });
  }
  series.push(
    { x: tau, y: corr, color: "#1f77b4", kind: "line", label: "background corrected" },
    {
      x: [Math.min(...tau), Math.max(...tau)],
      y: [0.5, 0.5],
      color: "#d62728",
      kind: "dashed",
      label: "single-emitter threshold",
    }
  );
  return renderFigure(series, {
    title: spec.title ?? "Second-order intensity correlation",
    xlabel: "delay (ns)",
    ylabel: "g2",
    caption: caption(spec.inputs, table.configHash),
    yExtent: extent([0, 0.5, ...corr]),
  });
}

export function renderLinescan(spec: FigureSpec): string {
  const dataPath = spec.inputs.find((p) => !basename(p).includes("fit"));
  const fitPath = spec.inputs.find((p) => basename(p).includes("fit"));
  if (!dataPath) throw new SchemaError("linescan needs the scan data CSV");
  const t = readCsv(dataPath);
  requireColumns(t, ["position_um", "counts"], dataPath);
  const x = numericColumn(t, "position_um", dataPath);
  const y = numericColumn(t, "counts", dataPath);
  let hash = t.configHash;
  const series: Series[] = [
    { x, y, color: "#444444", kind: "scatter", label: "scan data" },
  ];
  if (fitPath) {
    const ft = readCsv(fitPath);
    requireColumns(ft, ["parameter", "value"], fitPath);
    hash = ft.configHash !== "unknown" ? ft.configHash : hash;
    const params = new Map<string, number>();
    const ip = ft.header.indexOf("parameter");
    const iv = ft.header.indexOf("value");
    for (const row of ft.rows) params.set(row[ip], Number(row[iv]));
    const amp = params.get("amplitude");
    const c = params.get("center_um");
    const sig = params.get("sigma_um");
    const off = params.get("offset");
    if (amp === undefined || c === undefined || sig === undefined || off === undefined) {
      throw new SchemaError(`${fitPath}: missing Gaussian parameters`);
    }
    const dense: number[] = [];
    const n = 240;
    const x0 = Math.min(...x);
    const x1 = Math.max(...x);
    for (let k = 0; k <= n; k++) dense.push(x0 + ((x1 - x0) * k) / n);
    const gauss = (s: number) =>
      dense.map((xx) => amp * Math.exp(-((xx - c) ** 2) / (2 * s * s)) + off);
    series.push({
      x: dense,
      y: gauss(sig),
      color: "#1f77b4",
      kind: "line",
      label: `fit FWHM ${(FWHM_SIGMA * sig * 1e3).toPrecision(3)} nm`,
    });
    const realFwhmNm = params.get("real_fwhm_nm");
    if (realFwhmNm !== undefined) {
      const sigReal = realFwhmNm * 1e-3 / FWHM_SIGMA;
      series.push({
        x: dense,
        y: gauss(sigReal),
        color: "#d62728",
        kind: "line",
        label: `real fit FWHM ${realFwhmNm.toPrecision(3)} nm`,
      });
    }
  }
  return renderFigure(series, {
    title: spec.title ?? "Confocal line scan",
    xlabel: "position (um)",
    ylabel: "counts (s^-1)",
    caption: caption(spec.inputs, hash),
  });
}

export function render(spec: FigureSpec): string {
  switch (spec.kind) {
    case "fieldmap":
      return renderFieldmap(spec);
    case "efficiency":
      return renderEfficiency(spec);
    case "sweep":
      return renderSweep(spec);
    case "saturation":
      return renderSaturation(spec);
    case "g2":
      return renderG2(spec);
    case "linescan":
      return renderLinescan(spec);
    default:
      throw new SchemaError(`unknown figure kind ${(spec as FigureSpec).kind}`);
  }
}
