/**
 * Minimal deterministic SVG scene builder: one x/y frame with ticks, plus
 * line/scatter/heatmap marks and a caption footer.  No DOM, no randomness;
 * identical inputs produce identical bytes.
 */

export interface Extent {
  min: number;
  max: number;
}

export function extent(values: number[], pad = 0.05): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (!Number.isFinite(min) || !Number.isFinite(max)) {
    min = 0;
    max = 1;
  }
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  const span = max - min;
  return { min: min - pad * span, max: max + pad * span };
}

function fmt(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return v.toExponential(2);
  return Number(v.toPrecision(6)).toString();
}

export function ticks(e: Extent, n = 5): number[] {
  const span = e.max - e.min;
  const step = Math.pow(10, Math.floor(Math.log10(span / n)));
  const err = span / n / step;
  const mult = err >= 7.5 ? 10 : err >= 3.5 ? 5 : err >= 1.5 ? 2 : 1;
  const s = mult * step;
  const start = Math.ceil(e.min / s) * s;
  const out: number[] = [];
  for (let v = start; v <= e.max + 1e-12 * span; v += s) out.push(Number(v.toPrecision(12)));
  return out;
}

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  kind: "line" | "scatter" | "dashed";
}

export interface FigureOptions {
  width?: number;
  height?: number;
  title: string;
  xlabel: string;
  ylabel: string;
  caption: string;
  xExtent?: Extent;
  yExtent?: Extent;
}

const MARGIN = { left: 64, right: 16, top: 30, bottom: 58 };

export function renderFigure(series: Series[], opts: FigureOptions): string {
  const W = opts.width ?? 560;
  const H = opts.height ?? 400;
  const xe = opts.xExtent ?? extent(series.flatMap((s) => s.x));
  const ye = opts.yExtent ?? extent(series.flatMap((s) => s.y));
  const iw = W - MARGIN.left - MARGIN.right;
  const ih = H - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + ((v - xe.min) / (xe.max - xe.min)) * iw;
  const sy = (v: number) => MARGIN.top + ih - ((v - ye.min) / (ye.max - ye.min)) * ih;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
      `viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="18" text-anchor="middle" font-size="13" ` +
      `font-weight="bold">${escapeXml(opts.title)}</text>`
  );
  // frame
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${iw}" height="${ih}" ` +
      `fill="none" stroke="black" stroke-width="1"/>`
  );
  for (const t of ticks(xe)) {
    const x = sx(t);
    parts.push(
      `<line x1="${x.toFixed(2)}" y1="${MARGIN.top + ih}" x2="${x.toFixed(2)}" ` +
        `y2="${MARGIN.top + ih + 5}" stroke="black"/>`,
      `<text x="${x.toFixed(2)}" y="${MARGIN.top + ih + 18}" text-anchor="middle" ` +
        `font-size="10">${fmt(t)}</text>`
    );
  }
  for (const t of ticks(ye)) {
    const y = sy(t);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${y.toFixed(2)}" x2="${MARGIN.left}" ` +
        `y2="${y.toFixed(2)}" stroke="black"/>`,
      `<text x="${MARGIN.left - 8}" y="${(y + 3).toFixed(2)}" text-anchor="end" ` +
        `font-size="10">${fmt(t)}</text>`
    );
  }
  parts.push(
    `<text x="${MARGIN.left + iw / 2}" y="${H - 26}" text-anchor="middle" ` +
      `font-size="11">${escapeXml(opts.xlabel)}</text>`,
    `<text x="16" y="${MARGIN.top + ih / 2}" text-anchor="middle" font-size="11" ` +
      `transform="rotate(-90 16 ${MARGIN.top + ih / 2})">${escapeXml(opts.ylabel)}</text>`
  );

  // clip marks to the frame
  parts.push(
    `<clipPath id="frame"><rect x="${MARGIN.left}" y="${MARGIN.top}" ` +
      `width="${iw}" height="${ih}"/></clipPath>`,
    `<g clip-path="url(#frame)">`
  );
  for (const s of series) {
    if (s.kind === "scatter") {
      for (let i = 0; i < s.x.length; i++) {
        parts.push(
          `<circle cx="${sx(s.x[i]).toFixed(2)}" cy="${sy(s.y[i]).toFixed(2)}" ` +
            `r="2.5" fill="${s.color}" data-series="${escapeXml(s.label ?? "")}"/>`
        );
      }
    } else {
      const pts = s.x
        .map((xv, i) => `${sx(xv).toFixed(2)},${sy(s.y[i]).toFixed(2)}`)
        .join(" ");
      const dash = s.kind === "dashed" ? ` stroke-dasharray="6 4"` : "";
      parts.push(
        `<polyline points="${pts}" fill="none" stroke="${s.color}" ` +
          `stroke-width="1.6"${dash} data-series="${escapeXml(s.label ?? "")}"/>`
      );
    }
  }
  parts.push(`</g>`);

  // legend
  const labelled = series.filter((s) => s.label);
  labelled.forEach((s, i) => {
    const y = MARGIN.top + 14 + 16 * i;
    const x = MARGIN.left + iw - 150;
    if (s.kind === "scatter") {
      parts.push(`<circle cx="${x + 9}" cy="${y - 3}" r="2.5" fill="${s.color}"/>`);
    } else {
      const dash = s.kind === "dashed" ? ` stroke-dasharray="6 4"` : "";
      parts.push(
        `<line x1="${x}" y1="${y - 3}" x2="${x + 18}" y2="${y - 3}" ` +
          `stroke="${s.color}" stroke-width="1.6"${dash}/>`
      );
    }
    parts.push(
      `<text x="${x + 24}" y="${y}" font-size="10">${escapeXml(s.label!)}</text>`
    );
  });

  parts.push(
    `<text x="${MARGIN.left}" y="${H - 8}" font-size="8.5" fill="#555555">` +
      `${escapeXml(opts.caption)}</text>`
  );
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}

/** Row-major [0,1] intensity map with physical axes. */
export function renderHeatmap(
  data: Float64Array,
  nx: number,
  ny: number,
  opts: FigureOptions & { x0: number; dx: number; y0: number; dy: number }
): string {
  const W = opts.width ?? 560;
  const H = opts.height ?? 480;
  const iw = W - MARGIN.left - MARGIN.right;
  const ih = H - MARGIN.top - MARGIN.bottom;
  const xe = { min: opts.x0, max: opts.x0 + nx * opts.dx };
  const ye = { min: opts.y0, max: opts.y0 + ny * opts.dy };
  const pw = iw / nx;
  const ph = ih / ny;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
      `viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="18" text-anchor="middle" font-size="13" ` +
      `font-weight="bold">${escapeXml(opts.title)}</text>`
  );
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      const v = data[j * nx + i];
      const x = MARGIN.left + i * pw;
      // invert the vertical axis so y increases upward
      const y = MARGIN.top + ih - (j + 1) * ph;
      parts.push(
        `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${(pw + 0.5).toFixed(2)}" ` +
          `height="${(ph + 0.5).toFixed(2)}" fill="${inferno(v)}"/>`
      );
    }
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${iw}" height="${ih}" ` +
      `fill="none" stroke="black"/>`
  );
  const sx = (v: number) => MARGIN.left + ((v - xe.min) / (xe.max - xe.min)) * iw;
  const sy = (v: number) => MARGIN.top + ih - ((v - ye.min) / (ye.max - ye.min)) * ih;
  for (const t of ticks(xe)) {
    parts.push(
      `<line x1="${sx(t).toFixed(2)}" y1="${MARGIN.top + ih}" x2="${sx(t).toFixed(2)}" ` +
        `y2="${MARGIN.top + ih + 5}" stroke="black"/>`,
      `<text x="${sx(t).toFixed(2)}" y="${MARGIN.top + ih + 18}" ` +
        `text-anchor="middle" font-size="10">${fmt(t)}</text>`
    );
  }
  for (const t of ticks(ye)) {
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${sy(t).toFixed(2)}" x2="${MARGIN.left}" ` +
        `y2="${sy(t).toFixed(2)}" stroke="black"/>`,
      `<text x="${MARGIN.left - 8}" y="${(sy(t) + 3).toFixed(2)}" text-anchor="end" ` +
        `font-size="10">${fmt(t)}</text>`
    );
  }
  parts.push(
    `<text x="${MARGIN.left + iw / 2}" y="${H - 26}" text-anchor="middle" ` +
      `font-size="11">${escapeXml(opts.xlabel)}</text>`,
    `<text x="16" y="${MARGIN.top + ih / 2}" text-anchor="middle" font-size="11" ` +
      `transform="rotate(-90 16 ${MARGIN.top + ih / 2})">${escapeXml(opts.ylabel)}</text>`,
    `<text x="${MARGIN.left}" y="${H - 8}" font-size="8.5" fill="#555555">` +
      `${escapeXml(opts.caption)}</text>`,
    `</svg>`
  );
  return parts.join("\n") + "\n";
}

/** Compact inferno-like colormap (piecewise-linear, deterministic). */
export function inferno(v: number): string {
  const stops: [number, number, number, number][] = [
    [0.0, 0, 0, 4],
    [0.25, 87, 16, 110],
    [0.5, 188, 55, 84],
    [0.75, 249, 142, 9],
    [1.0, 252, 255, 164],
  ];
  const u = Math.min(1, Math.max(0, v));
  for (let i = 1; i < stops.length; i++) {
    if (u <= stops[i][0]) {
      const [t0, r0, g0, b0] = stops[i - 1];
      const [t1, r1, g1, b1] = stops[i];
      const f = (u - t0) / (t1 - t0);
      const r = Math.round(r0 + f * (r1 - r0));
      const g = Math.round(g0 + f * (g1 - g0));
      const b = Math.round(b0 + f * (b1 - b0));
      return `rgb(${r},${g},${b})`;
    }
  }
  return "rgb(252,255,164)";
}

function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
