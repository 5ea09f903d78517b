/**
 * Minimal deterministic SVG scene builder: panels, axes, polylines.
 *
 * No timestamps, random ids or float noise -- identical inputs produce
 * byte-identical documents, so re-rendering is idempotent.
 */

export const STYLE = {
  panelWidth: 360,
  panelHeight: 240,
  margin: { top: 28, right: 16, bottom: 44, left: 62 },
  gap: 18,
  axisColor: "#333333",
  gridColor: "#dddddd",
  fontFamily: "Helvetica, Arial, sans-serif",
  fontSize: 12,
  titleSize: 13,
  lineWidth: 1.4,
  palette: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"],
  trueColor: "#1f77b4", // solid
  nominalColor: "#d62728", // dashed
  dash: "6,4",
};

export interface Series {
  x: number[];
  y: number[];
  color: string;
  dashed?: boolean;
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  legend?: { label: string; color: string; dashed?: boolean }[];
}

function fmt(value: number): string {
  // fixed-notation, trailing-zero-free coordinates keep files diffable
  const s = value.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const norm = step0 / mag;
  const step = (norm < 1.5 ? 1 : norm < 3.5 ? 2 : norm < 7.5 ? 5 : 10) * mag;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function tickLabel(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) return value.toExponential(0);
  return String(Number(value.toPrecision(4)));
}

function extent(values: number[][]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const array of values) {
    for (const v of array) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  if (lo === Infinity) return [0, 1];
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  return [lo, hi];
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function renderPanel(panel: Panel, x0: number, y0: number): string {
  const { margin, panelWidth: W, panelHeight: H } = STYLE;
  const plotW = W - margin.left - margin.right;
  const plotH = H - margin.top - margin.bottom;
  const [xLo, xHi] = extent(panel.series.map((s) => s.x));
  let [yLo, yHi] = extent(panel.series.map((s) => s.y));
  const pad = 0.05 * (yHi - yLo);
  yLo -= pad;
  yHi += pad;
  const sx = (v: number) => margin.left + ((v - xLo) / (xHi - xLo)) * plotW;
  const sy = (v: number) => margin.top + plotH - ((v - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(`<g transform="translate(${x0},${y0})">`);
  parts.push(
    `<text x="${fmt(margin.left + plotW / 2)}" y="16" text-anchor="middle" ` +
      `font-size="${STYLE.titleSize}" font-weight="bold">${escapeXml(panel.title)}</text>`,
  );

  for (const tick of niceTicks(xLo, xHi)) {
    const px = sx(tick);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(margin.top)}" x2="${fmt(px)}" ` +
        `y2="${fmt(margin.top + plotH)}" stroke="${STYLE.gridColor}" stroke-width="0.5"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(margin.top + plotH + 16)}" text-anchor="middle" ` +
        `font-size="${STYLE.fontSize}">${tickLabel(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yLo, yHi)) {
    const py = sy(tick);
    parts.push(
      `<line x1="${fmt(margin.left)}" y1="${fmt(py)}" x2="${fmt(margin.left + plotW)}" ` +
        `y2="${fmt(py)}" stroke="${STYLE.gridColor}" stroke-width="0.5"/>`,
    );
    parts.push(
      `<text x="${fmt(margin.left - 6)}" y="${fmt(py + 4)}" text-anchor="end" ` +
        `font-size="${STYLE.fontSize}">${tickLabel(tick)}</text>`,
    );
  }

  parts.push(
    `<rect x="${fmt(margin.left)}" y="${fmt(margin.top)}" width="${fmt(plotW)}" ` +
      `height="${fmt(plotH)}" fill="none" stroke="${STYLE.axisColor}"/>`,
  );
  parts.push(
    `<text x="${fmt(margin.left + plotW / 2)}" y="${fmt(H - 8)}" text-anchor="middle" ` +
      `font-size="${STYLE.fontSize}">${escapeXml(panel.xLabel)}</text>`,
  );
  parts.push(
    `<text x="14" y="${fmt(margin.top + plotH / 2)}" text-anchor="middle" ` +
      `font-size="${STYLE.fontSize}" transform="rotate(-90 14 ${fmt(
        margin.top + plotH / 2,
      )})">${escapeXml(panel.yLabel)}</text>`,
  );

  for (const series of panel.series) {
    const points = series.x
      .map((v, i) => `${fmt(sx(v))},${fmt(sy(series.y[i]))}`)
      .join(" ");
    const dash = series.dashed ? ` stroke-dasharray="${STYLE.dash}"` : "";
    parts.push(
      `<polyline points="${points}" fill="none" stroke="${series.color}" ` +
        `stroke-width="${STYLE.lineWidth}"${dash}/>`,
    );
  }

  if (panel.legend) {
    let ly = margin.top + 10;
    for (const item of panel.legend) {
      const lx = margin.left + plotW - 120;
      const dash = item.dashed ? ` stroke-dasharray="${STYLE.dash}"` : "";
      parts.push(
        `<line x1="${fmt(lx)}" y1="${fmt(ly)}" x2="${fmt(lx + 24)}" y2="${fmt(ly)}" ` +
          `stroke="${item.color}" stroke-width="${STYLE.lineWidth}"${dash}/>`,
      );
      parts.push(
        `<text x="${fmt(lx + 30)}" y="${fmt(ly + 4)}" font-size="${STYLE.fontSize}">` +
          `${escapeXml(item.label)}</text>`,
      );
      ly += 16;
    }
  }

  parts.push("</g>");
  return parts.join("\n");
}

/** Lay panels out on a fixed grid and emit the complete document. */
export function renderGrid(panels: Panel[], columns: number): string {
  if (panels.length === 0) {
    throw new Error("no panels to render");
  }
  const rows = Math.ceil(panels.length / columns);
  const width = columns * STYLE.panelWidth + (columns - 1) * STYLE.gap;
  const height = rows * STYLE.panelHeight + (rows - 1) * STYLE.gap;
  const body = panels
    .map((panel, i) =>
      renderPanel(
        panel,
        (i % columns) * (STYLE.panelWidth + STYLE.gap),
        Math.floor(i / columns) * (STYLE.panelHeight + STYLE.gap),
      ),
    )
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="${STYLE.fontFamily}">\n` +
    `<rect width="${width}" height="${height}" fill="#ffffff"/>\n${body}\n</svg>\n`
  );
}
