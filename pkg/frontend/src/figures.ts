/**
 * Figure assembly: map a run directory + figure name to an SVG document.
 *
 * Stats figures show two panels (mean, std of the folded distance) with
 * one curve per run in the directory.  Paths figures show a grid of
 * panels, one per run, overlaying the true angle (solid) and the nominal
 * one (dashed) for every recorded path.
 */

import * as path from "node:path";
import {
  Manifest,
  PathSeries,
  readManifest,
  readPaths,
  readStats,
  SchemaError,
  StatsSeries,
} from "./schema.js";
import { Panel, renderGrid, STYLE } from "./svg.js";

export const FIGURES: Record<string, { kind: "stats" | "paths"; columns: number }> = {
  fig2: { kind: "stats", columns: 2 },
  fig3: { kind: "stats", columns: 2 },
  "remark3-const-k": { kind: "stats", columns: 2 },
  fig4: { kind: "paths", columns: 2 },
  fig5: { kind: "paths", columns: 2 },
  fig6: { kind: "paths", columns: 2 },
};

function statsFigure(runDir: string, manifest: Manifest): string {
  const series: StatsSeries[] = manifest.runs.map((run) => {
    if (!run.stats_csv) {
      throw new SchemaError(`run "${run.name}" has no stats_csv entry`);
    }
    return readStats(path.join(runDir, run.stats_csv), run.name);
  });
  if (series.length === 0) throw new SchemaError("manifest contains no runs");
  const legend = series.map((s, i) => ({
    label: s.label,
    color: STYLE.palette[i % STYLE.palette.length],
    dashed: i % 2 === 1,
  }));
  const panel = (
    title: string,
    yLabel: string,
    pick: (s: StatsSeries) => number[],
  ): Panel => ({
    title,
    xLabel: "t",
    yLabel,
    legend,
    series: series.map((s, i) => ({
      x: s.t,
      y: pick(s),
      color: STYLE.palette[i % STYLE.palette.length],
      dashed: i % 2 === 1,
    })),
  });
  return renderGrid(
    [
      panel("(a) mean", "mean fold(δ_t)", (s) => s.mean),
      panel("(b) standard deviation", "std fold(δ_t)", (s) => s.std),
    ],
    2,
  );
}

function pathsPanel(title: string, paths: PathSeries[]): Panel {
  const series = [];
  for (const p of paths) {
    series.push({ x: p.t, y: p.deltaTrue, color: STYLE.trueColor });
  }
  for (const p of paths) {
    series.push({
      x: p.t,
      y: p.deltaNominal,
      color: STYLE.nominalColor,
      dashed: true,
    });
  }
  return {
    title,
    xLabel: "t",
    yLabel: "δ_t",
    series,
    legend: [
      { label: "true δ_t", color: STYLE.trueColor },
      { label: "nominal δ_t′", color: STYLE.nominalColor, dashed: true },
    ],
  };
}

function pathsFigure(runDir: string, manifest: Manifest, columns: number): string {
  const panels = manifest.runs.map((run, i) => {
    if (!run.paths_csv) {
      throw new SchemaError(`run "${run.name}" has no paths_csv entry`);
    }
    const label = `(${String.fromCharCode(97 + i)}) ${run.name}`;
    return pathsPanel(label, readPaths(path.join(runDir, run.paths_csv)));
  });
  if (panels.length === 0) throw new SchemaError("manifest contains no runs");
  return renderGrid(panels, columns);
}

/** Render the named figure from a run directory into an SVG string. */
export function renderFigure(runDir: string, figure: string): string {
  const spec = FIGURES[figure];
  if (!spec) {
    throw new SchemaError(
      `unknown figure "${figure}"; available: ${Object.keys(FIGURES).join(", ")}`,
    );
  }
  const manifest = readManifest(runDir);
  return spec.kind === "stats"
    ? statsFigure(runDir, manifest)
    : pathsFigure(runDir, manifest, spec.columns);
}
