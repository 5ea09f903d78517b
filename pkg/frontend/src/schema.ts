/**
 * CSV schemas and manifest loading for simulation run directories.
 *
 * Two documented layouts:
 *   stats: t,mean_delta,std_delta,n[,mean_delta_nominal,std_delta_nominal]
 *   paths: t,path_id,delta_true,delta_nominal
 *
 * Validation is strict: a missing or unparsable column fails with the
 * offending column name in the error message.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import Papa from "papaparse";

export class SchemaError extends Error {}

export interface StatsSeries {
  label: string;
  t: number[];
  mean: number[];
  std: number[];
  n: number;
}

export interface PathSeries {
  pathId: number;
  t: number[];
  deltaTrue: number[];
  deltaNominal: number[];
}

export interface RunEntry {
  name: string;
  mode: "stats" | "paths";
  stats_csv?: string;
  paths_csv?: string;
}

export interface Manifest {
  preset: string | null;
  runs: RunEntry[];
}

function parseRows(file: string): Record<string, string>[] {
  const text = fs.readFileSync(file, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new SchemaError(`${file}: ${parsed.errors[0].message}`);
  }
  return parsed.data;
}

function column(
  rows: Record<string, string>[],
  file: string,
  name: string,
): number[] {
  const out = new Array<number>(rows.length);
  for (let i = 0; i < rows.length; i++) {
    const raw = rows[i][name];
    if (raw === undefined) {
      throw new SchemaError(`${file}: missing column "${name}"`);
    }
    const value = Number(raw);
    if (!Number.isFinite(value)) {
      throw new SchemaError(
        `${file}: column "${name}" has non-numeric value "${raw}" (row ${i + 2})`,
      );
    }
    out[i] = value;
  }
  return out;
}

/** Read one stats CSV; `nominal` selects the nominal-state columns. */
export function readStats(
  file: string,
  label: string,
  nominal = false,
): StatsSeries {
  const rows = parseRows(file);
  if (rows.length === 0) throw new SchemaError(`${file}: no data rows`);
  const prefix = nominal ? "_nominal" : "";
  return {
    label,
    t: column(rows, file, "t"),
    mean: column(rows, file, `mean_delta${prefix}`),
    std: column(rows, file, `std_delta${prefix}`),
    n: column(rows, file, "n")[0],
  };
}

/** Read one paths CSV, splitting rows into per-path series. */
export function readPaths(file: string): PathSeries[] {
  const rows = parseRows(file);
  if (rows.length === 0) throw new SchemaError(`${file}: no data rows`);
  const t = column(rows, file, "t");
  const id = column(rows, file, "path_id");
  const dTrue = column(rows, file, "delta_true");
  const dNom = column(rows, file, "delta_nominal");
  const byId = new Map<number, PathSeries>();
  for (let i = 0; i < rows.length; i++) {
    let series = byId.get(id[i]);
    if (!series) {
      series = { pathId: id[i], t: [], deltaTrue: [], deltaNominal: [] };
      byId.set(id[i], series);
    }
    series.t.push(t[i]);
    series.deltaTrue.push(dTrue[i]);
    series.deltaNominal.push(dNom[i]);
  }
  return [...byId.values()].sort((a, b) => a.pathId - b.pathId);
}

export function readManifest(runDir: string): Manifest {
  const file = path.join(runDir, "manifest.json");
  if (!fs.existsSync(file)) {
    throw new SchemaError(`${runDir}: no manifest.json`);
  }
  const doc = JSON.parse(fs.readFileSync(file, "utf8"));
  if (!Array.isArray(doc.runs)) {
    throw new SchemaError(`${file}: manifest has no "runs" list`);
  }
  return { preset: doc.preset ?? null, runs: doc.runs as RunEntry[] };
}
