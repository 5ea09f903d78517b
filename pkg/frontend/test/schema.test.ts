import * as fs from "node:fs";
import * as path from "node:path";
import { describe, expect, it } from "vitest";
import { readManifest, readPaths, readStats, SchemaError } from "../src/schema.js";
import { makeRunDir, PATHS_CSV, STATS_CSV, tmpDir } from "./fixtures.js";

function writeCsv(content: string): string {
  const file = path.join(tmpDir(), "data.csv");
  fs.writeFileSync(file, content);
  return file;
}

describe("readStats", () => {
  it("parses the documented stats schema", () => {
    const series = readStats(writeCsv(STATS_CSV), "robust");
    expect(series.label).toBe("robust");
    expect(series.t).toEqual([0, 0.5, 1]);
    expect(series.mean[0]).toBeCloseTo(Math.PI, 12);
    expect(series.n).toBe(100);
  });

  it("names a missing column", () => {
    const file = writeCsv("t,mean_delta,n\n0,1,10\n");
    expect(() => readStats(file, "x")).toThrow(/std_delta/);
  });

  it("names a non-numeric column", () => {
    const file = writeCsv("t,mean_delta,std_delta,n\n0,oops,0,10\n");
    expect(() => readStats(file, "x")).toThrow(/mean_delta.*oops/);
  });

  it("reads nominal columns on request", () => {
    const file = writeCsv(
      "t,mean_delta,std_delta,n,mean_delta_nominal,std_delta_nominal\n" +
        "0,1,0.1,10,2,0.2\n",
    );
    expect(readStats(file, "x", true).mean).toEqual([2]);
    const plain = writeCsv(STATS_CSV);
    expect(() => readStats(plain, "x", true)).toThrow(/mean_delta_nominal/);
  });

  it("rejects empty files", () => {
    expect(() => readStats(writeCsv("t,mean_delta,std_delta,n\n"), "x")).toThrow(
      /no data rows/,
    );
  });
});

describe("readPaths", () => {
  it("splits rows into per-path series, ordered by id", () => {
    const series = readPaths(writeCsv(PATHS_CSV));
    expect(series.map((s) => s.pathId)).toEqual([0, 1]);
    expect(series[0].deltaTrue).toEqual([3.14, 2.1, 1.0]);
    expect(series[1].deltaNominal).toEqual([3.14, 2.5, 1.7]);
  });

  it("names the missing delta_nominal column", () => {
    const file = writeCsv("t,path_id,delta_true\n0,0,3.1\n");
    expect(() => readPaths(file)).toThrow(/delta_nominal/);
  });
});

describe("readManifest", () => {
  it("loads runs and preset", () => {
    const dir = makeRunDir("stats", ["robust", "jacobs"]);
    const manifest = readManifest(dir);
    expect(manifest.preset).toBe("fig2");
    expect(manifest.runs).toHaveLength(2);
  });

  it("fails without a manifest", () => {
    expect(() => readManifest(tmpDir())).toThrow(SchemaError);
  });

  it("fails without a runs list", () => {
    const dir = tmpDir();
    fs.writeFileSync(path.join(dir, "manifest.json"), "{}");
    expect(() => readManifest(dir)).toThrow(/runs/);
  });
});
