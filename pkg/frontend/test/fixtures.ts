import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "render-test-"));
}

export const STATS_CSV =
  "t,mean_delta,std_delta,n\n" +
  "0,3.1415926535897931,0,100\n" +
  "0.5,1.2,0.4,100\n" +
  "1,0.3,0.2,100\n";

export const PATHS_CSV =
  "t,path_id,delta_true,delta_nominal\n" +
  "0,0,3.14,3.14\n" +
  "0.5,0,2.1,2.0\n" +
  "1,0,1.0,0.9\n" +
  "0,1,3.14,3.14\n" +
  "0.5,1,2.6,2.5\n" +
  "1,1,1.8,1.7\n";

/** Write a run directory with n runs of the given mode. */
export function makeRunDir(
  mode: "stats" | "paths",
  names: string[],
  preset = "fig2",
): string {
  const dir = tmpDir();
  const runs = names.map((name) => {
    const entry: Record<string, unknown> = { name, mode };
    fs.writeFileSync(path.join(dir, `${name}_stats.csv`), STATS_CSV);
    entry.stats_csv = `${name}_stats.csv`;
    if (mode === "paths") {
      fs.writeFileSync(path.join(dir, `${name}_paths.csv`), PATHS_CSV);
      entry.paths_csv = `${name}_paths.csv`;
    }
    return entry;
  });
  fs.writeFileSync(
    path.join(dir, "manifest.json"),
    JSON.stringify({ artifact: "qubitprep", preset, runs }, null, 2),
  );
  return dir;
}
