/**
 * `render --from <run-dir> --figure <name> --out <file>`
 *
 * Reads only the documented CSV schemas and manifest.json; writes one
 * SVG.  Exit 0 on success, 1 on schema/figure/usage errors.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { parseArgs } from "node:util";
import { FIGURES, renderFigure } from "./figures.js";
import { SchemaError } from "./schema.js";

const USAGE =
  "usage: render --from <run-dir> --figure <name> --out <file>\n" +
  `figures: ${Object.keys(FIGURES).join(", ")}`;

export function main(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        from: { type: "string" },
        figure: { type: "string" },
        out: { type: "string" },
      },
      strict: true,
    }).values;
  } catch (err) {
    console.error(`render error: ${(err as Error).message}\n${USAGE}`);
    return 1;
  }
  if (!args.from || !args.figure || !args.out) {
    console.error(`render error: --from, --figure and --out are required\n${USAGE}`);
    return 1;
  }

  try {
    const svg = renderFigure(args.from, args.figure);
    fs.mkdirSync(path.dirname(path.resolve(args.out)), { recursive: true });
    fs.writeFileSync(args.out, svg);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (err) {
    if (err instanceof Error) {
      console.error(`render error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}
