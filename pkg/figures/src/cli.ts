/** Command line:
 *    render --csv <path> --figure {1,2,3} --lambda <value> --out <path>
 *
 *  Exit codes: 0 success, 1 data error (bad CSV content), 2 usage error.
 *  The SVG is built fully in memory before anything is written, so a
 *  failing render never leaves a partial output file.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { SweepCsvError } from "./csv.js";
import { FigureDataError } from "./model.js";
import { renderFigure } from "./render.js";

const USAGE =
  "usage: render --csv <path> --figure {1,2,3} --lambda <value> --out <path>";

class UsageError extends Error {}

interface CliArgs {
  csv: string;
  figure: number;
  lambda: number;
  out: string;
}

function parseArgs(argv: string[]): CliArgs {
  if (argv[0] !== "render") {
    throw new UsageError(
      `unknown command '${argv[0] ?? ""}'; the only command is 'render'`);
  }
  const values = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    const flag = argv[i]!;
    if (!flag.startsWith("--")) throw new UsageError(`unexpected argument '${flag}'`);
    const value = argv[i + 1];
    if (value === undefined) throw new UsageError(`flag ${flag} needs a value`);
    values.set(flag.slice(2), value);
  }
  const required = ["csv", "figure", "lambda", "out"];
  const missing = required.filter((name) => !values.has(name));
  if (missing.length > 0) {
    throw new UsageError(`missing flag(s): ${missing.map((m) => `--${m}`).join(", ")}`);
  }
  const unknown = [...values.keys()].filter((name) => !required.includes(name));
  if (unknown.length > 0) {
    throw new UsageError(`unknown flag(s): ${unknown.map((m) => `--${m}`).join(", ")}`);
  }
  const figure = Number(values.get("figure"));
  if (![1, 2, 3].includes(figure)) {
    throw new UsageError(`--figure must be 1, 2, or 3 (got '${values.get("figure")}')`);
  }
  const lambda = Number(values.get("lambda"));
  if (!Number.isFinite(lambda)) {
    throw new UsageError(`--lambda must be a number (got '${values.get("lambda")}')`);
  }
  return { csv: values.get("csv")!, figure, lambda, out: values.get("out")! };
}

export function main(argv: string[]): number {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(err instanceof Error ? err.message : String(err));
    console.error(USAGE);
    return 2;
  }

  let csvText: string;
  try {
    csvText = readFileSync(args.csv, "utf8");
  } catch (err) {
    console.error(`cannot read ${args.csv}: ${(err as Error).message}`);
    return 1;
  }

  try {
    const { model, svg } = renderFigure(csvText,
      { figure: args.figure, lambda: args.lambda });
    writeFileSync(args.out, svg);
    const nPoints = model.panels
      .flatMap((p) => p.series)
      .reduce((n, s) => n + s.points.length, 0);
    console.log(`wrote ${args.out}: ${model.panels.length} panels, `
      + `${nPoints} points, lambda line at ${model.lambda}`);
    return 0;
  } catch (err) {
    if (err instanceof SweepCsvError || err instanceof FigureDataError) {
      console.error(`${args.csv}: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly = process.argv[1] !== undefined
  && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
