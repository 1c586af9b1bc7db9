/**
 * plot --csv <path> --mode per_n|per_nlog --out <path.svg>
 *
 * Exit codes: 0 rendered, 2 bad input (schema mismatch, empty CSV,
 * unsupported output extension, bad arguments).
 */

import { readFileSync, writeFileSync } from "node:fs";
import { InputError, ParseError, parseSweepCsv } from "./csv.js";
import { RatioMode, buildSeries, renderSvg } from "./plot.js";

function usage(): never {
  process.stderr.write(
    "usage: satlab-plot --csv <path> --mode per_n|per_nlog --out <path.svg>\n",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) usage();
    args.set(argv[i].slice(2), argv[i + 1]);
  }
  const csvPath = args.get("csv");
  const mode = args.get("mode");
  const outPath = args.get("out");
  if (!csvPath || !outPath || (mode !== "per_n" && mode !== "per_nlog")) usage();
  if (!outPath.endsWith(".svg")) {
    // png would need a rasteriser; the chart itself is vector-native
    process.stderr.write("error: only .svg output is supported in this build\n");
    return 2;
  }
  let text: string;
  try {
    text = readFileSync(csvPath, "utf8");
  } catch (err) {
    process.stderr.write(`error: cannot read ${csvPath}: ${err}\n`);
    return 2;
  }
  try {
    const rows = parseSweepCsv(text);
    const series = buildSeries(rows, mode as RatioMode);
    const svg = renderSvg(series, mode as RatioMode);
    writeFileSync(outPath, svg, "utf8");
    process.stdout.write(`wrote ${outPath} (${series.length} groups)\n`);
    return 0;
  } catch (err) {
    if (err instanceof ParseError || err instanceof InputError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
