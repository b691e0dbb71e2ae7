/**
 * Figure renderer for experiment CSV artifacts.
 *
 * Usage:
 *   node dist/cli.js --input-dir <dir> --figure <kind> --out <file.svg>
 *
 * Figure kinds: sat-curves (needs stb.csv + baseline.csv),
 * mode-cv-curves (stb.csv), sweep-summary (sweep.csv).
 */

import { FigureKind } from "./figures";
import { renderFigureFile } from "./render";

const FIGURES: FigureKind[] = ["sat-curves", "mode-cv-curves", "sweep-summary"];

function parseArgs(argv: string[]): { inputDir: string; figure: FigureKind; out: string } {
  const values: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      throw new Error(`malformed arguments near '${flag}'`);
    }
    values[flag.slice(2)] = value;
  }
  for (const required of ["input-dir", "figure", "out"]) {
    if (!(required in values)) {
      throw new Error(`missing required flag --${required}`);
    }
  }
  const figure = values["figure"] as FigureKind;
  if (!FIGURES.includes(figure)) {
    throw new Error(
      `unknown figure '${values["figure"]}' (expected one of ${FIGURES.join(", ")})`,
    );
  }
  return { inputDir: values["input-dir"], figure, out: values["out"] };
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    renderFigureFile(args.inputDir, args.figure, args.out);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : error}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
