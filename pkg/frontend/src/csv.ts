/**
 * Loading and validation of the experiment runner's CSV artifacts.
 *
 * stb.csv mixes two row kinds under one header: `sample` rows carry the
 * raw per-iteration search state, `estimate` rows add periodic 1000-run
 * ground-truth estimates of the current sampled and mode plans.
 */

import * as fs from "fs";

export interface StbRow {
  iteration: number;
  kind: "sample" | "estimate";
  sampledPlan: string;
  sat: number | null;
  modePlan: string;
  avgModeSampled: number;
  avgCvSampled: number;
  avgModeBest: number;
  avgCvBest: number;
  sampledPHat: number | null;
  sampledStderr: number | null;
  modePHat: number | null;
  modeStderr: number | null;
  estimateRuns: number | null;
}

export interface BaselineRow {
  bestPlan: string;
  pHat: number;
  stderr: number;
  nPlans: number;
  nEvals: number;
}

export interface SweepRow {
  replicate: number;
  searchSeed: number;
  modePlan: string;
  pHat: number;
  stderr: number;
}

/** Minimal RFC-4180 parser: quoted fields, CRLF or LF line ends. */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = "";
  let inQuotes = false;
  let i = 0;
  const push = () => {
    row.push(field);
    field = "";
  };
  const endRow = () => {
    push();
    rows.push(row);
    row = [];
  };
  while (i < text.length) {
    const ch = text[i];
    if (inQuotes) {
      if (ch === '"') {
        if (text[i + 1] === '"') {
          field += '"';
          i += 2;
          continue;
        }
        inQuotes = false;
        i++;
        continue;
      }
      field += ch;
      i++;
      continue;
    }
    if (ch === '"') {
      inQuotes = true;
      i++;
    } else if (ch === ",") {
      push();
      i++;
    } else if (ch === "\r" && text[i + 1] === "\n") {
      endRow();
      i += 2;
    } else if (ch === "\n") {
      endRow();
      i++;
    } else {
      field += ch;
      i++;
    }
  }
  if (field.length > 0 || row.length > 0) {
    endRow();
  }
  return rows;
}

interface Table {
  header: string[];
  rows: string[][];
}

function loadTable(path: string): Table {
  if (!fs.existsSync(path)) {
    throw new Error(`no such file: ${path}`);
  }
  const parsed = parseCsv(fs.readFileSync(path, "utf-8"));
  if (parsed.length === 0) {
    throw new Error(`empty CSV: ${path}`);
  }
  const [header, ...rows] = parsed;
  if (rows.length === 0) {
    throw new Error(`empty CSV (header only): ${path}`);
  }
  return { header, rows };
}

/** Column accessor that names the missing column in its error. */
function columnIndex(table: Table, path: string, name: string): number {
  const index = table.header.indexOf(name);
  if (index < 0) {
    throw new Error(`missing column '${name}' in ${path}`);
  }
  return index;
}

function num(value: string, column: string): number {
  const parsed = Number(value);
  if (value === "" || Number.isNaN(parsed)) {
    throw new Error(`non-numeric value '${value}' in column '${column}'`);
  }
  return parsed;
}

function numOrNull(value: string, column: string): number | null {
  return value === "" ? null : num(value, column);
}

export function loadStbCsv(path: string): StbRow[] {
  const table = loadTable(path);
  const col = (name: string) => columnIndex(table, path, name);
  const c = {
    iteration: col("iteration"),
    kind: col("kind"),
    sampledPlan: col("sampled_plan"),
    sat: col("sat"),
    modePlan: col("mode_plan"),
    avgModeSampled: col("avg_mode_sampled"),
    avgCvSampled: col("avg_cv_sampled"),
    avgModeBest: col("avg_mode_best"),
    avgCvBest: col("avg_cv_best"),
    sampledPHat: col("sampled_p_hat"),
    sampledStderr: col("sampled_stderr"),
    modePHat: col("mode_p_hat"),
    modeStderr: col("mode_stderr"),
    estimateRuns: col("estimate_runs"),
  };
  return table.rows.map((row) => {
    const kind = row[c.kind];
    if (kind !== "sample" && kind !== "estimate") {
      throw new Error(`unknown row kind '${kind}' in ${path}`);
    }
    return {
      iteration: num(row[c.iteration], "iteration"),
      kind,
      sampledPlan: row[c.sampledPlan],
      sat: numOrNull(row[c.sat], "sat"),
      modePlan: row[c.modePlan],
      avgModeSampled: num(row[c.avgModeSampled], "avg_mode_sampled"),
      avgCvSampled: num(row[c.avgCvSampled], "avg_cv_sampled"),
      avgModeBest: num(row[c.avgModeBest], "avg_mode_best"),
      avgCvBest: num(row[c.avgCvBest], "avg_cv_best"),
      sampledPHat: numOrNull(row[c.sampledPHat], "sampled_p_hat"),
      sampledStderr: numOrNull(row[c.sampledStderr], "sampled_stderr"),
      modePHat: numOrNull(row[c.modePHat], "mode_p_hat"),
      modeStderr: numOrNull(row[c.modeStderr], "mode_stderr"),
      estimateRuns: numOrNull(row[c.estimateRuns], "estimate_runs"),
    };
  });
}

export function loadBaselineCsv(path: string): BaselineRow {
  const table = loadTable(path);
  const col = (name: string) => columnIndex(table, path, name);
  const row = table.rows[0];
  return {
    bestPlan: row[col("best_plan")],
    pHat: num(row[col("p_hat")], "p_hat"),
    stderr: num(row[col("stderr")], "stderr"),
    nPlans: num(row[col("n_plans")], "n_plans"),
    nEvals: num(row[col("n_evals")], "n_evals"),
  };
}

export function loadSweepCsv(path: string): SweepRow[] {
  const table = loadTable(path);
  const col = (name: string) => columnIndex(table, path, name);
  return table.rows.map((row) => ({
    replicate: num(row[col("replicate")], "replicate"),
    searchSeed: num(row[col("search_seed")], "search_seed"),
    modePlan: row[col("mode_plan")],
    pHat: num(row[col("p_hat")], "p_hat"),
    stderr: num(row[col("stderr")], "stderr"),
  }));
}
