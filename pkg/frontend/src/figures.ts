/**
 * Chart option builders for the three figure kinds.
 *
 * Color convention: sampled-plan series are orange, mode/best-plan series
 * are blue, matching the experiment write-up's figures.
 */

import type { EChartsOption, SeriesOption } from "echarts";
import { BaselineRow, StbRow, SweepRow } from "./csv";

export const ORANGE = "#ff7f0e";
export const BLUE = "#1f77b4";

export type FigureKind = "sat-curves" | "mode-cv-curves" | "sweep-summary";

function baseOption(title: string): EChartsOption {
  return {
    animation: false,
    backgroundColor: "#ffffff",
    title: { text: title, left: "center", textStyle: { fontSize: 14 } },
    legend: { bottom: 0 },
    grid: { left: 60, right: 20, top: 40, bottom: 60 },
  };
}

/**
 * Satisfaction-probability curves: ground-truth estimates of the sampled
 * and mode plans over iterations, with the random-search optimum as a
 * dashed horizontal reference.
 */
export function buildSatCurves(
  stbRows: StbRow[],
  baseline: BaselineRow,
): EChartsOption {
  const estimates = stbRows.filter((row) => row.kind === "estimate");
  if (estimates.length === 0) {
    throw new Error("stb.csv contains no estimate rows");
  }
  const sampled = estimates.map((r) => [r.iteration, r.sampledPHat]);
  const mode = estimates.map((r) => [r.iteration, r.modePHat]);
  const lastIteration = estimates[estimates.length - 1].iteration;
  const firstIteration = estimates[0].iteration;
  const series: SeriesOption[] = [
    {
      name: "sampled plan",
      type: "line",
      data: sampled,
      color: ORANGE,
      showSymbol: false,
    },
    {
      name: "mode plan",
      type: "line",
      data: mode,
      color: BLUE,
      showSymbol: false,
    },
    {
      name: "random-search optimum",
      type: "line",
      data: [
        [firstIteration, baseline.pHat],
        [lastIteration, baseline.pHat],
      ],
      color: "#444444",
      lineStyle: { type: "dashed" },
      showSymbol: false,
    },
  ];
  return {
    ...baseOption("Satisfaction probability over search iterations"),
    xAxis: { type: "value", name: "iteration" },
    yAxis: { type: "value", name: "satisfaction probability", min: 0, max: 1 },
    series,
  };
}

/**
 * Posterior diagnostics: average posterior mean and average coefficient of
 * variation of the sampled plan's and the current mode plan's arms.
 */
export function buildModeCvCurves(stbRows: StbRow[]): EChartsOption {
  const samples = stbRows.filter((row) => row.kind === "sample");
  if (samples.length === 0) {
    throw new Error("stb.csv contains no sample rows");
  }
  const series: SeriesOption[] = [
    {
      name: "avg mean (sampled)",
      type: "line",
      data: samples.map((r) => [r.iteration, r.avgModeSampled]),
      color: ORANGE,
      showSymbol: false,
    },
    {
      name: "avg mean (best)",
      type: "line",
      data: samples.map((r) => [r.iteration, r.avgModeBest]),
      color: BLUE,
      showSymbol: false,
    },
    {
      name: "avg CV (sampled)",
      type: "line",
      data: samples.map((r) => [r.iteration, r.avgCvSampled]),
      color: ORANGE,
      lineStyle: { type: "dashed" },
      showSymbol: false,
    },
    {
      name: "avg CV (best)",
      type: "line",
      data: samples.map((r) => [r.iteration, r.avgCvBest]),
      color: BLUE,
      lineStyle: { type: "dashed" },
      showSymbol: false,
    },
  ];
  return {
    ...baseOption("Arm posterior diagnostics over search iterations"),
    xAxis: { type: "value", name: "iteration" },
    yAxis: { type: "value", name: "value" },
    series,
  };
}

/**
 * Final mode-plan estimates across repeated searches on one world: spread
 * below the best replicate shows runs that settled on local optima.
 */
export function buildSweepSummary(sweepRows: SweepRow[]): EChartsOption {
  if (sweepRows.length === 0) {
    throw new Error("sweep.csv contains no rows");
  }
  const series: SeriesOption[] = [
    {
      name: "final mode plan estimate",
      type: "bar",
      data: sweepRows.map((r) => [String(r.replicate), r.pHat]),
      color: BLUE,
    },
  ];
  return {
    ...baseOption("Final mode-plan satisfaction across replicate searches"),
    xAxis: { type: "category", name: "replicate" },
    yAxis: { type: "value", name: "satisfaction probability", min: 0, max: 1 },
    series,
  };
}
