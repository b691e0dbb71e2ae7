import * as fs from "fs";
import * as path from "path";
import * as echarts from "echarts";
import type { EChartsOption } from "echarts";
import {
  loadBaselineCsv,
  loadStbCsv,
  loadSweepCsv,
} from "./csv";
import {
  buildModeCvCurves,
  buildSatCurves,
  buildSweepSummary,
  FigureKind,
} from "./figures";

export function renderToSvg(
  option: EChartsOption,
  width = 800,
  height = 500,
): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width,
    height,
  });
  try {
    chart.setOption(option);
    return chart.renderToSVGString();
  } finally {
    chart.dispose();
  }
}

/** Build the requested figure's option from CSVs in `inputDir`. */
export function buildFigure(inputDir: string, figure: FigureKind): EChartsOption {
  switch (figure) {
    case "sat-curves":
      return buildSatCurves(
        loadStbCsv(path.join(inputDir, "stb.csv")),
        loadBaselineCsv(path.join(inputDir, "baseline.csv")),
      );
    case "mode-cv-curves":
      return buildModeCvCurves(loadStbCsv(path.join(inputDir, "stb.csv")));
    case "sweep-summary":
      return buildSweepSummary(loadSweepCsv(path.join(inputDir, "sweep.csv")));
    default:
      throw new Error(`unknown figure kind '${figure}'`);
  }
}

export function renderFigureFile(
  inputDir: string,
  figure: FigureKind,
  outPath: string,
): void {
  const svg = renderToSvg(buildFigure(inputDir, figure));
  fs.mkdirSync(path.dirname(path.resolve(outPath)), { recursive: true });
  fs.writeFileSync(outPath, svg, "utf-8");
}
