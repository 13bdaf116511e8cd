/** Glue: CSV text in, figure model + SVG text out. */

import { parseSweepCsv } from "./csv.js";
import { buildFigureModel, FigureModel } from "./model.js";
import { renderSvg } from "./svg.js";

export interface RenderOptions {
  figure: number;
  lambda: number;
}

export interface RenderResult {
  model: FigureModel;
  svg: string;
}

export function renderFigure(csvText: string, opts: RenderOptions): RenderResult {
  const rows = parseSweepCsv(csvText);
  const model = buildFigureModel(rows, opts.figure, opts.lambda);
  return { model, svg: renderSvg(model) };
}
