/** Figure model: a pure-data plot specification built from sweep rows.
 *  Everything the SVG layer draws is decided here, so tests (and callers)
 *  can assert on series, markers, and reference lines without parsing
 *  image output.
 */

import { SweepRow } from "./csv.js";

export type MarkerShape =
  | "cross" | "square" | "diamond" | "circle" | "triangle" | "plus" | "star";

/** Distinct marker per epsilon group, cycled in a fixed order. */
export const MARKER_CYCLE: readonly MarkerShape[] = [
  "cross", "square", "diamond", "circle", "triangle", "plus", "star",
];

export interface Point {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  epsilon: number;
  marker: MarkerShape;
  points: Point[];
}

export interface Axis {
  label: string;
  scale: "linear" | "log";
  min: number;
  max: number;
  ticks: number[];
}

export interface ReferenceLine {
  orientation: "horizontal";
  value: number;
  style: "dashed";
  label: string;
}

export type PanelId = "gamma_vs_sigma" | "gamma_eps_vs_eps" | "sumlaw_inset";

export interface Panel {
  id: PanelId;
  title: string;
  x: Axis;
  y: Axis;
  series: Series[];
  referenceLines: ReferenceLine[];
}

export interface FigureModel {
  figure: number;
  title: string;
  lambda: number;
  panels: Panel[];
}

export class FigureDataError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "FigureDataError";
  }
}

const MODEL_NAMES: Record<number, string> = {
  1: "Gaussian coupling (gdm)",
  2: "depolarizing coupling (dc)",
  3: "Lorentzian coupling (ldm)",
};

function finite(points: Point[]): Point[] {
  return points.filter((p) => Number.isFinite(p.x) && Number.isFinite(p.y));
}

function byX(a: Point, b: Point): number {
  return a.x - b.x;
}

function epsilonLabel(epsilon: number): string {
  return epsilon === 0 ? "eps = 0 (no coupling)" : `eps = ${epsilon}`;
}

function sortedDistinct(values: number[]): number[] {
  return [...new Set(values)].sort((a, b) => a - b);
}

function niceTicks(min: number, max: number, count = 5): number[] {
  if (!(max > min)) return [min];
  const rawStep = (max - min) / (count - 1);
  const mag = 10 ** Math.floor(Math.log10(rawStep));
  const residual = rawStep / mag;
  const step = (residual >= 5 ? 10 : residual >= 2 ? 5 : residual >= 1 ? 2 : 1) * mag;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) {
    ticks.push(Number(v.toPrecision(12)));
  }
  return ticks;
}

function logTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let d = Math.floor(Math.log10(min)); d <= Math.ceil(Math.log10(max)); d += 1) {
    const v = 10 ** d;
    if (v >= min / (1 + 1e-12) && v <= max * (1 + 1e-12)) ticks.push(v);
  }
  return ticks.length >= 2 ? ticks : [min, max];
}

function makeAxis(label: string, values: number[], scale: "linear" | "log",
                  includeValues: number[] = []): Axis {
  const data = values.filter(Number.isFinite).concat(includeValues);
  if (data.length === 0) return { label, scale, min: 0, max: 1, ticks: [0, 1] };
  let lo = Math.min(...data);
  let hi = Math.max(...data);
  if (scale === "log") {
    const positive = data.filter((v) => v > 0);
    lo = Math.min(...positive);
    hi = Math.max(...positive);
    return { label, scale, min: lo / 1.3, max: hi * 1.3, ticks: logTicks(lo, hi) };
  }
  const span = hi - lo || Math.abs(hi) || 1;
  lo -= span * 0.06;
  hi += span * 0.06;
  return { label, scale, min: lo, max: hi, ticks: niceTicks(lo, hi) };
}

/** Build the three-panel specification:
 *  (a) composite decay rate vs perturbation, one series per coupling value,
 *  (b) coupling-only rate vs coupling,
 *  (inset) composite rate minus coupling-only rate vs perturbation.
 *  A dashed horizontal reference line at the supplied Lyapunov exponent is
 *  attached to panels (a) and (b).
 */
export function buildFigureModel(rows: SweepRow[], figure: number,
                                 lambda: number): FigureModel {
  if (!(figure === 1 || figure === 2 || figure === 3)) {
    throw new FigureDataError(`figure must be 1, 2, or 3 (got ${figure})`);
  }
  if (!Number.isFinite(lambda)) {
    throw new FigureDataError(`lambda must be a finite number (got ${lambda})`);
  }

  const perturbed = rows.filter((r) => r.sigma > 0);
  const couplingOnly = rows.filter((r) => r.sigma === 0 && r.epsilon > 0);

  const epsValues = sortedDistinct(perturbed.map((r) => r.epsilon));
  const markerFor = new Map<number, MarkerShape>(
    epsValues.map((e, i) => [e, MARKER_CYCLE[i % MARKER_CYCLE.length]!]));

  const panelASeries: Series[] = epsValues
    .map((eps) => ({
      label: epsilonLabel(eps),
      epsilon: eps,
      marker: markerFor.get(eps)!,
      points: finite(perturbed.filter((r) => r.epsilon === eps)
        .map((r) => ({ x: r.sigmaOverHbar, y: r.gamma }))).sort(byX),
    }))
    .filter((s) => s.points.length > 0);
  if (panelASeries.length === 0) {
    throw new FigureDataError(
      "CSV contains no usable rate series: no rows with sigma > 0 and a "
      + "finite gamma");
  }

  // coupling-only rates: prefer the sigma = 0 marginal rows; fall back to
  // the gamma_epsilon column of the perturbed rows when no marginals exist
  let panelBPoints = finite(couplingOnly.map((r) => ({ x: r.epsilon, y: r.gamma })));
  if (panelBPoints.length === 0) {
    const seen = new Map<number, number>();
    for (const r of perturbed) {
      if (r.epsilon > 0 && !seen.has(r.epsilon)) seen.set(r.epsilon, r.gammaEpsilon);
    }
    panelBPoints = finite([...seen.entries()].map(([x, y]) => ({ x, y })));
  }
  panelBPoints.sort(byX);

  const insetSeries: Series[] = epsValues
    .filter((eps) => eps > 0)
    .map((eps) => ({
      label: epsilonLabel(eps),
      epsilon: eps,
      marker: markerFor.get(eps)!,
      points: finite(perturbed.filter((r) => r.epsilon === eps)
        .map((r) => ({ x: r.sigmaOverHbar, y: r.gamma - r.gammaEpsilon })))
        .sort(byX),
    }))
    .filter((s) => s.points.length > 0);

  const lambdaLine: ReferenceLine = {
    orientation: "horizontal",
    value: lambda,
    style: "dashed",
    label: `lambda = ${lambda}`,
  };

  const allA = panelASeries.flatMap((s) => s.points);
  const panelA: Panel = {
    id: "gamma_vs_sigma",
    title: "(a) decay rate vs perturbation",
    x: makeAxis("sigma / hbar", allA.map((p) => p.x), "linear"),
    y: makeAxis("gamma", allA.map((p) => p.y), "linear", [lambda]),
    series: panelASeries,
    referenceLines: [lambdaLine],
  };

  const panelB: Panel = {
    id: "gamma_eps_vs_eps",
    title: "(b) coupling-only rate vs coupling",
    x: makeAxis("epsilon", panelBPoints.map((p) => p.x),
      figure === 3 ? "log" : "linear"),
    y: makeAxis("gamma_epsilon", panelBPoints.map((p) => p.y), "linear", [lambda]),
    series: panelBPoints.length > 0
      ? [{ label: "coupling only", epsilon: Number.NaN, marker: "circle",
           points: panelBPoints }]
      : [],
    referenceLines: [lambdaLine],
  };

  const allInset = insetSeries.flatMap((s) => s.points);
  const inset: Panel = {
    id: "sumlaw_inset",
    title: "gamma - gamma_eps vs perturbation",
    x: makeAxis("sigma / hbar", allInset.map((p) => p.x), "linear"),
    y: makeAxis("gamma - gamma_eps", allInset.map((p) => p.y), "linear"),
    series: insetSeries,
    referenceLines: [],
  };

  return {
    figure,
    title: `decay-rate regimes, ${MODEL_NAMES[figure]}`,
    lambda,
    panels: [panelA, panelB, inset],
  };
}
