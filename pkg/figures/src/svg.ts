/** SVG emission for a FigureModel. Pure string building: no DOM, no
 *  dependencies, deterministic output for a given model.
 */

import { Axis, FigureModel, MarkerShape, Panel, Series } from "./model.js";

const WIDTH = 920;
const HEIGHT = 460;
const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
  "#ff7f0e", "#8c564b", "#17becf",
];

interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

const PANEL_A: Rect = { x: 64, y: 56, w: 360, h: 312 };
const PANEL_B: Rect = { x: 540, y: 56, w: 340, h: 312 };
const INSET: Rect = { x: 110, y: 80, w: 150, h: 110 };

function px(v: number): string {
  return v.toFixed(2);
}

function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 0.001 && a < 10000) {
    return String(Number(v.toPrecision(4)));
  }
  return v.toExponential(1);
}

function scale(axis: Axis, v: number, lo: number, hi: number): number {
  let t: number;
  if (axis.scale === "log") {
    t = (Math.log10(v) - Math.log10(axis.min))
      / (Math.log10(axis.max) - Math.log10(axis.min));
  } else {
    t = (v - axis.min) / (axis.max - axis.min);
  }
  return lo + t * (hi - lo);
}

function xPix(panel: Panel, rect: Rect, v: number): number {
  return scale(panel.x, v, rect.x, rect.x + rect.w);
}

function yPix(panel: Panel, rect: Rect, v: number): number {
  return scale(panel.y, v, rect.y + rect.h, rect.y);
}

export function markerElement(shape: MarkerShape, cx: number, cy: number,
                              size: number, color: string): string {
  const s = size;
  const attrs = `stroke="${color}" fill="none" stroke-width="1.4"`;
  switch (shape) {
    case "circle":
      return `<circle cx="${px(cx)}" cy="${px(cy)}" r="${px(s)}" ${attrs}/>`;
    case "square":
      return `<rect x="${px(cx - s)}" y="${px(cy - s)}" width="${px(2 * s)}" `
        + `height="${px(2 * s)}" ${attrs}/>`;
    case "diamond":
      return `<path d="M ${px(cx)} ${px(cy - 1.3 * s)} L ${px(cx + 1.3 * s)} ${px(cy)} `
        + `L ${px(cx)} ${px(cy + 1.3 * s)} L ${px(cx - 1.3 * s)} ${px(cy)} Z" ${attrs}/>`;
    case "triangle":
      return `<path d="M ${px(cx)} ${px(cy - 1.2 * s)} L ${px(cx + 1.2 * s)} `
        + `${px(cy + s)} L ${px(cx - 1.2 * s)} ${px(cy + s)} Z" ${attrs}/>`;
    case "cross":
      return `<path d="M ${px(cx - s)} ${px(cy - s)} L ${px(cx + s)} ${px(cy + s)} `
        + `M ${px(cx - s)} ${px(cy + s)} L ${px(cx + s)} ${px(cy - s)}" ${attrs}/>`;
    case "plus":
      return `<path d="M ${px(cx - s)} ${px(cy)} L ${px(cx + s)} ${px(cy)} `
        + `M ${px(cx)} ${px(cy - s)} L ${px(cx)} ${px(cy + s)}" ${attrs}/>`;
    case "star": {
      const d = 1.35 * s;
      return `<path d="M ${px(cx - s)} ${px(cy - s)} L ${px(cx + s)} ${px(cy + s)} `
        + `M ${px(cx - s)} ${px(cy + s)} L ${px(cx + s)} ${px(cy - s)} `
        + `M ${px(cx - d)} ${px(cy)} L ${px(cx + d)} ${px(cy)} `
        + `M ${px(cx)} ${px(cy - d)} L ${px(cx)} ${px(cy + d)}" ${attrs}/>`;
    }
  }
}

function seriesColor(index: number): string {
  return PALETTE[index % PALETTE.length]!;
}

function drawSeries(panel: Panel, rect: Rect, series: Series, color: string,
                    markerSize: number): string {
  const pts = series.points
    .map((p) => `${px(xPix(panel, rect, p.x))},${px(yPix(panel, rect, p.y))}`)
    .join(" ");
  const parts = [
    `<polyline points="${pts}" fill="none" stroke="${color}" `
    + `stroke-width="1" opacity="0.55"/>`,
  ];
  for (const p of series.points) {
    parts.push(markerElement(series.marker, xPix(panel, rect, p.x),
      yPix(panel, rect, p.y), markerSize, color));
  }
  return parts.join("\n");
}

function drawAxes(panel: Panel, rect: Rect, fontSize: number): string {
  const parts: string[] = [];
  parts.push(`<rect x="${px(rect.x)}" y="${px(rect.y)}" width="${px(rect.w)}" `
    + `height="${px(rect.h)}" fill="none" stroke="#333" stroke-width="1"/>`);
  for (const t of panel.x.ticks) {
    if (t < panel.x.min || t > panel.x.max) continue;
    const x = xPix(panel, rect, t);
    parts.push(`<line x1="${px(x)}" y1="${px(rect.y + rect.h)}" x2="${px(x)}" `
      + `y2="${px(rect.y + rect.h + 4)}" stroke="#333" stroke-width="1"/>`);
    parts.push(`<text x="${px(x)}" y="${px(rect.y + rect.h + 4 + fontSize)}" `
      + `text-anchor="middle" font-size="${fontSize}" ${FONT}>${tickLabel(t)}</text>`);
  }
  for (const t of panel.y.ticks) {
    if (t < panel.y.min || t > panel.y.max) continue;
    const y = yPix(panel, rect, t);
    parts.push(`<line x1="${px(rect.x - 4)}" y1="${px(y)}" x2="${px(rect.x)}" `
      + `y2="${px(y)}" stroke="#333" stroke-width="1"/>`);
    parts.push(`<text x="${px(rect.x - 6)}" y="${px(y + fontSize * 0.35)}" `
      + `text-anchor="end" font-size="${fontSize}" ${FONT}>${tickLabel(t)}</text>`);
  }
  parts.push(`<text x="${px(rect.x + rect.w / 2)}" `
    + `y="${px(rect.y + rect.h + 4 + 2.4 * fontSize)}" text-anchor="middle" `
    + `font-size="${fontSize}" ${FONT}>${panel.x.label}</text>`);
  parts.push(`<text x="${px(rect.x - 44)}" y="${px(rect.y + rect.h / 2)}" `
    + `text-anchor="middle" font-size="${fontSize}" ${FONT} `
    + `transform="rotate(-90 ${px(rect.x - 44)} ${px(rect.y + rect.h / 2)})">`
    + `${panel.y.label}</text>`);
  return parts.join("\n");
}

function drawReferenceLines(panel: Panel, rect: Rect, fontSize: number): string {
  const parts: string[] = [];
  for (const line of panel.referenceLines) {
    if (line.value < panel.y.min || line.value > panel.y.max) continue;
    const y = yPix(panel, rect, line.value);
    parts.push(`<line x1="${px(rect.x)}" y1="${px(y)}" `
      + `x2="${px(rect.x + rect.w)}" y2="${px(y)}" stroke="#444" `
      + `stroke-width="1.2" stroke-dasharray="6 4" class="reference-line"/>`);
    parts.push(`<text x="${px(rect.x + rect.w - 4)}" y="${px(y - 4)}" `
      + `text-anchor="end" font-size="${fontSize}" fill="#444" ${FONT}>`
      + `${line.label}</text>`);
  }
  return parts.join("\n");
}

function drawPanel(panel: Panel, rect: Rect, opts: { inset: boolean }): string {
  const fontSize = opts.inset ? 8 : 11;
  const markerSize = opts.inset ? 2.2 : 3.4;
  const parts: string[] = [`<g class="panel" data-panel-id="${panel.id}">`];
  if (opts.inset) {
    parts.push(`<rect x="${px(rect.x - 48)}" y="${px(rect.y - 16)}" `
      + `width="${px(rect.w + 58)}" height="${px(rect.h + 44)}" fill="white" `
      + `opacity="0.92"/>`);
  }
  parts.push(drawAxes(panel, rect, fontSize));
  panel.series.forEach((series, i) => {
    parts.push(drawSeries(panel, rect, series, seriesColor(i), markerSize));
  });
  parts.push(drawReferenceLines(panel, rect, fontSize));
  parts.push(`<text x="${px(rect.x + 4)}" y="${px(rect.y - 5)}" `
    + `font-size="${fontSize}" ${FONT}>${panel.title}</text>`);
  parts.push("</g>");
  return parts.join("\n");
}

function drawLegend(model: FigureModel): string {
  const panelA = model.panels[0]!;
  const parts: string[] = [`<g class="legend">`];
  let x = PANEL_A.x;
  const y = HEIGHT - 18;
  panelA.series.forEach((series, i) => {
    parts.push(markerElement(series.marker, x, y - 4, 3.2, seriesColor(i)));
    parts.push(`<text x="${px(x + 8)}" y="${px(y)}" font-size="11" ${FONT}>`
      + `${series.label}</text>`);
    x += 14 + 7.2 * series.label.length + 16;
  });
  parts.push("</g>");
  return parts.join("\n");
}

export function renderSvg(model: FigureModel): string {
  const [panelA, panelB, inset] = model.panels;
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" `
    + `height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${px(WIDTH / 2)}" y="24" text-anchor="middle" font-size="14" `
    + `${FONT}>${model.title}</text>`,
    drawPanel(panelA!, PANEL_A, { inset: false }),
    drawPanel(panelB!, PANEL_B, { inset: false }),
  ];
  if (inset && inset.series.length > 0) {
    parts.push(drawPanel(inset, INSET, { inset: true }));
  }
  parts.push(drawLegend(model));
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
