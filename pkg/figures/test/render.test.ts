import { mkdtempSync, readFileSync, writeFileSync, existsSync, statSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";
import { renderFigure } from "../src/render.js";

const FIXTURE = join(dirname(fileURLToPath(import.meta.url)),
  "..", "fixtures", "figure1_sweep.csv");
const LAMBDA = "1.76275";

function tmpDir(): string {
  return mkdtempSync(join(tmpdir(), "figures-test-"));
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("renderFigure on the shipped desk-scale sweep", () => {
  const csvText = readFileSync(FIXTURE, "utf8");

  it("renders a three-panel SVG of nonzero size", () => {
    const { model, svg } = renderFigure(csvText, { figure: 1, lambda: 1.76275 });
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg.length).toBeGreaterThan(2000);
    expect(model.panels).toHaveLength(3);
    for (const id of ["gamma_vs_sigma", "gamma_eps_vs_eps", "sumlaw_inset"]) {
      expect(svg).toContain(`data-panel-id="${id}"`);
    }
  });

  it("draws the requested lambda line (model introspection + dashed stroke)", () => {
    const { model, svg } = renderFigure(csvText, { figure: 1, lambda: 1.76275 });
    const lines = model.panels.flatMap((p) => p.referenceLines);
    expect(lines.length).toBeGreaterThan(0);
    expect(lines.every((l) => l.value === 1.76275 && l.style === "dashed"
      && l.orientation === "horizontal")).toBe(true);
    expect(svg).toContain('class="reference-line"');
    expect(svg).toContain('stroke-dasharray');
  });

  it("gives every coupling value its own series and marker in panel (a)", () => {
    const { model } = renderFigure(csvText, { figure: 1, lambda: 1.76275 });
    const panelA = model.panels[0]!;
    expect(panelA.series.length).toBeGreaterThanOrEqual(2);
    expect(panelA.series.map((s) => s.epsilon)).toContain(0);
    const markers = panelA.series.map((s) => s.marker);
    expect(new Set(markers).size).toBe(markers.length);
  });

  it("re-renders identical input to an identical specification", () => {
    const first = renderFigure(csvText, { figure: 1, lambda: 1.76275 });
    const second = renderFigure(csvText, { figure: 1, lambda: 1.76275 });
    expect(second.model).toEqual(first.model);
    expect(second.svg).toBe(first.svg);
  });
});

describe("cli", () => {
  it("writes the SVG and exits 0 on success", () => {
    const out = join(tmpDir(), "fig1.svg");
    const rc = main(["render", "--csv", FIXTURE, "--figure", "1",
      "--lambda", LAMBDA, "--out", out]);
    expect(rc).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(statSync(out).size).toBeGreaterThan(2000);
    expect(readFileSync(out, "utf8")).toContain("</svg>");
  });

  it("rejects an empty CSV without creating the output file", () => {
    const dir = tmpDir();
    const csv = join(dir, "empty.csv");
    const out = join(dir, "out.svg");
    writeFileSync(csv, "");
    const errors = vi.spyOn(console, "error").mockImplementation(() => {});
    const rc = main(["render", "--csv", csv, "--figure", "1",
      "--lambda", LAMBDA, "--out", out]);
    expect(rc).toBe(1);
    expect(existsSync(out)).toBe(false);
    expect(errors.mock.calls.flat().join("\n")).toMatch(/empty CSV/);
  });

  it("names the missing column and leaves no file behind", () => {
    const dir = tmpDir();
    const csv = join(dir, "broken.csv");
    const out = join(dir, "out.svg");
    const lines = readFileSync(FIXTURE, "utf8").split("\n");
    const gammaIndex = lines[0]!.split(",").indexOf("gamma");
    writeFileSync(csv, lines.map((l) => l.split(",")
      .filter((_, i) => i !== gammaIndex).join(",")).join("\n"));
    const errors = vi.spyOn(console, "error").mockImplementation(() => {});
    const rc = main(["render", "--csv", csv, "--figure", "1",
      "--lambda", LAMBDA, "--out", out]);
    expect(rc).toBe(1);
    expect(existsSync(out)).toBe(false);
    expect(errors.mock.calls.flat().join("\n")).toMatch(/missing column\(s\): gamma\b/);
  });

  it("exits 2 on usage errors (missing flags, bad figure number)", () => {
    const errors = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["render", "--csv", FIXTURE])).toBe(2);
    expect(main(["render", "--csv", FIXTURE, "--figure", "7",
      "--lambda", LAMBDA, "--out", "x.svg"])).toBe(2);
    expect(main(["plot"])).toBe(2);
    expect(errors.mock.calls.flat().join("\n")).toMatch(/usage: render/);
  });

  it("reports an unreadable input path", () => {
    const errors = vi.spyOn(console, "error").mockImplementation(() => {});
    const rc = main(["render", "--csv", "/nonexistent/nowhere.csv",
      "--figure", "1", "--lambda", LAMBDA, "--out", join(tmpDir(), "o.svg")]);
    expect(rc).toBe(1);
    expect(errors.mock.calls.flat().join("\n")).toMatch(/cannot read/);
  });
});
