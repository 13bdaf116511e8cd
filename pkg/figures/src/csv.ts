/** Strict reader for the sweep CSV emitted by the torusecho CLI. */

export interface SweepRow {
  model: string;
  N: number;
  a: number;
  b: number;
  k: number;
  epsilon: number;
  sigma: number;
  sigmaOverHbar: number;
  gamma: number;
  gammaSigma: number;
  gammaEpsilon: number;
  rSquared: number;
  nS: number;
  seed: number;
}

/** Column order as written by the producer; order here is not enforced,
 *  only presence. */
export const REQUIRED_COLUMNS = [
  "model", "N", "a", "b", "k", "epsilon", "sigma", "sigma_over_hbar",
  "gamma", "gamma_sigma", "gamma_epsilon", "r_squared", "n_s", "seed",
] as const;

export class SweepCsvError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SweepCsvError";
  }
}

function toNumber(field: string, column: string, line: number): number {
  const trimmed = field.trim();
  if (trimmed.toLowerCase() === "nan") return Number.NaN;
  const value = Number(trimmed);
  if (trimmed === "" || Number.isNaN(value)) {
    throw new SweepCsvError(
      `line ${line}: column '${column}' has non-numeric value '${field}'`);
  }
  return value;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((l) => l.trim().length > 0);
  if (lines.length === 0) {
    throw new SweepCsvError(
      `empty CSV: expected a header with columns ${REQUIRED_COLUMNS.join(", ")}`);
  }
  const header = lines[0]!.split(",").map((s) => s.trim());
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new SweepCsvError(`missing column(s): ${missing.join(", ")}`);
  }
  const col = new Map<string, number>(header.map((name, i) => [name, i]));
  const at = (fields: string[], name: string, line: number): string => {
    const i = col.get(name)!;
    if (i >= fields.length) {
      throw new SweepCsvError(
        `line ${line}: row has ${fields.length} fields, column '${name}' absent`);
    }
    return fields[i]!;
  };

  const rows: SweepRow[] = [];
  for (let li = 1; li < lines.length; li += 1) {
    const fields = lines[li]!.split(",");
    const line = li + 1;
    rows.push({
      model: at(fields, "model", line).trim(),
      N: toNumber(at(fields, "N", line), "N", line),
      a: toNumber(at(fields, "a", line), "a", line),
      b: toNumber(at(fields, "b", line), "b", line),
      k: toNumber(at(fields, "k", line), "k", line),
      epsilon: toNumber(at(fields, "epsilon", line), "epsilon", line),
      sigma: toNumber(at(fields, "sigma", line), "sigma", line),
      sigmaOverHbar: toNumber(
        at(fields, "sigma_over_hbar", line), "sigma_over_hbar", line),
      gamma: toNumber(at(fields, "gamma", line), "gamma", line),
      gammaSigma: toNumber(at(fields, "gamma_sigma", line), "gamma_sigma", line),
      gammaEpsilon: toNumber(
        at(fields, "gamma_epsilon", line), "gamma_epsilon", line),
      rSquared: toNumber(at(fields, "r_squared", line), "r_squared", line),
      nS: toNumber(at(fields, "n_s", line), "n_s", line),
      seed: toNumber(at(fields, "seed", line), "seed", line),
    });
  }
  if (rows.length === 0) {
    throw new SweepCsvError("no data rows in CSV (header only)");
  }
  return rows;
}
