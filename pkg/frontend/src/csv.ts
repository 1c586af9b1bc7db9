/**
 * Reader for the sweep CSV emitted by the Python side.
 *
 * The schema is fixed; anything else is a parse error. Rows tagged
 * `error:` by the sweep (inapplicable cells) are carried through so the
 * plot layer can drop them explicitly.
 */

export const EXPECTED_HEADER =
  "construction,pattern,n,p,seed,edges_before_patch,patch_added," +
  "edges_final,uncompleted_before_patch,verified,runtime_ms";

export class ParseError extends Error {}
export class InputError extends Error {}

export interface SweepRow {
  construction: string;
  pattern: string;
  n: number;
  p: number;
  seed: number;
  edgesBeforePatch: number;
  patchAdded: number;
  edgesFinal: number;
  uncompletedBeforePatch: number;
  verified: string;
  runtimeMs: number;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((ln) => ln.trim().length > 0);
  if (lines.length === 0) {
    throw new InputError("empty CSV");
  }
  if (lines[0].trim() !== EXPECTED_HEADER) {
    throw new ParseError(
      `schema mismatch: expected header "${EXPECTED_HEADER}", got "${lines[0].trim()}"`,
    );
  }
  if (lines.length === 1) {
    throw new InputError("CSV has a header but no rows");
  }
  const rows: SweepRow[] = [];
  for (const [i, line] of lines.slice(1).entries()) {
    const cells = line.split(",");
    if (cells.length !== 11) {
      throw new ParseError(`row ${i + 2}: expected 11 cells, got ${cells.length}`);
    }
    const num = (j: number, what: string): number => {
      const v = Number(cells[j]);
      if (!Number.isFinite(v)) {
        throw new ParseError(`row ${i + 2}: ${what} is not a number: ${cells[j]}`);
      }
      return v;
    };
    rows.push({
      construction: cells[0],
      pattern: cells[1],
      n: num(2, "n"),
      p: num(3, "p"),
      seed: num(4, "seed"),
      edgesBeforePatch: num(5, "edges_before_patch"),
      patchAdded: num(6, "patch_added"),
      edgesFinal: num(7, "edges_final"),
      uncompletedBeforePatch: num(8, "uncompleted_before_patch"),
      verified: cells[9],
      runtimeMs: num(10, "runtime_ms"),
    });
  }
  return rows;
}
