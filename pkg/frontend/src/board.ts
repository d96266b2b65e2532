/** Grid model shared by the editor layers.
 *
 * Glyphs follow the service: 'o' peg, '.' empty cell, '#' no cell.
 */

export type CellState = 'off' | 'empty' | 'peg';
export type Cell = readonly [number, number];

export interface Grid {
  rows: number;
  cols: number;
  cells: CellState[][];
}

const GLYPH: Record<CellState, string> = { off: '#', empty: '.', peg: 'o' };
const STATE: Record<string, CellState> = { '#': 'off', '.': 'empty', 'o': 'peg' };

export function parseGrid(text: string): Grid {
  const lines = text.replace(/\n+$/, '').split('\n');
  const cols = Math.max(...lines.map((l) => l.length));
  const cells = lines.map((line) =>
    Array.from({ length: cols }, (_, c) => {
      const ch = line[c] ?? '#';
      const st = STATE[ch];
      if (st === undefined) throw new Error(`bad glyph ${JSON.stringify(ch)}`);
      return st;
    }));
  return { rows: lines.length, cols, cells };
}

export function renderGrid(grid: Grid): string {
  return grid.cells.map((row) => row.map((s) => GLYPH[s]).join('')).join('\n');
}

/** Click cycle used by the board editor: off -> empty -> peg -> off. */
export function cycleCell(grid: Grid, r: number, c: number): Grid {
  const order: CellState[] = ['off', 'empty', 'peg'];
  const cells = grid.cells.map((row) => row.slice());
  const cur = cells[r]?.[c];
  if (cur === undefined) throw new Error(`cell (${r},${c}) out of range`);
  cells[r]![c] = order[(order.indexOf(cur) + 1) % 3]!;
  return { ...grid, cells };
}

/** Toggle a peg without touching board shape — the "grey peg" what-if. */
export function togglePeg(grid: Grid, r: number, c: number): Grid {
  const cur = grid.cells[r]?.[c];
  if (cur === undefined || cur === 'off') {
    throw new Error(`no cell at (${r},${c})`);
  }
  const cells = grid.cells.map((row) => row.slice());
  cells[r]![c] = cur === 'peg' ? 'empty' : 'peg';
  return { ...grid, cells };
}

/** Layers must carve out the same set of cells. */
export function sameShape(a: Grid, b: Grid): boolean {
  if (a.rows !== b.rows || a.cols !== b.cols) return false;
  return a.cells.every((row, r) =>
    row.every((s, c) => (s === 'off') === (b.cells[r]![c] === 'off')));
}

export function cellKey(cell: Cell): string {
  return `${cell[0]},${cell[1]}`;
}

export function parseCellKey(key: string): Cell {
  const [r, c] = key.split(',').map(Number);
  if (r === undefined || c === undefined || Number.isNaN(r) || Number.isNaN(c)) {
    throw new Error(`bad cell key ${JSON.stringify(key)}`);
  }
  return [r, c];
}

/** Apply a p-over-q-into-r jump, validating legality client-side. */
export function applyMove(grid: Grid, p: Cell, q: Cell, r: Cell): Grid {
  const at = (cell: Cell) => grid.cells[cell[0]]?.[cell[1]];
  if (at(p) !== 'peg' || at(q) !== 'peg' || at(r) !== 'empty') {
    throw new Error('illegal move');
  }
  const dr = r[0] - p[0];
  const dc = r[1] - p[1];
  const straight =
    (Math.abs(dr) === 2 && dc === 0 && q[0] === p[0] + dr / 2 && q[1] === p[1]) ||
    (Math.abs(dc) === 2 && dr === 0 && q[1] === p[1] + dc / 2 && q[0] === p[0]);
  if (!straight) throw new Error('not a straight jump over a neighbour');
  let out = grid;
  out = setCell(out, p, 'empty');
  out = setCell(out, q, 'empty');
  out = setCell(out, r, 'peg');
  return out;
}

function setCell(grid: Grid, cell: Cell, state: CellState): Grid {
  const cells = grid.cells.map((row) => row.slice());
  cells[cell[0]]![cell[1]] = state;
  return { ...grid, cells };
}

export function countPegs(grid: Grid): number {
  return grid.cells.flat().filter((s) => s === 'peg').length;
}

/** The standard 33-cell cross, for the "load english" editor button. */
export const ENGLISH_GRID = [
  '##ooo##',
  '##ooo##',
  'ooooooo',
  'ooooooo',
  'ooooooo',
  '##ooo##',
  '##ooo##',
].join('\n');
