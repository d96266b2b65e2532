/** Heat-grid rendering for certificates and reach diagrams.
 *
 * Cells are coloured by approximate magnitude but every tooltip shows the
 * exact value from the service: rationals stay "p/q", golden-ring pagoda
 * weights render symbolically as "a + b·ρ".
 */

import { parseCellKey, type Grid } from './board.js';
import { parseExact } from './rational.js';

export interface HeatCell {
  r: number;
  c: number;
  /** 0..1 colour intensity, NaN for off-board cells. */
  intensity: number;
  /** Exact tooltip text. */
  tooltip: string;
}

/** Certificate "values" maps ("r,c" -> exact string or small int). */
export function certificateHeatGrid(
    grid: Grid, values: Record<string, unknown>): HeatCell[] {
  const exact = new Map<string, { num: number; text: string }>();
  for (const [key, raw] of Object.entries(values)) {
    parseCellKey(key); // validates
    if (typeof raw === 'number') {
      exact.set(key, { num: raw, text: String(raw) });
    } else {
      const v = parseExact(String(raw));
      const text = 'toSymbolic' in v ? v.toSymbolic() : v.toString();
      exact.set(key, { num: v.toNumber(), text });
    }
  }
  const mags = [...exact.values()].map((v) => Math.abs(v.num));
  const top = Math.max(1e-12, ...mags);
  const out: HeatCell[] = [];
  for (let r = 0; r < grid.rows; r += 1) {
    for (let c = 0; c < grid.cols; c += 1) {
      if (grid.cells[r]![c] === 'off') {
        out.push({ r, c, intensity: NaN, tooltip: '' });
        continue;
      }
      const v = exact.get(`${r},${c}`);
      out.push({
        r, c,
        intensity: v ? Math.abs(v.num) / top : 0,
        tooltip: v ? v.text : '0',
      });
    }
  }
  return out;
}

/** Reach overlay in the "Height / −Depth" style: height above the axis,
 * negated depth below; null means beyond the search horizon. */
export function reachOverlay(
    height: (number | string | null)[][],
    depth: (number | string | null)[][]): string[][] {
  return height.map((row, r) => row.map((h, c) => {
    const d = depth[r]?.[c] ?? null;
    const hs = h === null ? '?' : String(h);
    const ds = d === null ? '?' : d === 0 ? '0' : `-${d}`;
    return `${hs} / ${ds}`;
  }));
}

/** Map an intensity to a CSS colour on a white-to-crimson ramp. */
export function rampColor(intensity: number): string {
  if (Number.isNaN(intensity)) return 'transparent';
  const t = Math.min(1, Math.max(0, intensity));
  const chan = Math.round(255 - 195 * t);
  return `rgb(255, ${chan}, ${chan})`;
}
