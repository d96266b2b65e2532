import { describe, expect, it } from 'vitest';

import { parseGrid } from '../src/board.js';
import {
  certificateHeatGrid, rampColor, reachOverlay,
} from '../src/heatmap.js';

describe('certificateHeatGrid', () => {
  it('keeps exact rational tooltips while binning by magnitude', () => {
    const grid = parseGrid('oo.\n#oo');
    const cells = certificateHeatGrid(grid, {
      '0,0': '-1', '0,1': '1/2', '1,1': 0, '1,2': '3/2+-1/2r',
    });
    const byKey = Object.fromEntries(
      cells.map((h) => [`${h.r},${h.c}`, h]));
    expect(byKey['0,0']!.tooltip).toBe('-1');
    expect(byKey['0,1']!.tooltip).toBe('1/2');
    expect(byKey['1,2']!.tooltip).toBe('3/2 - 1/2·ρ');
    expect(byKey['0,2']!.tooltip).toBe('0');        // unlisted cell
    expect(Number.isNaN(byKey['1,0']!.intensity)).toBe(true); // off board
    // The largest magnitude saturates the ramp.
    expect(byKey['1,2']!.intensity).toBe(1);
    expect(byKey['0,1']!.intensity).toBeGreaterThan(0);
    expect(byKey['0,1']!.intensity).toBeLessThan(1);
  });

  it('rejects malformed cell keys', () => {
    expect(() => certificateHeatGrid(parseGrid('o'), { zebra: '1' }))
      .toThrow();
  });
});

describe('reachOverlay', () => {
  it('renders "Height / -Depth" with horizon gaps as ?', () => {
    const overlay = reachOverlay(
      [[0, 1, null]],
      [[2, 0, null]],
    );
    expect(overlay).toEqual([['0 / -2', '1 / 0', '? / ?']]);
  });
});

describe('rampColor', () => {
  it('maps 0 to white-ish and clamps to crimson', () => {
    expect(rampColor(0)).toBe('rgb(255, 255, 255)');
    expect(rampColor(1)).toBe('rgb(255, 60, 60)');
    expect(rampColor(7)).toBe('rgb(255, 60, 60)');
    expect(rampColor(NaN)).toBe('transparent');
  });
});
