/** Minimal DOM glue: board editor on the left, ladder panel on the right.
 *
 * Serve the pegcert service (`pegcert serve`) and open index.html; all
 * solving happens server-side.
 */

import { ApiClient } from './api.js';
import { ENGLISH_GRID, parseGrid, parseCellKey } from './board.js';
import {
  clickLayer, endGrid, initialState, receiveReport, startGrid,
  type EditorState,
} from './editor.js';
import { certificateHeatGrid, rampColor } from './heatmap.js';
import { headline, stageChips } from './ladder.js';

const api = new ApiClient('');
let state: EditorState = initialState(ENGLISH_GRID);
let editLayer: 'start' | 'end' = 'start';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function renderLayer(): void {
  const table = el<HTMLTableElement>('board');
  table.innerHTML = '';
  const grid = state[editLayer];
  grid.cells.forEach((row, r) => {
    const tr = table.insertRow();
    row.forEach((cell, c) => {
      const td = tr.insertCell();
      td.className = `cell ${cell}`;
      td.textContent = cell === 'peg' ? '●' : cell === 'empty' ? '·' : '';
      td.onclick = () => {
        state = clickLayer(state, editLayer, r, c);
        renderAll();
      };
    });
  });
}

function renderLadder(): void {
  const list = el<HTMLUListElement>('ladder');
  list.innerHTML = '';
  if (!state.lastReport) return;
  el<HTMLDivElement>('headline').textContent = headline(state.lastReport);
  for (const chip of stageChips(state.lastReport)) {
    const li = document.createElement('li');
    li.className = `chip ${chip.color}`;
    li.textContent = `${chip.stage}: ${chip.detail}`;
    li.onclick = () => renderCertificate(chip.stage);
    list.appendChild(li);
  }
}

function renderCertificate(stage: string): void {
  const report = state.lastReport;
  const cert = report?.verdicts[stage]?.certificate;
  const table = el<HTMLTableElement>('certificate');
  table.innerHTML = '';
  const values = cert?.['values'];
  if (!values || typeof values !== 'object') return;
  const grid = parseGrid(report!.board);
  const cellMap = new Map(
    certificateHeatGrid(grid, values as Record<string, unknown>)
      .map((h) => [`${h.r},${h.c}`, h] as const));
  for (let r = 0; r < grid.rows; r += 1) {
    const tr = table.insertRow();
    for (let c = 0; c < grid.cols; c += 1) {
      const td = tr.insertCell();
      const h = cellMap.get(`${r},${c}`)!;
      td.style.backgroundColor = rampColor(h.intensity);
      td.title = h.tooltip;   // exact rational / symbolic form
    }
  }
}

async function runLadder(): Promise<void> {
  const problem = await api.createProblem(startGrid(state), endGrid(state));
  await api.run(problem.id, { full_ladder: true, seed: 0 });
  const done = await api.awaitReport(problem.id);
  if (done.report) {
    state = receiveReport(state, done.report);
  }
  renderAll();
}

function renderAll(): void {
  renderLayer();
  renderLadder();
}

export function main(): void {
  el<HTMLButtonElement>('run').onclick = () => { void runLadder(); };
  el<HTMLSelectElement>('layer').onchange = (ev) => {
    editLayer = (ev.target as HTMLSelectElement).value as 'start' | 'end';
    renderAll();
  };
  renderAll();
}

// Re-exported for tests; parseCellKey keeps the import tree honest.
export { api, state, parseCellKey };
