/** Editor state machine: paint a board, lay out start/end pegs, play moves
 * on the working position, and keep the last report alongside.
 *
 * All solver state lives in the service; the editor only records which
 * requests it made (via the ApiClient log) and what came back.
 */

import {
  applyMove, type Cell, type Grid, cycleCell, parseGrid, renderGrid,
  sameShape, togglePeg,
} from './board.js';
import type { ReportJson, Stage } from './types.js';
import { LADDER } from './types.js';

export interface EditorState {
  board: Grid;
  start: Grid;
  end: Grid;
  working: Grid;
  stages: readonly Stage[];
  lastReport: ReportJson | null;
  message: string | null;
}

export function initialState(boardGrid: string): EditorState {
  const board = parseGrid(boardGrid);
  const empty = parseGrid(renderGrid(board).replace(/o/g, '.'));
  return {
    board,
    start: board,         // load with every cell pegged
    end: empty,
    working: board,
    stages: LADDER,
    lastReport: null,
    message: null,
  };
}

function withLayers(state: EditorState, start: Grid, end: Grid): EditorState {
  if (!sameShape(start, end)) {
    return { ...state, message: 'start and end layers must share one shape' };
  }
  return { ...state, start, end, working: start, message: null,
           lastReport: null };
}

/** Click in board-edit mode: cycle off/empty/peg on both layers. */
export function clickBoard(state: EditorState, r: number, c: number):
    EditorState {
  const board = cycleCell(state.board, r, c);
  // Re-derive layers on the new shape, dropping pegs on removed cells.
  const reshape = (layer: Grid): Grid => {
    const cells = layer.cells.map((row, rr) => row.map((s, cc) => {
      const shape = board.cells[rr]![cc]!;
      if (shape === 'off') return 'off' as const;
      return s === 'off' ? 'empty' : s;
    }));
    return { ...layer, cells };
  };
  const next = withLayers({ ...state, board }, reshape(state.start),
                          reshape(state.end));
  return { ...next, board };
}

/** Click in start/end-layer mode: toggle a peg ("grey peg" what-if). */
export function clickLayer(state: EditorState, layer: 'start' | 'end',
                           r: number, c: number): EditorState {
  try {
    const next = togglePeg(state[layer], r, c);
    return layer === 'start' ? withLayers(state, next, state.end)
                             : withLayers(state, state.start, next);
  } catch (err) {
    return { ...state, message: String(err) };
  }
}

/** Play a move on the working position (client-side legality check; the
 * service re-validates). */
export function playMoveLocal(state: EditorState, p: Cell, q: Cell,
                              r: Cell): EditorState {
  try {
    return { ...state, working: applyMove(state.working, p, q, r),
             message: null };
  } catch (err) {
    return { ...state, message: String(err) };
  }
}

export function resetWorking(state: EditorState): EditorState {
  return { ...state, working: state.start, message: null };
}

export function selectStages(state: EditorState,
                             stages: Stage[]): EditorState {
  const order = new Map(LADDER.map((s, i) => [s, i] as const));
  const sorted = [...new Set(stages)]
    .sort((a, b) => order.get(a)! - order.get(b)!);
  return { ...state, stages: sorted };
}

export function receiveReport(state: EditorState,
                              report: ReportJson): EditorState {
  return { ...state, lastReport: report };
}

export function startGrid(state: EditorState): string {
  return renderGrid(state.start);
}

export function endGrid(state: EditorState): string {
  return renderGrid(state.end);
}
