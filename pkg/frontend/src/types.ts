/** JSON shapes exchanged with the pegcert HTTP service. */

export type Status = 'pass' | 'fail' | 'budget_exhausted';

export interface VerdictJson {
  status: Status;
  certificate: Record<string, unknown> | null;
  stats: Record<string, unknown>;
}

export interface ReportJson {
  board: string;
  start: string;
  end: string;
  verdicts: Record<string, VerdictJson>;
  status: Status;
  first_fail: string | null;
  config: Record<string, unknown>;
  elapsed: number;
}

export interface BoardJson {
  id: string;
  cells: number;
  moves: number;
  grid: string;
}

export interface ProblemJson {
  id: string;
  board_id: string;
  start: string;
  end: string;
  working?: string;
}

export interface MoveJson {
  p: string;
  q: string;
  r: string;
}

export interface MoveResponse {
  id: string;
  working: string;
  legal_moves: MoveJson[];
  live: ReportJson;
}

export type RunState = 'idle' | 'running' | 'done' | 'cancelled';

export interface ReportResponse {
  id: string;
  state: RunState;
  progress?: Record<string, number>;
  report: ReportJson | null;
}

export interface ReachResponse {
  id: string;
  mode: 'depth' | 'height';
  grid: (number | string | null)[][];
  text: string;
}

export interface RunConfig {
  full_ladder?: boolean;
  node_budget?: number;
  seed?: number;
  tests?: string[];
}

/** Canonical ladder order, strongest test last. */
export const LADDER = [
  'f2', 'lattice', 'cone', 'thickness', 'nonneg',
  'quad_simple', 'quad_flat',
] as const;

export type Stage = (typeof LADDER)[number];
