/** The live ladder panel: one chip per stage, certificates on demand. */

import type { ReportJson, Stage, Status, VerdictJson } from './types.js';
import { LADDER } from './types.js';

export type ChipColor = 'green' | 'red' | 'amber' | 'grey';

export interface StageChip {
  stage: Stage;
  status: Status | 'skipped';
  color: ChipColor;
  detail: string;
}

const COLOR: Record<Status, ChipColor> = {
  pass: 'green',
  fail: 'red',
  budget_exhausted: 'amber',
};

function detailFor(v: VerdictJson): string {
  if (v.status === 'budget_exhausted') {
    const nodes = v.stats['nodes'];
    return nodes !== undefined ? `budget exhausted after ${nodes} nodes`
                               : 'budget exhausted';
  }
  if (v.status === 'fail' && v.certificate) {
    return `refuted (${String(v.certificate['type'])})`;
  }
  return v.status;
}

/** Chips in ladder order; stages the pipeline skipped render grey. */
export function stageChips(report: ReportJson): StageChip[] {
  return LADDER.map((stage) => {
    const v = report.verdicts[stage];
    if (!v) {
      return { stage, status: 'skipped', color: 'grey', detail: 'not run' };
    }
    return { stage, status: v.status, color: COLOR[v.status],
             detail: detailFor(v) };
  });
}

/** The strongest verdict a report supports, for the headline banner. */
export function headline(report: ReportJson): string {
  if (report.status === 'pass') return 'no test refutes this problem';
  if (report.status === 'budget_exhausted') return 'inconclusive (budget)';
  return `infeasible — refuted at ${report.first_fail}`;
}
