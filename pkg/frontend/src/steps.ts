// The ten-step rail. mode marks what is manual (M) and what the engine
// automates (A); the ConOps step is manual narrative plus automated fields,
// objectives are derived automatically with manually selected mitigations.

export interface StepInfo {
  index: number;
  title: string;
  mode: 'M' | 'A' | 'M/A' | 'A/M';
}

export const STEPS: StepInfo[] = [
  { index: 0, title: 'Pre-application evaluation', mode: 'M' },
  { index: 1, title: 'Concept of operations', mode: 'M/A' },
  { index: 2, title: 'Intrinsic ground risk', mode: 'A' },
  { index: 3, title: 'Final ground risk', mode: 'A/M' },
  { index: 4, title: 'Initial air risk', mode: 'A' },
  { index: 5, title: 'Residual air risk', mode: 'A/M' },
  { index: 6, title: 'Tactical mitigation', mode: 'A' },
  { index: 7, title: 'SAIL', mode: 'A' },
  { index: 8, title: 'Safety objectives', mode: 'A/M' },
  { index: 9, title: 'Adjacent area & containment', mode: 'A' },
  { index: 10, title: 'Safety portfolio', mode: 'A' },
];

// Forward navigation is blocked past a halted step.
export function maxReachableStep(haltStep: number | null): number {
  return haltStep === null ? 10 : haltStep;
}
