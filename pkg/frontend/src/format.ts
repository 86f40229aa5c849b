// Pure view-model helpers. Everything here reshapes server payloads for
// display; nothing derives a risk value.

import type { DiffReport, Snapshot } from './types';

export interface Badge {
  label: string;
  value: string;
}

export function badges(snapshot: Snapshot | null): Badge[] {
  if (!snapshot) return [];
  const out: Badge[] = [];
  if (snapshot.grc && snapshot.grc.intrinsic !== null) {
    out.push({ label: 'intrinsic GRC', value: String(snapshot.grc.intrinsic) });
  }
  if (snapshot.grc && snapshot.grc.final !== null) {
    out.push({ label: 'final GRC', value: String(snapshot.grc.final) });
  }
  if (snapshot.arc) {
    out.push({ label: 'residual ARC', value: snapshot.arc.residual });
  }
  if (snapshot.sail) {
    out.push({ label: 'SAIL', value: snapshot.sail.sail });
  }
  return out;
}

export function haltMessage(snapshot: Snapshot | null): string | null {
  if (!snapshot || !snapshot.halt) return null;
  return `step ${snapshot.halt.step} halted (${snapshot.halt.code}): ${snapshot.halt.detail}`;
}

// Groups a what-if diff into area highlights. The ground-risk area calls out
// M1/M2/M3 when the changed paths touch the applied mitigation claims.
export interface DiffHighlight {
  area: string;
  label: string;
  paths: string[];
}

const AREA_LABELS: Record<string, string> = {
  gate: 'category gate',
  grc: 'ground risk',
  arc: 'air risk',
  tmpr: 'tactical mitigation',
  sail: 'SAIL',
  osos: 'safety objectives',
  containment: 'containment',
  halt: 'evaluation halt',
};

function mitigationKindsIn(diff: DiffReport, paths: string[]): string[] {
  const kinds = new Set<string>();
  for (const path of paths) {
    if (!path.includes('applied_claims')) continue;
    const change = diff.changed[path];
    for (const value of [change.base, change.variant]) {
      if (typeof value === 'string' && /^M\d/.test(value)) {
        kinds.add(value.split('-')[0]);
      }
    }
  }
  return [...kinds].sort();
}

export function diffHighlights(diff: DiffReport): DiffHighlight[] {
  const byArea = new Map<string, string[]>();
  for (const path of Object.keys(diff.changed)) {
    const area = path.split('.')[0].split('[')[0];
    const paths = byArea.get(area) ?? [];
    paths.push(path);
    byArea.set(area, paths);
  }
  return diff.changed_areas.map((area) => {
    const paths = byArea.get(area) ?? [];
    let label = AREA_LABELS[area] ?? area;
    if (area === 'grc') {
      const kinds = mitigationKindsIn(diff, paths);
      if (kinds.length) label = `${label} (${kinds.join(', ')} claims)`;
    }
    return { area, label, paths };
  });
}

export function describeChange(value: unknown): string {
  if (value === null || value === undefined) return '—';
  if (typeof value === 'number' || typeof value === 'boolean') return String(value);
  if (typeof value === 'string') return value;
  return JSON.stringify(value);
}

// Every number rendered by the wizard must appear in some intercepted server
// response; the tests extract them with this.
export function numericTokens(text: string): string[] {
  return text.match(/\d+(?:\.\d+)?/g) ?? [];
}
