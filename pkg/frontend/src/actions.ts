// Store-mutating actions: each one round-trips through the API and replaces
// wizard state with the server's view.

import { api, ApiError } from './api';
import { store } from './store';
import type { MitigationClaim, OperationSpec, RobustnessLevel } from './types';

function message(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.status === 409) return 'Session changed elsewhere; reload to continue.';
    if (err.status === 0) return `Network problem: ${err.body.detail}. Your inputs are preserved; retry.`;
    const findings = err.body.findings?.findings ?? [];
    const detail = findings.map((f) => `${f.path}: ${f.message}`).join('; ');
    return detail ? `${err.body.detail} (${detail})` : err.body.detail;
  }
  return String(err);
}

export async function loadTables(): Promise<void> {
  try {
    store.set({ tables: await api.getTables() });
  } catch (err) {
    store.set({ error: message(err) });
  }
}

export async function createSession(spec: OperationSpec): Promise<void> {
  store.set({ busy: true, error: null });
  try {
    const payload = await api.createSession(spec);
    store.set({ payload, draft: payload.spec, busy: false });
  } catch (err) {
    store.set({ error: message(err), busy: false });
  }
}

export async function applySpec(spec: OperationSpec): Promise<void> {
  const { payload } = store.get();
  if (!payload) return createSession(spec);
  store.set({ busy: true, error: null });
  try {
    const updated = await api.putSpec(payload.session_id, spec, payload.head_hash);
    store.set({ payload: updated, draft: updated.spec, busy: false });
  } catch (err) {
    store.set({ error: message(err), busy: false });
  }
}

export async function applyClaims(claims: MitigationClaim[]): Promise<void> {
  const { draft } = store.get();
  await applySpec({ ...draft, mitigation_claims: claims });
}

export async function runWhatIf(delta: unknown): Promise<void> {
  const { payload } = store.get();
  if (!payload) return;
  store.set({ busy: true, error: null });
  try {
    const diff = await api.whatIf(payload.session_id, delta);
    store.set({ diff, busy: false });
  } catch (err) {
    store.set({ error: message(err), busy: false });
  }
}

export async function recordEvidence(
  osoId: string,
  claim: RobustnessLevel,
  evidenceRefs: string[],
): Promise<void> {
  const { payload } = store.get();
  if (!payload) return;
  store.set({ busy: true, error: null });
  try {
    const updated = await api.putEvidence(payload.session_id, osoId, claim, evidenceRefs, payload.head_hash);
    store.set({ payload: updated, busy: false });
  } catch (err) {
    store.set({ error: message(err), busy: false });
  }
}

export async function fetchDocument(docId: string): Promise<void> {
  const { payload } = store.get();
  if (!payload) return;
  try {
    const response = await api.renderDocument(payload.session_id, docId);
    const session = await api.getSession(payload.session_id);
    store.set({ payload: session, docPreview: { docId, rendered: response.rendered } });
  } catch (err) {
    store.set({ error: message(err) });
  }
}
