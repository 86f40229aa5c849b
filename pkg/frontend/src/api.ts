// Thin typed client over the session API. All risk numbers displayed by the
// wizard originate from these response bodies.

import type {
  ApiErrorBody,
  DiffReport,
  DocumentResponse,
  OperationSpec,
  OsoListing,
  RobustnessLevel,
  SessionPayload,
  TablesBundle,
} from './types';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.detail || `request failed with ${status}`);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(path, {
      headers: { 'content-type': 'application/json', ...(init?.headers ?? {}) },
      ...init,
    });
  } catch (err) {
    throw new ApiError(0, { status: 0, code: 'network', detail: String(err) });
  }
  const text = await response.text();
  const body = text ? JSON.parse(text) : null;
  if (!response.ok) {
    throw new ApiError(response.status, body as ApiErrorBody);
  }
  return body as T;
}

export const api = {
  createSession(spec: OperationSpec, sessionId?: string): Promise<SessionPayload> {
    return request('/sessions', {
      method: 'POST',
      body: JSON.stringify(sessionId ? { spec, session_id: sessionId } : { spec }),
    });
  },

  getSession(sessionId: string): Promise<SessionPayload> {
    return request(`/sessions/${sessionId}`);
  },

  putSpec(sessionId: string, spec: OperationSpec, headHash: string): Promise<SessionPayload> {
    return request(`/sessions/${sessionId}/spec`, {
      method: 'PUT',
      headers: { 'if-match': headHash },
      body: JSON.stringify({ spec }),
    });
  },

  whatIf(sessionId: string, delta: unknown): Promise<DiffReport> {
    return request(`/sessions/${sessionId}/whatif`, {
      method: 'POST',
      body: JSON.stringify({ delta }),
    });
  },

  getOsos(sessionId: string): Promise<OsoListing> {
    return request(`/sessions/${sessionId}/osos`);
  },

  putEvidence(
    sessionId: string,
    osoId: string,
    claim: RobustnessLevel,
    evidenceRefs: string[],
    headHash: string,
  ): Promise<SessionPayload> {
    return request(`/sessions/${sessionId}/osos/${osoId}/evidence`, {
      method: 'PUT',
      headers: { 'if-match': headHash },
      body: JSON.stringify({ claim, evidence_refs: evidenceRefs }),
    });
  },

  renderDocument(sessionId: string, docId: string): Promise<DocumentResponse> {
    return request(`/sessions/${sessionId}/documents/${docId}`, { method: 'POST' });
  },

  getTables(): Promise<TablesBundle> {
    return request('/tables');
  },
};
