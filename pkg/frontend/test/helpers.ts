// Fetch mock backed by the recorded server responses under fixtures/.

import { vi } from 'vitest';

import catalog from './fixtures/catalog.json';
import createSession from './fixtures/create-session.json';
import createSessionNa from './fixtures/create-session-na.json';
import documentResponse from './fixtures/document-operational-manual.json';
import evidenceRecorded from './fixtures/evidence-recorded.json';
import osos from './fixtures/osos.json';
import tables from './fixtures/tables.json';
import whatifEmpty from './fixtures/whatif-empty.json';
import whatifRemoveTether from './fixtures/whatif-remove-tether.json';

export const fixtures = {
  catalog,
  createSession,
  createSessionNa,
  documentResponse,
  evidenceRecorded,
  osos,
  tables,
  whatifEmpty,
  whatifRemoveTether,
};

export interface RecordedCall {
  method: string;
  path: string;
  body: unknown;
  headers: Record<string, string>;
}

export interface MockRoute {
  method: string;
  path: string;
  status?: number;
  response: unknown;
}

export function installFetchMock(routes: MockRoute[]): RecordedCall[] {
  const calls: RecordedCall[] = [];
  globalThis.fetch = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const path = String(input);
    const method = (init?.method ?? 'GET').toUpperCase();
    const headers = Object.fromEntries(
      Object.entries((init?.headers as Record<string, string>) ?? {}).map(([k, v]) => [
        k.toLowerCase(),
        v,
      ]),
    );
    calls.push({
      method,
      path,
      body: init?.body ? JSON.parse(String(init.body)) : null,
      headers,
    });
    const route = routes.find((r) => r.method === method && r.path === path);
    if (!route) {
      return new Response(
        JSON.stringify({ status: 404, code: 'not-found', detail: `no route for ${method} ${path}` }),
        { status: 404, headers: { 'content-type': 'application/json' } },
      );
    }
    return new Response(JSON.stringify(route.response), {
      status: route.status ?? 200,
      headers: { 'content-type': 'application/json' },
    });
  }) as typeof fetch;
  return calls;
}

// every string the mocked server ever returned, for number-traceability checks
export function responseCorpus(routes: MockRoute[]): string {
  return routes.map((r) => JSON.stringify(r.response)).join('\n');
}

export function defaultRoutes(): MockRoute[] {
  return [
    { method: 'GET', path: '/tables', response: tables },
    { method: 'GET', path: '/catalog', response: catalog },
    { method: 'POST', path: '/sessions', status: 201, response: createSession },
    { method: 'GET', path: '/sessions/wizard-fixture', response: createSession },
    { method: 'POST', path: '/sessions/wizard-fixture/whatif', response: whatifRemoveTether },
    { method: 'GET', path: '/sessions/wizard-fixture/osos', response: osos },
    {
      method: 'PUT',
      path: '/sessions/wizard-fixture/osos/meteorological-assessment/evidence',
      response: evidenceRecorded,
    },
    {
      method: 'POST',
      path: '/sessions/wizard-fixture/documents/operational-manual',
      response: documentResponse,
    },
  ];
}
