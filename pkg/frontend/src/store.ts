// Minimal observable store for the wizard state. Displayed SAIL/GRC/ARC come
// exclusively from payload.snapshot; the client computes nothing.

import type { DiffReport, OperationSpec, SessionPayload, TablesBundle } from './types';

export interface WizardState {
  stepIndex: number;
  draft: OperationSpec;
  payload: SessionPayload | null;
  tables: TablesBundle | null;
  diff: DiffReport | null;
  docPreview: { docId: string; rendered: string } | null;
  error: string | null;
  busy: boolean;
}

export function emptyDraft(): OperationSpec {
  return {
    spec_format: 1,
    organization: { name: '', safety_management_summary: '' },
    crew_roles: [],
    uav: {
      label: '',
      airframe_kind: 'multicopter',
      max_dimension: 0,
      mass_takeoff_max: 0,
      v_cruise: 0,
      v_terminal: 0,
      is_electric: false,
      has_fts: false,
      has_propeller_guards: false,
      configuration_version: 'v1',
    },
    scenario: { sight_mode: 'VLOS', overflown_area: 'controlled-ground-area' },
    volume: {
      flight_geography: { kind: 'circle', center: [0, 0], radius: 0 },
      contingency_volume: null,
      ground_risk_buffer: 0,
      altitude_ceiling: 0,
      tether_length: null,
    },
    airspace: {
      altitude_band: 'below-400ft-AGL',
      airspace_class: 'none',
      controlled: false,
      environment: 'non-airport',
      area_kind: 'rural',
      mode_s_veil_or_tmz: false,
      atypical_segregated: false,
    },
    mitigation_claims: [],
    category_assertions: {
      covered_by_standard_scenario: false,
      open_category_eligible: false,
      certified_required: false,
      specific_no_go: false,
    },
    adjacent_area_features: [],
    evlos_observer_latency: null,
  };
}

type Listener = () => void;

class Store {
  private state: WizardState = {
    stepIndex: 0,
    draft: emptyDraft(),
    payload: null,
    tables: null,
    diff: null,
    docPreview: null,
    error: null,
    busy: false,
  };

  private listeners: Listener[] = [];

  get(): WizardState {
    return this.state;
  }

  set(patch: Partial<WizardState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener();
  }

  // form edits flow through here without notifying: the form itself is the
  // live source of these values, so re-rendering would only steal focus
  setDraft(draft: WizardState['draft']): void {
    this.state = { ...this.state, draft };
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  reset(): void {
    this.state = {
      stepIndex: 0,
      draft: emptyDraft(),
      payload: null,
      tables: null,
      diff: null,
      docPreview: null,
      error: null,
      busy: false,
    };
    this.listeners = [];
  }
}

export const store = new Store();
