// JSON payload shapes served by the risk-assessment API.

export type Robustness = 'none' | 'low' | 'medium' | 'high';

export interface RobustnessLevel {
  integrity: Robustness;
  assurance: Robustness;
}

export interface MitigationClaim {
  kind: string;
  robustness: RobustnessLevel;
  evidence_refs: string[];
  narrative: string;
}

export interface OperationSpec {
  spec_format: number;
  organization: { name: string; safety_management_summary: string };
  crew_roles: { role: string; training_record_ref: string }[];
  uav: {
    label: string;
    airframe_kind: string;
    max_dimension: number;
    mass_takeoff_max: number;
    v_cruise: number;
    v_terminal: number;
    is_electric: boolean;
    has_fts: boolean;
    has_propeller_guards: boolean;
    configuration_version: string;
  };
  scenario: { sight_mode: string; overflown_area: string };
  volume: {
    flight_geography: { kind: string; center?: number[]; radius?: number; vertices?: number[][] };
    contingency_volume: unknown;
    ground_risk_buffer: number;
    altitude_ceiling: number;
    tether_length: number | null;
  };
  airspace: {
    altitude_band: string;
    airspace_class: string;
    controlled: boolean;
    environment: string;
    area_kind: string;
    mode_s_veil_or_tmz: boolean;
    atypical_segregated: boolean;
  };
  mitigation_claims: MitigationClaim[];
  category_assertions: {
    covered_by_standard_scenario: boolean;
    open_category_eligible: boolean;
    certified_required: boolean;
    specific_no_go: boolean;
  };
  adjacent_area_features: string[];
  evlos_observer_latency: number | null;
}

export interface OsoStatus {
  oso_id: string;
  title: string;
  required: string;
  claimed: RobustnessLevel;
  evidence_refs: string[];
  state: 'open' | 'satisfied' | 'insufficient';
}

export interface Snapshot {
  gate: { outcome: string } | null;
  grc: {
    intrinsic: number | null;
    size_column: string;
    energy_joules: number;
    na_cell: { row: string; column: string } | null;
    applied_claims: MitigationClaim[];
    deltas: number[];
    final: number | null;
    category_c_referral: boolean;
  } | null;
  arc: {
    aec: number;
    density_rating: number;
    initial: string;
    residual: string;
    reduction_claims: MitigationClaim[];
  } | null;
  tmpr: { required: boolean; robustness: Robustness; rationale: string } | null;
  sail: { sail: string } | null;
  osos: OsoStatus[] | null;
  containment: {
    adjacent_area_extent_m: number;
    adjacent_airspace_arc: string;
    enhanced_required: boolean;
    probability_bound_required: string;
    satisfied_by: string[];
  } | null;
  documents: { doc_id: string; filename: string; source_snapshot_hash: string }[];
  halt: { step: number; code: string; detail: string } | null;
}

export interface Finding {
  severity: 'error' | 'warning';
  path: string;
  message: string;
}

export interface SessionPayload {
  session_id: string;
  created_at: string;
  step_cursor: number;
  head_hash: string;
  findings: { findings: Finding[] };
  spec: OperationSpec;
  snapshot: Snapshot;
  history: unknown[];
}

export interface DiffReport {
  changed: Record<string, { base: unknown; variant: unknown }>;
  changed_areas: string[];
  base_hash: string;
  variant_hash: string;
  delta: unknown;
}

export interface OsoListing {
  osos: OsoStatus[];
  summary: { total: number; satisfied: number; open: string[]; insufficient: string[]; complete: boolean };
}

export interface TablesBundle {
  grc: { size_columns: { id: string; max_dimension_m: number | null; max_energy_j: number | null }[] };
  ground_mitigations: {
    mitigations: { kind: string; label: string; deltas: Record<string, number> }[];
  };
  arc: unknown;
  sail: { columns: string[]; rows: { grc_max: number; sail: string[] }[] };
  tmpr: unknown;
}

export interface DocumentResponse {
  artifact: { doc_id: string; filename: string; source_snapshot_hash: string };
  rendered: string;
  section_inventory: string[];
}

export interface ApiErrorBody {
  status: number;
  code: string;
  detail: string;
  findings?: { findings: Finding[] };
}
