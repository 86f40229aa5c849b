// Declarative ConOps form: one descriptor per spec field, generic render and
// read. The form produces the exact spec document the API consumes.

import type { OperationSpec } from './types';
import { emptyDraft } from './store';

export type FieldKind = 'text' | 'number' | 'number-optional' | 'checkbox' | 'select';

export interface FieldDescriptor {
  id: string;
  label: string;
  kind: FieldKind;
  options?: string[];
}

export const SIGHT_MODES = ['VLOS', 'EVLOS', 'BVLOS'];
export const AREAS = ['controlled-ground-area', 'sparsely-populated', 'populated', 'assembly-of-people'];
export const AIRFRAMES = ['fixed-wing', 'rotorcraft', 'multicopter'];
export const BANDS = ['below-400ft-AGL', 'above-400ft-below-FL600', 'above-FL600'];
export const CLASSES = ['B', 'C', 'D', 'E', 'F', 'G', 'none'];
export const ENVIRONMENTS = ['airport-heliport', 'non-airport'];
export const AREA_KINDS = ['urban', 'rural'];
export const FEATURES = ['residential', 'road', 'school', 'assembly', 'airport', 'other'];
export const CLAIM_KINDS = [
  'M1-strategic-ground',
  'M2-impact-reduction',
  'M3-ERP',
  'air-operational-restriction',
  'air-common-rules-structures',
];
export const LEVELS = ['none', 'low', 'medium', 'high'];

export const FORM_FIELDS: FieldDescriptor[] = [
  { id: 'organization.name', label: 'Organization name', kind: 'text' },
  { id: 'organization.safety_management_summary', label: 'Safety management summary', kind: 'text' },
  { id: 'uav.label', label: 'UAV label', kind: 'text' },
  { id: 'uav.airframe_kind', label: 'Airframe kind', kind: 'select', options: AIRFRAMES },
  { id: 'uav.max_dimension', label: 'Max characteristic dimension (m)', kind: 'number' },
  { id: 'uav.mass_takeoff_max', label: 'Max take-off mass (kg)', kind: 'number' },
  { id: 'uav.v_cruise', label: 'Cruise speed (m/s)', kind: 'number' },
  { id: 'uav.v_terminal', label: 'Terminal speed (m/s)', kind: 'number' },
  { id: 'uav.is_electric', label: 'Electric propulsion', kind: 'checkbox' },
  { id: 'uav.has_fts', label: 'Flight termination system', kind: 'checkbox' },
  { id: 'uav.has_propeller_guards', label: 'Propeller guards', kind: 'checkbox' },
  { id: 'uav.configuration_version', label: 'Configuration version', kind: 'text' },
  { id: 'scenario.sight_mode', label: 'Sight mode', kind: 'select', options: SIGHT_MODES },
  { id: 'scenario.overflown_area', label: 'Overflown area', kind: 'select', options: AREAS },
  { id: 'volume.flight_geography.center.0', label: 'Flight geography center east (m)', kind: 'number' },
  { id: 'volume.flight_geography.center.1', label: 'Flight geography center north (m)', kind: 'number' },
  { id: 'volume.flight_geography.radius', label: 'Flight geography radius (m)', kind: 'number' },
  { id: 'volume.ground_risk_buffer', label: 'Ground risk buffer (m)', kind: 'number' },
  { id: 'volume.altitude_ceiling', label: 'Altitude ceiling (m AGL)', kind: 'number' },
  { id: 'volume.tether_length', label: 'Tether length (m, empty for none)', kind: 'number-optional' },
  { id: 'airspace.altitude_band', label: 'Altitude band', kind: 'select', options: BANDS },
  { id: 'airspace.airspace_class', label: 'Airspace class', kind: 'select', options: CLASSES },
  { id: 'airspace.controlled', label: 'Controlled airspace', kind: 'checkbox' },
  { id: 'airspace.environment', label: 'Environment', kind: 'select', options: ENVIRONMENTS },
  { id: 'airspace.area_kind', label: 'Area kind', kind: 'select', options: AREA_KINDS },
  { id: 'airspace.mode_s_veil_or_tmz', label: 'Mode-S veil / TMZ', kind: 'checkbox' },
  { id: 'airspace.atypical_segregated', label: 'Atypical / segregated', kind: 'checkbox' },
  { id: 'category_assertions.covered_by_standard_scenario', label: 'Covered by standard scenario', kind: 'checkbox' },
  { id: 'category_assertions.open_category_eligible', label: 'Open category eligible', kind: 'checkbox' },
  { id: 'category_assertions.certified_required', label: 'Certified category required', kind: 'checkbox' },
  { id: 'category_assertions.specific_no_go', label: 'Specific no-go', kind: 'checkbox' },
  { id: 'evlos_observer_latency', label: 'EVLOS observer latency (s)', kind: 'number-optional' },
];

export function inputId(fieldId: string): string {
  return `field-${fieldId.replace(/\./g, '-')}`;
}

function setPath(target: Record<string, unknown>, path: string[], value: unknown): void {
  let node: any = target;
  for (const part of path.slice(0, -1)) {
    node = node[part];
  }
  node[path[path.length - 1]] = value;
}

function getPath(source: Record<string, unknown>, path: string[]): unknown {
  let node: any = source;
  for (const part of path) {
    if (node === null || node === undefined) return undefined;
    node = node[part];
  }
  return node;
}

export function renderFormFields(container: HTMLElement): void {
  for (const field of FORM_FIELDS) {
    const row = document.createElement('label');
    row.className = 'form-row';
    const caption = document.createElement('span');
    caption.textContent = field.label;
    row.appendChild(caption);
    let input: HTMLElement;
    if (field.kind === 'select') {
      const select = document.createElement('select');
      for (const option of field.options ?? []) {
        const el = document.createElement('option');
        el.value = option;
        el.textContent = option;
        select.appendChild(el);
      }
      input = select;
    } else {
      const el = document.createElement('input');
      el.type = field.kind === 'checkbox' ? 'checkbox' : 'text';
      input = el;
    }
    input.id = inputId(field.id);
    row.appendChild(input);
    container.appendChild(row);
  }

  const features = document.createElement('fieldset');
  features.className = 'form-row form-features';
  features.innerHTML = '<legend>Adjacent area features</legend>';
  for (const feature of FEATURES) {
    const label = document.createElement('label');
    const box = document.createElement('input');
    box.type = 'checkbox';
    box.id = `feature-${feature}`;
    label.appendChild(box);
    label.append(` ${feature}`);
    features.appendChild(label);
  }
  container.appendChild(features);

  const crew = document.createElement('label');
  crew.className = 'form-row';
  crew.innerHTML = '<span>Crew roles (JSON list of {role, training_record_ref})</span>';
  const crewBox = document.createElement('textarea');
  crewBox.id = 'field-crew-roles';
  crewBox.rows = 4;
  crewBox.value = '[]';
  crew.appendChild(crewBox);
  container.appendChild(crew);
}

export function fillForm(root: ParentNode, spec: OperationSpec): void {
  for (const field of FORM_FIELDS) {
    const el = root.querySelector<HTMLInputElement | HTMLSelectElement>(`#${inputId(field.id)}`);
    if (!el) continue;
    const value = getPath(spec as unknown as Record<string, unknown>, field.id.split('.'));
    if (field.kind === 'checkbox') {
      (el as HTMLInputElement).checked = Boolean(value);
    } else if (value === null || value === undefined) {
      el.value = '';
    } else {
      el.value = String(value);
    }
  }
  for (const feature of FEATURES) {
    const box = root.querySelector<HTMLInputElement>(`#feature-${feature}`);
    if (box) box.checked = spec.adjacent_area_features.includes(feature);
  }
  const crew = root.querySelector<HTMLTextAreaElement>('#field-crew-roles');
  if (crew) crew.value = JSON.stringify(spec.crew_roles);
}

export function readForm(root: ParentNode, claims: OperationSpec['mitigation_claims']): OperationSpec {
  const spec = emptyDraft();
  for (const field of FORM_FIELDS) {
    const el = root.querySelector<HTMLInputElement | HTMLSelectElement>(`#${inputId(field.id)}`);
    if (!el) continue;
    const path = field.id.split('.');
    if (field.kind === 'checkbox') {
      setPath(spec as unknown as Record<string, unknown>, path, (el as HTMLInputElement).checked);
    } else if (field.kind === 'number') {
      setPath(spec as unknown as Record<string, unknown>, path, Number(el.value || 0));
    } else if (field.kind === 'number-optional') {
      setPath(spec as unknown as Record<string, unknown>, path, el.value === '' ? null : Number(el.value));
    } else {
      setPath(spec as unknown as Record<string, unknown>, path, el.value);
    }
  }
  spec.adjacent_area_features = FEATURES.filter(
    (feature) => root.querySelector<HTMLInputElement>(`#feature-${feature}`)?.checked,
  );
  const crew = root.querySelector<HTMLTextAreaElement>('#field-crew-roles');
  if (crew && crew.value.trim()) {
    spec.crew_roles = JSON.parse(crew.value);
  }
  spec.mitigation_claims = claims;
  return spec;
}
