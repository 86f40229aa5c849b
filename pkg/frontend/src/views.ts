// Step views. Every figure shown here is read from the server payload; the
// client never computes a risk value.

import { applyClaims, applySpec, createSession, fetchDocument, recordEvidence, runWhatIf } from './actions';
import { CLAIM_KINDS, LEVELS, fillForm, readForm, renderFormFields } from './form';
import { describeChange, diffHighlights, haltMessage } from './format';
import { store } from './store';
import type { MitigationClaim, Snapshot } from './types';

type State = ReturnType<typeof store.get>;

export function esc(text: unknown): string {
  return String(text).replace(/[&<>"']/g, (c) => `&#${c.charCodeAt(0)};`);
}

function claimRows(claims: MitigationClaim[]): string {
  if (!claims.length) return '<p class="muted">No claims recorded.</p>';
  return `<ul class="claims">${claims
    .map(
      (c) => `
    <li data-kind="${esc(c.kind)}">
      <strong>${esc(c.kind)}</strong>
      (integrity ${esc(c.robustness.integrity)}, assurance ${esc(c.robustness.assurance)})
      <div class="muted">${esc(c.narrative)}</div>
      <div class="muted">evidence: ${esc(c.evidence_refs.join(', ') || '—')}</div>
    </li>`,
    )
    .join('')}</ul>`;
}

export function renderGateView(el: HTMLElement, state: State): void {
  const outcome = state.payload?.snapshot.gate?.outcome ?? 'not evaluated yet';
  el.innerHTML = `
    <h3>Pre-application evaluation</h3>
    <p>Declare the category assertions in the ConOps form (step 1); the gate routes the application.</p>
    <p>Gate outcome: <strong id="gate-outcome">${esc(outcome)}</strong></p>
  `;
}

export function renderConopsView(el: HTMLElement, state: State): void {
  el.innerHTML = `
    <h3>Concept of operations</h3>
    <form id="conops-form" class="conops"></form>
    <div class="actions">
      <button id="create-session" type="button">${state.payload ? 'Apply changes' : 'Create session'}</button>
      <button id="export-spec" type="button" ${state.payload ? '' : 'disabled'}>Export spec JSON</button>
    </div>
    <pre id="export-output" hidden></pre>
    <div id="findings"></div>
  `;
  const form = el.querySelector<HTMLFormElement>('#conops-form')!;
  renderFormFields(form);
  fillForm(form, state.draft);
  // persist edits into the draft so navigating between steps keeps them
  form.addEventListener('change', () => {
    store.setDraft(readForm(form, store.get().draft.mitigation_claims));
  });

  const findings = state.payload?.findings.findings ?? [];
  const findingsEl = el.querySelector<HTMLElement>('#findings')!;
  if (findings.length) {
    findingsEl.innerHTML = `<ul class="findings">${findings
      .map((f) => `<li class="${esc(f.severity)}">${esc(f.path)}: ${esc(f.message)}</li>`)
      .join('')}</ul>`;
  }

  el.querySelector('#create-session')!.addEventListener('click', () => {
    const spec = readForm(form, store.get().draft.mitigation_claims);
    store.set({ draft: spec });
    if (store.get().payload) void applySpec(spec);
    else void createSession(spec);
  });
  el.querySelector('#export-spec')!.addEventListener('click', () => {
    const spec = store.get().payload?.spec ?? readForm(form, store.get().draft.mitigation_claims);
    const output = el.querySelector<HTMLElement>('#export-output')!;
    output.hidden = false;
    output.textContent = JSON.stringify(spec, null, 2);
  });
}

export function renderGrcView(el: HTMLElement, state: State): void {
  const grc = state.payload?.snapshot.grc;
  if (!grc) {
    el.innerHTML = '<p class="muted">Create a session first.</p>';
    return;
  }
  if (grc.intrinsic === null) {
    el.innerHTML = `
      <h3>Intrinsic ground risk</h3>
      <div class="halt">Not assessable: ${esc(grc.na_cell?.row)} in the ${esc(grc.na_cell?.column)} column.
      Change the operation or the UAV in step 1.</div>`;
    return;
  }
  el.innerHTML = `
    <h3>Intrinsic ground risk</h3>
    <table class="kv">
      <tr><td>size column</td><td>${esc(grc.size_column)}</td></tr>
      <tr><td>kinetic energy</td><td>${esc(grc.energy_joules)} J</td></tr>
      <tr><td>intrinsic GRC</td><td id="intrinsic-grc">${esc(grc.intrinsic)}</td></tr>
    </table>
  `;
}

function claimEditor(
  el: HTMLElement,
  state: State,
  kinds: string[],
  heading: string,
  deltaPreview: (kind: string, level: string) => string,
): void {
  const existing = state.draft.mitigation_claims;
  const relevant = existing.filter((c) => kinds.includes(c.kind));
  const kindOptions = kinds.map((k) => `<option value="${esc(k)}">${esc(k)}</option>`).join('');
  const levelOptions = LEVELS.map((l) => `<option value="${esc(l)}">${esc(l)}</option>`).join('');
  el.innerHTML = `
    <h3>${esc(heading)}</h3>
    <div id="claim-list">${claimRows(relevant)}</div>
    <fieldset class="claim-editor">
      <legend>Add a claim</legend>
      <label>kind <select id="claim-kind">${kindOptions}</select></label>
      <label>integrity <select id="claim-integrity">${levelOptions}</select></label>
      <label>assurance <select id="claim-assurance">${levelOptions}</select></label>
      <label>evidence refs (comma separated) <input id="claim-refs" type="text"></label>
      <label>narrative <input id="claim-narrative" type="text"></label>
      <span id="delta-preview" class="muted"></span>
      <button id="claim-add" type="button">Add claim</button>
    </fieldset>
    <div class="actions">
      <button id="claims-apply" type="button">Apply claims</button>
      <button id="claims-clear" type="button">Remove these claims</button>
    </div>
  `;
  const kindSelect = el.querySelector<HTMLSelectElement>('#claim-kind')!;
  const integrity = el.querySelector<HTMLSelectElement>('#claim-integrity')!;
  const assurance = el.querySelector<HTMLSelectElement>('#claim-assurance')!;
  const preview = el.querySelector<HTMLElement>('#delta-preview')!;

  const updatePreview = () => {
    const level = [integrity.value, assurance.value].sort(
      (a, b) => LEVELS.indexOf(a) - LEVELS.indexOf(b),
    )[0];
    preview.textContent = deltaPreview(kindSelect.value, level);
  };
  for (const input of [kindSelect, integrity, assurance]) {
    input.addEventListener('change', updatePreview);
  }
  updatePreview();

  el.querySelector('#claim-add')!.addEventListener('click', () => {
    const refs = el
      .querySelector<HTMLInputElement>('#claim-refs')!
      .value.split(',')
      .map((r) => r.trim())
      .filter(Boolean);
    const claim: MitigationClaim = {
      kind: kindSelect.value,
      robustness: { integrity: integrity.value as never, assurance: assurance.value as never },
      evidence_refs: refs,
      narrative: el.querySelector<HTMLInputElement>('#claim-narrative')!.value,
    };
    store.set({
      draft: { ...store.get().draft, mitigation_claims: [...store.get().draft.mitigation_claims, claim] },
    });
  });
  el.querySelector('#claims-apply')!.addEventListener('click', () => {
    void applyClaims(store.get().draft.mitigation_claims);
  });
  el.querySelector('#claims-clear')!.addEventListener('click', () => {
    const kept = store.get().draft.mitigation_claims.filter((c) => !kinds.includes(c.kind));
    store.set({ draft: { ...store.get().draft, mitigation_claims: kept } });
  });
}

export function renderGroundMitigationView(el: HTMLElement, state: State): void {
  const groundKinds = CLAIM_KINDS.filter((k) => k.startsWith('M'));
  claimEditor(el, state, groundKinds, 'Final ground risk: mitigation claims', (kind, level) => {
    const table = state.tables?.ground_mitigations.mitigations.find((m) => m.kind === kind);
    if (!table) return '';
    const delta = table.deltas[level];
    return `table delta at effective ${level}: ${delta > 0 ? '+' : ''}${delta}`;
  });
  const grc = state.payload?.snapshot.grc;
  if (grc && grc.final !== null) {
    const summary = document.createElement('p');
    summary.innerHTML = `Final GRC: <strong id="final-grc">${esc(grc.final)}</strong> (deltas ${esc(
      grc.deltas.join(', '),
    )})`;
    el.appendChild(summary);
  }
}

export function renderArcView(el: HTMLElement, state: State): void {
  const arc = state.payload?.snapshot.arc;
  if (!arc) {
    el.innerHTML = '<p class="muted">Not evaluated yet.</p>';
    return;
  }
  el.innerHTML = `
    <h3>Initial air risk</h3>
    <table class="kv">
      <tr><td>encounter category</td><td>AEC ${esc(arc.aec)}</td></tr>
      <tr><td>density rating</td><td>${esc(arc.density_rating)}</td></tr>
      <tr><td>initial ARC</td><td id="initial-arc">${esc(arc.initial)}</td></tr>
    </table>
  `;
}

export function renderAirMitigationView(el: HTMLElement, state: State): void {
  const airKinds = CLAIM_KINDS.filter((k) => k.startsWith('air'));
  claimEditor(
    el,
    state,
    airKinds,
    'Residual air risk: strategic mitigation claims',
    (kind, level) =>
      kind === 'air-operational-restriction'
        ? LEVELS.indexOf(level) >= LEVELS.indexOf('medium')
          ? 'qualifies: lowers one ARC level (evidence required)'
          : 'does not qualify: effective robustness below medium'
        : 'recorded only: common rules are already in the initial classification',
  );
  const arc = state.payload?.snapshot.arc;
  if (arc) {
    const summary = document.createElement('p');
    summary.innerHTML = `Residual ARC: <strong id="residual-arc">${esc(arc.residual)}</strong> (initial ${esc(arc.initial)})`;
    el.appendChild(summary);
  }
}

export function renderTmprView(el: HTMLElement, state: State): void {
  const tmpr = state.payload?.snapshot.tmpr;
  if (!tmpr) {
    el.innerHTML = '<p class="muted">Not evaluated yet.</p>';
    return;
  }
  el.innerHTML = `
    <h3>Tactical mitigation performance requirement</h3>
    <table class="kv">
      <tr><td>required</td><td>${tmpr.required ? 'yes' : 'no'}</td></tr>
      <tr><td>robustness</td><td>${esc(tmpr.robustness)}</td></tr>
      <tr><td>rationale</td><td>${esc(tmpr.rationale)}</td></tr>
    </table>
  `;
}

export function renderSailView(el: HTMLElement, state: State): void {
  const sail = state.payload?.snapshot.sail;
  el.innerHTML = sail
    ? `<h3>Specific assurance and integrity level</h3>
       <div class="sail-badge" id="sail-badge">SAIL ${esc(sail.sail)}</div>`
    : '<p class="muted">Not evaluated yet.</p>';
}

export function renderOsoView(el: HTMLElement, state: State): void {
  const osos = state.payload?.snapshot.osos;
  if (!osos) {
    el.innerHTML = '<p class="muted">Not evaluated yet.</p>';
    return;
  }
  const levelOptions = LEVELS.map((l) => `<option value="${esc(l)}">${esc(l)}</option>`).join('');
  el.innerHTML = `
    <h3>Operational safety objectives (${osos.length})</h3>
    <table class="osos">
      <tr><th>objective</th><th>required</th><th>state</th><th>claim</th><th></th></tr>
      ${osos
        .map(
          (s) => `
        <tr data-oso="${esc(s.oso_id)}">
          <td title="${esc(s.title)}">${esc(s.oso_id)}</td>
          <td>${esc(s.required)}</td>
          <td class="state-${esc(s.state)}">${esc(s.state)}</td>
          <td>
            <select class="oso-integrity">${levelOptions}</select>
            <select class="oso-assurance">${levelOptions}</select>
            <input class="oso-refs" type="text" placeholder="evidence refs" value="${esc(
              s.evidence_refs.join(', '),
            )}">
          </td>
          <td><button class="oso-record" type="button">Record</button></td>
        </tr>`,
        )
        .join('')}
    </table>
  `;
  for (const row of el.querySelectorAll<HTMLTableRowElement>('tr[data-oso]')) {
    row.querySelector('.oso-record')!.addEventListener('click', () => {
      const refs = row
        .querySelector<HTMLInputElement>('.oso-refs')!
        .value.split(',')
        .map((r) => r.trim())
        .filter(Boolean);
      void recordEvidence(
        row.dataset.oso!,
        {
          integrity: row.querySelector<HTMLSelectElement>('.oso-integrity')!.value as never,
          assurance: row.querySelector<HTMLSelectElement>('.oso-assurance')!.value as never,
        },
        refs,
      );
    });
  }
}

export function renderContainmentView(el: HTMLElement, state: State): void {
  const containment = state.payload?.snapshot.containment;
  if (!containment) {
    el.innerHTML = '<p class="muted">Not evaluated yet.</p>';
    return;
  }
  el.innerHTML = `
    <h3>Adjacent area and containment</h3>
    <table class="kv">
      <tr><td>adjacent area extent</td><td id="adjacent-extent">${esc(containment.adjacent_area_extent_m)} m</td></tr>
      <tr><td>adjacent airspace</td><td>${esc(containment.adjacent_airspace_arc)}</td></tr>
      <tr><td>enhanced containment</td><td id="enhanced-required">${containment.enhanced_required ? 'required' : 'not required'}</td></tr>
    </table>
    <p class="muted">${esc(containment.probability_bound_required)}</p>
    <p class="muted">supported by: ${esc(containment.satisfied_by.join(', ') || '—')}</p>
  `;
}

const DOC_IDS = [
  'preflight-uav-checklist',
  'preflight-crew-fitness',
  'preflight-environment',
  'inflight-human-error',
  'postflight-checklist',
  'design-installation-appraisal',
  'logbook',
  'deconfliction-scheme',
  'staff-training-record',
  'gdpr-procedures',
  'operational-manual',
  'training-manual',
  'conops-skeleton',
  'safety-portfolio',
];

export function renderDocumentsView(el: HTMLElement, state: State): void {
  const rendered = new Set((state.payload?.snapshot.documents ?? []).map((d) => d.doc_id));
  const preview = state.docPreview;
  el.innerHTML = `
    <h3>Safety portfolio documents</h3>
    <ul class="documents">
      ${DOC_IDS.map(
        (docId) => `
        <li>
          <button class="doc-render" data-doc="${esc(docId)}" type="button">view</button>
          <a class="doc-download" data-doc="${esc(docId)}" download="${esc(docId)}.md"
             ${preview?.docId === docId ? `href="data:text/markdown;charset=utf-8,${encodeURIComponent(preview.rendered)}"` : 'hidden href="#"'}
          >download</a>
          ${esc(docId)} ${rendered.has(docId) ? '<span class="muted">(rendered)</span>' : ''}
        </li>`,
      ).join('')}
    </ul>
    <pre id="doc-preview" class="doc-preview" ${preview ? '' : 'hidden'}></pre>
  `;
  if (preview) {
    el.querySelector<HTMLElement>('#doc-preview')!.textContent = preview.rendered;
  }
  for (const button of el.querySelectorAll<HTMLButtonElement>('.doc-render')) {
    button.addEventListener('click', () => {
      void fetchDocument(button.dataset.doc!);
    });
  }
}

export function renderWhatIfPanel(el: HTMLElement, state: State): void {
  el.innerHTML = `
    <h3>What-if exploration</h3>
    <p class="muted">Paste a partial spec change (objects merge, lists replace, null clears).</p>
    <textarea id="whatif-delta" rows="6">{}</textarea>
    <div class="actions"><button id="whatif-run" type="button">Compare</button></div>
    <div id="whatif-result"></div>
  `;
  el.querySelector('#whatif-run')!.addEventListener('click', () => {
    let delta: unknown;
    const box = el.querySelector<HTMLTextAreaElement>('#whatif-delta')!;
    try {
      delta = JSON.parse(box.value || '{}');
    } catch {
      store.set({ error: 'delta is not valid JSON' });
      return;
    }
    void runWhatIf(delta);
  });
  renderWhatIfResult(el.querySelector('#whatif-result')!, state);
}

export function renderWhatIfResult(el: HTMLElement, state: State): void {
  const diff = state.diff;
  if (!diff) return;
  if (!Object.keys(diff.changed).length) {
    el.innerHTML = '<p id="whatif-no-change">No change.</p>';
    return;
  }
  const highlights = diffHighlights(diff);
  el.innerHTML = `
    <div class="highlights">
      ${highlights
        .map((h) => `<span class="highlight" data-area="${esc(h.area)}">${esc(h.label)}</span>`)
        .join('')}
    </div>
    <table class="diff">
      <tr><th>field</th><th>current</th><th>hypothetical</th></tr>
      ${Object.entries(diff.changed)
        .map(
          ([path, change]) => `
        <tr>
          <td>${esc(path)}</td>
          <td>${esc(describeChange(change.base))}</td>
          <td>${esc(describeChange(change.variant))}</td>
        </tr>`,
        )
        .join('')}
    </table>
  `;
}

export function renderHaltBanner(el: HTMLElement, snapshot: Snapshot | null): void {
  const message = haltMessage(snapshot);
  if (message) {
    el.innerHTML = `<div class="halt" id="halt-banner">${esc(message)}</div>`;
  } else {
    el.innerHTML = '';
  }
}
