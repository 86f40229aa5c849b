// Wizard shell: step rail with M/A labels, badges from the server snapshot,
// step dispatch, and the persistent what-if panel.

import { badges } from './format';
import { STEPS, maxReachableStep } from './steps';
import { store } from './store';
import {
  esc,
  renderAirMitigationView,
  renderArcView,
  renderConopsView,
  renderContainmentView,
  renderDocumentsView,
  renderGateView,
  renderGrcView,
  renderGroundMitigationView,
  renderHaltBanner,
  renderOsoView,
  renderSailView,
  renderTmprView,
  renderWhatIfPanel,
} from './views';

const STEP_VIEWS: Record<number, (el: HTMLElement, state: ReturnType<typeof store.get>) => void> = {
  0: renderGateView,
  1: renderConopsView,
  2: renderGrcView,
  3: renderGroundMitigationView,
  4: renderArcView,
  5: renderAirMitigationView,
  6: renderTmprView,
  7: renderSailView,
  8: renderOsoView,
  9: renderContainmentView,
  10: renderDocumentsView,
};

export function renderWizard(root: HTMLElement): void {
  root.innerHTML = `
    <header>
      <h1>UAV flight authorization wizard</h1>
      <div id="badges" class="badges"></div>
      <div id="banner"></div>
      <div id="halt"></div>
    </header>
    <div class="layout">
      <nav id="rail" class="rail"></nav>
      <main>
        <section id="step-content" class="step-content"></section>
        <div class="actions nav-actions">
          <button id="nav-prev" type="button">Back</button>
          <button id="nav-next" type="button">Next</button>
        </div>
      </main>
      <aside id="whatif" class="whatif"></aside>
    </div>
  `;

  const rail = root.querySelector<HTMLElement>('#rail')!;
  const content = root.querySelector<HTMLElement>('#step-content')!;
  const badgesEl = root.querySelector<HTMLElement>('#badges')!;
  const banner = root.querySelector<HTMLElement>('#banner')!;
  const haltEl = root.querySelector<HTMLElement>('#halt')!;
  const whatifEl = root.querySelector<HTMLElement>('#whatif')!;

  root.querySelector('#nav-prev')!.addEventListener('click', () => {
    const { stepIndex } = store.get();
    if (stepIndex > 0) store.set({ stepIndex: stepIndex - 1 });
  });
  root.querySelector('#nav-next')!.addEventListener('click', () => {
    const state = store.get();
    const limit = maxReachableStep(state.payload?.snapshot.halt?.step ?? null);
    if (state.stepIndex < Math.min(10, limit)) store.set({ stepIndex: state.stepIndex + 1 });
  });

  function sync(): void {
    const state = store.get();
    const haltStep = state.payload?.snapshot.halt?.step ?? null;
    const limit = maxReachableStep(haltStep);

    rail.innerHTML = '';
    for (const step of STEPS) {
      const button = document.createElement('button');
      button.type = 'button';
      button.dataset.step = String(step.index);
      button.innerHTML = `<span class="mode">${esc(step.mode)}</span> ${step.index}. ${esc(step.title)}`;
      button.disabled = step.index > limit;
      if (step.index === state.stepIndex) button.classList.add('active');
      if (haltStep !== null && step.index === haltStep) button.classList.add('halted');
      button.addEventListener('click', () => store.set({ stepIndex: step.index }));
      rail.appendChild(button);
    }

    badgesEl.innerHTML = badges(state.payload?.snapshot ?? null)
      .map((b) => `<span class="badge"><span>${esc(b.label)}</span><strong>${esc(b.value)}</strong></span>`)
      .join('');

    banner.innerHTML = state.error
      ? `<div class="banner" role="alert">${esc(state.error)}</div>`
      : '';
    renderHaltBanner(haltEl, state.payload?.snapshot ?? null);

    content.innerHTML = '';
    const view = STEP_VIEWS[state.stepIndex];
    const holder = document.createElement('div');
    content.appendChild(holder);
    view(holder, state);

    renderWhatIfPanel(whatifEl, state);

    const next = root.querySelector<HTMLButtonElement>('#nav-next')!;
    next.disabled = state.stepIndex >= Math.min(10, limit);
    root.querySelector<HTMLButtonElement>('#nav-prev')!.disabled = state.stepIndex === 0;
  }

  store.subscribe(sync);
  sync();
}
