// Browser bootstrap: wires DOM controls and canvas events to the view
// store. All testable logic lives in the other modules; this file only
// glues them to the page.

import { ApiClient } from './api.js';
import { ViewStore } from './store.js';
import { renderFrame, hitTest } from './render.js';
import type { Canvas2D } from './render.js';

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing #${id}`);
  return found as T;
}

const canvas = el<HTMLCanvasElement>('view');
const ctx = canvas.getContext('2d') as unknown as Canvas2D;
const store = new ViewStore(new ApiClient(''), {
  onChange: scheduleDraw,
  onError: (message) => toast(message),
});

let drawQueued = false;
function scheduleDraw(): void {
  if (drawQueued) return;
  drawQueued = true;
  requestAnimationFrame(() => {
    drawQueued = false;
    renderFrame(ctx, store.document, store);
    syncSidebar();
  });
}

function toast(message: string): void {
  const box = el<HTMLDivElement>('toast');
  box.textContent = message;
  box.classList.add('visible');
  setTimeout(() => box.classList.remove('visible'), 4000);
}

function resize(): void {
  canvas.width = canvas.clientWidth;
  canvas.height = canvas.clientHeight;
  store.camera.viewport = { width: canvas.width, height: canvas.height };
  scheduleDraw();
}
window.addEventListener('resize', resize);

// ------------------------------------------------------------- canvas input

let dragging = false;
let lastX = 0;
let lastY = 0;
let moved = 0;

canvas.addEventListener('mousedown', (ev) => {
  dragging = true;
  moved = 0;
  lastX = ev.offsetX;
  lastY = ev.offsetY;
});
window.addEventListener('mouseup', () => {
  dragging = false;
});
canvas.addEventListener('mousemove', (ev) => {
  if (!dragging) return;
  const dx = ev.offsetX - lastX;
  const dy = ev.offsetY - lastY;
  moved += Math.abs(dx) + Math.abs(dy);
  lastX = ev.offsetX;
  lastY = ev.offsetY;
  store.camera.panPixels(dx, dy);
  scheduleDraw();
});
canvas.addEventListener('click', (ev) => {
  if (moved > 4 || !store.document) return; // a drag, not a click
  store.select(hitTest(store.document, store.camera, ev.offsetX, ev.offsetY));
});
canvas.addEventListener('wheel', (ev) => {
  ev.preventDefault();
  store.camera.zoomAt(ev.offsetX, ev.offsetY, ev.deltaY < 0 ? 1.15 : 1 / 1.15);
  scheduleDraw();
});

// ------------------------------------------------------------ side controls

const searchInput = el<HTMLInputElement>('search');
searchInput.addEventListener('input', () => {
  void store.search(searchInput.value.trim());
});

const depthInput = el<HTMLInputElement>('depth');
depthInput.addEventListener('change', () => {
  void store.expand(Number(depthInput.value));
});
el<HTMLButtonElement>('expand').addEventListener('click', () => {
  void store.expand(Number(depthInput.value));
});

el<HTMLFormElement>('projection-form').addEventListener('submit', (ev) => {
  ev.preventDefault();
  void store.submitProjection({
    mode: el<HTMLSelectElement>('proj-mode').value as 'author' | 'project',
    min_degree: Number(el<HTMLInputElement>('proj-min-degree').value),
    min_shared: Number(el<HTMLInputElement>('proj-min-shared').value),
    layout: true,
  });
});

function syncSidebar(): void {
  const results = el<HTMLUListElement>('results');
  results.innerHTML = '';
  if (store.noResults) {
    const li = document.createElement('li');
    li.textContent = 'no results';
    li.className = 'muted';
    results.appendChild(li);
  }
  for (const hit of store.searchResults) {
    const li = document.createElement('li');
    li.textContent = hit.id;
    li.addEventListener('click', () => store.chooseResult(hit));
    results.appendChild(li);
  }

  const graphList = el<HTMLSelectElement>('graphs');
  const current = new Set(Array.from(graphList.options).map((o) => o.value));
  for (const g of store.graphs) {
    if (!current.has(g.id)) {
      const opt = document.createElement('option');
      opt.value = g.id;
      opt.textContent = `${g.id} (${g.node_count}n/${g.edge_count}e)`;
      graphList.appendChild(opt);
    }
  }
  if (store.activeGraph) graphList.value = store.activeGraph;

  el<HTMLDivElement>('guidance').textContent = store.guidance ?? '';
  el<HTMLDivElement>('status').textContent = store.selection
    ? `selected: ${store.selection} (${store.highlighted.size - 1} neighbors)`
    : `${store.document?.nodes.length ?? 0} nodes / ${
        store.document?.edges.length ?? 0
      } edges`;
}

el<HTMLSelectElement>('graphs').addEventListener('change', (ev) => {
  void store.openGraph((ev.target as HTMLSelectElement).value);
});

// --------------------------------------------------------------------- boot

async function boot(): Promise<void> {
  resize();
  await store.refreshGraphs();
  if (store.graphs.length > 0) {
    await store.openGraph(store.graphs[0].id);
  }
}
void boot();
