import { ApiClient } from "./api.js";
import { LivePoller } from "./poll.js";
import {
  initialState,
  selectSeat,
  selectSession,
  setMode,
  setSort,
  setTime,
} from "./state.js";
import type { GridResponse, MetaResponse, SortKey, ViewState } from "./types.js";
import { CATEGORIES } from "./types.js";
import { renderHeatmap } from "./views/heatmap.js";
import { renderLinkList, renderSequencePanel } from "./views/linkList.js";
import { diffGrid, renderSeatingTable } from "./views/seatingTable.js";
import { renderPointFlow } from "./views/pointFlow.js";

const api = new ApiClient("");

let state: ViewState = initialState();
let meta: MetaResponse | null = null;
let grid: GridResponse | null = null;
let previousGrid: GridResponse | null = null;
let poller: LivePoller | null = null;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node;
}

function showError(message: string): void {
  const banner = el("error-banner");
  banner.textContent = message;
  banner.style.display = "block";
}

function clearError(): void {
  el("error-banner").style.display = "none";
}

async function refreshViews(): Promise<void> {
  if (!state.session || !meta) {
    return;
  }
  try {
    previousGrid = grid;
    grid = await api.grid(state.session);
    const t = state.mode === "live" ? meta.duration_s : state.t;
    const heatmapT = Math.min(t, meta.duration_s);
    const [heatmap, flow] = await Promise.all([
      api.heatmap(state.session, heatmapT),
      api.flow(state.session),
    ]);
    el("seating-table").innerHTML = renderSeatingTable(
      grid,
      state.mode === "live" ? diffGrid(previousGrid, grid) : [],
    );
    el("heatmap").innerHTML = renderHeatmap(heatmap);
    el("link-list").innerHTML = renderLinkList(grid, state.sortBy);
    el("point-flow").innerHTML = renderPointFlow(flow);
    clearError();
  } catch (err) {
    // keep the last good view on the page
    showError(`refresh failed: ${String(err)}`);
  }
}

async function showSequence(seat: string): Promise<void> {
  if (!state.session || !grid) {
    return;
  }
  const session = state.session;
  const next = selectSeat(state, seat, grid);
  if (next === state) {
    return;
  }
  state = next;
  try {
    const seq = await api.sequence(session, seat);
    el("sequence").innerHTML = renderSequencePanel(seq);
  } catch (err) {
    el("sequence").innerHTML =
      `<div class="sequence-panel"><p class="empty">failed to load ${seat} ` +
      `(<a href="#" id="retry-seq">retry</a>)</p></div>`;
    const retry = document.getElementById("retry-seq");
    retry?.addEventListener("click", (ev) => {
      ev.preventDefault();
      state = { ...state, selectedSeat: null };
      void showSequence(seat);
    });
  }
}

function restartPoller(): void {
  poller?.stop();
  poller = null;
  if (state.mode === "live" && state.session && meta) {
    poller = new LivePoller(
      api,
      state.session,
      meta.config.sample_interval_s * 1000,
      () => refreshViews(),
      (err) => showError(`poll failed: ${String(err)}`),
    );
    poller.start();
  }
}

async function openSession(id: string): Promise<void> {
  meta = await api.meta(id);
  state = selectSession(state, id, meta.duration_s);
  const slider = el("time-slider") as HTMLInputElement;
  slider.max = String(meta.duration_s);
  slider.value = String(meta.duration_s);
  el("sequence").innerHTML = "";
  await refreshViews();
  restartPoller();
}

function wireControls(): void {
  el("link-list").addEventListener("click", (ev) => {
    const row = (ev.target as HTMLElement).closest<HTMLElement>("[data-seat]");
    if (row?.dataset.seat) {
      void showSequence(row.dataset.seat);
    }
  });
  el("seating-table").addEventListener("click", (ev) => {
    const cell = (ev.target as HTMLElement).closest<HTMLElement>("td[data-seat]");
    if (cell?.dataset.seat && cell.classList.contains("occupied")) {
      void showSequence(cell.dataset.seat);
    }
  });

  const sortSelect = el("sort-select") as HTMLSelectElement;
  for (const cat of ["total", ...CATEGORIES]) {
    const opt = document.createElement("option");
    opt.value = cat;
    opt.textContent = cat;
    sortSelect.appendChild(opt);
  }
  sortSelect.addEventListener("change", () => {
    state = setSort(state, sortSelect.value as SortKey);
    void refreshViews();
  });

  const modeSelect = el("mode-select") as HTMLSelectElement;
  modeSelect.addEventListener("change", () => {
    state = setMode(state, modeSelect.value as "live" | "review");
    el("time-slider").style.display = state.mode === "review" ? "" : "none";
    restartPoller();
    void refreshViews();
  });

  const slider = el("time-slider") as HTMLInputElement;
  slider.addEventListener("input", () => {
    if (meta) {
      state = setTime(state, Number(slider.value), meta.duration_s);
      void refreshViews();
    }
  });

  const sessionSelect = el("session-select") as HTMLSelectElement;
  sessionSelect.addEventListener("change", () => void openSession(sessionSelect.value));
}

async function boot(): Promise<void> {
  wireControls();
  try {
    const { sessions } = await api.sessions();
    const sessionSelect = el("session-select") as HTMLSelectElement;
    for (const id of sessions) {
      const opt = document.createElement("option");
      opt.value = id;
      opt.textContent = id;
      sessionSelect.appendChild(opt);
    }
    if (sessions.length > 0) {
      await openSession(sessions[0]);
    } else {
      showError("no sessions in the store");
    }
  } catch (err) {
    showError(`cannot reach the API: ${String(err)}`);
  }
}

document.addEventListener("DOMContentLoaded", () => void boot());
