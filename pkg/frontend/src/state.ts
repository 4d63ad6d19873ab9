import type { GridResponse, SortKey, ViewState } from "./types.js";

export function initialState(): ViewState {
  return { session: null, mode: "review", selectedSeat: null, sortBy: "total", t: 0 };
}

export function selectSession(state: ViewState, session: string, durationS: number): ViewState {
  return { ...state, session, selectedSeat: null, t: durationS };
}

/** Selecting a seat requires it to exist in the current grid. */
export function selectSeat(state: ViewState, seat: string, grid: GridResponse): ViewState {
  const cell = grid.cells.find((c) => c.seat === seat);
  if (!cell || !cell.occupied) {
    return state;
  }
  return { ...state, selectedSeat: seat };
}

export function setSort(state: ViewState, sortBy: SortKey): ViewState {
  return { ...state, sortBy };
}

export function setMode(state: ViewState, mode: "live" | "review"): ViewState {
  return { ...state, mode };
}

/** Review-mode playback time, clamped to the course duration. */
export function setTime(state: ViewState, t: number, durationS: number): ViewState {
  return { ...state, t: Math.min(Math.max(0, t), durationS) };
}
