/** Wire types for the classtrack HTTP API. */

export type Category =
  | "hand_raising"
  | "standing"
  | "sleeping"
  | "yawning"
  | "smiling";

export const CATEGORIES: Category[] = [
  "hand_raising",
  "standing",
  "sleeping",
  "yawning",
  "smiling",
];

export type Counts = Record<Category, number>;

export interface GridCell {
  seat: string;
  row: number;
  col: number;
  occupied: boolean;
  counts: Counts;
}

export interface GridResponse {
  rows: number;
  cols: number;
  cells: GridCell[];
}

export interface HeatmapResponse {
  t: number;
  rows: number;
  cols: number;
  scores: (number | null)[][];
}

export interface SequenceEvent {
  t: number;
  category: Category;
}

export interface SequenceResponse {
  seat: string;
  events: SequenceEvent[];
}

export interface FlowSample {
  index: number;
  t: number;
  counts: Counts;
}

export interface FlowResponse {
  interval_s: number;
  categories: Category[];
  samples: FlowSample[];
}

export interface SessionConfig {
  rows: number;
  cols: number;
  sample_interval_s: number;
  [key: string]: unknown;
}

export interface MetaResponse {
  id: string;
  config: SessionConfig;
  duration_s: number;
  occupancy: string[];
  version: number;
}

export interface SessionsResponse {
  sessions: string[];
}

export interface VersionResponse {
  id: string;
  version: number;
}

export type SortKey = Category | "total";

export type Mode = "live" | "review";

/** Client view state; the rendered page is a pure function of this plus the
 * latest API snapshot. */
export interface ViewState {
  session: string | null;
  mode: Mode;
  selectedSeat: string | null;
  sortBy: SortKey;
  /** review-mode heatmap time in seconds */
  t: number;
}

export function totalCount(counts: Counts): number {
  return CATEGORIES.reduce((acc, cat) => acc + counts[cat], 0);
}
