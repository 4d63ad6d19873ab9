/** Endpoint responses recorded from the Python API over the demo session
 * (see the repository README for how to regenerate them). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type {
  FlowResponse,
  GridResponse,
  HeatmapResponse,
  MetaResponse,
  SequenceResponse,
  SessionsResponse,
  VersionResponse,
} from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function load<T>(name: string): T {
  return JSON.parse(readFileSync(join(here, "fixtures", `${name}.json`), "utf-8")) as T;
}

export const sessionsFx = load<SessionsResponse>("sessions");
export const metaFx = load<MetaResponse>("meta");
export const gridFx = load<GridResponse>("grid");
export const heatmapFx = load<HeatmapResponse>("heatmap");
export const sequenceR2C7Fx = load<SequenceResponse>("sequence_R2C7");
export const sequenceR4C9Fx = load<SequenceResponse>("sequence_R4C9");
export const flowFx = load<FlowResponse>("flow");
export const versionFx = load<VersionResponse>("version");
