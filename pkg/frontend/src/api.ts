import type {
  FlowResponse,
  GridResponse,
  HeatmapResponse,
  MetaResponse,
  SequenceResponse,
  SessionsResponse,
  VersionResponse,
} from "./types.js";

export interface FetchResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponseLike>;

export class ApiError extends Error {
  constructor(public status: number, public url: string) {
    super(`HTTP ${status} for ${url}`);
  }
}

/** Thin typed client; the fetcher is injectable so tests can stub the wire. */
export class ApiClient {
  constructor(
    private base: string = "",
    private fetcher: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const url = `${this.base}${path}`;
    const res = await this.fetcher(url);
    if (!res.ok) {
      throw new ApiError(res.status, url);
    }
    return (await res.json()) as T;
  }

  sessions(): Promise<SessionsResponse> {
    return this.get("/sessions");
  }

  meta(id: string): Promise<MetaResponse> {
    return this.get(`/sessions/${encodeURIComponent(id)}/meta`);
  }

  grid(id: string): Promise<GridResponse> {
    return this.get(`/sessions/${encodeURIComponent(id)}/grid`);
  }

  heatmap(id: string, t: number): Promise<HeatmapResponse> {
    return this.get(`/sessions/${encodeURIComponent(id)}/heatmap?t=${t}`);
  }

  sequence(id: string, seat: string): Promise<SequenceResponse> {
    return this.get(
      `/sessions/${encodeURIComponent(id)}/seats/${encodeURIComponent(seat)}/sequence`,
    );
  }

  flow(id: string): Promise<FlowResponse> {
    return this.get(`/sessions/${encodeURIComponent(id)}/flow`);
  }

  version(id: string): Promise<VersionResponse> {
    return this.get(`/sessions/${encodeURIComponent(id)}/version`);
  }
}
