import type { ApiClient } from "./api.js";

/** Polls the session's snapshot version and invokes the refresh callback
 * whenever it changes.  One poller per open session view; the interval
 * should equal the session's sampling interval. */
export class LivePoller {
  private timer: ReturnType<typeof setInterval> | null = null;
  private lastVersion: number | null = null;
  private inFlight = false;

  constructor(
    private api: ApiClient,
    private sessionId: string,
    private intervalMs: number,
    private onChange: (version: number) => void | Promise<void>,
    private onError: (err: unknown) => void = () => undefined,
  ) {}

  /** One poll cycle; exposed for tests and called by the interval timer. */
  async tick(): Promise<void> {
    if (this.inFlight) {
      return;
    }
    this.inFlight = true;
    try {
      const { version } = await this.api.version(this.sessionId);
      if (this.lastVersion === null || version !== this.lastVersion) {
        this.lastVersion = version;
        await this.onChange(version);
      }
    } catch (err) {
      this.onError(err);
    } finally {
      this.inFlight = false;
    }
  }

  start(): void {
    if (this.timer === null) {
      this.timer = setInterval(() => void this.tick(), this.intervalMs);
      void this.tick();
    }
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
