// The frame loop: capture, post, render feedback; stop and speak on ready.
// Dependencies are injected so the whole state machine runs under test
// against a scripted service with an instant clock.

import { ServiceApi } from "./api.js";
import { UiFeedbackView, retryView, viewFromResponse } from "./view.js";

export interface LoopDeps {
  api: ServiceApi;
  captureFrame(): Promise<string>; // base64 PNG, already downscaled
  onView(view: UiFeedbackView): void;
  speak(text: string): void;
  delay(ms: number): Promise<void>;
  intervalMs?: number; // default 250
}

const MAX_BACKOFF_MS = 4000;

export type LoopState = "idle" | "running" | "done";

export class FrameLoop {
  state: LoopState = "idle";
  framesPosted = 0;
  private interval: number;
  private pips = 0;

  constructor(private deps: LoopDeps) {
    this.interval = deps.intervalMs ?? 250;
  }

  /** Run until the service reports ready; at most one request in flight. */
  async start(): Promise<void> {
    if (this.state === "running") return;
    this.state = "running";
    this.pips = 0;
    const session = await this.createSessionWithRetry();
    let backoff = this.interval;
    while (this.state === "running") {
      const png = await this.deps.captureFrame();
      try {
        const resp = await this.deps.api.postFrame(session, png);
        this.framesPosted += 1;
        backoff = this.interval;
        this.pips = resp.consecutive;
        const view = viewFromResponse(resp);
        this.deps.onView(view);
        if (resp.ready) {
          // loop stops; no frame is posted again until scanAgain()
          this.state = "done";
          if (view.outcome) this.deps.speak(view.outcome.spoken);
          return;
        }
      } catch {
        this.deps.onView(retryView(this.pips));
        backoff = Math.min(backoff * 2, MAX_BACKOFF_MS);
      }
      await this.deps.delay(backoff);
    }
  }

  /** After a result, restart scanning with a fresh session. */
  async scanAgain(): Promise<void> {
    if (this.state !== "done") return;
    this.state = "idle";
    await this.start();
  }

  stop(): void {
    this.state = "idle";
  }

  private async createSessionWithRetry(): Promise<string> {
    let backoff = this.interval;
    for (;;) {
      try {
        return await this.deps.api.createSession();
      } catch {
        this.deps.onView(retryView(0));
        backoff = Math.min(backoff * 2, MAX_BACKOFF_MS);
        await this.deps.delay(backoff);
      }
    }
  }
}
