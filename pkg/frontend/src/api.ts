// Typed client for the payscan HTTP service.

export type Status =
  | "NoScreen"
  | "OutOfFocus"
  | "TooFar"
  | "TooClose"
  | "OffCenter"
  | "Valid";

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface Outcome {
  value: { cents: number; conf: number } | null;
  operation: { label: string; conf: number };
  regions_examined: number;
}

export interface FrameResponse {
  status: Status;
  consecutive: number;
  ready: boolean;
  rect?: Rect;
  angle?: number;
  focus?: number;
  outcome?: Outcome;
}

export interface ServiceApi {
  createSession(): Promise<string>;
  postFrame(sessionId: string, pngBase64: string): Promise<FrameResponse>;
}

export class HttpServiceApi implements ServiceApi {
  constructor(private baseUrl: string = "") {}

  async createSession(): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/session`, { method: "POST" });
    if (!resp.ok) throw new Error(`session failed: ${resp.status}`);
    const body = (await resp.json()) as { id: string };
    return body.id;
  }

  async postFrame(sessionId: string, pngBase64: string): Promise<FrameResponse> {
    const resp = await fetch(`${this.baseUrl}/session/${sessionId}/frame`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ png: pngBase64 }),
    });
    if (!resp.ok) throw new Error(`frame failed: ${resp.status}`);
    return (await resp.json()) as FrameResponse;
  }
}
