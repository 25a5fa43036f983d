import type { Purpose } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface SessionRefusal {
  code: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
    public refusal?: SessionRefusal,
  ) {
    super(message);
  }
}

export interface RoomInfo {
  room_id: string;
  minor_severity_threshold: number;
}

/** Thin wrapper over the chat server's HTTP endpoints. */
export class ChatApi {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = fetch.bind(globalThis),
  ) {}

  async openSession(
    userId: string,
    podId: string,
    credential: string,
    purposes: Purpose[],
  ): Promise<string> {
    const r = await this.fetchFn(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({
        user_id: userId,
        pod_id: podId,
        credential,
        purposes,
      }),
    });
    if (!r.ok) {
      let refusal: SessionRefusal | undefined;
      try {
        const body = await r.json();
        if (body?.detail?.code) refusal = body.detail;
      } catch {
        // non-JSON error body; fall through with status only
      }
      throw new ApiError(refusal?.message ?? `session refused (${r.status})`, r.status, refusal);
    }
    const body = await r.json();
    return body.session_id as string;
  }

  async closeSession(sessionId: string): Promise<void> {
    await this.fetchFn(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" });
  }

  async rooms(): Promise<RoomInfo[]> {
    const r = await this.fetchFn(`${this.baseUrl}/rooms`);
    if (!r.ok) throw new ApiError(`cannot list rooms (${r.status})`, r.status);
    const body = await r.json();
    return body.rooms as RoomInfo[];
  }

  websocketUrl(sessionId: string): string {
    const ws = this.baseUrl.replace(/^http/, "ws");
    return `${ws}/ws/${sessionId}`;
  }
}
