import { ApiError, ChatApi } from "./api.js";
import { Store } from "./state.js";
import type { ClientFrame, Purpose, ServerFrame } from "./types.js";

/** The slice of the WebSocket API the controller needs, so tests can
 * substitute a scripted double. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((ev: { data: string }) => void) | null;
  onclose: (() => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface Credentials {
  userId: string;
  podId: string;
  credential: string;
}

const REQUIRED: Purpose[] = ["moderation", "minor_check"];

/**
 * Drives the session against the server: consent toggles decide which
 * purposes are requested; a session only opens while both required
 * purposes are on, and flipping one off closes it.
 */
export class SessionController {
  readonly store = new Store();
  private consent = new Set<Purpose>();
  private sessionId: string | null = null;
  private socket: SocketLike | null = null;

  constructor(
    private api: ChatApi,
    private socketFactory: SocketFactory,
    private creds: Credentials,
  ) {}

  purposes(): Purpose[] {
    return [...this.consent].sort();
  }

  hasRequiredConsent(): boolean {
    return REQUIRED.every((p) => this.consent.has(p));
  }

  isOpen(): boolean {
    return this.sessionId !== null;
  }

  async setConsent(purpose: Purpose, on: boolean): Promise<void> {
    if (on) this.consent.add(purpose);
    else this.consent.delete(purpose);
    if (this.isOpen() && !on) {
      // any withdrawal closes the session; the server revokes the grants
      await this.disconnect();
    }
  }

  async connect(): Promise<void> {
    if (this.isOpen()) return;
    if (!this.hasRequiredConsent()) {
      this.store.dispatch({
        type: "error",
        message: "consent for moderation and minor_check is required to join",
      });
      return;
    }
    try {
      this.sessionId = await this.api.openSession(
        this.creds.userId,
        this.creds.podId,
        this.creds.credential,
        this.purposes(),
      );
    } catch (e) {
      const message = e instanceof ApiError ? e.message : String(e);
      this.store.dispatch({ type: "error", message });
      return;
    }
    this.socket = this.socketFactory(this.api.websocketUrl(this.sessionId));
    this.socket.onmessage = (ev) => {
      this.store.dispatch(JSON.parse(ev.data) as ServerFrame);
    };
    this.socket.onclose = () => {
      this.store.patch({ connected: false });
    };
    this.store.patch({ connected: true });
  }

  async disconnect(): Promise<void> {
    if (this.sessionId === null) return;
    const sid = this.sessionId;
    this.sessionId = null;
    this.socket?.close();
    this.socket = null;
    await this.api.closeSession(sid);
    // nothing from the session survives locally either
    this.store.reset();
  }

  private sendFrame(frame: ClientFrame): void {
    if (!this.socket) {
      this.store.dispatch({ type: "error", message: "not connected" });
      return;
    }
    this.socket.send(JSON.stringify(frame));
  }

  join(room: string): void {
    this.sendFrame({ type: "join", room });
    this.store.patch({ room });
  }

  leave(room: string): void {
    this.sendFrame({ type: "leave", room });
    this.store.patch({ room: null });
  }

  post(room: string, text: string): void {
    this.sendFrame({ type: "post", room, text });
  }
}
