/**
 * Session client: one HTTP POST to create the session, then a single
 * WebSocket for everything else. The WebSocket constructor is injectable
 * so tests can drive the client with a scripted fake.
 */

import type { SessionEvent, SessionInfo, UserEventPayload, ViewModel } from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((event: unknown) => void) | null;
  onmessage: ((event: { data: string }) => void) | null;
  onclose: ((event: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ClientCallbacks {
  onEvent: (event: SessionEvent) => void;
  onStatus: (connected: boolean) => void;
}

export class SessionClient {
  readonly apiBase: string;
  private socket: SocketLike | null = null;
  private callbacks: ClientCallbacks;
  private socketFactory: SocketFactory;
  info: SessionInfo | null = null;

  constructor(apiBase: string, callbacks: ClientCallbacks, socketFactory?: SocketFactory) {
    this.apiBase = apiBase.replace(/\/$/, "");
    this.callbacks = callbacks;
    this.socketFactory =
      socketFactory ?? ((url) => new WebSocket(url) as unknown as SocketLike);
  }

  async createSession(overrides: Record<string, unknown> = {}): Promise<SessionInfo> {
    const response = await fetch(`${this.apiBase}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(overrides),
    });
    if (!response.ok) throw new Error(`session create failed: ${response.status}`);
    this.info = (await response.json()) as SessionInfo;
    return this.info;
  }

  connect(): void {
    if (!this.info) throw new Error("create a session before connecting");
    const wsBase = this.apiBase.replace(/^http/, "ws");
    const socket = this.socketFactory(`${wsBase}/sessions/${this.info.id}/stream`);
    this.socket = socket;
    socket.onopen = () => this.callbacks.onStatus(true);
    socket.onclose = () => this.callbacks.onStatus(false);
    socket.onmessage = (message) => {
      const data = JSON.parse(message.data) as SessionEvent | { ping?: boolean };
      if ("ping" in data) return;
      this.callbacks.onEvent(data as SessionEvent);
    };
  }

  send(payload: UserEventPayload): void {
    if (!this.socket) throw new Error("not connected");
    this.socket.send(JSON.stringify(payload));
  }

  async fetchTranscript(): Promise<SessionEvent[]> {
    if (!this.info) throw new Error("no session");
    const response = await fetch(`${this.apiBase}/sessions/${this.info.id}/transcript`);
    const body = (await response.json()) as { events: SessionEvent[] };
    return body.events;
  }

  async fetchView(): Promise<ViewModel> {
    if (!this.info) throw new Error("no session");
    const response = await fetch(`${this.apiBase}/sessions/${this.info.id}/view`);
    return (await response.json()) as ViewModel;
  }

  close(): void {
    this.socket?.close();
    this.socket = null;
  }
}
