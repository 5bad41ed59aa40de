/**
 * Test doubles: a recording 2D canvas context (jsdom has none) and a fake
 * WebSocket that replays a recorded session transcript — the same JSONL
 * files the engine's replay harness uses, so the UI is tested against
 * real wire traffic.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import type { SessionEvent, UserEventPayload } from "../src/protocol.js";
import type { SocketLike } from "../src/client.js";

// -- canvas ---------------------------------------------------------------

export class Recording2D {
  fillRects = 0;
  triangles = 0;
  private pathSegments = 0;
  fillStyle = "";

  clearRect(): void {}
  fillRect(): void {
    this.fillRects += 1;
  }
  save(): void {}
  restore(): void {}
  translate(): void {}
  rotate(): void {}
  beginPath(): void {
    this.pathSegments = 0;
  }
  moveTo(): void {
    this.pathSegments += 1;
  }
  lineTo(): void {
    this.pathSegments += 1;
  }
  closePath(): void {}
  fill(): void {
    if (this.pathSegments === 3) this.triangles += 1;
  }
}

export function stubCanvas(): Recording2D {
  const recorder = new Recording2D();
  (HTMLCanvasElement.prototype as unknown as { getContext: unknown }).getContext =
    function getContext() {
      return recorder;
    };
  return recorder;
}

// -- fixtures ---------------------------------------------------------------

const here = path.dirname(fileURLToPath(import.meta.url));

export function loadFixture(name: string): SessionEvent[] {
  const file = path.resolve(here, "..", "..", "fixtures", name);
  return fs
    .readFileSync(file, "utf-8")
    .split("\n")
    .filter((line) => line.trim())
    .map((line) => JSON.parse(line) as SessionEvent);
}

export interface FixtureGroup {
  user: UserEventPayload;
  events: SessionEvent[]; // the user echo plus the engine events it caused
}

/** Split a transcript into (user event, resulting events) groups. */
export function groupFixture(events: SessionEvent[]): FixtureGroup[] {
  const groups: FixtureGroup[] = [];
  for (const event of events) {
    if (event.origin === "user") {
      groups.push({ user: event.payload as UserEventPayload, events: [event] });
    } else if (groups.length > 0) {
      groups[groups.length - 1].events.push(event);
    }
  }
  return groups;
}

// -- fake socket ------------------------------------------------------------

export class FixtureSocket implements SocketLike {
  onmessage: ((event: { data: string }) => void) | null = null;
  onclose: ((event: unknown) => void) | null = null;
  sent: UserEventPayload[] = [];
  private groups: FixtureGroup[];
  private openHandler: ((event: unknown) => void) | null = null;

  constructor(groups: FixtureGroup[]) {
    this.groups = [...groups];
  }

  // opens as soon as the client installs its handler
  get onopen(): ((event: unknown) => void) | null {
    return this.openHandler;
  }

  set onopen(handler: ((event: unknown) => void) | null) {
    this.openHandler = handler;
    if (handler) queueMicrotask(() => handler({}));
  }

  send(data: string): void {
    const payload = JSON.parse(data) as UserEventPayload;
    this.sent.push(payload);
    const group = this.groups.shift();
    if (!group) throw new Error(`unexpected event past end of fixture: ${data}`);
    if (JSON.stringify(group.user) !== JSON.stringify(payload)) {
      throw new Error(
        `fixture expected ${JSON.stringify(group.user)} but client sent ${data}`,
      );
    }
    for (const event of group.events) {
      this.onmessage?.({ data: JSON.stringify(event) });
    }
  }

  close(): void {
    this.onclose?.({});
  }
}

export function stubSessionFetch(seed: number): void {
  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    if (url.endsWith("/sessions") && init?.method === "POST") {
      return new Response(
        JSON.stringify({
          id: "test-session",
          config: { backend: "mock", model: "mock-1", assistant: true, seed, bounds: [-16, 16, -16, 16] },
        }),
        { status: 200, headers: { "Content-Type": "application/json" } },
      );
    }
    throw new Error(`unexpected fetch ${url}`);
  }) as typeof fetch;
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
