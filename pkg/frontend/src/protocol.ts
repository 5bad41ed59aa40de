/**
 * Wire types for the session API, mirroring the server's documented
 * payload schemas field by field. The client never invents state: the
 * message list is a pure function of the received session events.
 */

export interface Bounds {
  min_x: number;
  max_x: number;
  min_y: number;
  max_y: number;
}

export interface TurtleView {
  id: number;
  x: number;
  y: number;
  heading: number;
  color: number;
}

export interface ViewModel {
  bounds: Bounds;
  patches: number[];
  turtles: TurtleView[];
}

export interface Diagnostic {
  severity: "error" | "warning";
  code: string;
  message: string;
  start: number; // byte offsets into the UTF-8 source
  end: number;
  related: string[];
}

export type UserEventPayload =
  | { type: "raw-message"; text: string }
  | { type: "option-selected"; option: string }
  | { type: "run-requested" }
  | { type: "ask-edit"; text: string }
  | { type: "navigate-version"; delta: number }
  | { type: "follow-up"; text: string };

export type EnginePayload =
  | { type: "config"; version: number; seed: number; backend: string; model: string; assistant: boolean; bounds: number[] }
  | { type: "say"; text: string }
  | { type: "offer-options"; options: string[] }
  | { type: "show-diagnostics"; source: string; count: number; diagnostics: Diagnostic[] }
  | { type: "present-candidate"; source: string; version: number; cursor: number; total: number; diagnostics: Diagnostic[] }
  | { type: "execute"; source: string }
  | { type: "backend-call"; kind: string }
  | { type: "show-summary"; slots: [string, string][] }
  | { type: "show-disclaimer"; text: string }
  | { type: "view"; view: ViewModel };

export interface SessionEvent {
  seq: number;
  ts: number;
  origin: "user" | "engine";
  payload: UserEventPayload | EnginePayload;
}

export interface SessionInfo {
  id: string;
  config: { backend: string; model: string; assistant: boolean; seed: number; bounds: number[] };
}

/** Map a byte offset (UTF-8) to a JS string index. */
export function byteToCharIndex(text: string, byteOffset: number): number {
  let bytes = 0;
  const encoder = new TextEncoder();
  for (let i = 0; i < text.length; i += 1) {
    if (bytes >= byteOffset) return i;
    bytes += encoder.encode(text[i]).length;
  }
  return text.length;
}
