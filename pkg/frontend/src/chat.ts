/**
 * The chat panel: renders the session event stream as message bubbles,
 * option chips, and code cards with inline error squiggles.
 *
 * The panel is stateless with respect to engine logic — every affordance
 * maps 1:1 to a user-event payload sent over the socket, and replaying a
 * transcript reconstructs the identical message list.
 */

import {
  byteToCharIndex,
  type Diagnostic,
  type EnginePayload,
  type SessionEvent,
  type UserEventPayload,
  type ViewModel,
} from "./protocol.js";

export type SendEvent = (payload: UserEventPayload) => void;
export type ViewSink = (view: ViewModel) => void;

export class ChatPanel {
  private readonly root: HTMLElement;
  private readonly send: SendEvent;
  private readonly onView: ViewSink;
  private activeChips: HTMLElement | null = null;

  constructor(root: HTMLElement, send: SendEvent, onView: ViewSink) {
    this.root = root;
    this.send = send;
    this.onView = onView;
  }

  clear(): void {
    this.root.textContent = "";
    this.activeChips = null;
  }

  addEvent(event: SessionEvent): void {
    if (event.origin === "user") {
      this.renderUser(event.payload as UserEventPayload);
      return;
    }
    this.renderEngine(event.payload as EnginePayload);
  }

  // -- user side --------------------------------------------------------

  private renderUser(payload: UserEventPayload): void {
    const text = describeUserEvent(payload);
    if (text === null) return;
    const bubble = el("div", "message user");
    bubble.textContent = text;
    this.append(bubble);
  }

  // -- engine side ------------------------------------------------------

  private renderEngine(payload: EnginePayload): void {
    switch (payload.type) {
      case "say": {
        const bubble = el("div", "message engine");
        bubble.textContent = payload.text;
        this.append(bubble);
        return;
      }
      case "offer-options": {
        this.retireChips();
        const row = el("div", "chips");
        for (const option of payload.options) {
          const chip = el("button", "chip") as HTMLButtonElement;
          chip.textContent = option;
          chip.addEventListener("click", () => {
            this.send({ type: "option-selected", option });
          });
          row.appendChild(chip);
        }
        this.activeChips = row;
        this.append(row);
        return;
      }
      case "show-diagnostics": {
        const card = el("div", "message engine diagnostics");
        card.appendChild(renderSquiggledCode(payload.source, payload.diagnostics));
        for (const diagnostic of payload.diagnostics) {
          const name = diagnostic.related[0] ?? "";
          const bullet = el("div", "diagnostic-bullet");
          bullet.textContent = `• ${name}`;
          card.appendChild(bullet);
          const message = el("div", "diagnostic-message");
          message.textContent = diagnostic.message;
          card.appendChild(message);
        }
        this.append(card);
        return;
      }
      case "present-candidate": {
        this.append(this.renderCandidate(payload));
        return;
      }
      case "show-summary": {
        const bubble = el("div", "message engine summary");
        const lines = ["Below is a summary of my request:"];
        for (const [key, value] of payload.slots) lines.push(`- ${key}: ${value}`);
        bubble.textContent = lines.join("\n");
        this.append(bubble);
        return;
      }
      case "show-disclaimer": {
        const bubble = el("div", "message engine disclaimer");
        bubble.textContent = payload.text;
        this.append(bubble);
        return;
      }
      case "view":
        this.onView(payload.view);
        return;
      default:
        return; // config / execute / backend-call carry no visible bubble
    }
  }

  private renderCandidate(
    payload: Extract<EnginePayload, { type: "present-candidate" }>,
  ): HTMLElement {
    const card = el("div", "message engine code-card");
    card.appendChild(renderSquiggledCode(payload.source, payload.diagnostics));

    const controls = el("div", "card-controls");
    const run = el("button", "card-button run") as HTMLButtonElement;
    run.textContent = "Run";
    run.addEventListener("click", () => this.send({ type: "run-requested" }));
    controls.appendChild(run);

    const ask = el("button", "card-button ask") as HTMLButtonElement;
    ask.textContent = "? Ask";
    ask.addEventListener("click", () => {
      const instruction = window.prompt("What should change in this code?");
      if (instruction) this.send({ type: "ask-edit", text: instruction });
    });
    controls.appendChild(ask);

    const back = el("button", "card-button back") as HTMLButtonElement;
    back.textContent = "Back";
    back.disabled = payload.cursor <= 1;
    back.addEventListener("click", () => this.send({ type: "navigate-version", delta: -1 }));
    controls.appendChild(back);

    const forward = el("button", "card-button forward") as HTMLButtonElement;
    forward.textContent = "Forward";
    forward.disabled = payload.cursor >= payload.total;
    forward.addEventListener("click", () => this.send({ type: "navigate-version", delta: 1 }));
    controls.appendChild(forward);

    const counter = el("span", "version-counter");
    counter.textContent = `${payload.cursor} / ${payload.total}`;
    controls.appendChild(counter);

    card.appendChild(controls);
    return card;
  }

  private retireChips(): void {
    if (this.activeChips) {
      for (const chip of Array.from(this.activeChips.querySelectorAll("button"))) {
        (chip as HTMLButtonElement).disabled = true;
      }
    }
  }

  private append(node: HTMLElement): void {
    this.root.appendChild(node);
    this.root.scrollTop = this.root.scrollHeight;
  }
}

export function describeUserEvent(payload: UserEventPayload): string | null {
  switch (payload.type) {
    case "raw-message":
      return payload.text;
    case "option-selected":
      return payload.option;
    case "ask-edit":
      return `Ask: ${payload.text}`;
    case "follow-up":
      return payload.text;
    case "run-requested":
    case "navigate-version":
      return null; // button presses don't echo as bubbles
  }
}

/**
 * Code block with squiggly underlines taken from diagnostic spans. Spans
 * are byte offsets into the UTF-8 source; never client-side re-parsing.
 */
export function renderSquiggledCode(source: string, diagnostics: Diagnostic[]): HTMLElement {
  const pre = el("pre", "code");
  const ranges = diagnostics
    .map((diagnostic) => ({
      start: byteToCharIndex(source, diagnostic.start),
      end: byteToCharIndex(source, diagnostic.end),
      message: diagnostic.message,
    }))
    .sort((a, b) => a.start - b.start);

  let position = 0;
  for (const range of ranges) {
    if (range.start < position) continue; // overlapping spans keep the first
    pre.appendChild(document.createTextNode(source.slice(position, range.start)));
    const mark = el("span", "squiggle");
    mark.textContent = source.slice(range.start, range.end);
    mark.title = range.message;
    pre.appendChild(mark);
    position = range.end;
  }
  pre.appendChild(document.createTextNode(source.slice(position)));
  return pre;
}

function el(tag: string, className: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  return node;
}
