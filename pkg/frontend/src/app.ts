/**
 * Bootstraps the command center: world canvas on the left, chat panel on
 * the right, Code/Clear/Help header buttons, and the message input.
 *
 * The API base defaults to the page's host on port 8000 and can be
 * overridden with `?api=http://host:port`.
 */

import { ChatPanel } from "./chat.js";
import { SessionClient, type SocketFactory } from "./client.js";
import type { SessionEvent } from "./protocol.js";
import { renderWorld } from "./worldCanvas.js";

export interface AppHandles {
  client: SessionClient;
  panel: ChatPanel;
  sendMessage: (text: string) => void;
}

export async function startApp(
  document: Document,
  apiBase?: string,
  socketFactory?: SocketFactory,
): Promise<AppHandles> {
  const canvas = document.getElementById("world") as HTMLCanvasElement;
  const messages = document.getElementById("messages") as HTMLElement;
  const input = document.getElementById("message-input") as HTMLInputElement;
  const sendButton = document.getElementById("send") as HTMLButtonElement;
  const banner = document.getElementById("banner") as HTMLElement;

  const base =
    apiBase ??
    new URLSearchParams(window.location.search).get("api") ??
    `http://${window.location.hostname || "127.0.0.1"}:8000`;

  const panel = new ChatPanel(
    messages,
    (payload) => {
      client.send(payload);
      if (payload.type === "raw-message") {
        // optimistic rendering of the user's own message only
        optimistic.add(payload.text);
      }
    },
    (view) => renderWorld(view, canvas),
  );

  // dedupe: the server echoes the user's message back as a session event
  const optimistic = {
    pending: new Set<string>(),
    add(text: string) {
      this.pending.add(text);
      const bubble = document.createElement("div");
      bubble.className = "message user";
      bubble.textContent = text;
      messages.appendChild(bubble);
    },
    matches(event: SessionEvent): boolean {
      if (event.origin !== "user") return false;
      const payload = event.payload as { type: string; text?: string };
      if (payload.type !== "raw-message" || payload.text === undefined) return false;
      if (!this.pending.has(payload.text)) return false;
      this.pending.delete(payload.text);
      return true;
    },
  };

  const client = new SessionClient(
    base,
    {
      onEvent: (event) => {
        if (optimistic.matches(event)) return;
        panel.addEvent(event);
      },
      onStatus: (connected) => {
        banner.hidden = connected;
        input.disabled = !connected;
        sendButton.disabled = !connected;
      },
    },
    socketFactory,
  );

  input.disabled = true;
  sendButton.disabled = true;
  await client.createSession({});
  client.connect();

  const sendMessage = (text: string) => {
    if (!text.trim() && text !== "") return;
    client.send({ type: "raw-message", text });
    optimistic.add(text);
  };

  const submit = () => {
    sendMessage(input.value);
    input.value = "";
  };
  sendButton.addEventListener("click", submit);
  input.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") submit();
  });

  document.getElementById("btn-clear")?.addEventListener("click", () => panel.clear());
  document.getElementById("btn-code")?.addEventListener("click", () => input.focus());
  document.getElementById("btn-help")?.addEventListener("click", () => {
    input.value = "help ";
    input.focus();
  });

  return { client, panel, sendMessage };
}
